#!/usr/bin/env python3
"""Fetch a two-class newsgroup corpus and write it as a classify TSV.

Writes data/20news.tsv with lines `doc_id<TAB>label<TAB>text`. Requires
scikit-learn and network access; the acceptance suite and the classify
subcommand skip or work without this file.
"""
import argparse
import re
import sys
from pathlib import Path


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--output", default="data/20news.tsv")
    ap.add_argument("--categories", nargs=2,
                    default=["rec.sport.baseball", "sci.space"])
    args = ap.parse_args()

    try:
        from sklearn.datasets import fetch_20newsgroups
    except ImportError:
        print("scikit-learn is required: pip install scikit-learn",
              file=sys.stderr)
        return 1

    data = fetch_20newsgroups(subset="all", categories=args.categories,
                              remove=("headers", "footers", "quotes"),
                              shuffle=False)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as fh:
        for i, (text, label) in enumerate(zip(data.data, data.target)):
            flat = re.sub(r"\s+", " ", text).strip()
            if not flat:
                continue
            fh.write(f"doc{i}\t{int(label)}\t{flat}\n")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
