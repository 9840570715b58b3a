#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "edvwcut/hypergraph.hpp"
#include "edvwcut/max_flow.hpp"
#include "edvwcut/splitting.hpp"

namespace edvw {

// 318 lowercase English stop words, sorted.
const std::vector<std::string>& stop_words();
bool is_stop_word(const std::string& w);

// lowercase, split on non-alphanumeric, drop tokens shorter than 2
std::vector<std::string> tokenize(const std::string& text);

struct RawDoc {
  std::string id;
  int label = -1;  // -1 unlabeled, else 0/1
  std::string text;
};

struct CorpusDoc {
  std::string id;
  int label = -1;
  std::map<std::string, int> counts;  // vocabulary words only
  int token_total = 0;                // all tokens, for relative tf
};

struct Corpus {
  std::vector<CorpusDoc> docs;
  std::vector<std::string> vocabulary;        // sorted
  std::vector<int> doc_frequency;             // parallel to vocabulary
};

// TSV: doc_id <TAB> label <TAB> text, label `?` for unlabeled.
std::vector<RawDoc> read_corpus_tsv(std::istream& in);
std::vector<RawDoc> read_corpus_tsv_file(const std::string& path);

// Stop-word removal, document-frequency filtering (fractions, inclusive
// bounds), then the top_k most frequent words by total count (ties toward
// the lexicographically smaller word). Documents left without any
// vocabulary word are dropped.
Corpus build_corpus(const std::vector<RawDoc>& raw, double min_df = 0.002,
                    double max_df = 0.03, int top_k = 200);

enum class TfKind { Raw, Relative };

// One hyperedge per vocabulary word over the documents containing it,
// kappa = 1, gamma_e(v) = tfidf(e, v)^alpha with
// idf(e) = ln((1+N)/(1+df(e))) + 1 and per-document L2 normalization of the
// tf-idf vector before exponentiation.
Hypergraph tfidf_edvws(const Corpus& c, double alpha,
                       TfKind tf = TfKind::Raw);

struct ClassifyOptions {
  ReduceMode mode = ReduceMode::Sparsified;
  double epsilon = 0.05;
  ReduceCaps caps;
};

// Min s-t cut with class-1 seeds as sources; vertices on the source side
// get label 0 (class 1), the rest label 1.
std::map<std::string, int> classify(const Hypergraph& h,
                                    const SplittingSpec& spec,
                                    const std::vector<std::string>& labeled_1,
                                    const std::vector<std::string>& labeled_2,
                                    const ClassifyOptions& opts = {});

// Fraction of matching labels; keys of both maps must coincide.
double accuracy(const std::map<std::string, int>& pred,
                const std::map<std::string, int>& truth);

struct ExperimentConfig {
  double alpha = 1.0;
  double beta = 0.15;
  std::string split = "minhalf";  // spec string; thresh:* consumes beta grid
  double labeled_fraction = 0.25;
  int folds = 5;
  std::uint64_t seed = 0;
  TfKind tf = TfKind::Raw;
  ClassifyOptions classify_opts;
};

enum class GridParam { Alpha, Beta };

struct CvRow {
  double param = 0.0;
  int fold = 0;
  double accuracy = 0.0;
};

struct CvResult {
  double best_param = 0.0;
  std::vector<CvRow> rows;
  std::vector<std::pair<double, double>> mean_by_param;  // (param, mean acc)
};

// Stratified labeled pool at labeled_fraction, stratified k folds over the
// pool; for every grid value the train folds seed the cut and the held-out
// fold is scored. Ties break toward the smaller parameter.
CvResult cross_validate(const Corpus& c, const ExperimentConfig& cfg,
                        GridParam which, const std::vector<double>& grid);

// Stratified deterministic choice of the labeled pool (doc ids).
std::vector<std::string> sample_labeled_pool(const Corpus& c,
                                             double fraction,
                                             std::uint64_t seed);

}  // namespace edvw
