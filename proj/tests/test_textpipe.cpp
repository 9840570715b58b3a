#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "edvwcut/textpipe.hpp"

using namespace edvw;

namespace {

std::vector<RawDoc> parse_tsv(const std::string& text) {
  std::istringstream in(text);
  return read_corpus_tsv(in);
}

RawDoc doc(std::string id, int label, std::string text) {
  RawDoc d;
  d.id = std::move(id);
  d.label = label;
  d.text = std::move(text);
  return d;
}

// two word clusters plus one bridge word shared across them
std::vector<RawDoc> two_cluster_raw(int labeled_per_class) {
  std::vector<RawDoc> raw;
  for (int i = 1; i <= 4; ++i)
    raw.push_back(doc("a" + std::to_string(i), i <= labeled_per_class ? 0 : -1,
                      "alpha beta alpha beta alpha"));
  for (int i = 1; i <= 4; ++i)
    raw.push_back(doc("b" + std::to_string(i), i <= labeled_per_class ? 1 : -1,
                      "gamma delta gamma delta gamma"));
  raw[3].text += " bridge";
  raw[7].text += " bridge";
  return raw;
}

Corpus two_cluster_corpus(int labeled_per_class) {
  return build_corpus(two_cluster_raw(labeled_per_class), 0.0, 1.0, 100);
}

}  // namespace

TEST_CASE("tokenizer lowercases, splits and drops short tokens") {
  std::vector<std::string> toks = tokenize("Hello, WORLD! a I'm x2 3rd c++20");
  CHECK(toks == std::vector<std::string>{"hello", "world", "x2", "3rd", "20"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("!!! ... ?").empty());
  CHECK(tokenize("ab") == std::vector<std::string>{"ab"});
}

TEST_CASE("stop word list shape") {
  const auto& words = stop_words();
  CHECK(words.size() == 318);
  CHECK(std::is_sorted(words.begin(), words.end()));
  for (const auto& w : words) {
    CHECK(!w.empty());
    for (char c : w) CHECK((std::islower(static_cast<unsigned char>(c)) != 0));
  }
  CHECK(is_stop_word("the"));
  CHECK(is_stop_word("again"));
  CHECK(is_stop_word("yourselves"));
  CHECK_FALSE(is_stop_word("apple"));
  CHECK_FALSE(is_stop_word("alpha"));
}

TEST_CASE("corpus TSV parsing") {
  std::vector<RawDoc> docs = parse_tsv(
      "d1\t0\tsome text\n"
      "\n"
      "d2\t?\tmore words\r\n"
      "d3\t1\ttext\twith\ttabs\n");
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].id == "d1");
  CHECK(docs[0].label == 0);
  CHECK(docs[0].text == "some text");
  CHECK(docs[1].label == -1);
  CHECK(docs[1].text == "more words");
  CHECK(docs[2].label == 1);
  CHECK(docs[2].text == "text\twith\ttabs");

  CHECK_THROWS_AS(parse_tsv("d1 0 no tabs\n"), ParseError);
  CHECK_THROWS_AS(parse_tsv("d1\t0\n"), ParseError);
  CHECK_THROWS_AS(parse_tsv("\t0\ttext\n"), ParseError);
  CHECK_THROWS_AS(parse_tsv("d1\t2\ttext\n"), ParseError);
  CHECK_THROWS_AS(parse_tsv("d1\t0\tx\nd1\t1\ty\n"), ParseError);
}

TEST_CASE("corpus build: df filter, top-k ties and doc drop") {
  std::vector<RawDoc> raw = {
      doc("d1", 0, "apple apple banana the"),
      doc("d2", -1, "apple cherry the of"),
      doc("d3", 1, "banana cherry cherry"),
      doc("d4", -1, "durian apple banana"),
  };
  Corpus c = build_corpus(raw, 0.3, 0.8, 2);
  CHECK(c.vocabulary == std::vector<std::string>{"apple", "banana"});
  CHECK(c.doc_frequency == std::vector<int>{3, 3});
  REQUIRE(c.docs.size() == 4);
  CHECK(c.docs[0].counts.at("apple") == 2);
  CHECK(c.docs[0].counts.at("banana") == 1);
  CHECK(c.docs[0].token_total == 3);  // stop words excluded from the total
  CHECK(c.docs[1].counts.size() == 1);
  CHECK(c.docs[2].counts.at("banana") == 1);

  // document with no vocabulary word is dropped
  raw.push_back(doc("d5", -1, "the of the"));
  Corpus c2 = build_corpus(raw, 0.0, 1.0, 100);
  CHECK(c2.docs.size() == 4);
  for (const auto& d : c2.docs) CHECK(d.id != "d5");

  // max_df excludes ubiquitous words
  Corpus c3 = build_corpus(raw, 0.0, 0.5, 100);
  CHECK(std::find(c3.vocabulary.begin(), c3.vocabulary.end(), "apple") ==
        c3.vocabulary.end());

  CHECK_THROWS_AS(build_corpus(raw, 0.5, 0.5, 10), DomainError);
  CHECK_THROWS_AS(build_corpus(raw, 0.0, 1.0, 0), DomainError);
  CHECK_THROWS_AS(build_corpus({doc("d1", 0, "the of")}, 0.0, 1.0, 10),
                  EmptyVocabulary);
}

TEST_CASE("tfidf EDVWs: hand-checked weights") {
  Corpus c = build_corpus({doc("d1", 0, "cat cat dog"), doc("d2", 1, "cat dog dog")},
                          0.0, 1.0, 10);
  REQUIRE(c.vocabulary == std::vector<std::string>{"cat", "dog"});
  Hypergraph h = tfidf_edvws(c, 1.0);
  REQUIRE(h.num_edges() == 2);
  const Hyperedge& cat = h.edges[0];
  CHECK(cat.id == "cat");
  CHECK(cat.kappa == 1.0);
  REQUIRE(cat.size() == 2);
  // idf = ln(3/3) + 1 = 1; d1 vector (2,1)/sqrt(5)
  double s5 = std::sqrt(5.0);
  CHECK(cat.gamma_of(h.vertex_id("d1")) == doctest::Approx(2 / s5).epsilon(1e-12));
  CHECK(cat.gamma_of(h.vertex_id("d2")) == doctest::Approx(1 / s5).epsilon(1e-12));
  const Hyperedge& dog = h.edges[1];
  CHECK(dog.gamma_of(h.vertex_id("d1")) == doctest::Approx(1 / s5).epsilon(1e-12));
  CHECK(dog.gamma_of(h.vertex_id("d2")) == doctest::Approx(2 / s5).epsilon(1e-12));

  Hypergraph sq = tfidf_edvws(c, 2.0);
  CHECK(sq.edges[0].gamma_of(0) == doctest::Approx(0.8).epsilon(1e-12));

  CHECK_THROWS_AS(tfidf_edvws(c, -1.0), DomainError);
}

TEST_CASE("tfidf EDVWs: alpha 0 gives unit weights") {
  Corpus c = two_cluster_corpus(1);
  Hypergraph h = tfidf_edvws(c, 0.0);
  for (const auto& e : h.edges)
    for (double g : e.gamma) CHECK(g == 1.0);
}

TEST_CASE("tfidf EDVWs: raw and relative tf agree after normalization") {
  // documents of different lengths so the per-doc constant must cancel
  Corpus c = build_corpus(
      {doc("d1", 0, "cat cat dog"), doc("d2", 1, "cat dog dog dog fish"),
       doc("d3", -1, "fish cat fish")},
      0.0, 1.0, 10);
  Hypergraph raw = tfidf_edvws(c, 1.5, TfKind::Raw);
  Hypergraph rel = tfidf_edvws(c, 1.5, TfKind::Relative);
  REQUIRE(raw.num_edges() == rel.num_edges());
  for (std::size_t i = 0; i < raw.num_edges(); ++i) {
    REQUIRE(raw.edges[i].size() == rel.edges[i].size());
    for (std::size_t j = 0; j < raw.edges[i].size(); ++j)
      CHECK(raw.edges[i].gamma[j] ==
            doctest::Approx(rel.edges[i].gamma[j]).epsilon(1e-10));
  }
}

TEST_CASE("classify recovers the two clusters from one seed per class") {
  Corpus c = two_cluster_corpus(1);
  Hypergraph h = tfidf_edvws(c, 1.0);
  SplittingSpec spec = parse_split_spec("minhalf");
  std::map<std::string, int> labels = classify(h, spec, {"a1"}, {"b1"});
  REQUIRE(labels.size() == 8);
  for (int i = 1; i <= 4; ++i) {
    CHECK(labels.at("a" + std::to_string(i)) == 0);
    CHECK(labels.at("b" + std::to_string(i)) == 1);
  }
  // deterministic
  CHECK(classify(h, spec, {"a1"}, {"b1"}) == labels);
  // exact mode agrees here
  ClassifyOptions exact;
  exact.mode = ReduceMode::Exact;
  CHECK(classify(h, spec, {"a1"}, {"b1"}, exact) == labels);
  CHECK_THROWS_AS(classify(h, spec, {"zz"}, {"b1"}), UnknownVertex);
}

TEST_CASE("tiny threshold labels match all-or-nothing on the toy corpus") {
  Corpus c = two_cluster_corpus(1);
  Hypergraph h = tfidf_edvws(c, 1.0);
  ClassifyOptions exact;
  exact.mode = ReduceMode::Exact;
  auto thresh = classify(h, parse_split_spec("thresh:0.001"), {"a1"}, {"b1"}, exact);
  auto aon = classify(h, parse_split_spec("aon"), {"a1"}, {"b1"}, exact);
  CHECK(thresh == aon);
}

TEST_CASE("accuracy compares aligned label maps") {
  std::map<std::string, int> t{{"a", 0}, {"b", 1}};
  CHECK(accuracy({{"a", 0}, {"b", 1}}, t) == 1.0);
  CHECK(accuracy({{"a", 1}, {"b", 0}}, t) == 0.0);
  CHECK(accuracy({{"a", 0}, {"b", 0}}, t) == 0.5);
  CHECK_THROWS_AS(accuracy({{"a", 0}}, t), KeyMismatch);
  CHECK_THROWS_AS(accuracy({{"a", 0}, {"c", 1}}, t), KeyMismatch);
  CHECK_THROWS_AS(accuracy({}, {}), KeyMismatch);
}

TEST_CASE("labeled pool sampling is stratified and deterministic") {
  Corpus c;
  for (int i = 0; i < 6; ++i) {
    CorpusDoc d;
    d.id = "a" + std::to_string(i);
    d.label = 0;
    c.docs.push_back(d);
  }
  for (int i = 0; i < 4; ++i) {
    CorpusDoc d;
    d.id = "b" + std::to_string(i);
    d.label = 1;
    c.docs.push_back(d);
  }
  for (int i = 0; i < 3; ++i) {
    CorpusDoc d;
    d.id = "u" + std::to_string(i);
    d.label = -1;
    c.docs.push_back(d);
  }
  std::vector<std::string> pool = sample_labeled_pool(c, 0.5, 7);
  CHECK(pool.size() == 5);
  CHECK(std::is_sorted(pool.begin(), pool.end()));
  int n0 = 0, n1 = 0;
  for (const auto& id : pool) {
    CHECK(id[0] != 'u');
    (id[0] == 'a' ? n0 : n1) += 1;
  }
  CHECK(n0 == 3);
  CHECK(n1 == 2);
  CHECK(sample_labeled_pool(c, 0.5, 7) == pool);
  CHECK(sample_labeled_pool(c, 1.0, 7).size() == 10);
  CHECK(sample_labeled_pool(c, 0.01, 7).size() == 2);  // at least one per class
  CHECK_THROWS_AS(sample_labeled_pool(c, 0.0, 7), DomainError);
  CHECK_THROWS_AS(sample_labeled_pool(c, 1.5, 7), DomainError);
}

TEST_CASE("cross validation on the clean corpus") {
  Corpus c = two_cluster_corpus(4);  // every document labeled
  ExperimentConfig cfg;
  cfg.split = "minhalf";
  cfg.labeled_fraction = 1.0;
  cfg.folds = 2;
  cfg.seed = 11;
  CvResult res = cross_validate(c, cfg, GridParam::Alpha, {2.0, 1.0});
  REQUIRE(res.rows.size() == 4);  // 2 grid values x 2 folds
  for (const auto& row : res.rows) {
    CHECK(row.accuracy == doctest::Approx(1.0));
    CHECK(row.fold >= 0);
    CHECK(row.fold < 2);
  }
  REQUIRE(res.mean_by_param.size() == 2);
  CHECK(res.mean_by_param[0].first == 2.0);
  CHECK(res.mean_by_param[1].first == 1.0);
  CHECK(res.best_param == 1.0);  // tie breaks toward the smaller parameter

  CvResult again = cross_validate(c, cfg, GridParam::Alpha, {2.0, 1.0});
  CHECK(again.best_param == res.best_param);
  REQUIRE(again.rows.size() == res.rows.size());
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    CHECK(again.rows[i].param == res.rows[i].param);
    CHECK(again.rows[i].fold == res.rows[i].fold);
    CHECK(again.rows[i].accuracy == res.rows[i].accuracy);
  }
}

TEST_CASE("cross validation: beta grid and error paths") {
  Corpus c = two_cluster_corpus(4);
  ExperimentConfig cfg;
  cfg.split = "thresh:0.3";
  cfg.labeled_fraction = 1.0;
  cfg.folds = 2;
  CvResult res = cross_validate(c, cfg, GridParam::Beta, {0.4, 0.2});
  CHECK(res.best_param == 0.2);
  for (const auto& row : res.rows) CHECK(row.accuracy == doctest::Approx(1.0));

  cfg.split = "minhalf";
  CHECK_THROWS_AS(cross_validate(c, cfg, GridParam::Beta, {0.2}), FamilyError);
  CHECK_THROWS_AS(cross_validate(c, cfg, GridParam::Alpha, {}), DomainError);
  cfg.folds = 1;
  CHECK_THROWS_AS(cross_validate(c, cfg, GridParam::Alpha, {1.0}), DomainError);
  cfg.folds = 9;  // more folds than labeled docs in a class
  CHECK_THROWS_AS(cross_validate(c, cfg, GridParam::Alpha, {1.0}), DomainError);
}
