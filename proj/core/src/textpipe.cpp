#include "edvwcut/textpipe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace edvw {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      if (cur.size() >= 2) out.push_back(cur);
      cur.clear();
    }
  }
  if (cur.size() >= 2) out.push_back(cur);
  return out;
}

std::vector<RawDoc> read_corpus_tsv(std::istream& in) {
  std::vector<RawDoc> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto at = [&](const std::string& what) {
      return "corpus line " + std::to_string(line_no) + ": " + what;
    };
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos
                                             : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw ParseError(at("expected doc_id<TAB>label<TAB>text"));
    RawDoc d;
    d.id = line.substr(0, t1);
    std::string label = line.substr(t1 + 1, t2 - t1 - 1);
    d.text = line.substr(t2 + 1);
    if (d.id.empty()) throw ParseError(at("empty doc id"));
    if (label == "?")
      d.label = -1;
    else if (label == "0")
      d.label = 0;
    else if (label == "1")
      d.label = 1;
    else
      throw ParseError(at("label must be 0, 1 or ?"));
    if (!seen.insert(d.id).second) throw ParseError(at("duplicate doc id " + d.id));
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<RawDoc> read_corpus_tsv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_corpus_tsv(in);
}

Corpus build_corpus(const std::vector<RawDoc>& raw, double min_df,
                    double max_df, int top_k) {
  if (!(0.0 <= min_df && min_df < max_df && max_df <= 1.0))
    throw DomainError("need 0 <= min_df < max_df <= 1");
  if (top_k < 1) throw DomainError("top_k must be >= 1");
  struct WordStat {
    long long total = 0;
    int df = 0;
  };
  std::vector<std::vector<std::string>> doc_tokens(raw.size());
  std::unordered_map<std::string, WordStat> stats;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::unordered_set<std::string> in_doc;
    for (std::string& tok : tokenize(raw[i].text)) {
      if (is_stop_word(tok)) continue;
      auto& st = stats[tok];
      st.total += 1;
      if (in_doc.insert(tok).second) st.df += 1;
      doc_tokens[i].push_back(std::move(tok));
    }
  }
  double n_docs = static_cast<double>(raw.size());
  std::vector<std::pair<std::string, long long>> candidates;
  for (const auto& [word, st] : stats) {
    double frac = st.df / n_docs;
    if (frac >= min_df && frac <= max_df) candidates.emplace_back(word, st.total);
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (candidates.size() > static_cast<std::size_t>(top_k))
    candidates.resize(static_cast<std::size_t>(top_k));
  Corpus c;
  for (auto& [word, total] : candidates) c.vocabulary.push_back(std::move(word));
  std::sort(c.vocabulary.begin(), c.vocabulary.end());
  if (c.vocabulary.empty()) throw EmptyVocabulary("no vocabulary word survived filtering");
  std::unordered_set<std::string> vocab(c.vocabulary.begin(), c.vocabulary.end());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    CorpusDoc d;
    d.id = raw[i].id;
    d.label = raw[i].label;
    d.token_total = static_cast<int>(doc_tokens[i].size());
    for (const std::string& tok : doc_tokens[i])
      if (vocab.count(tok)) d.counts[tok] += 1;
    if (!d.counts.empty()) c.docs.push_back(std::move(d));
  }
  if (c.docs.empty()) throw EmptyVocabulary("every document was dropped");
  c.doc_frequency.assign(c.vocabulary.size(), 0);
  std::unordered_map<std::string, std::size_t> vocab_index;
  for (std::size_t i = 0; i < c.vocabulary.size(); ++i)
    vocab_index[c.vocabulary[i]] = i;
  for (const auto& d : c.docs)
    for (const auto& [word, cnt] : d.counts) c.doc_frequency[vocab_index[word]] += 1;
  return c;
}

Hypergraph tfidf_edvws(const Corpus& c, double alpha, TfKind tf) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  if (c.vocabulary.empty()) throw EmptyVocabulary("corpus has no vocabulary");
  std::unordered_map<std::string, std::size_t> vocab_index;
  for (std::size_t i = 0; i < c.vocabulary.size(); ++i)
    vocab_index[c.vocabulary[i]] = i;
  double n = static_cast<double>(c.docs.size());
  std::vector<double> idf(c.vocabulary.size());
  for (std::size_t i = 0; i < c.vocabulary.size(); ++i)
    idf[i] = std::log((1.0 + n) / (1.0 + c.doc_frequency[i])) + 1.0;
  // gamma values per word, in document order
  std::vector<std::vector<std::pair<std::string, double>>> edge_weights(
      c.vocabulary.size());
  for (const auto& d : c.docs) {
    double norm_sq = 0.0;
    for (const auto& [word, cnt] : d.counts) {
      double tfv = tf == TfKind::Raw
                       ? static_cast<double>(cnt)
                       : static_cast<double>(cnt) / std::max(1, d.token_total);
      norm_sq += tfv * idf[vocab_index.at(word)] * tfv * idf[vocab_index.at(word)];
    }
    double norm = std::sqrt(norm_sq);
    for (const auto& [word, cnt] : d.counts) {
      double tfv = tf == TfKind::Raw
                       ? static_cast<double>(cnt)
                       : static_cast<double>(cnt) / std::max(1, d.token_total);
      double v = tfv * idf[vocab_index.at(word)] / norm;
      edge_weights[vocab_index.at(word)].emplace_back(d.id, std::pow(v, alpha));
    }
  }
  std::vector<std::string> names;
  names.reserve(c.docs.size());
  for (const auto& d : c.docs) names.push_back(d.id);
  std::vector<EdgeInput> edges;
  for (std::size_t i = 0; i < c.vocabulary.size(); ++i) {
    if (edge_weights[i].empty()) continue;
    EdgeInput e;
    e.id = c.vocabulary[i];
    e.kappa = 1.0;
    e.weights = std::move(edge_weights[i]);
    edges.push_back(std::move(e));
  }
  return build_hypergraph(names, edges);
}

std::map<std::string, int> classify(const Hypergraph& h,
                                    const SplittingSpec& spec,
                                    const std::vector<std::string>& labeled_1,
                                    const std::vector<std::string>& labeled_2,
                                    const ClassifyOptions& opts) {
  std::vector<VertexId> sources, sinks;
  sources.reserve(labeled_1.size());
  sinks.reserve(labeled_2.size());
  for (const auto& name : labeled_1) sources.push_back(h.vertex_id(name));
  for (const auto& name : labeled_2) sinks.push_back(h.vertex_id(name));
  ProjectedCut cut = hypergraph_min_st_cut(h, spec, sources, sinks, opts.mode,
                                           opts.epsilon, opts.caps);
  std::vector<char> on_source(h.num_vertices(), 0);
  for (VertexId v : cut.S) on_source[static_cast<std::size_t>(v)] = 1;
  std::map<std::string, int> labels;
  for (std::size_t v = 0; v < h.num_vertices(); ++v)
    labels[h.vertex_names[v]] = on_source[v] ? 0 : 1;
  return labels;
}

double accuracy(const std::map<std::string, int>& pred,
                const std::map<std::string, int>& truth) {
  if (pred.size() != truth.size())
    throw KeyMismatch("prediction and truth differ in size");
  if (truth.empty()) throw KeyMismatch("empty label maps");
  std::size_t match = 0;
  auto it = truth.begin();
  for (const auto& [key, label] : pred) {
    if (it->first != key)
      throw KeyMismatch("prediction and truth keys differ at " + key);
    if (it->second == label) ++match;
    ++it;
  }
  return static_cast<double>(match) / static_cast<double>(truth.size());
}

namespace {

// deterministic regardless of standard library (std::shuffle is not pinned)
template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

std::vector<std::string> sample_labeled_pool(const Corpus& c, double fraction,
                                             std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw DomainError("labeled fraction must lie in (0, 1]");
  std::vector<std::string> by_class[2];
  for (const auto& d : c.docs)
    if (d.label == 0 || d.label == 1) by_class[d.label].push_back(d.id);
  std::mt19937_64 rng(seed);
  std::vector<std::string> pool;
  for (auto& cls : by_class) {
    if (cls.empty()) continue;
    fisher_yates(cls, rng);
    auto take = static_cast<std::size_t>(std::llround(fraction * cls.size()));
    take = std::min(cls.size(), std::max<std::size_t>(1, take));
    pool.insert(pool.end(), cls.begin(), cls.begin() + take);
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

CvResult cross_validate(const Corpus& c, const ExperimentConfig& cfg,
                        GridParam which, const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("empty parameter grid");
  if (cfg.folds < 2) throw DomainError("need at least 2 folds");
  SplittingSpec base_spec = parse_split_spec(cfg.split);
  if (which == GridParam::Beta && base_spec.family != SplitFamily::ThresholdedMin)
    throw FamilyError("beta grid needs a thresholded-min splitting spec");
  std::unordered_map<std::string, int> label_of;
  for (const auto& d : c.docs) label_of[d.id] = d.label;
  std::vector<std::string> pool =
      sample_labeled_pool(c, cfg.labeled_fraction, cfg.seed);
  std::vector<std::string> by_class[2];
  for (const auto& id : pool) by_class[label_of.at(id)].push_back(id);
  for (const auto& cls : by_class)
    if (cls.size() < static_cast<std::size_t>(cfg.folds))
      throw DomainError("folds exceed labeled examples in a class");
  // stratified fold assignment: shuffle each class, then round-robin
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::vector<std::string>> fold_members(
      static_cast<std::size_t>(cfg.folds));
  for (auto& cls : by_class) {
    fisher_yates(cls, rng);
    for (std::size_t i = 0; i < cls.size(); ++i)
      fold_members[i % static_cast<std::size_t>(cfg.folds)].push_back(cls[i]);
  }
  CvResult result;
  for (double p : grid) {
    double alpha = which == GridParam::Alpha ? p : cfg.alpha;
    SplittingSpec spec = base_spec;
    if (which == GridParam::Beta) {
      spec.beta = p;
      spec.b_abs = 0.0;
    }
    Hypergraph h = tfidf_edvws(c, alpha, cfg.tf);
    double mean = 0.0;
    for (int f = 0; f < cfg.folds; ++f) {
      std::unordered_set<std::string> held(fold_members[f].begin(),
                                           fold_members[f].end());
      std::vector<std::string> seeds[2];
      for (const auto& id : pool)
        if (!held.count(id)) seeds[label_of.at(id)].push_back(id);
      std::map<std::string, int> pred =
          classify(h, spec, seeds[0], seeds[1], cfg.classify_opts);
      std::map<std::string, int> pred_held, truth_held;
      for (const auto& id : fold_members[f]) {
        pred_held[id] = pred.at(id);
        truth_held[id] = label_of.at(id);
      }
      double acc = accuracy(pred_held, truth_held);
      result.rows.push_back({p, f, acc});
      mean += acc;
    }
    mean /= cfg.folds;
    result.mean_by_param.emplace_back(p, mean);
  }
  result.best_param = result.mean_by_param.front().first;
  double best_mean = result.mean_by_param.front().second;
  for (const auto& [p, mean] : result.mean_by_param) {
    if (mean > best_mean + 1e-12 ||
        (std::abs(mean - best_mean) <= 1e-12 && p < result.best_param)) {
      best_mean = std::max(best_mean, mean);
      result.best_param = p;
    }
  }
  return result;
}

}  // namespace edvw
