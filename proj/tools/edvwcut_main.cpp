// edvwcut: reduce EDVW hypergraphs to flow graphs, solve min s-t cuts,
// sparsify splitting functions, run the text classification experiment and
// verify the reduction properties on a given instance.
//
// Exit codes: 0 success; 1 failed property or infeasible seeds; 2 usage,
// parse or input error; 3 reduction or sparsification error.
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edvwcut/max_flow.hpp"
#include "edvwcut/reduction.hpp"
#include "edvwcut/sparsify.hpp"
#include "edvwcut/splitting.hpp"
#include "edvwcut/textpipe.hpp"

using namespace edvw;

namespace {

int log_level() {
  static int level = [] {
    const char* env = std::getenv("EDVW_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "info: " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "debug: " << msg << "\n";
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = std::stod(item, &pos);
    if (pos != item.size()) throw DomainError("bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty number list");
  return out;
}

std::vector<std::string> parse_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw DomainError("empty name list");
  return out;
}

ReduceMode parse_mode(const std::string& text) {
  if (text == "exact") return ReduceMode::Exact;
  if (text == "sparse") return ReduceMode::Sparsified;
  throw DomainError("mode must be exact or sparse, got '" + text + "'");
}

std::vector<VertexId> resolve_seeds(const Hypergraph& h,
                                    const std::string& list) {
  std::vector<VertexId> out;
  for (const std::string& name : parse_names(list))
    out.push_back(h.vertex_id(name));
  return out;
}

// exit 2: usage, file or spec problems; exit 3: reduction machinery
int error_exit_code(const std::exception& e) {
  if (dynamic_cast<const InfeasibleSeeds*>(&e)) return 1;
  if (dynamic_cast<const EdgeTooSmall*>(&e) ||
      dynamic_cast<const EdgeTooLarge*>(&e) ||
      dynamic_cast<const TooManyAuxiliaries*>(&e) ||
      dynamic_cast<const NegativeCoefficient*>(&e) ||
      dynamic_cast<const NonConcavePoints*>(&e) ||
      dynamic_cast<const InfiniteInitialSlope*>(&e) ||
      dynamic_cast<const NoTangentFound*>(&e) ||
      dynamic_cast<const MalformedEnvelope*>(&e))
    return 3;
  return 2;
}

struct ReduceArgs {
  std::string input, split, output;
  std::string mode = "exact";
  double epsilon = 0.1;
  int threads = 1;
};

int run_reduce(const ReduceArgs& a) {
  Hypergraph h = parse_hypergraph_file(a.input);
  log_info("parsed " + std::to_string(h.num_vertices()) + " vertices, " +
           std::to_string(h.num_edges()) + " edges");
  SplittingSpec spec = parse_split_spec(a.split);
  ReduceCaps caps;
  caps.threads = a.threads;
  Reduction red;
  try {
    red = reduce_hypergraph(h, spec, parse_mode(a.mode), a.epsilon, caps);
  } catch (const EdgeTooLarge& e) {
    std::cerr << "error: " << e.what()
              << " (consider --mode sparse for large edges)\n";
    return 3;
  }
  std::ofstream out(a.output);
  if (!out) throw DomainError("cannot write '" + a.output + "'");
  write_flow_network(out, red.graph);
  std::cout << "nodes " << red.graph.nodes.size() << "\n";
  std::cout << "arcs " << red.graph.arcs.size() << "\n";
  for (const auto& s : red.strategies)
    std::cout << "edge " << s.edge_id << " " << s.gadget << " terms "
              << s.term_count << (s.sparsified ? " sparsified" : " exact")
              << "\n";
  return 0;
}

struct SparsifyArgs {
  std::string split, gamma, output;
  double epsilon = 0.1;
};

int run_sparsify(const SparsifyArgs& a) {
  SplittingSpec spec = parse_split_spec(a.split);
  std::vector<double> gam = parse_doubles(a.gamma);
  std::vector<EdgeInput> edges(1);
  std::vector<std::string> names;
  edges[0].id = "e";
  for (std::size_t i = 0; i < gam.size(); ++i) {
    names.push_back("m" + std::to_string(i));
    edges[0].weights.emplace_back(names.back(), gam[i]);
  }
  Hypergraph h = build_hypergraph(names, edges);
  const Hyperedge& e = h.edges[0];
  std::vector<double> q = enumerate_qs(e);
  if (q.empty()) throw DomainError("edge has no interior subset sums");
  std::vector<double> g;
  for (double x : q) g.push_back(eval_g_total(spec, e.gamma_total, x));
  PiecewiseLinear env = sparsify_discrete(q, g, a.epsilon);
  log_debug("envelope has " + std::to_string(env.pieces.size()) + " pieces");
  std::ostringstream csv;
  csv << "piece,slope,intercept,breakpoint\n";
  for (std::size_t i = 0; i < env.pieces.size(); ++i) {
    double breakpoint = env.x_max;
    if (i + 1 < env.pieces.size()) {
      const Piece& cur = env.pieces[i];
      const Piece& nxt = env.pieces[i + 1];
      breakpoint = (nxt.intercept - cur.intercept) / (cur.slope - nxt.slope);
    }
    csv << (i + 1) << ',' << fmt(env.pieces[i].slope) << ','
        << fmt(env.pieces[i].intercept) << ',' << fmt(breakpoint) << "\n";
  }
  if (a.output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(a.output);
    if (!out) throw DomainError("cannot write '" + a.output + "'");
    out << csv.str();
  }
  return 0;
}

struct MincutArgs {
  std::string input;
  int source = -1, sink = -1;
};

int run_mincut(const MincutArgs& a) {
  FlowNetwork g = parse_flow_network_file(a.input);
  NodeIndex s = a.source, t = a.sink;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (a.source < 0 && g.nodes[i].kind == NodeKind::TerminalSource)
      s = static_cast<NodeIndex>(i);
    if (a.sink < 0 && g.nodes[i].kind == NodeKind::TerminalSink)
      t = static_cast<NodeIndex>(i);
  }
  if (s < 0 || t < 0)
    throw DomainError(
        "graph has no terminal nodes; pass --source and --sink");
  CutResult cut = max_flow_min_cut(g, s, t);
  std::cout << "value " << fmt(cut.value) << "\n";
  std::cout << "source_side";
  for (NodeIndex v : cut.source_side) std::cout << ' ' << v;
  std::cout << "\n";
  return 0;
}

struct HypercutArgs {
  std::string input, split, sources, sinks;
  std::string mode = "exact";
  double epsilon = 0.1;
  int threads = 1;
};

int run_hypercut(const HypercutArgs& a) {
  Hypergraph h = parse_hypergraph_file(a.input);
  SplittingSpec spec = parse_split_spec(a.split);
  ReduceCaps caps;
  caps.threads = a.threads;
  ProjectedCut cut =
      hypergraph_min_st_cut(h, spec, resolve_seeds(h, a.sources),
                            resolve_seeds(h, a.sinks), parse_mode(a.mode),
                            a.epsilon, caps);
  std::cout << "value " << fmt(cut.value) << "\n";
  std::cout << "source_side";
  for (VertexId v : cut.S) std::cout << ' ' << h.vertex_names[v];
  std::cout << "\n";
  return 0;
}

struct ClassifyArgs {
  std::string input, output;
  std::string split = "minhalf";
  std::string grid = "alpha";
  std::string values;
  std::string tf = "raw";
  std::string mode = "sparse";
  double alpha = 1.0, beta = 0.15;
  double labeled_fraction = 0.25;
  double min_df = 0.002, max_df = 0.5;
  int top_k = 200, folds = 5, threads = 1;
  double epsilon = 0.05;
  std::uint64_t seed = 0;
};

int run_classify(const ClassifyArgs& a) {
  std::vector<RawDoc> raw = read_corpus_tsv_file(a.input);
  Corpus corpus = build_corpus(raw, a.min_df, a.max_df, a.top_k);
  log_info("corpus: " + std::to_string(corpus.docs.size()) + " docs, " +
           std::to_string(corpus.vocabulary.size()) + " words");
  ExperimentConfig cfg;
  cfg.alpha = a.alpha;
  cfg.beta = a.beta;
  cfg.split = a.split == "thresh" ? "thresh:" + fmt(a.beta) : a.split;
  cfg.labeled_fraction = a.labeled_fraction;
  cfg.folds = a.folds;
  cfg.seed = a.seed;
  cfg.tf = a.tf == "relative" ? TfKind::Relative : TfKind::Raw;
  cfg.classify_opts.mode = parse_mode(a.mode);
  cfg.classify_opts.epsilon = a.epsilon;
  cfg.classify_opts.caps.threads = a.threads;
  GridParam which = a.grid == "beta" ? GridParam::Beta : GridParam::Alpha;
  if (a.grid != "alpha" && a.grid != "beta")
    throw DomainError("grid must be alpha or beta, got '" + a.grid + "'");
  std::vector<double> grid = a.values.empty()
                                 ? std::vector<double>{0.0, 0.5, 1.0, 2.0}
                                 : parse_doubles(a.values);
  CvResult res = cross_validate(corpus, cfg, which, grid);
  std::cout << "best_param " << fmt(res.best_param) << "\n";
  for (const auto& [param, mean] : res.mean_by_param)
    std::cout << "mean " << fmt(param) << ' ' << fmt(mean) << "\n";
  if (!a.output.empty()) {
    std::ofstream out(a.output);
    if (!out) throw DomainError("cannot write '" + a.output + "'");
    out << "param,fold,accuracy\n";
    for (const CvRow& row : res.rows)
      out << fmt(row.param) << ',' << row.fold << ',' << fmt(row.accuracy)
          << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string input, split;
  int max_edge_size = 8;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
};

std::string subset_names(const Hypergraph& h, const Hyperedge& e,
                         std::uint32_t mask) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i)
    if ((mask >> i) & 1u) {
      if (!out.empty()) out += ',';
      out += h.vertex_names[e.members[i]];
    }
  return out.empty() ? "{}" : out;
}

int run_verify(const VerifyArgs& a) {
  Hypergraph h = parse_hypergraph_file(a.input);
  SplittingSpec spec = parse_split_spec(a.split);
  if (a.max_edge_size < 2 || a.max_edge_size > 12)
    throw DomainError("max edge size must be in [2, 12]");
  for (const Hyperedge& e : h.edges)
    if (static_cast<int>(e.size()) > a.max_edge_size)
      throw DomainError("edge " + e.id + " has " + std::to_string(e.size()) +
                        " members, over the --max-edge-size limit");

  bool ok = true;
  auto dump = [&](const Hyperedge& e, std::uint32_t mask, double want,
                  double got) {
    std::cout << "counterexample edge " << e.id << " subset "
              << subset_names(h, e, mask) << " expected " << fmt(want)
              << " got " << fmt(got) << "\n";
    ok = false;
  };
  auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-8 * std::max({1.0, std::abs(x), std::abs(y)});
  };

  int submodular = 0;
  for (const Hyperedge& e : h.edges) {
    if (!is_submodular_bruteforce(e, spec)) {
      std::cout << "counterexample edge " << e.id
                << " violates submodularity\n";
      ok = false;
      continue;
    }
    ++submodular;
  }

  int gadget_eq = 0;
  for (const Hyperedge& e : h.edges) {
    if (e.size() < 2) continue;
    FlowNetwork net;
    double scale = spec.scale_by_kappa ? e.kappa : 1.0;
    switch (spec.family) {
      case SplitFamily::Product:
        net = expand_clique(e, scale);
        break;
      case SplitFamily::MinHalf:
        net = expand_star(e, scale);
        break;
      case SplitFamily::ThresholdedMin:
        net = expand_sym(e, spec.threshold_for(e.gamma_total), scale);
        break;
      case SplitFamily::WeightedMin:
        net = expand_asym(e, scale * spec.wmin_a, scale * spec.wmin_b);
        break;
      case SplitFamily::AllOrNothing:
        net = expand_lawler(e, e.kappa);
        break;
      case SplitFamily::CustomConcave:
        continue;  // no single closed-form gadget; covered below
    }
    bool edge_ok = true;
    for (std::uint32_t m = 0; m < (1u << e.size()); ++m) {
      double want = eval_split_mask(spec, e, m);
      double got = gadget_split_value(net, m, e.size());
      if (!close(want, got)) {
        dump(e, m, want, got);
        edge_ok = false;
        break;
      }
    }
    if (edge_ok) ++gadget_eq;
  }

  int exactness = 0;
  for (const Hyperedge& e : h.edges) {
    if (e.size() < 2 || spec.family == SplitFamily::AllOrNothing) continue;
    GadgetCombination comb;
    try {
      comb = spec.is_symmetric_family() ? reduce_symmetric(e, spec)
                                        : reduce_asymmetric(e, spec);
    } catch (const Error& err) {
      std::cout << "reduction_error edge " << e.id << ": " << err.what()
                << "\n";
      ok = false;
      continue;
    }
    double scale = spec.scale_by_kappa ? e.kappa : 1.0;
    bool edge_ok = true;
    for (std::uint32_t m = 0; m < (1u << e.size()); ++m) {
      double want = eval_split_mask(spec, e, m);
      double got = combination_value(comb, e, scale, m);
      if (!close(want, got)) {
        dump(e, m, want, got);
        edge_ok = false;
        break;
      }
    }
    if (edge_ok) ++exactness;
  }

  int sandwich = 0;
  for (const Hyperedge& e : h.edges) {
    if (e.size() < 2 || !spec.is_continuous()) continue;
    bool edge_ok = true;
    if (spec.is_symmetric_family()) {
      std::vector<double> q = enumerate_qs(e);
      if (q.empty()) continue;
      std::vector<double> g;
      for (double x : q) g.push_back(eval_g_total(spec, e.gamma_total, x));
      PiecewiseLinear env;
      try {
        env = sparsify_discrete(q, g, a.epsilon);
      } catch (const Error& err) {
        std::cout << "reduction_error edge " << e.id << ": " << err.what()
                  << "\n";
        ok = false;
        continue;
      }
      for (std::size_t i = 0; i < q.size(); ++i) {
        double v = env.eval(q[i]);
        if (v < g[i] - 1e-9 * (1.0 + g[i]) ||
            v > (1.0 + a.epsilon) * g[i] * (1.0 + 1e-9)) {
          dump(e, 0, g[i], v);
          edge_ok = false;
          break;
        }
      }
    } else {
      std::vector<double> q = enumerate_qa(e);
      if (q.empty()) continue;
      std::vector<double> g;
      for (double x : q) g.push_back(eval_g_total(spec, e.gamma_total, x));
      std::vector<TentTerm> tents;
      try {
        tents = sparsify_asym_discrete(q, g, e.gamma_total, a.epsilon);
      } catch (const Error& err) {
        std::cout << "reduction_error edge " << e.id << ": " << err.what()
                  << "\n";
        ok = false;
        continue;
      }
      for (std::size_t i = 0; i < q.size(); ++i) {
        double v = 0.0;
        for (const TentTerm& t : tents)
          v += t.coeff * std::min((e.gamma_total - t.peak) * q[i],
                                  t.peak * (e.gamma_total - q[i]));
        if (v < g[i] - 1e-9 * (1.0 + g[i]) ||
            v > (1.0 + a.epsilon) * g[i] * (1.0 + 1e-9)) {
          dump(e, 0, g[i], v);
          edge_ok = false;
          break;
        }
      }
    }
    if (edge_ok) ++sandwich;
  }

  std::cout << "submodularity " << submodular << " edges ok\n";
  std::cout << "gadget_equivalence " << gadget_eq << " edges ok\n";
  std::cout << "reduction_exactness " << exactness << " edges ok\n";
  std::cout << "sparsifier_sandwich " << sandwich << " edges ok\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypergraph min s-t cut with edge-dependent vertex weights"};
  app.require_subcommand(1);

  ReduceArgs ra;
  auto* reduce = app.add_subcommand(
      "reduce", "reduce a hypergraph to a directed flow graph");
  reduce->add_option("--input", ra.input, "hypergraph file (.hg)")
      ->required();
  reduce->add_option("--split", ra.split, "splitting spec string")->required();
  reduce->add_option("--mode", ra.mode, "exact or sparse");
  reduce->add_option("--epsilon", ra.epsilon, "sparsification tolerance");
  reduce->add_option("--output", ra.output, "flow graph file (.fg)")
      ->required();
  reduce->add_option("--threads", ra.threads, "worker threads");

  SparsifyArgs sa;
  auto* sparsify = app.add_subcommand(
      "sparsify", "print the piecewise-linear envelope of a splitting g");
  sparsify->add_option("--split", sa.split, "splitting spec string")
      ->required();
  sparsify->add_option("--gamma", sa.gamma, "comma-separated member weights")
      ->required();
  sparsify->add_option("--epsilon", sa.epsilon, "approximation tolerance");
  sparsify->add_option("--output", sa.output, "CSV output path");

  MincutArgs ma;
  auto* mincut =
      app.add_subcommand("mincut", "min s-t cut of a flow graph file");
  mincut->add_option("--input", ma.input, "flow graph file (.fg)")
      ->required();
  mincut->add_option("--source", ma.source, "source node index");
  mincut->add_option("--sink", ma.sink, "sink node index");

  HypercutArgs ha;
  auto* hypercut = app.add_subcommand(
      "hypercut", "min s-t cut of a hypergraph under a splitting spec");
  hypercut->add_option("--input", ha.input, "hypergraph file (.hg)")
      ->required();
  hypercut->add_option("--split", ha.split, "splitting spec string")
      ->required();
  hypercut->add_option("--sources", ha.sources, "comma-separated seed names")
      ->required();
  hypercut->add_option("--sinks", ha.sinks, "comma-separated seed names")
      ->required();
  hypercut->add_option("--mode", ha.mode, "exact or sparse");
  hypercut->add_option("--epsilon", ha.epsilon, "sparsification tolerance");
  hypercut->add_option("--threads", ha.threads, "worker threads");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand(
      "classify", "cross-validated semi-supervised text classification");
  classify->add_option("--input", ca.input, "corpus TSV file")->required();
  classify->add_option("--split", ca.split, "splitting spec string");
  classify->add_option("--grid", ca.grid, "grid parameter: alpha or beta");
  classify->add_option("--values", ca.values, "comma-separated grid values");
  classify->add_option("--alpha", ca.alpha, "EDVW exponent");
  classify->add_option("--beta", ca.beta, "threshold fraction");
  classify->add_option("--labeled-fraction", ca.labeled_fraction,
                       "labeled pool fraction");
  classify->add_option("--folds", ca.folds, "cross-validation folds");
  classify->add_option("--seed", ca.seed, "random seed");
  classify->add_option("--tf", ca.tf, "term frequency: raw or relative");
  classify->add_option("--min-df", ca.min_df, "min document frequency");
  classify->add_option("--max-df", ca.max_df, "max document frequency");
  classify->add_option("--top-k", ca.top_k, "vocabulary size cap");
  classify->add_option("--mode", ca.mode, "exact or sparse");
  classify->add_option("--epsilon", ca.epsilon, "sparsification tolerance");
  classify->add_option("--threads", ca.threads, "worker threads");
  classify->add_option("--output", ca.output, "per-fold results CSV path");

  VerifyArgs va;
  auto* verify = app.add_subcommand(
      "verify", "check reduction properties on a hypergraph instance");
  verify->add_option("--input", va.input, "hypergraph file (.hg)")
      ->required();
  verify->add_option("--split", va.split, "splitting spec string")
      ->required();
  verify->add_option("--max-edge-size", va.max_edge_size,
                     "largest edge the exhaustive checks accept");
  verify->add_option("--epsilon", va.epsilon, "sandwich tolerance");
  verify->add_option("--seed", va.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (reduce->parsed()) return run_reduce(ra);
    if (sparsify->parsed()) return run_sparsify(sa);
    if (mincut->parsed()) return run_mincut(ma);
    if (hypercut->parsed()) return run_hypercut(ha);
    if (classify->parsed()) return run_classify(ca);
    if (verify->parsed()) return run_verify(va);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return error_exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
