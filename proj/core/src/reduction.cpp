#include "edvwcut/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "edvwcut/sparsify.hpp"

namespace edvw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FlowNetwork member_nodes(const Hyperedge& e) {
  FlowNetwork g;
  for (VertexId v : e.members) {
    NodeTag t;
    t.kind = NodeKind::Original;
    t.vertex = v;
    g.add_node(t);
  }
  return g;
}

NodeIndex add_aux(FlowNetwork& g, const std::string& edge_id, int index) {
  NodeTag t;
  t.kind = NodeKind::Auxiliary;
  t.edge_id = edge_id;
  t.aux_index = index;
  return g.add_node(t);
}

}  // namespace

FlowNetwork expand_clique(const Hyperedge& e, double scale) {
  if (e.size() < 2) throw EdgeTooSmall("edge " + e.id + ": clique gadget needs |e| >= 2");
  FlowNetwork g = member_nodes(e);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      g.add_undirected(static_cast<NodeIndex>(i), static_cast<NodeIndex>(j),
                       scale * e.gamma[i] * e.gamma[j]);
  return g;
}

FlowNetwork expand_star(const Hyperedge& e, double scale) {
  if (e.size() < 1) throw EdgeTooSmall("edge " + e.id + ": star gadget needs |e| >= 1");
  FlowNetwork g = member_nodes(e);
  NodeIndex hub = add_aux(g, e.id, 0);
  for (std::size_t i = 0; i < e.size(); ++i)
    g.add_undirected(static_cast<NodeIndex>(i), hub, scale * e.gamma[i]);
  return g;
}

FlowNetwork expand_sym(const Hyperedge& e, double b, double scale) {
  if (!(b > 0.0)) throw DomainError("edge " + e.id + ": sym gadget needs b > 0");
  if (!(scale >= 0.0)) throw DomainError("edge " + e.id + ": sym gadget needs scale >= 0");
  FlowNetwork g = member_nodes(e);
  NodeIndex in = add_aux(g, e.id, 0);
  NodeIndex out = add_aux(g, e.id, 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    g.add_arc(static_cast<NodeIndex>(i), in, scale * e.gamma[i]);
    g.add_arc(out, static_cast<NodeIndex>(i), scale * e.gamma[i]);
  }
  g.add_arc(in, out, scale * b);
  return g;
}

FlowNetwork expand_asym(const Hyperedge& e, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("edge " + e.id + ": asym gadget needs a, b > 0");
  FlowNetwork g = member_nodes(e);
  NodeIndex hub = add_aux(g, e.id, 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    g.add_arc(static_cast<NodeIndex>(i), hub, a * e.gamma[i]);
    g.add_arc(hub, static_cast<NodeIndex>(i), b * e.gamma[i]);
  }
  return g;
}

FlowNetwork expand_lawler(const Hyperedge& e, double kappa) {
  if (!(kappa > 0.0)) throw NonPositiveWeight("edge " + e.id + ": kappa must be positive");
  FlowNetwork g = member_nodes(e);
  NodeIndex in = add_aux(g, e.id, 0);
  NodeIndex out = add_aux(g, e.id, 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    g.add_infinite_arc(static_cast<NodeIndex>(i), in);
    g.add_infinite_arc(out, static_cast<NodeIndex>(i));
  }
  g.add_arc(in, out, kappa);
  return g;
}

double gadget_split_value(const FlowNetwork& g, std::uint32_t member_mask,
                          std::size_t num_members) {
  std::size_t n = g.num_nodes();
  if (num_members > n) throw DomainError("more members than nodes");
  if (num_members < 32 && (member_mask >> num_members) != 0)
    throw DomainError("member mask has bits beyond the member count");
  std::size_t n_aux = n - num_members;
  // connected components among auxiliary nodes (arcs between two auxiliaries)
  std::vector<int> comp(n_aux);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& a : g.arcs)
    if (static_cast<std::size_t>(a.tail) >= num_members &&
        static_cast<std::size_t>(a.head) >= num_members)
      comp[find(static_cast<int>(a.tail - num_members))] =
          find(static_cast<int>(a.head - num_members));
  std::vector<std::vector<int>> groups;  // aux node lists per component
  std::vector<int> group_of(n_aux, -1);
  for (std::size_t i = 0; i < n_aux; ++i) {
    int root = find(static_cast<int>(i));
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(static_cast<int>(i));
  }
  std::vector<int> slot(n_aux);  // position of an aux node within its group
  for (const auto& grp : groups) {
    if (grp.size() > 20)
      throw TooManyAuxiliaries("auxiliary component larger than 20 nodes");
    for (std::size_t k = 0; k < grp.size(); ++k) slot[grp[k]] = static_cast<int>(k);
  }
  std::vector<std::vector<const Arc*>> incident(groups.size());
  double fixed = 0.0;
  for (const auto& a : g.arcs) {
    bool tail_aux = static_cast<std::size_t>(a.tail) >= num_members;
    bool head_aux = static_cast<std::size_t>(a.head) >= num_members;
    if (!tail_aux && !head_aux) {
      bool ts = member_mask >> a.tail & 1;
      bool hs = member_mask >> a.head & 1;
      if (ts && !hs) {
        if (a.infinite) return kInf;
        fixed += a.capacity;
      }
    } else {
      int grp = tail_aux ? group_of[find(static_cast<int>(a.tail - num_members))]
                         : group_of[find(static_cast<int>(a.head - num_members))];
      incident[grp].push_back(&a);
    }
  }
  double total = fixed;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& grp = groups[gi];
    double best = kInf;
    for (std::uint32_t placement = 0; placement < (std::uint32_t{1} << grp.size());
         ++placement) {
      auto node_side = [&](NodeIndex v) {
        if (static_cast<std::size_t>(v) < num_members) return bool(member_mask >> v & 1);
        return bool(placement >> slot[v - num_members] & 1);
      };
      double value = 0.0;
      for (const Arc* a : incident[gi]) {
        if (node_side(a->tail) && !node_side(a->head)) {
          if (a->infinite) {
            value = kInf;
            break;
          }
          value += a->capacity;
        }
      }
      best = std::min(best, value);
    }
    total += best;
  }
  return total;
}

std::vector<double> enumerate_qa(const Hyperedge& e, int cap) {
  std::size_t n = e.size();
  if (n > static_cast<std::size_t>(cap) || n > 25)
    throw EdgeTooLarge("edge " + e.id + ": |e| = " + std::to_string(n) +
                       " exceeds the enumeration cap; use sparsified mode");
  if (n < 2) return {};
  std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<double> sums(static_cast<std::size_t>(full) + 1, 0.0);
  for (std::uint32_t m = 1; m <= full; ++m) {
    std::uint32_t low = m & (~m + 1);
    int bit = 0;
    while (!(low >> bit & 1)) ++bit;
    sums[m] = sums[m & (m - 1)] + e.gamma[bit];
  }
  std::vector<double> values;
  values.reserve(full - 1);
  for (std::uint32_t m = 1; m < full; ++m) values.push_back(sums[m]);
  std::sort(values.begin(), values.end());
  double tol = 1e-9 * e.gamma_total;
  std::vector<double> out;
  for (double v : values)
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  return out;
}

std::vector<double> enumerate_qs(const Hyperedge& e, int cap) {
  std::vector<double> qa = enumerate_qa(e, cap);
  double half = e.gamma_total / 2;
  double tol = 1e-9 * e.gamma_total;
  std::vector<double> out;
  for (double v : qa)
    if (v <= half + tol) out.push_back(v);
  return out;
}

namespace {

// Row i (0-based) of the closed-form tridiagonal inverse, with virtual
// endpoints (b_lo, w_lo) before the first breakpoint and (b_hi, w_hi) after
// the last one.
double inverse_row(const std::vector<double>& b, const std::vector<double>& w,
                   std::size_t i, double b_lo, double w_lo, double b_hi,
                   double w_hi) {
  std::size_t r = b.size();
  double bp = i == 0 ? b_lo : b[i - 1];
  double wp = i == 0 ? w_lo : w[i - 1];
  double bn = i + 1 == r ? b_hi : b[i + 1];
  double wn = i + 1 == r ? w_hi : w[i + 1];
  return -wp / (b[i] - bp) + w[i] * (bn - bp) / ((bn - b[i]) * (b[i] - bp)) -
         wn / (bn - b[i]);
}

std::vector<GadgetTerm> clamp_and_prune(const Hyperedge& e,
                                        const std::vector<double>& b,
                                        std::vector<double> a,
                                        double value_scale) {
  double tol = 1e-9 * std::max(1.0, value_scale);
  std::vector<GadgetTerm> terms;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < -tol)
      throw NegativeCoefficient(
          "edge " + e.id + ": coefficient " + std::to_string(a[i]) + " at breakpoint " +
          std::to_string(b[i]) + "; splitting function is not concave here");
    if (a[i] > 0.0) terms.push_back({a[i], b[i]});
  }
  return terms;
}

}  // namespace

GadgetCombination reduce_symmetric(const Hyperedge& e,
                                   const SplittingSpec& spec, int cap) {
  GadgetCombination comb;
  comb.edge_id = e.id;
  comb.symmetric = true;
  std::vector<double> b = enumerate_qs(e, cap);
  if (b.empty()) return comb;
  double g_total = e.gamma_total;
  std::size_t r = b.size();
  std::vector<double> w(r);
  double w_max = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    w[i] = eval_g_total(spec, g_total, b[i]);
    double mirror = eval_g_total(spec, g_total, g_total - b[i]);
    if (std::abs(w[i] - mirror) > 1e-9 * std::max({1.0, w[i], mirror}))
      throw FamilyError("edge " + e.id +
                        ": g is not symmetric about gamma_total/2; "
                        "use the asymmetric reduction");
    w_max = std::max(w_max, w[i]);
  }
  std::vector<double> a(r);
  if (r == 1) {
    a[0] = w[0] / b[0];
  } else {
    for (std::size_t i = 0; i + 1 < r; ++i)
      a[i] = inverse_row(b, w, i, 0.0, 0.0, b[r - 1] + 1.0, 0.0);
    // the final row only sees its left neighbor
    a[r - 1] = (w[r - 1] - w[r - 2]) / (b[r - 1] - b[r - 2]);
  }
  comb.terms = clamp_and_prune(e, b, std::move(a), w_max);
  return comb;
}

GadgetCombination reduce_asymmetric(const Hyperedge& e,
                                    const SplittingSpec& spec, int cap) {
  GadgetCombination comb;
  comb.edge_id = e.id;
  comb.symmetric = false;
  std::vector<double> b = enumerate_qa(e, cap);
  if (b.empty()) return comb;
  double g_total = e.gamma_total;
  std::size_t r = b.size();
  std::vector<double> w(r);
  double w_max = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    w[i] = eval_g_total(spec, g_total, b[i]);
    w_max = std::max(w_max, w[i]);
  }
  std::vector<double> a(r);
  for (std::size_t i = 0; i < r; ++i)
    a[i] = inverse_row(b, w, i, 0.0, 0.0, g_total, 0.0) / g_total;
  comb.terms = clamp_and_prune(e, b, std::move(a), w_max / std::max(1e-300, g_total));
  return comb;
}

double combination_value(const GadgetCombination& comb, const Hyperedge& e,
                         double kappa_scale, std::uint32_t member_mask) {
  double x = gamma_sum_mask(e, member_mask);
  double g_total = e.gamma_total;
  double value = 0.0;
  for (const auto& t : comb.terms) {
    if (comb.symmetric)
      value += t.a * std::min({x, g_total - x, t.b});
    else
      value += t.a * std::min((g_total - t.b) * x, t.b * (g_total - x));
  }
  return kappa_scale * value;
}

namespace {

struct EdgePlan {
  std::string gadget = "none";  // sym | asym | lawler | none
  bool sparsified = false;
  std::vector<GadgetTerm> sym_terms;                 // (scale, breakpoint)
  std::vector<std::pair<double, double>> asym_arcs;  // (to-hub, from-hub) unit caps
  double lawler_kappa = 0.0;
};

double sqrt_epsilon(double epsilon) { return std::sqrt(1.0 + epsilon) - 1.0; }

EdgePlan plan_continuous_symmetric(const Hyperedge& e, const SplittingSpec& spec,
                                   double kappa_scale, double epsilon) {
  double g_total = e.gamma_total;
  auto g = [&](double x) { return eval_g_total(spec, g_total, x); };
  auto slope = [&](double x) { return eval_g_slope(spec, g_total, x); };
  PiecewiseLinear env = sparsify_continuous(g, slope, g_total / 2, epsilon);
  EdgePlan plan;
  plan.gadget = "sym";
  plan.sparsified = true;
  for (const auto& p : pwl_to_gadget_params(env))
    plan.sym_terms.push_back({p.a * kappa_scale, p.b});
  return plan;
}

EdgePlan plan_edge(const Hyperedge& e, const SplittingSpec& spec,
                   ReduceMode mode, double epsilon, const ReduceCaps& caps) {
  EdgePlan plan;
  if (e.size() < 2) return plan;  // every splitting function vanishes
  if (spec.family == SplitFamily::AllOrNothing) {
    plan.gadget = "lawler";
    plan.lawler_kappa = e.kappa;
    return plan;
  }
  double kappa_scale = spec.scale_by_kappa ? e.kappa : 1.0;
  double g_total = e.gamma_total;
  if (mode == ReduceMode::Exact) {
    if (e.size() > static_cast<std::size_t>(caps.q_enum_max_size))
      throw EdgeTooLarge("edge " + e.id + ": |e| = " + std::to_string(e.size()) +
                         " exceeds the exact-mode cap; use sparsified mode");
    if (spec.is_symmetric_family()) {
      GadgetCombination comb = reduce_symmetric(e, spec, caps.q_enum_max_size);
      if (comb.terms.size() > static_cast<std::size_t>(caps.expansion_max_terms))
        throw EdgeTooLarge("edge " + e.id + ": exact expansion needs " +
                           std::to_string(comb.terms.size()) +
                           " gadgets; use sparsified mode");
      plan.gadget = "sym";
      for (const auto& t : comb.terms)
        plan.sym_terms.push_back({t.a * kappa_scale, t.b});
    } else {
      GadgetCombination comb = reduce_asymmetric(e, spec, caps.q_enum_max_size);
      if (comb.terms.size() > static_cast<std::size_t>(caps.expansion_max_terms))
        throw EdgeTooLarge("edge " + e.id + ": exact expansion needs " +
                           std::to_string(comb.terms.size()) +
                           " gadgets; use sparsified mode");
      plan.gadget = "asym";
      for (const auto& t : comb.terms)
        plan.asym_arcs.emplace_back(kappa_scale * t.a * (g_total - t.b),
                                    kappa_scale * t.a * t.b);
    }
    return plan;
  }
  // sparsified mode
  switch (spec.family) {
    case SplitFamily::MinHalf:
    case SplitFamily::ThresholdedMin:
      // their envelopes close after two pieces and are exact for any edge size
      return plan_continuous_symmetric(e, spec, kappa_scale, epsilon);
    case SplitFamily::WeightedMin:
      plan.gadget = "asym";
      plan.asym_arcs.emplace_back(kappa_scale * spec.wmin_a, kappa_scale * spec.wmin_b);
      return plan;
    case SplitFamily::Product:
    case SplitFamily::CustomConcave: {
      if (spec.is_symmetric_family()) {
        if (e.size() <= static_cast<std::size_t>(caps.sparse_discrete_max)) {
          std::vector<double> q = enumerate_qs(e, caps.q_enum_max_size);
          if (q.empty()) return plan;
          std::vector<double> g(q.size());
          for (std::size_t i = 0; i < q.size(); ++i)
            g[i] = eval_g_total(spec, g_total, q[i]);
          PiecewiseLinear env = sparsify_discrete(q, g, epsilon);
          plan.gadget = "sym";
          plan.sparsified = true;
          for (const auto& p : pwl_to_gadget_params(env))
            plan.sym_terms.push_back({p.a * kappa_scale, p.b});
          return plan;
        }
        // guarantee survives the tail allowance of the continuous rule
        return plan_continuous_symmetric(e, spec, kappa_scale, sqrt_epsilon(epsilon));
      }
      std::vector<TentTerm> tents;
      if (e.size() <= static_cast<std::size_t>(caps.sparse_discrete_max)) {
        std::vector<double> q = enumerate_qa(e, caps.q_enum_max_size);
        if (q.empty()) return plan;
        std::vector<double> g(q.size());
        for (std::size_t i = 0; i < q.size(); ++i)
          g[i] = eval_g_total(spec, g_total, q[i]);
        tents = sparsify_asym_discrete(q, g, g_total, epsilon);
      } else {
        tents = sparsify_asym_continuous(
            [&](double x) { return eval_g_total(spec, g_total, x); },
            [&](double x) { return eval_g_slope(spec, g_total, x); }, g_total,
            sqrt_epsilon(epsilon));
      }
      plan.gadget = "asym";
      plan.sparsified = true;
      for (const auto& t : tents)
        plan.asym_arcs.emplace_back(kappa_scale * t.coeff * (g_total - t.peak),
                                    kappa_scale * t.coeff * t.peak);
      return plan;
    }
    default:
      throw FamilyError("edge " + e.id + ": unsupported family");
  }
}

// Rethrow with the edge id prefixed so callers can tell which edge failed;
// the dynamic error type is preserved for the types a reduction can raise.
EdgePlan plan_edge_checked(const Hyperedge& e, const SplittingSpec& spec,
                           ReduceMode mode, double epsilon,
                           const ReduceCaps& caps) {
  auto tagged = [&](const char* what) {
    std::string tag = "edge " + e.id;
    std::string msg(what);
    if (msg.rfind(tag, 0) == 0) return msg;
    return tag + ": " + msg;
  };
#define EDVW_RETAG(type) \
  catch (const type& err) { throw type(tagged(err.what())); }
  try {
    return plan_edge(e, spec, mode, epsilon, caps);
  }
  EDVW_RETAG(EdgeTooLarge)
  EDVW_RETAG(EdgeTooSmall)
  EDVW_RETAG(TooManyAuxiliaries)
  EDVW_RETAG(NegativeCoefficient)
  EDVW_RETAG(NonConcavePoints)
  EDVW_RETAG(InfiniteInitialSlope)
  EDVW_RETAG(NoTangentFound)
  EDVW_RETAG(MalformedEnvelope)
  EDVW_RETAG(FamilyError)
  EDVW_RETAG(DomainError)
#undef EDVW_RETAG
}

void emit_plan(FlowNetwork& g, const Hyperedge& e, const EdgePlan& plan) {
  int aux_index = 0;
  if (plan.gadget == "lawler") {
    NodeIndex in = add_aux(g, e.id, aux_index++);
    NodeIndex out = add_aux(g, e.id, aux_index++);
    for (VertexId v : e.members) {
      g.add_infinite_arc(v, in);
      g.add_infinite_arc(out, v);
    }
    g.add_arc(in, out, plan.lawler_kappa);
    return;
  }
  for (const auto& [scale, b] : plan.sym_terms) {
    NodeIndex in = add_aux(g, e.id, aux_index++);
    NodeIndex out = add_aux(g, e.id, aux_index++);
    for (std::size_t i = 0; i < e.size(); ++i) {
      g.add_arc(e.members[i], in, scale * e.gamma[i]);
      g.add_arc(out, e.members[i], scale * e.gamma[i]);
    }
    g.add_arc(in, out, scale * b);
  }
  for (const auto& [to_hub, from_hub] : plan.asym_arcs) {
    NodeIndex hub = add_aux(g, e.id, aux_index++);
    for (std::size_t i = 0; i < e.size(); ++i) {
      g.add_arc(e.members[i], hub, to_hub * e.gamma[i]);
      g.add_arc(hub, e.members[i], from_hub * e.gamma[i]);
    }
  }
}

}  // namespace

Reduction reduce_hypergraph(const Hypergraph& h,
                            const std::vector<SplittingSpec>& specs,
                            ReduceMode mode, double epsilon,
                            const ReduceCaps& caps) {
  if (specs.size() != h.num_edges())
    throw FamilyError("need one splitting spec per edge");
  if (mode == ReduceMode::Sparsified && !(epsilon > 0.0))
    throw DomainError("epsilon must be positive");
  std::size_t m = h.num_edges();
  std::vector<EdgePlan> plans(m);
  int threads = std::max(1, caps.threads);
  if (threads > 1 && m > 1) {
    std::size_t chunk = (m + threads - 1) / threads;
    std::vector<std::future<void>> futures;
    for (std::size_t lo = 0; lo < m; lo += chunk) {
      std::size_t hi = std::min(m, lo + chunk);
      futures.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i)
          plans[i] = plan_edge_checked(h.edges[i], specs[i], mode, epsilon, caps);
      }));
    }
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t i = 0; i < m; ++i)
      plans[i] = plan_edge_checked(h.edges[i], specs[i], mode, epsilon, caps);
  }
  Reduction out;
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    NodeTag t;
    t.kind = NodeKind::Original;
    t.vertex = static_cast<VertexId>(v);
    out.graph.add_node(t);
  }
  for (std::size_t i = 0; i < m; ++i) {
    emit_plan(out.graph, h.edges[i], plans[i]);
    EdgeStrategy s;
    s.edge_id = h.edges[i].id;
    s.gadget = plans[i].gadget;
    s.term_count = plans[i].gadget == "lawler"
                       ? 1
                       : static_cast<int>(plans[i].sym_terms.size() +
                                          plans[i].asym_arcs.size());
    s.sparsified = plans[i].sparsified;
    out.strategies.push_back(std::move(s));
  }
  return out;
}

Reduction reduce_hypergraph(const Hypergraph& h, const SplittingSpec& spec,
                            ReduceMode mode, double epsilon,
                            const ReduceCaps& caps) {
  return reduce_hypergraph(h, std::vector<SplittingSpec>(h.num_edges(), spec),
                           mode, epsilon, caps);
}

}  // namespace edvw
