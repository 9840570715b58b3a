#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edvwcut/flow_network.hpp"
#include "edvwcut/hypergraph.hpp"
#include "edvwcut/max_flow.hpp"
#include "edvwcut/splitting.hpp"

namespace edvw {

// Gadget constructions. Each builds a standalone FlowNetwork whose first
// |e| nodes are the members of e (as Original nodes, in member order),
// followed by any auxiliary nodes. `scale` multiplies every capacity.

FlowNetwork expand_clique(const Hyperedge& e, double scale = 1.0);
FlowNetwork expand_star(const Hyperedge& e, double scale = 1.0);
// Auxiliaries e', e''; arcs v->e' and e''->v at scale*gamma(v), e'->e'' at
// scale*b. Realizes scale*min{gamma(S), gamma(e\S), b}.
FlowNetwork expand_sym(const Hyperedge& e, double b, double scale = 1.0);
// Auxiliary v_e; arcs v->v_e at a*gamma(v), v_e->v at b*gamma(v).
// Realizes min{a gamma(S), b gamma(e\S)}.
FlowNetwork expand_asym(const Hyperedge& e, double a, double b);
// Auxiliaries e', e''; infinite arcs v->e' and e''->v, e'->e'' at kappa.
FlowNetwork expand_lawler(const Hyperedge& e, double kappa);

// Verification oracle for the gadget splitting function: minimum cut value
// over all placements of auxiliary nodes consistent with T intersect e = S.
// Auxiliary placements are enumerated per connected auxiliary component;
// each component must have <= 20 auxiliaries.
double gadget_split_value(const FlowNetwork& g, std::uint32_t member_mask,
                          std::size_t num_members);

// Distinct achievable subset sums. Q_a over proper nonempty subsets; Q_s is
// the part in (0, gamma_total/2]. Values within 1e-9*gamma_total merge.
std::vector<double> enumerate_qa(const Hyperedge& e, int cap = 20);
std::vector<double> enumerate_qs(const Hyperedge& e, int cap = 20);

struct GadgetTerm {
  double a = 0.0;  // scale
  double b = 0.0;  // breakpoint
};

struct GadgetCombination {
  std::string edge_id;
  bool symmetric = true;
  std::vector<GadgetTerm> terms;  // breakpoints strictly increasing, a > 0
};

// Exact reduction of a concave symmetric g: breakpoints are Q_s, coefficients
// from the closed-form tridiagonal inverse rows. Coefficients in [-1e-9, 0)
// clamp to 0 and zero terms are pruned; anything lower throws.
GadgetCombination reduce_symmetric(const Hyperedge& e,
                                   const SplittingSpec& spec, int cap = 20);
// Exact reduction of any concave g with g(0) = g(gamma_total) = 0:
// breakpoints are Q_a, coefficients from the same rows scaled by
// 1/gamma_total with an adjusted last diagonal entry. Term i expands with
// arc parameters a_i*(gamma_total - b_i) and a_i*b_i.
GadgetCombination reduce_asymmetric(const Hyperedge& e,
                                    const SplittingSpec& spec, int cap = 20);

// Combined gadget value: sum of the per-term gadget splitting functions.
double combination_value(const GadgetCombination& comb, const Hyperedge& e,
                         double kappa_scale, std::uint32_t member_mask);

struct EdgeStrategy {
  std::string edge_id;
  std::string gadget;  // clique | star | sym | asym | lawler | none
  int term_count = 0;
  bool sparsified = false;
};

struct Reduction {
  FlowNetwork graph;
  // original node i == hypergraph vertex i; auxiliaries follow in edge order
  std::vector<EdgeStrategy> strategies;
};

// Whole-hypergraph reduction. Symmetric families route through
// reduce_symmetric, asymmetric ones through reduce_asymmetric, AllOrNothing
// through expand_lawler. Sparsified mode fits a piecewise-linear envelope
// first and expands its pieces.
Reduction reduce_hypergraph(const Hypergraph& h, const SplittingSpec& spec,
                            ReduceMode mode, double epsilon = 0.1,
                            const ReduceCaps& caps = {});
Reduction reduce_hypergraph(const Hypergraph& h,
                            const std::vector<SplittingSpec>& specs,
                            ReduceMode mode, double epsilon = 0.1,
                            const ReduceCaps& caps = {});

}  // namespace edvw
