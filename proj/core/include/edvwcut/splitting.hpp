#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "edvwcut/hypergraph.hpp"

namespace edvw {

enum class SplitFamily {
  Product,         // g(x) = x (G - x)
  MinHalf,         // g(x) = min{x, G - x}
  ThresholdedMin,  // g(x) = min{x, G - x, b}, b = beta * G or absolute
  WeightedMin,     // g(x) = min{a x, b (G - x)}
  AllOrNothing,    // w(S) = kappa for proper nonempty S; no continuous g
  CustomConcave,
};

// g and its right-derivative take (x, gamma_total); the derivative is only
// required by the continuous sparsifier.
using CustomFn = std::function<double(double, double)>;

struct SplittingSpec {
  SplitFamily family = SplitFamily::Product;
  double beta = 0.0;        // ThresholdedMin, relative form
  double b_abs = 0.0;       // ThresholdedMin, absolute form (used when > 0)
  double wmin_a = 1.0;      // WeightedMin
  double wmin_b = 1.0;
  bool scale_by_kappa = false;
  CustomFn custom;
  CustomFn custom_slope;    // optional one-sided derivative
  bool custom_symmetric = false;
  std::string name;         // echo of the spec string, for messages

  // Threshold b for a given edge total.
  double threshold_for(double gamma_total) const;
  bool is_continuous() const { return family != SplitFamily::AllOrNothing; }
  // Symmetric about gamma_total/2 by construction.
  bool is_symmetric_family() const;
};

// Spec string grammar: product | minhalf | thresh:<beta> | threshabs:<b> |
// wmin:<a>,<b> | aon, with optional suffix *kappa. Three named custom
// families are also accepted: sqrtcave, logcave, convexdemo.
SplittingSpec parse_split_spec(const std::string& text);

double eval_g(const SplittingSpec& spec, const Hyperedge& e, double x);
// Same g, addressed by the edge total only (no edge structure needed).
double eval_g_total(const SplittingSpec& spec, double gamma_total, double x);
// Right-derivative of g; throws FamilyError when no slope is available
// (AllOrNothing, or CustomConcave without custom_slope).
double eval_g_slope(const SplittingSpec& spec, double gamma_total, double x);

// w_e(S) = g_e(gamma_e(S)), times kappa(e) when scale_by_kappa.
// AllOrNothing evaluates to kappa(e) on proper nonempty subsets.
double eval_split(const SplittingSpec& spec, const Hyperedge& e,
                  const std::vector<VertexId>& S);
double eval_split_mask(const SplittingSpec& spec, const Hyperedge& e,
                       std::uint32_t member_mask);

// cut_H(S) = sum over edges of w_e(S intersect e). Vertices of S outside an
// edge are ignored by that edge's term.
double hypergraph_cut(const Hypergraph& h, const SplittingSpec& spec,
                      const std::vector<VertexId>& S);
double hypergraph_cut(const Hypergraph& h,
                      const std::vector<SplittingSpec>& specs,
                      const std::vector<VertexId>& S);

// Exhaustive submodularity check over all (S1 subseteq S2 subset e, v not in
// S2) triples; |e| <= 12. w is addressed by member bitmask.
bool is_submodular_bruteforce(const Hyperedge& e,
                              const std::function<double(std::uint32_t)>& w);
bool is_submodular_bruteforce(const Hyperedge& e, const SplittingSpec& spec);

// Exhaustive w(S) == w(e\S) check; |e| <= 20.
bool is_symmetric_bruteforce(const Hyperedge& e,
                             const std::function<double(std::uint32_t)>& w);
bool is_symmetric_bruteforce(const Hyperedge& e, const SplittingSpec& spec);

// Chord inequality g(b2) >= ((b3-b2)g(b1) + (b2-b1)g(b3)) / (b3-b1) on
// consecutive triples of an n_samples grid over [0, gamma_total].
bool concavity_probe(const SplittingSpec& spec, const Hyperedge& e,
                     int n_samples);

}  // namespace edvw
