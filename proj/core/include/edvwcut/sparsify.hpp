#pragma once

#include <functional>
#include <vector>

#include "edvwcut/errors.hpp"

namespace edvw {

struct Piece {
  double slope = 0.0;
  double intercept = 0.0;
};

// Lower envelope of lines: slopes strictly decreasing, intercepts strictly
// increasing, first intercept 0, last slope 0.
struct PiecewiseLinear {
  std::vector<Piece> pieces;
  double x_max = 0.0;  // covered domain end

  double eval(double x) const;
  void validate() const;  // throws MalformedEnvelope
};

double eval_pwl(const PiecewiseLinear& p, double x);

// Greedy minimum-piece envelope through concave points (q_j, g_j), sorted by
// q ascending: first piece through the origin with slope g_1/q_1, last piece
// horizontal through (q_n, g_n), middle pieces anchored at tube-top points.
// Guarantees g(q) <= eval(q) <= (1+eps) g(q) at every input point.
PiecewiseLinear sparsify_discrete(const std::vector<double>& q,
                                  const std::vector<double>& g,
                                  double epsilon);

using Fn1 = std::function<double(double)>;

struct ContinuousTrace {
  std::vector<double> crossovers;      // where a piece meets (1+eps) g
  std::vector<double> tangent_points;  // tangency abscissa per added piece
};

// Envelope of a concave nondecreasing g on [0, gamma_half] with g(0) = 0.
// First piece is the tangent at the origin; each following piece passes
// through (z, (1+eps) g(z)) at the previous crossover z and is tangent to g
// beyond z; the last piece is horizontal at g(gamma_half). Construction
// stops once the horizontal piece covers the tail within (1+eps) of the
// envelope value at the last crossover, so the tail ratio can reach
// (1+eps)^2; callers needing a strict everywhere bound pass
// sqrt(1+eps) - 1.
PiecewiseLinear sparsify_continuous(const Fn1& g, const Fn1& g_slope,
                                    double gamma_half, double epsilon,
                                    ContinuousTrace* trace = nullptr);

// a_i = m_i - m_{i+1}, b_i = (d_{i+1} - d_i)/a_i; rebuilding
// sum a_i min{x, b_i} reproduces the envelope.
struct GadgetParam {
  double a = 0.0;
  double b = 0.0;
};
std::vector<GadgetParam> pwl_to_gadget_params(const PiecewiseLinear& p);

struct ApproxReport {
  int piece_count = 0;
  double max_ratio = 1.0;
  double epsilon = 0.0;
  bool ok = true;
};

// Checks g(q) - 1e-12 <= eval(q) and eval(q)/g(q) <= (1+eps)(1+1e-9) at the
// given points; the report carries failure instead of throwing.
ApproxReport verify_approximation(const PiecewiseLinear& p, const Fn1& g,
                                  const std::vector<double>& points,
                                  double epsilon);

// Envelope over the full domain [0, gamma_total] of a concave g vanishing at
// both ends (asymmetric case): the greedy runs on the rising part and on the
// mirrored falling part, and the union of supporting lines is decomposed at
// its breakpoints into "tent" terms min{(G-b_i)x, b_i(G-x)} with coefficient
// slope_drop/G, which map directly to asymmetric gadget arc pairs.
struct TentTerm {
  double coeff = 0.0;
  double peak = 0.0;
};
std::vector<TentTerm> sparsify_asym_discrete(const std::vector<double>& q,
                                             const std::vector<double>& g,
                                             double gamma_total,
                                             double epsilon);
std::vector<TentTerm> sparsify_asym_continuous(const Fn1& g,
                                               const Fn1& g_slope,
                                               double gamma_total,
                                               double epsilon);

}  // namespace edvw
