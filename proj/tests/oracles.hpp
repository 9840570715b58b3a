#pragma once

// Test-side reference computations, kept independent of the library code
// they check: direct formula evaluation, whole-placement gadget cuts,
// recursive subset-sum enumeration and a small LP for envelope minimality.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "edvwcut/flow_network.hpp"
#include "edvwcut/hypergraph.hpp"

namespace testutil {

using edvw::Arc;
using edvw::FlowNetwork;
using edvw::Hyperedge;
using edvw::NodeIndex;
using edvw::VertexId;

constexpr double kInf = std::numeric_limits<double>::infinity();

inline Hyperedge make_edge(std::vector<double> gamma, double kappa = 1.0,
                           std::string id = "e") {
  Hyperedge e;
  e.id = std::move(id);
  e.kappa = kappa;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    e.members.push_back(static_cast<VertexId>(i));
  e.gamma = std::move(gamma);
  e.gamma_total = 0.0;
  for (double g : e.gamma) e.gamma_total += g;
  return e;
}

inline Hyperedge random_edge(std::mt19937_64& rng, int lo, int hi,
                             double glo = 0.1, double ghi = 5.0) {
  std::uniform_int_distribution<int> size(lo, hi);
  std::uniform_real_distribution<double> gam(glo, ghi);
  std::vector<double> gamma(static_cast<std::size_t>(size(rng)));
  for (auto& g : gamma) g = gam(rng);
  return make_edge(std::move(gamma));
}

inline double mask_sum(const Hyperedge& e, std::uint32_t mask) {
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (mask >> i & 1) s += e.gamma[i];
  return s;
}

inline int popcount(std::uint32_t m) {
  int c = 0;
  while (m) {
    m &= m - 1;
    ++c;
  }
  return c;
}

// Table-1 formulas evaluated directly on a member bitmask.
inline double ref_product(const Hyperedge& e, std::uint32_t m) {
  double x = mask_sum(e, m);
  return x * (e.gamma_total - x);
}
inline double ref_minhalf(const Hyperedge& e, std::uint32_t m) {
  double x = mask_sum(e, m);
  return std::min(x, e.gamma_total - x);
}
inline double ref_thresh(const Hyperedge& e, std::uint32_t m, double b) {
  double x = mask_sum(e, m);
  return std::min(std::min(x, e.gamma_total - x), b);
}
inline double ref_wmin(const Hyperedge& e, std::uint32_t m, double a, double b) {
  double x = mask_sum(e, m);
  return std::min(a * x, b * (e.gamma_total - x));
}
inline double ref_aon(const Hyperedge& e, std::uint32_t m, double kappa) {
  int c = popcount(m & ((1u << e.size()) - 1));
  return (c > 0 && c < static_cast<int>(e.size())) ? kappa : 0.0;
}

// Gadget cut by whole-placement enumeration over every auxiliary node at
// once; returns +inf when every placement crosses an infinite arc.
inline double ref_gadget_cut(const FlowNetwork& g, std::uint32_t member_mask,
                             std::size_t num_members) {
  std::size_t aux = g.num_nodes() - num_members;
  double best = kInf;
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << aux); ++p) {
    auto side = [&](NodeIndex v) {
      if (static_cast<std::size_t>(v) < num_members)
        return bool(member_mask >> v & 1);
      return bool(p >> (static_cast<std::size_t>(v) - num_members) & 1);
    };
    double val = 0.0;
    bool infinite = false;
    for (const Arc& a : g.arcs) {
      if (side(a.tail) && !side(a.head)) {
        if (a.infinite) {
          infinite = true;
          break;
        }
        val += a.capacity;
      }
    }
    if (!infinite) best = std::min(best, val);
  }
  return best;
}

// Subset sums by plain recursion (vs the library's DP), deduped with the
// same relative tolerance.
inline std::vector<double> ref_qa(const Hyperedge& e) {
  std::size_t n = e.size();
  std::vector<double> sums;
  for (std::uint32_t m = 1; m + 1 < (std::uint32_t{1} << n); ++m) {
    double s = 0.0;
    for (std::size_t i = n; i-- > 0;)
      if (m >> i & 1) s += e.gamma[i];
    sums.push_back(s);
  }
  std::sort(sums.begin(), sums.end());
  std::vector<double> out;
  double tol = 1e-9 * e.gamma_total;
  for (double v : sums)
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  return out;
}

// Minimum number of interior envelope pieces under the same structure as the
// greedy (fixed first piece through the origin at slope g1/q1, fixed final
// horizontal at g_n): DP over contiguous uncovered runs, feasibility of one
// line for a run decided by vertex enumeration of the 2-variable LP
//   m q_k + d >= g_k for all k,   m q_k + d <= (1+eps) g_k for k in the run.
inline bool line_feasible(const std::vector<double>& q,
                          const std::vector<double>& g, double eps,
                          std::size_t lo, std::size_t hi) {
  std::size_t n = q.size();
  struct Con {
    double a, b, rhs;
    bool ge;
  };
  std::vector<Con> cons;
  for (std::size_t k = 0; k < n; ++k) cons.push_back({q[k], 1.0, g[k], true});
  for (std::size_t k = lo; k <= hi; ++k)
    cons.push_back({q[k], 1.0, (1.0 + eps) * g[k], false});
  double big = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    big = std::max({big, std::abs(g[k]), q[k], 1.0});
  big *= 1e6;
  // frame constraints give the feasible polygon vertices even when the raw
  // system is unbounded
  cons.push_back({1.0, 0.0, -big, true});
  cons.push_back({1.0, 0.0, big, false});
  cons.push_back({0.0, 1.0, -big, true});
  cons.push_back({0.0, 1.0, big, false});
  auto ok = [&](double m, double d) {
    for (const Con& c : cons) {
      double v = c.a * m + c.b * d;
      double slack = 1e-9 * std::max(1.0, std::abs(c.rhs));
      if (c.ge ? v < c.rhs - slack : v > c.rhs + slack) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (std::size_t j = i + 1; j < cons.size(); ++j) {
      double det = cons[i].a * cons[j].b - cons[j].a * cons[i].b;
      if (std::abs(det) < 1e-14) continue;
      double m = (cons[i].rhs * cons[j].b - cons[j].rhs * cons[i].b) / det;
      double d = (cons[i].a * cons[j].rhs - cons[j].a * cons[i].rhs) / det;
      if (ok(m, d)) return true;
    }
  return false;
}

inline int min_interior_pieces(const std::vector<double>& q,
                               const std::vector<double>& g, double eps) {
  std::size_t n = q.size();
  // points already covered by the mandatory first piece or horizontal
  std::vector<char> covered(n, 0);
  double m1 = g[0] / q[0];
  for (std::size_t k = 0; k < n; ++k) {
    if (m1 * q[k] <= (1.0 + eps) * g[k] * (1 + 1e-12)) covered[k] = 1;
    if (g[n - 1] <= (1.0 + eps) * g[k] * (1 + 1e-12)) covered[k] = 1;
  }
  std::vector<std::size_t> need;
  for (std::size_t k = 0; k < n; ++k)
    if (!covered[k]) need.push_back(k);
  if (need.empty()) return 0;
  std::size_t r = need.size();
  std::vector<int> dp(r + 1, 1 << 20);
  dp[0] = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (dp[i] >= (1 << 20)) continue;
    for (std::size_t j = i; j < r; ++j) {
      if (!line_feasible(q, g, eps, need[i], need[j])) break;
      dp[j + 1] = std::min(dp[j + 1], dp[i] + 1);
    }
  }
  return dp[r];
}

}  // namespace testutil
