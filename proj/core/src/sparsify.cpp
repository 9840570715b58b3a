#include "edvwcut/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace edvw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double line_at(const Piece& p, double x) { return p.slope * x + p.intercept; }

}  // namespace

double PiecewiseLinear::eval(double x) const {
  if (pieces.empty()) throw MalformedEnvelope("empty envelope");
  double v = kInf;
  for (const auto& p : pieces) v = std::min(v, line_at(p, x));
  return v;
}

double eval_pwl(const PiecewiseLinear& p, double x) {
  if (x < 0.0 || x > p.x_max * (1.0 + 1e-12) + 1e-300)
    throw DomainError("evaluation point outside the covered domain");
  return p.eval(x);
}

void PiecewiseLinear::validate() const {
  if (pieces.empty()) throw MalformedEnvelope("empty envelope");
  double d_scale = 1.0, m_scale = 1.0;
  for (const auto& p : pieces) {
    d_scale = std::max(d_scale, std::abs(p.intercept));
    m_scale = std::max(m_scale, std::abs(p.slope));
  }
  if (std::abs(pieces.front().intercept) > 1e-9 * d_scale)
    throw MalformedEnvelope("first intercept must be 0");
  if (std::abs(pieces.back().slope) > 1e-9 * m_scale)
    throw MalformedEnvelope("last slope must be 0");
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (!(pieces[i].slope < pieces[i - 1].slope))
      throw MalformedEnvelope("slopes must strictly decrease");
    if (!(pieces[i].intercept > pieces[i - 1].intercept))
      throw MalformedEnvelope("intercepts must strictly increase");
  }
}

PiecewiseLinear sparsify_discrete(const std::vector<double>& q,
                                  const std::vector<double>& g,
                                  double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
  std::size_t n = q.size();
  if (n == 0 || g.size() != n)
    throw DomainError("need matching nonempty sample vectors");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(q[i] > 0.0) || (i > 0 && !(q[i] > q[i - 1])))
      throw DomainError("sample abscissas must be positive and ascending");
    if (!(g[i] >= 0.0)) throw NonConcavePoints("sample values must be non-negative");
  }
  // concavity and monotonicity through the virtual origin
  double prev_slope = kInf, scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, g[i]);
  for (std::size_t i = 0; i < n; ++i) {
    double s = i == 0 ? g[0] / q[0] : (g[i] - g[i - 1]) / (q[i] - q[i - 1]);
    if (s < -1e-12 * scale) throw NonConcavePoints("sample values must be nondecreasing");
    if (s > prev_slope + 1e-12 * scale / (q[i] - (i == 0 ? 0.0 : q[i - 1])))
      throw NonConcavePoints("samples are not concave");
    prev_slope = s;
  }

  PiecewiseLinear out;
  out.x_max = q.back();
  if (g.back() <= 0.0) {
    out.pieces.push_back({0.0, 0.0});
    return out;
  }
  double top = 1.0 + epsilon;
  out.pieces.push_back({g[0] / q[0], 0.0});
  std::size_t scan_from = 0;
  while (out.pieces.size() <= n + 2) {
    // first sample not yet inside the tube
    std::size_t ell = n;
    for (std::size_t j = scan_from; j < n; ++j) {
      if (out.eval(q[j]) > top * g[j] * (1 + 1e-12) + 1e-300) {
        ell = j;
        break;
      }
    }
    if (ell == n) break;
    if (g[n - 1] <= top * g[ell] * (1 + 1e-12)) break;  // horizontal covers the rest
    // anchor: tube-top at q[ell] joined to the sample where the line from the
    // tube-top becomes tangent to the remaining points, i.e. the first sample
    // whose following chord, extended back, exceeds the tube-top
    std::size_t istar = n - 1;
    for (std::size_t j = ell + 1; j + 1 < n; ++j) {
      double chord = (g[j + 1] - g[j]) / (q[j + 1] - q[j]);
      if (g[j] + chord * (q[ell] - q[j]) > top * g[ell]) {
        istar = j;
        break;
      }
    }
    double slope = (g[istar] - top * g[ell]) / (q[istar] - q[ell]);
    out.pieces.push_back({slope, top * g[ell] - slope * q[ell]});
    scan_from = istar + 1;
  }
  out.pieces.push_back({0.0, g[n - 1]});
  out.validate();
  return out;
}

namespace {

// First x in (lo, hi] where the convex function phi becomes non-negative;
// nan when phi stays negative. phi(lo) <= 0 is required.
double first_root(const Fn1& phi, double lo, double hi) {
  constexpr int kSamples = 256;
  double bracket_lo = lo, bracket_hi = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i <= kSamples; ++i) {
    double x = lo + (hi - lo) * i / kSamples;
    if (phi(x) >= 0.0) {
      bracket_hi = x;
      break;
    }
    bracket_lo = x;
  }
  if (std::isnan(bracket_hi)) return bracket_hi;
  for (int it = 0; it < 200 && bracket_hi - bracket_lo > 1e-13 * (1.0 + hi); ++it) {
    double mid = 0.5 * (bracket_lo + bracket_hi);
    if (phi(mid) < 0.0)
      bracket_lo = mid;
    else
      bracket_hi = mid;
  }
  return bracket_hi;
}

}  // namespace

PiecewiseLinear sparsify_continuous(const Fn1& g, const Fn1& g_slope,
                                    double gamma_half, double epsilon,
                                    ContinuousTrace* trace) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(gamma_half > 0.0)) throw DomainError("domain end must be positive");
  double top = 1.0 + epsilon;
  double g_end = g(gamma_half);
  PiecewiseLinear out;
  out.x_max = gamma_half;
  if (g_end <= 0.0) {
    out.pieces.push_back({0.0, 0.0});
    return out;
  }
  double m0 = g_slope(0.0);
  if (!std::isfinite(m0))
    throw InfiniteInitialSlope("g has an unbounded slope at 0");
  if (!(m0 > 0.0)) throw DomainError("g must be increasing at 0");
  out.pieces.push_back({m0, 0.0});
  double search_lo = 0.0;
  for (int guard = 0; guard < 1000; ++guard) {
    const Piece last = out.pieces.back();
    auto phi = [&](double x) { return line_at(last, x) - top * g(x); };
    double z = first_root(phi, search_lo, gamma_half);
    if (std::isnan(z)) break;  // the piece stays inside the tube to the end
    if (trace) trace->crossovers.push_back(z);
    double gz = g(z);
    if (g_end <= top * top * gz) break;  // horizontal piece takes over
    // tangency point w > z: line through the tube-top at z touching g
    auto tangent_gap = [&](double w) {
      return g(w) + g_slope(w) * (z - w) - top * gz;
    };
    if (tangent_gap(gamma_half) < -1e-12 * (1.0 + g_end))
      throw NoTangentFound("no supporting line through the tube-top at x = " +
                           std::to_string(z));
    double lo = z, hi = gamma_half;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + gamma_half); ++it) {
      double mid = 0.5 * (lo + hi);
      if (tangent_gap(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    double w = hi;
    if (trace) trace->tangent_points.push_back(w);
    double slope = g_slope(w);
    out.pieces.push_back({slope, top * gz - slope * z});
    search_lo = w;
  }
  out.pieces.push_back({0.0, g_end});
  out.validate();
  return out;
}

std::vector<GadgetParam> pwl_to_gadget_params(const PiecewiseLinear& p) {
  p.validate();
  std::vector<GadgetParam> params;
  for (std::size_t i = 0; i + 1 < p.pieces.size(); ++i) {
    double a = p.pieces[i].slope - p.pieces[i + 1].slope;
    double b = (p.pieces[i + 1].intercept - p.pieces[i].intercept) / a;
    params.push_back({a, b});
  }
  return params;
}

ApproxReport verify_approximation(const PiecewiseLinear& p, const Fn1& g,
                                  const std::vector<double>& points,
                                  double epsilon) {
  ApproxReport report;
  report.piece_count = static_cast<int>(p.pieces.size());
  report.epsilon = epsilon;
  double bound = (1.0 + epsilon) * (1.0 + 1e-9);
  for (double x : points) {
    double fx = p.eval(x);
    double gx = g(x);
    if (fx + 1e-12 * (1.0 + std::abs(gx)) < gx) {
      report.ok = false;
      report.max_ratio = kInf;
      return report;
    }
    double ratio = gx > 0.0 ? fx / gx : (fx <= 1e-12 ? 1.0 : kInf);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  if (report.max_ratio > bound) report.ok = false;
  return report;
}

namespace {

// Lower envelope of the union of supporting lines from the rising-side run
// and the (reflected) falling-side run, decomposed at its slope-change
// points into tent terms.
std::vector<TentTerm> lines_to_tents(std::vector<Piece> lines,
                                     double gamma_total) {
  std::sort(lines.begin(), lines.end(), [](const Piece& a, const Piece& b) {
    return a.slope != b.slope ? a.slope > b.slope : a.intercept < b.intercept;
  });
  std::vector<Piece> kept;
  for (const auto& l : lines)
    if (kept.empty() || l.slope != kept.back().slope) kept.push_back(l);
  std::vector<Piece> hull;
  std::vector<double> start;  // hull[i] is minimal on [start[i], start[i+1])
  for (const auto& l : kept) {
    double x = -kInf;
    while (!hull.empty()) {
      x = (l.intercept - hull.back().intercept) /
          (hull.back().slope - l.slope);
      if (x <= start.back()) {
        hull.pop_back();
        start.pop_back();
      } else {
        break;
      }
    }
    if (hull.empty()) x = -kInf;
    hull.push_back(l);
    start.push_back(x);
  }
  std::vector<TentTerm> tents;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    double b = start[i];
    if (b <= 1e-12 * gamma_total || b >= gamma_total * (1.0 - 1e-12)) continue;
    double drop = hull[i - 1].slope - hull[i].slope;
    if (drop <= 0.0) continue;
    tents.push_back({drop / gamma_total, b});
  }
  return tents;
}

std::vector<Piece> reflect_lines(const PiecewiseLinear& env, double gamma_total) {
  std::vector<Piece> lines;
  for (const auto& p : env.pieces)
    lines.push_back({-p.slope, p.intercept + p.slope * gamma_total});
  return lines;
}

}  // namespace

std::vector<TentTerm> sparsify_asym_discrete(const std::vector<double>& q,
                                             const std::vector<double>& g,
                                             double gamma_total,
                                             double epsilon) {
  std::size_t n = q.size();
  if (n == 0 || g.size() != n)
    throw DomainError("need matching nonempty sample vectors");
  if (!(q.front() > 0.0) || !(q.back() < gamma_total))
    throw DomainError("sample abscissas must lie strictly inside (0, gamma_total)");
  double peak_val = 0.0;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (g[i] > peak_val) {
      peak_val = g[i];
      peak = i;
    }
  if (peak_val <= 0.0) return {};
  std::vector<double> rq(q.begin(), q.begin() + peak + 1);
  std::vector<double> rg(g.begin(), g.begin() + peak + 1);
  std::vector<double> fq, fg;
  for (std::size_t j = n; j-- > peak;) {
    fq.push_back(gamma_total - q[j]);
    fg.push_back(g[j]);
  }
  PiecewiseLinear rising = sparsify_discrete(rq, rg, epsilon);
  PiecewiseLinear falling = sparsify_discrete(fq, fg, epsilon);
  std::vector<Piece> lines = rising.pieces;
  auto mirrored = reflect_lines(falling, gamma_total);
  lines.insert(lines.end(), mirrored.begin(), mirrored.end());
  return lines_to_tents(std::move(lines), gamma_total);
}

std::vector<TentTerm> sparsify_asym_continuous(const Fn1& g,
                                               const Fn1& g_slope,
                                               double gamma_total,
                                               double epsilon) {
  if (!(gamma_total > 0.0)) throw DomainError("gamma_total must be positive");
  double s_lo = g_slope(0.0);
  double s_hi = g_slope(gamma_total);
  if (!(s_lo > 0.0) || !(s_hi < 0.0)) {
    // concave with g(0) = g(gamma_total) = 0 and no interior rise: g is 0
    return {};
  }
  double lo = 0.0, hi = gamma_total;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * gamma_total; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g_slope(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double x_peak = 0.5 * (lo + hi);
  PiecewiseLinear rising = sparsify_continuous(g, g_slope, x_peak, epsilon);
  PiecewiseLinear falling = sparsify_continuous(
      [&](double y) { return g(gamma_total - y); },
      [&](double y) { return -g_slope(gamma_total - y); },
      gamma_total - x_peak, epsilon);
  std::vector<Piece> lines = rising.pieces;
  auto mirrored = reflect_lines(falling, gamma_total);
  lines.insert(lines.end(), mirrored.begin(), mirrored.end());
  return lines_to_tents(std::move(lines), gamma_total);
}

}  // namespace edvw
