#include "edvwcut/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace edvw {

namespace {

double sqrtcave_g(double x, double g_total) { return std::sqrt(x * (g_total - x)); }

double sqrtcave_slope(double x, double g_total) {
  double p = x * (g_total - x);
  if (p <= 0.0) return x < g_total / 2 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
  return (g_total - 2 * x) / (2 * std::sqrt(p));
}

double logcave_g(double x, double g_total) {
  return std::log1p(x) + std::log1p(g_total - x) - std::log1p(g_total);
}

double logcave_slope(double x, double g_total) {
  return 1.0 / (1.0 + x) - 1.0 / (1.0 + g_total - x);
}

double convexdemo_g(double x, double g_total) {
  double p = x * (g_total - x);
  return p * p / (g_total * g_total);
}

double convexdemo_slope(double x, double g_total) {
  return 2 * x * (g_total - x) * (g_total - 2 * x) / (g_total * g_total);
}

double parse_positive(const std::string& tok, const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size() || !(v > 0.0) || !std::isfinite(v))
      throw FamilyError("");
    return v;
  } catch (const FamilyError&) {
    throw FamilyError("split spec '" + text + "': " + what + " must be a positive real");
  } catch (const std::exception&) {
    throw FamilyError("split spec '" + text + "': bad " + what + " '" + tok + "'");
  }
}

}  // namespace

double SplittingSpec::threshold_for(double gamma_total) const {
  return b_abs > 0.0 ? b_abs : beta * gamma_total;
}

bool SplittingSpec::is_symmetric_family() const {
  switch (family) {
    case SplitFamily::Product:
    case SplitFamily::MinHalf:
    case SplitFamily::ThresholdedMin:
    case SplitFamily::AllOrNothing:
      return true;
    case SplitFamily::WeightedMin:
      return wmin_a == wmin_b;
    case SplitFamily::CustomConcave:
      return custom_symmetric;
  }
  return false;
}

SplittingSpec parse_split_spec(const std::string& text) {
  SplittingSpec spec;
  spec.name = text;
  std::string body = text;
  constexpr const char* kappa_suffix = "*kappa";
  if (body.size() >= 6 && body.compare(body.size() - 6, 6, kappa_suffix) == 0) {
    spec.scale_by_kappa = true;
    body = body.substr(0, body.size() - 6);
  }
  if (body == "product") {
    spec.family = SplitFamily::Product;
  } else if (body == "minhalf") {
    spec.family = SplitFamily::MinHalf;
  } else if (body == "aon") {
    spec.family = SplitFamily::AllOrNothing;
  } else if (body.rfind("thresh:", 0) == 0) {
    spec.family = SplitFamily::ThresholdedMin;
    spec.beta = parse_positive(body.substr(7), text, "beta");
    if (spec.beta > 1.0)
      throw FamilyError("split spec '" + text + "': beta must lie in (0, 1]");
  } else if (body.rfind("threshabs:", 0) == 0) {
    spec.family = SplitFamily::ThresholdedMin;
    spec.b_abs = parse_positive(body.substr(10), text, "b");
  } else if (body.rfind("wmin:", 0) == 0) {
    spec.family = SplitFamily::WeightedMin;
    std::string args = body.substr(5);
    auto comma = args.find(',');
    if (comma == std::string::npos)
      throw FamilyError("split spec '" + text + "': wmin needs <a>,<b>");
    spec.wmin_a = parse_positive(args.substr(0, comma), text, "a");
    spec.wmin_b = parse_positive(args.substr(comma + 1), text, "b");
  } else if (body == "sqrtcave") {
    spec.family = SplitFamily::CustomConcave;
    spec.custom = sqrtcave_g;
    spec.custom_slope = sqrtcave_slope;
    spec.custom_symmetric = true;
  } else if (body == "logcave") {
    spec.family = SplitFamily::CustomConcave;
    spec.custom = logcave_g;
    spec.custom_slope = logcave_slope;
    spec.custom_symmetric = true;
  } else if (body == "convexdemo") {
    spec.family = SplitFamily::CustomConcave;
    spec.custom = convexdemo_g;
    spec.custom_slope = convexdemo_slope;
    spec.custom_symmetric = true;
  } else {
    throw FamilyError("unknown split spec '" + text + "'");
  }
  return spec;
}

double eval_g_total(const SplittingSpec& spec, double gamma_total, double x) {
  double slack = 1e-9 * gamma_total;
  if (x < -slack || x > gamma_total + slack)
    throw DomainError("x = " + std::to_string(x) + " outside [0, " +
                      std::to_string(gamma_total) + "]");
  x = std::clamp(x, 0.0, gamma_total);
  switch (spec.family) {
    case SplitFamily::Product:
      return x * (gamma_total - x);
    case SplitFamily::MinHalf:
      return std::min(x, gamma_total - x);
    case SplitFamily::ThresholdedMin:
      return std::min({x, gamma_total - x, spec.threshold_for(gamma_total)});
    case SplitFamily::WeightedMin:
      return std::min(spec.wmin_a * x, spec.wmin_b * (gamma_total - x));
    case SplitFamily::CustomConcave:
      if (!spec.custom) throw FamilyError("custom family without a callable");
      return spec.custom(x, gamma_total);
    case SplitFamily::AllOrNothing:
      break;
  }
  throw FamilyError("AllOrNothing has no continuous g");
}

double eval_g(const SplittingSpec& spec, const Hyperedge& e, double x) {
  return eval_g_total(spec, e.gamma_total, x);
}

double eval_g_slope(const SplittingSpec& spec, double gamma_total, double x) {
  double slack = 1e-9 * gamma_total;
  if (x < -slack || x > gamma_total + slack)
    throw DomainError("x = " + std::to_string(x) + " outside [0, " +
                      std::to_string(gamma_total) + "]");
  x = std::clamp(x, 0.0, gamma_total);
  switch (spec.family) {
    case SplitFamily::Product:
      return gamma_total - 2 * x;
    case SplitFamily::MinHalf:
      return x < gamma_total / 2 ? 1.0 : -1.0;
    case SplitFamily::ThresholdedMin: {
      // right derivative of a min of lines: least slope among active pieces
      double b = spec.threshold_for(gamma_total);
      double v = std::min({x, gamma_total - x, b});
      double slope = std::numeric_limits<double>::infinity();
      if (x <= v + 1e-12 * (1 + gamma_total)) slope = std::min(slope, 1.0);
      if (b <= v + 1e-12 * (1 + gamma_total)) slope = std::min(slope, 0.0);
      if (gamma_total - x <= v + 1e-12 * (1 + gamma_total)) slope = -1.0;
      return slope;
    }
    case SplitFamily::WeightedMin: {
      double lo = spec.wmin_a * x;
      double hi = spec.wmin_b * (gamma_total - x);
      double v = std::min(lo, hi);
      double tol = 1e-12 * (1 + std::max(lo, hi));
      if (hi <= v + tol) return -spec.wmin_b;
      return spec.wmin_a;
    }
    case SplitFamily::CustomConcave:
      if (!spec.custom_slope)
        throw FamilyError("custom family without a slope callable");
      return spec.custom_slope(x, gamma_total);
    case SplitFamily::AllOrNothing:
      break;
  }
  throw FamilyError("AllOrNothing has no slope");
}

double eval_split_mask(const SplittingSpec& spec, const Hyperedge& e,
                       std::uint32_t member_mask) {
  std::size_t n = e.size();
  if (n < 32 && (member_mask >> n) != 0)
    throw VertexNotInEdge("member mask has bits beyond edge " + e.id);
  if (spec.family == SplitFamily::AllOrNothing) {
    std::uint32_t full = n >= 32 ? ~std::uint32_t{0}
                                 : (std::uint32_t{1} << n) - 1;
    return member_mask != 0 && member_mask != full ? e.kappa : 0.0;
  }
  double v = eval_g_total(spec, e.gamma_total, gamma_sum_mask(e, member_mask));
  return spec.scale_by_kappa ? e.kappa * v : v;
}

double eval_split(const SplittingSpec& spec, const Hyperedge& e,
                  const std::vector<VertexId>& S) {
  if (spec.family == SplitFamily::AllOrNothing) {
    std::uint64_t seen = 0;
    std::size_t count = 0;
    for (VertexId v : S) {
      int i = e.member_index(v);
      if (i < 0)
        throw VertexNotInEdge("vertex id " + std::to_string(v) +
                              " is not a member of edge " + e.id);
      if (!(seen >> i & 1)) {
        seen |= std::uint64_t{1} << i;
        ++count;
      }
    }
    return count > 0 && count < e.size() ? e.kappa : 0.0;
  }
  double v = eval_g_total(spec, e.gamma_total, gamma_sum(e, S));
  return spec.scale_by_kappa ? e.kappa * v : v;
}

namespace {

double cut_term(const SplittingSpec& spec, const Hyperedge& e,
                const std::vector<char>& in_S) {
  std::size_t count = 0;
  double x = 0.0;
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    if (in_S[e.members[i]]) {
      x += e.gamma[i];
      ++count;
    }
  }
  if (spec.family == SplitFamily::AllOrNothing)
    return count > 0 && count < e.size() ? e.kappa : 0.0;
  if (count == e.size()) x = e.gamma_total;  // guard accumulation drift
  double v = eval_g_total(spec, e.gamma_total, x);
  return spec.scale_by_kappa ? e.kappa * v : v;
}

std::vector<char> membership(const Hypergraph& h,
                             const std::vector<VertexId>& S) {
  std::vector<char> in_S(h.num_vertices(), 0);
  for (VertexId v : S) {
    if (v < 0 || static_cast<std::size_t>(v) >= h.num_vertices())
      throw UnknownVertex("vertex id " + std::to_string(v) + " out of range");
    in_S[v] = 1;
  }
  return in_S;
}

}  // namespace

double hypergraph_cut(const Hypergraph& h, const SplittingSpec& spec,
                      const std::vector<VertexId>& S) {
  auto in_S = membership(h, S);
  double total = 0.0;
  for (const auto& e : h.edges) total += cut_term(spec, e, in_S);
  return total;
}

double hypergraph_cut(const Hypergraph& h,
                      const std::vector<SplittingSpec>& specs,
                      const std::vector<VertexId>& S) {
  if (specs.size() != h.num_edges())
    throw FamilyError("need one splitting spec per edge");
  auto in_S = membership(h, S);
  double total = 0.0;
  for (std::size_t i = 0; i < h.edges.size(); ++i)
    total += cut_term(specs[i], h.edges[i], in_S);
  return total;
}

bool is_submodular_bruteforce(const Hyperedge& e,
                              const std::function<double(std::uint32_t)>& w) {
  std::size_t n = e.size();
  if (n > 12) throw EdgeTooLarge("edge " + e.id + ": |e| > 12");
  std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<double> val(full + 1);
  double scale = 0.0;
  for (std::uint32_t m = 0; m <= full; ++m) {
    val[m] = w(m);
    scale = std::max(scale, std::abs(val[m]));
  }
  double tol = 1e-9 + 1e-9 * scale;
  for (std::uint32_t s2 = 0; s2 <= full; ++s2) {
    if (s2 == full) continue;
    for (std::uint32_t rest = full & ~s2; rest != 0; rest &= rest - 1) {
      std::uint32_t v = rest & (~rest + 1);
      double d2 = val[s2 | v] - val[s2];
      // submasks of s2, including the empty set
      std::uint32_t s1 = s2;
      while (true) {
        if (val[s1 | v] - val[s1] < d2 - tol) return false;
        if (s1 == 0) break;
        s1 = (s1 - 1) & s2;
      }
    }
  }
  return true;
}

bool is_submodular_bruteforce(const Hyperedge& e, const SplittingSpec& spec) {
  return is_submodular_bruteforce(
      e, [&](std::uint32_t m) { return eval_split_mask(spec, e, m); });
}

bool is_symmetric_bruteforce(const Hyperedge& e,
                             const std::function<double(std::uint32_t)>& w) {
  std::size_t n = e.size();
  if (n > 20) throw EdgeTooLarge("edge " + e.id + ": |e| > 20");
  std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t m = 0; m <= full; ++m) {
    double lhs = w(m);
    double rhs = w(full & ~m);
    if (std::abs(lhs - rhs) > 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
      return false;
  }
  return true;
}

bool is_symmetric_bruteforce(const Hyperedge& e, const SplittingSpec& spec) {
  return is_symmetric_bruteforce(
      e, [&](std::uint32_t m) { return eval_split_mask(spec, e, m); });
}

bool concavity_probe(const SplittingSpec& spec, const Hyperedge& e,
                     int n_samples) {
  if (!spec.is_continuous()) throw FamilyError("AllOrNothing has no continuous g");
  if (n_samples < 3) throw DomainError("concavity probe needs n_samples >= 3");
  double g_total = e.gamma_total;
  std::vector<double> xs(n_samples), gs(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    xs[i] = g_total * i / (n_samples - 1);
    gs[i] = eval_g_total(spec, g_total, xs[i]);
  }
  for (int i = 0; i + 2 < n_samples; ++i) {
    double b1 = xs[i], b2 = xs[i + 1], b3 = xs[i + 2];
    double chord = ((b3 - b2) * gs[i] + (b2 - b1) * gs[i + 2]) / (b3 - b1);
    double tol = 1e-9 * std::max({1.0, std::abs(gs[i + 1]), std::abs(chord)});
    if (gs[i + 1] < chord - tol) return false;
  }
  return true;
}

}  // namespace edvw
