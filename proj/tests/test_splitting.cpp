#include <cmath>
#include <random>

#include "doctest.h"
#include "edvwcut/splitting.hpp"
#include "oracles.hpp"

using namespace edvw;
using testutil::make_edge;

TEST_CASE("parse_split_spec covers the grammar") {
  CHECK(parse_split_spec("product").family == SplitFamily::Product);
  CHECK(parse_split_spec("minhalf").family == SplitFamily::MinHalf);
  SplittingSpec t = parse_split_spec("thresh:0.2");
  CHECK(t.family == SplitFamily::ThresholdedMin);
  CHECK(t.beta == doctest::Approx(0.2));
  CHECK(t.threshold_for(10.0) == doctest::Approx(2.0));
  SplittingSpec ta = parse_split_spec("threshabs:1.5");
  CHECK(ta.threshold_for(10.0) == doctest::Approx(1.5));
  SplittingSpec w = parse_split_spec("wmin:2,3");
  CHECK(w.family == SplitFamily::WeightedMin);
  CHECK(w.wmin_a == doctest::Approx(2.0));
  CHECK(w.wmin_b == doctest::Approx(3.0));
  CHECK(parse_split_spec("aon").family == SplitFamily::AllOrNothing);
  SplittingSpec pk = parse_split_spec("product*kappa");
  CHECK(pk.family == SplitFamily::Product);
  CHECK(pk.scale_by_kappa);
  CHECK(parse_split_spec("sqrtcave").family == SplitFamily::CustomConcave);
  CHECK(parse_split_spec("logcave").custom_symmetric);
  CHECK_THROWS_AS(parse_split_spec("thresh:0"), FamilyError);
  CHECK_THROWS_AS(parse_split_spec("thresh:1.5"), FamilyError);
  CHECK_THROWS_AS(parse_split_spec("wmin:2"), FamilyError);
  CHECK_THROWS_AS(parse_split_spec("nope"), FamilyError);
  CHECK_THROWS_AS(parse_split_spec(""), FamilyError);
}

TEST_CASE("eval_g matches the closed forms") {
  Hyperedge e = make_edge({1, 2, 3});
  CHECK(eval_g(parse_split_spec("product"), e, 2.0) == doctest::Approx(8.0));
  CHECK(eval_g(parse_split_spec("minhalf"), e, 5.0) == doctest::Approx(1.0));
  CHECK(eval_g(parse_split_spec("threshabs:2"), e, 3.0) == doctest::Approx(2.0));
  CHECK(eval_g(parse_split_spec("wmin:2,3"), e, 1.0) == doctest::Approx(2.0));
  for (const char* s : {"product", "minhalf", "thresh:0.3", "wmin:2,3"}) {
    CHECK(eval_g(parse_split_spec(s), e, 0.0) == 0.0);
    CHECK(eval_g(parse_split_spec(s), e, 6.0) == 0.0);
  }
  CHECK_THROWS_AS(eval_g(parse_split_spec("product"), e, -0.5), DomainError);
  CHECK_THROWS_AS(eval_g(parse_split_spec("product"), e, 6.5), DomainError);
  CHECK_THROWS_AS(eval_g(parse_split_spec("aon"), e, 1.0), FamilyError);
}

TEST_CASE("eval_split agrees with direct formula evaluation") {
  Hyperedge e = make_edge({1, 2, 3});
  CHECK(eval_split(parse_split_spec("product"), e, {0}) == doctest::Approx(5.0));
  CHECK(eval_split(parse_split_spec("wmin:2,1"), e, {0}) == doctest::Approx(2.0));
  for (const char* s : {"product", "minhalf", "thresh:0.3", "wmin:2,1", "aon"}) {
    CHECK(eval_split(parse_split_spec(s), e, {}) == 0.0);
    CHECK(eval_split(parse_split_spec(s), e, {0, 1, 2}) == 0.0);
  }
  CHECK_THROWS_AS(eval_split(parse_split_spec("product"), e, {9}),
                  VertexNotInEdge);

  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    Hyperedge r = testutil::random_edge(rng, 2, 7);
    std::uint32_t full = (1u << r.size()) - 1;
    SplittingSpec thresh = parse_split_spec("thresh:0.3");
    double b = thresh.threshold_for(r.gamma_total);
    for (std::uint32_t m = 0; m <= full; ++m) {
      CHECK(eval_split_mask(parse_split_spec("product"), r, m) ==
            doctest::Approx(testutil::ref_product(r, m)).epsilon(1e-9));
      CHECK(eval_split_mask(parse_split_spec("minhalf"), r, m) ==
            doctest::Approx(testutil::ref_minhalf(r, m)).epsilon(1e-9));
      CHECK(eval_split_mask(thresh, r, m) ==
            doctest::Approx(testutil::ref_thresh(r, m, b)).epsilon(1e-9));
      CHECK(eval_split_mask(parse_split_spec("wmin:2,3"), r, m) ==
            doctest::Approx(testutil::ref_wmin(r, m, 2, 3)).epsilon(1e-9));
      CHECK(eval_split_mask(parse_split_spec("aon"), r, m) ==
            doctest::Approx(testutil::ref_aon(r, m, 1.0)));
    }
  }
}

TEST_CASE("kappa scaling multiplies continuous families and not aon") {
  Hyperedge e = make_edge({1, 2, 3}, 4.0);
  CHECK(eval_split(parse_split_spec("minhalf*kappa"), e, {0}) ==
        doctest::Approx(4.0));
  CHECK(eval_split(parse_split_spec("minhalf"), e, {0}) == doctest::Approx(1.0));
  // aon already evaluates to kappa; the flag must not double-count
  CHECK(eval_split(parse_split_spec("aon*kappa"), e, {0}) == doctest::Approx(4.0));
  CHECK(eval_split(parse_split_spec("aon"), e, {0}) == doctest::Approx(4.0));
}

TEST_CASE("hypergraph_cut sums per-edge penalties and ignores outsiders") {
  Hypergraph h = build_hypergraph(
      {"v1", "v2", "v3", "v9"},
      {{"e1", 1.0, {{"v1", 1.0}, {"v2", 2.0}, {"v3", 3.0}}}});
  SplittingSpec mh = parse_split_spec("minhalf");
  CHECK(hypergraph_cut(h, mh, {}) == 0.0);
  CHECK(hypergraph_cut(h, mh, {0, 1, 2, 3}) == 0.0);
  // v9 is not an e1 member; the edge only sees {v1}
  CHECK(hypergraph_cut(h, mh, {h.vertex_id("v1"), h.vertex_id("v9")}) ==
        doctest::Approx(1.0));
}

TEST_CASE("submodularity holds for every built-in family") {
  std::mt19937_64 rng(17);
  std::vector<SplittingSpec> specs = {
      parse_split_spec("product"), parse_split_spec("minhalf"),
      parse_split_spec("thresh:0.25"), parse_split_spec("wmin:2,0.7"),
      parse_split_spec("aon")};
  for (int it = 0; it < 20; ++it) {
    Hyperedge e = testutil::random_edge(rng, 2, 6);
    for (const auto& s : specs) CHECK(is_submodular_bruteforce(e, s));
  }
}

TEST_CASE("submodularity counterexample is detected") {
  // w(|S|=1)=1, w(|S|=2)=3 violates diminishing returns at S1=empty, S2={v1}
  Hyperedge e = make_edge({1, 1, 1});
  auto w = [&](std::uint32_t m) {
    switch (testutil::popcount(m)) {
      case 1:
        return 1.0;
      case 2:
        return 3.0;
      default:
        return 0.0;
    }
  };
  CHECK_FALSE(is_submodular_bruteforce(e, w));
  Hyperedge big = testutil::make_edge(std::vector<double>(13, 1.0));
  CHECK_THROWS_AS(is_submodular_bruteforce(big, parse_split_spec("minhalf")),
                  EdgeTooLarge);
}

TEST_CASE("symmetry oracle distinguishes the families") {
  Hyperedge e = make_edge({1, 2, 3});
  CHECK(is_symmetric_bruteforce(e, parse_split_spec("product")));
  CHECK(is_symmetric_bruteforce(e, parse_split_spec("minhalf")));
  CHECK(is_symmetric_bruteforce(e, parse_split_spec("thresh:0.3")));
  CHECK(is_symmetric_bruteforce(e, parse_split_spec("aon")));
  CHECK_FALSE(is_symmetric_bruteforce(e, parse_split_spec("wmin:2,1")));
  CHECK(is_symmetric_bruteforce(e, parse_split_spec("wmin:2,2")));
}

TEST_CASE("lemma 1(i) diminishing increments on built-in families") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const char* s : {"product", "minhalf", "thresh:0.3", "wmin:2,0.7"}) {
    SplittingSpec spec = parse_split_spec(s);
    for (int it = 0; it < 200; ++it) {
      double gt = 1.0 + 9.0 * u(rng);
      double b1 = u(rng) * gt / 2;
      double b2 = b1 + u(rng) * (gt / 2 - b1);
      double a = u(rng) * (gt - b2) / 2;
      double lhs = eval_g_total(spec, gt, b1 + a) - eval_g_total(spec, gt, b1);
      double rhs = eval_g_total(spec, gt, b2 + a) - eval_g_total(spec, gt, b2);
      CHECK(lhs >= rhs - 1e-9);
    }
  }
}

TEST_CASE("cardinality degeneration: unit EDVWs depend only on |S|") {
  for (int n = 2; n <= 8; ++n) {
    Hyperedge e = make_edge(std::vector<double>(n, 1.0));
    for (const char* s : {"product", "minhalf", "thresh:0.4", "wmin:2,1"}) {
      SplittingSpec spec = parse_split_spec(s);
      std::vector<double> by_size(static_cast<std::size_t>(n) + 1, -1.0);
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        double v = eval_split_mask(spec, e, m);
        double& slot = by_size[testutil::popcount(m)];
        if (slot < 0)
          slot = v;
        else
          CHECK(v == doctest::Approx(slot).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("thresholded-min with tiny threshold matches all-or-nothing shape") {
  Hyperedge e = make_edge({1.0, 2.0, 3.0});
  double b = 0.5;  // below min gamma
  SplittingSpec t = parse_split_spec("threshabs:0.5");
  for (std::uint32_t m = 0; m < (1u << 3); ++m) {
    double expect = b * testutil::ref_aon(e, m, 1.0);
    CHECK(eval_split_mask(t, e, m) == doctest::Approx(expect));
  }
}

TEST_CASE("concavity probe accepts concave and rejects convex customs") {
  Hyperedge e = make_edge({1, 2, 3});
  CHECK(concavity_probe(parse_split_spec("product"), e, 33));
  CHECK(concavity_probe(parse_split_spec("sqrtcave"), e, 33));
  CHECK(concavity_probe(parse_split_spec("logcave"), e, 33));
  CHECK_FALSE(concavity_probe(parse_split_spec("convexdemo"), e, 33));
  CHECK_THROWS_AS(concavity_probe(parse_split_spec("aon"), e, 33), FamilyError);
  CHECK_THROWS_AS(concavity_probe(parse_split_spec("product"), e, 2),
                  DomainError);
}
