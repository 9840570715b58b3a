#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "edvwcut/hypergraph.hpp"
#include "oracles.hpp"

using namespace edvw;

namespace {

Hypergraph toy() {
  EdgeInput e1{"e1", 1.0, {{"v1", 1.0}, {"v2", 2.0}, {"v3", 3.0}}};
  return build_hypergraph({"v1", "v2", "v3"}, {e1});
}

}  // namespace

TEST_CASE("build_hypergraph accepts a valid edge and caches the total") {
  Hypergraph h = toy();
  CHECK(h.num_vertices() == 3);
  CHECK(h.num_edges() == 1);
  CHECK(h.edges[0].gamma_total == doctest::Approx(6.0));
  CHECK(h.vertex_id("v2") == 1);
  CHECK(h.edges[0].gamma_of(h.vertex_id("v3")) == doctest::Approx(3.0));
}

TEST_CASE("build_hypergraph rejects bad input with the right error") {
  CHECK_THROWS_AS(build_hypergraph({"v1", "v2"},
                                   {{"e", 1.0, {{"v1", 1.0}, {"v2", 0.0}}}}),
                  NonPositiveWeight);
  CHECK_THROWS_AS(build_hypergraph({"v1"}, {{"e", 0.0, {{"v1", 1.0}}}}),
                  NonPositiveWeight);
  CHECK_THROWS_AS(build_hypergraph({"v1"}, {{"e", 1.0, {{"v9", 1.0}}}}),
                  UnknownVertex);
  CHECK_THROWS_AS(build_hypergraph({"v1", "v2"},
                                   {{"e", 1.0, {{"v1", 1.0}, {"v1", 2.0}}}}),
                  DuplicateMember);
  CHECK_THROWS_AS(build_hypergraph({"v1", "v1"}, {}), DuplicateMember);
  CHECK_THROWS_AS(
      build_hypergraph({"v1"}, {{"e", 1.0, {{"v1", 1.0}}},
                                {"e", 1.0, {{"v1", 2.0}}}}),
      DuplicateMember);
  CHECK_THROWS_AS(toy().vertex_id("v9"), UnknownVertex);
}

TEST_CASE("size-1 hyperedges are accepted") {
  Hypergraph h =
      build_hypergraph({"v1", "v2"}, {{"solo", 2.0, {{"v2", 0.5}}}});
  CHECK(h.edges[0].size() == 1);
  CHECK(h.edges[0].gamma_total == doctest::Approx(0.5));
}

TEST_CASE("gamma_sum basics") {
  Hypergraph h = toy();
  const Hyperedge& e = h.edges[0];
  CHECK(gamma_sum(e, {}) == 0.0);
  CHECK(gamma_sum(e, {0, 2}) == doctest::Approx(4.0));
  CHECK(gamma_sum(e, {0, 1, 2}) == doctest::Approx(6.0));
  CHECK_THROWS_AS(gamma_sum(e, {7}), VertexNotInEdge);
}

TEST_CASE("gamma_sum complement and monotonicity over random edges") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    Hyperedge e = testutil::random_edge(rng, 1, 8);
    std::uint32_t full = (1u << e.size()) - 1;
    for (std::uint32_t m = 0; m <= full; ++m) {
      double a = gamma_sum_mask(e, m);
      double b = gamma_sum_mask(e, full & ~m);
      CHECK(std::abs(a + b - e.gamma_total) <= 1e-12 * e.gamma_total);
      // drop one member: sum cannot grow
      if (m) {
        std::uint32_t sub = m & (m - 1);
        CHECK(gamma_sum_mask(e, sub) <= a + 1e-12 * (1 + e.gamma_total));
      }
    }
  }
}

TEST_CASE("gamma_sum accumulation is bit-identical across calls") {
  std::mt19937_64 rng(11);
  Hyperedge e = testutil::random_edge(rng, 8, 8);
  for (std::uint32_t m = 0; m < (1u << 8); ++m) {
    double a = gamma_sum_mask(e, m);
    double b = gamma_sum_mask(e, m);
    CHECK(a == b);
  }
  std::vector<VertexId> s{5, 1, 3};
  CHECK(gamma_sum(e, s) == gamma_sum(e, {1, 3, 5}));
}

TEST_CASE("hypergraph text format round trip") {
  std::string text =
      "# toy instance\n"
      "v v1\n"
      "v v2\n"
      "v v3\n"
      "e e1 1 v1:1 v2:2 v3:3\n"
      "e e2 2.5 v2:0.25 v3:1e-2\n";
  std::istringstream in(text);
  Hypergraph h = parse_hypergraph(in);
  CHECK(h.num_vertices() == 3);
  CHECK(h.num_edges() == 2);
  CHECK(h.edges[1].kappa == doctest::Approx(2.5));
  CHECK(h.edges[1].gamma_of(h.vertex_id("v3")) == doctest::Approx(0.01));
  std::ostringstream out;
  write_hypergraph(out, h);
  std::istringstream in2(out.str());
  Hypergraph h2 = parse_hypergraph(in2);
  REQUIRE(h2.num_edges() == 2);
  CHECK(h2.vertex_names == h.vertex_names);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(h2.edges[i].id == h.edges[i].id);
    CHECK(h2.edges[i].members == h.edges[i].members);
    for (std::size_t j = 0; j < h.edges[i].size(); ++j)
      CHECK(h2.edges[i].gamma[j] == doctest::Approx(h.edges[i].gamma[j]));
  }
}

TEST_CASE("hypergraph parser rejects malformed records") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_hypergraph(in);
  };
  CHECK_THROWS_AS(parse("v a extra\n"), ParseError);
  CHECK_THROWS_AS(parse("x a\n"), ParseError);
  CHECK_THROWS_AS(parse("v a\ne e1 1\n"), ParseError);       // no members
  CHECK_THROWS_AS(parse("v a\ne e1 1 a\n"), ParseError);     // missing colon
  CHECK_THROWS_AS(parse("v a\ne e1 1 a:x\n"), ParseError);   // bad real
  CHECK_THROWS_AS(parse("v a\ne e1 1 b:1\n"), ParseError);   // unknown member
  CHECK_THROWS_AS(parse("v a\nv a\n"), ParseError);          // duplicate vertex
  CHECK_THROWS_AS(parse("v a\ne e 1 a:1\ne e 1 a:1\n"), ParseError);
  CHECK_NOTHROW(parse("  v a \n\n # comment\n e e1  1  a:2 \n"));
}
