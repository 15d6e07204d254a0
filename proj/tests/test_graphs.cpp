#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mallows/permutation.hpp"
#include "mallows/stats/graphs.hpp"
#include "mallows/stats/intervals.hpp"
#include "support/enumerate.hpp"

using namespace mallows;
using namespace mallows::stats;
using namespace testsupport;
using Catch::Matchers::Message;

namespace {

Permutation half_and_half() {
  return Permutation::from_one_line({21, 12, 19, 7, 11, 17, 9, 5, 3, 13, 6,
                                     1, 8, 16, 4, 18, 14, 20, 22, 10, 15, 2});
}

IntervalSeq seq(std::vector<Interval> items) {
  return IntervalSeq(std::move(items));
}

}  // namespace

TEST_CASE("directed graph basics", "[graphs]") {
  DirectedGraph g(4);
  g.add_arc(1, 2);
  g.add_arc(3, 2);
  CHECK(g.vertex_count() == 4);
  CHECK(g.has_arc(1, 2));
  CHECK_FALSE(g.has_arc(2, 1));
  g.add_arc(1, 2);  // set semantics
  CHECK(g.arcs().size() == 2);
  g.remove_arc(1, 2);
  CHECK_FALSE(g.has_arc(1, 2));

  CHECK_THROWS_MATCHES(g.add_arc(2, 2), std::invalid_argument,
                       Message("graph: self-loop"));
  CHECK_THROWS_AS(g.add_arc(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_arc(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(DirectedGraph(-1), std::invalid_argument);
}

TEST_CASE("graph text format round trips", "[graphs]") {
  DirectedGraph g(3);
  g.add_arc(2, 1);
  g.add_arc(1, 3);
  CHECK(format_graph(g) == "3\n1 3\n2 1\n");
  CHECK(parse_graph(format_graph(g)) == g);

  const DirectedGraph lone = parse_graph("1\n");
  CHECK(lone.vertex_count() == 1);
  CHECK(lone.arcs().empty());

  CHECK_THROWS_AS(parse_graph(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph("3\n1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph("3\n1 1\n"), std::invalid_argument);
}

TEST_CASE("induced edge on the identity", "[graphs]") {
  // One interval gives at most a self-pair, which never forms an edge.
  const Permutation id = Permutation::identity(4);
  CHECK_FALSE(induced_edge(id, seq({Interval(1, 2)}), Interval(3, 4)));

  // Two intervals whose values both continue into J = {3,4}: successors of
  // 1 and 3 sit at positions 3 and 4, so the arc runs first to second.
  const Permutation p = Permutation::from_one_line({1, 3, 2, 4});
  const auto e = induced_edge(p, seq({Interval(1, 1), Interval(2, 2)}),
                              Interval(3, 4));
  REQUIRE(e.has_value());
  CHECK(*e == std::make_pair(1, 2));

  // An empty member interval has an empty successor set, killing the edge.
  CHECK_FALSE(induced_edge(p, seq({Interval(1, 1), Interval::empty()}),
                           Interval(3, 4)));

  CHECK_THROWS_MATCHES(
      induced_edge(id, seq({Interval(1, 2)}), Interval(2, 3)),
      std::invalid_argument, Message("induced_edge: interval overlaps J"));
}

TEST_CASE("induced graph on the running example", "[graphs]") {
  const Permutation p = half_and_half();
  const IntervalSeq left = minimal_intervals(p, Interval(1, 12), 2);
  const IntervalSeq right = minimal_intervals(p, Interval(13, 22), 2);
  REQUIRE(left.size() == 3);
  REQUIRE(right.size() == 1);

  // The third left gap has no successor into the right gap, so the only
  // candidate arc is undefined and the graph stays empty.
  const DirectedGraph h = induced_graph(p, left, right);
  CHECK(h.vertex_count() == 3);
  CHECK(h.arcs().empty());

  CHECK_THROWS_MATCHES(induced_graph(p, left, left), std::invalid_argument,
                       Message("induced_graph: Ical overlaps Jcal"));
}

TEST_CASE("induced graph collapses duplicate arcs", "[graphs]") {
  // Both members of Jcal induce the same arc 1 -> 2.
  const Permutation p =
      Permutation::from_one_line({1, 5, 3, 7, 2, 4, 6, 8});
  const IntervalSeq ical = seq({Interval(1, 2), Interval(3, 4)});
  const IntervalSeq jcal = seq({Interval(5, 6), Interval(7, 8)});
  const DirectedGraph g = induced_graph(p, ical, jcal);
  CHECK(g.vertex_count() == 2);
  CHECK(g.arcs() == std::set<std::pair<int, int>>{{1, 2}});
}

TEST_CASE("induced graph shape invariants", "[graphs]") {
  for_each_permutation(6, [](const Permutation& p) {
    const IntervalSeq ical = minimal_intervals(p, Interval(1, 3), 2);
    const IntervalSeq jcal = minimal_intervals(p, Interval(4, 6), 2);
    const DirectedGraph g = induced_graph(p, ical, jcal);
    REQUIRE(g.vertex_count() == static_cast<int>(ical.size()));
    for (const auto& [u, v] : g.arcs()) REQUIRE(u != v);
  });
}

TEST_CASE("arithmetic graphs satisfy their checker", "[graphs]") {
  for (int n : {1, 2, 3, 16, 40, 64}) {
    ArithGraphs g = build_arithmetic_graphs(n);
    CAPTURE(n);
    CHECK(arith_check(g.doubling, g.powers, g.towers, g.wowzers));
  }
  CHECK_THROWS_AS(build_arithmetic_graphs(0), std::invalid_argument);

  // Tampering in either direction is caught.
  ArithGraphs g = build_arithmetic_graphs(16);
  g.doubling.remove_arc(1, 2);
  CHECK_FALSE(arith_check(g.doubling, g.powers, g.towers, g.wowzers));
  g.doubling.add_arc(1, 2);
  CHECK(arith_check(g.doubling, g.powers, g.towers, g.wowzers));
  g.doubling.add_arc(1, 3);
  CHECK_FALSE(arith_check(g.doubling, g.powers, g.towers, g.wowzers));
  g.doubling.remove_arc(1, 3);
  g.towers.remove_arc(3, 16);
  CHECK_FALSE(arith_check(g.doubling, g.powers, g.towers, g.wowzers));

  CHECK_THROWS_MATCHES(
      arith_check(DirectedGraph(3), DirectedGraph(4), DirectedGraph(3),
                  DirectedGraph(3)),
      std::invalid_argument, Message("arith_check: vertex count mismatch"));
}

TEST_CASE("even size oracle frozen values", "[graphs]") {
  CHECK(even_size_oracle(1));
  CHECK(even_size_oracle(2));
  CHECK_FALSE(even_size_oracle(3));
  CHECK_FALSE(even_size_oracle(4));
  CHECK(even_size_oracle(5));
  CHECK(even_size_oracle(6));
  CHECK(even_size_oracle(16));
  CHECK(even_size_oracle(64));
  CHECK(even_size_oracle(65536));
  CHECK(even_size_oracle(65537));
  CHECK_THROWS_AS(even_size_oracle(0), std::invalid_argument);
}

TEST_CASE("graph parity check agrees with the oracle", "[graphs]") {
  for (int n = 1; n <= 64; ++n) {
    const ArithGraphs g = build_arithmetic_graphs(n);
    CAPTURE(n);
    REQUIRE(even_size_graph_check(g.doubling, g.powers, g.towers, g.wowzers,
                                  n) == even_size_oracle(n));
  }
}

TEST_CASE("graph parity check validates its inputs", "[graphs]") {
  ArithGraphs g = build_arithmetic_graphs(8);
  CHECK_THROWS_MATCHES(
      even_size_graph_check(g.doubling, g.powers, g.towers, g.wowzers, 9),
      std::invalid_argument,
      Message("even_size_graph_check: vertex count mismatch"));

  g.powers.remove_arc(2, 4);
  CHECK_THROWS_MATCHES(
      even_size_graph_check(g.doubling, g.powers, g.towers, g.wowzers, 8),
      std::invalid_argument,
      Message("even_size_graph_check: graphs fail arith_check"));
}

TEST_CASE("matching check", "[graphs]") {
  const std::set<int> a{1, 2, 3}, b{4, 5};

  DirectedGraph g(5);
  g.add_arc(4, 1);
  g.add_arc(5, 2);
  CHECK(matching_check(g, a, b));

  SECTION("second arc out of one source") {
    g.add_arc(4, 3);
    CHECK_FALSE(matching_check(g, a, b));
  }
  SECTION("arc in the wrong direction") {
    g.remove_arc(5, 2);
    g.add_arc(2, 5);
    CHECK_FALSE(matching_check(g, a, b));
  }
  SECTION("arc within the target side") {
    g.add_arc(1, 2);
    CHECK_FALSE(matching_check(g, a, b));
  }
  SECTION("source with no arc") {
    g.remove_arc(5, 2);
    CHECK_FALSE(matching_check(g, a, b));
  }
  SECTION("two arcs into one target") {
    g.remove_arc(5, 2);
    g.add_arc(5, 1);
    CHECK_FALSE(matching_check(g, a, b));
  }
  SECTION("perfect matchings leave no vertex unmatched") {
    DirectedGraph m(4);
    m.add_arc(3, 1);
    m.add_arc(4, 2);
    CHECK_FALSE(matching_check(m, {1, 2}, {3, 4}));
  }
  SECTION("partition validation") {
    CHECK_THROWS_MATCHES(matching_check(g, {1, 2}, {4, 5}),
                         std::invalid_argument,
                         Message("matching_check: not a partition"));
    CHECK_THROWS_MATCHES(matching_check(g, {1, 2, 3}, {3, 5}),
                         std::invalid_argument,
                         Message("matching_check: not a partition"));
    CHECK_THROWS_MATCHES(matching_check(g, {1, 2, 3}, {4, 6}),
                         std::invalid_argument,
                         Message("matching_check: not a partition"));
  }
}
