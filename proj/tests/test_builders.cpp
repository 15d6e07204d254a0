#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mallows/logic/evaluate.hpp"
#include "mallows/logic/parser.hpp"
#include "mallows/permutation.hpp"
#include "mallows/stats/builders.hpp"
#include "mallows/stats/graphs.hpp"
#include "mallows/stats/intervals.hpp"
#include "support/enumerate.hpp"

using namespace mallows;
using namespace mallows::logic;
using namespace mallows::stats;
using namespace testsupport;

namespace {

Permutation half_and_half() {
  return Permutation::from_one_line({21, 12, 19, 7, 11, 17, 9, 5, 3, 13, 6,
                                     1, 8, 16, 4, 18, 14, 20, 22, 10, 15, 2});
}

std::set<int> witnesses(const Permutation& p, const FormulaPtr& f,
                        const std::string& var) {
  std::set<int> out;
  for (int j = 1; j <= p.size(); ++j) {
    Assignment env{{var, j}};
    if (evaluate(p, f, env)) out.insert(j);
  }
  return out;
}

}  // namespace

TEST_CASE("zeta matches run membership", "[builders]") {
  for (int k = 1; k <= 3; ++k) {
    const FormulaPtr zeta = build_zeta(k);
    CHECK(free_variables(zeta) == std::set<std::string>{"a", "b", "x"});
    for_each_permutation(5, [&](const Permutation& p) {
      for (int lo = 1; lo <= 5; ++lo)
        for (int hi = lo; hi <= 5; ++hi) {
          const std::set<int> runs =
              w_set(p, Interval(lo, hi).positions(), k);
          for (int x = 1; x <= 5; ++x) {
            Assignment env{{"x", x}, {"a", lo}, {"b", hi}};
            REQUIRE(evaluate(p, zeta, env) == (runs.count(x) > 0));
          }
        }
    });
  }
  CHECK_THROWS_AS(build_zeta(0), std::invalid_argument);
}

TEST_CASE("j1 witness formula", "[builders]") {
  const FormulaPtr xi = build_j1_witness();
  CHECK(free_variables(xi) == std::set<std::string>{"y"});

  for (int n = 1; n <= 5; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      const auto j = j1(p);
      const std::set<int> expect =
          j ? std::set<int>{*j} : std::set<int>{};
      REQUIRE(witnesses(p, xi, "y") == expect);
    });
  }
}

TEST_CASE("k1 witness formula", "[builders]") {
  const FormulaPtr psi = build_k1_witness();
  CHECK(free_variables(psi) == std::set<std::string>{"y"});

  for (int n = 2; n <= 5; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      REQUIRE(witnesses(p, psi, "y") == std::set<int>{k1(p)});
    });
  }

  // Below the defined range the witness set is simply empty.
  CHECK(witnesses(Permutation::from_one_line({1}), psi, "y").empty());

  CHECK(witnesses(half_and_half(), psi, "y") == std::set<int>{3});
}

TEST_CASE("rho compares the endpoint values", "[builders]") {
  const FormulaPtr rho = build_rho();
  CHECK(free_variables(rho).empty());

  for (int n = 1; n <= 5; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      REQUIRE(evaluate(p, rho) == (p(1) > p(n)));
    });
  }
  CHECK_FALSE(evaluate(Permutation(), rho));
}

TEST_CASE("gap vertices and gap membership", "[builders]") {
  const Permutation p = half_and_half();
  const stats::detail::IvNames iv{"a", "b"};

  const FormulaPtr vertex = stats::detail::gap_vertex(2, "u", iv, {});
  for (int u = 1; u <= 22; ++u) {
    Assignment env{{"u", u}, {"a", 1}, {"b", 12}};
    const bool expect = u == 2 || u == 5 || u == 8;  // witnesses sans last
    REQUIRE(evaluate(p, vertex, env) == expect);
  }

  const FormulaPtr inside = stats::detail::in_gap(2, "x", "u", iv, {});
  const IntervalSeq gaps = minimal_intervals(p, Interval(1, 12), 2);
  const std::vector<int> delim{2, 5, 8};
  for (std::size_t t = 0; t < delim.size(); ++t) {
    for (int x = 1; x <= 22; ++x) {
      Assignment env{{"x", x}, {"u", delim[t]}, {"a", 1}, {"b", 12}};
      REQUIRE(evaluate(p, inside, env) == gaps[t].contains(x));
    }
  }
}

TEST_CASE("y-value formula against the pair oracle", "[builders]") {
  const Permutation p = half_and_half();
  const FormulaPtr yf = stats::detail::y_value(2, "yv", "h", {"a", "b"}, "g",
                                        {"ja", "jb"}, {});
  MemoEvaluator memo(p);

  // Gap h=2 is {3,4}, h=5 is {6,7}, h=8 is {9,10}; the right-hand gap g=17
  // is {18,19,20}. The pair oracle gives y=18, y=20 and nothing.
  auto value_at = [&](int h) {
    std::set<int> out;
    for (int yv = 1; yv <= 22; ++yv) {
      Assignment env{{"yv", yv}, {"h", h}, {"a", 1}, {"b", 12},
                     {"g", 17},  {"ja", 13}, {"jb", 22}};
      if (memo.eval(yf, env)) out.insert(yv);
    }
    return out;
  };
  CHECK(value_at(2) == std::set<int>{18});
  CHECK(value_at(5) == std::set<int>{20});
  CHECK(value_at(8).empty());
}

TEST_CASE("arc formula against the induced graph", "[builders]") {
  // Two gaps on the left ({2} and {4}, delimited by 1 and 3), one usable gap
  // on the right ({8,9}); values 2 and 5 continue into it, so the arc runs
  // from the first gap to the second.
  const Permutation p =
      Permutation::from_one_line({1, 2, 4, 5, 7, 8, 9, 3, 6, 10, 11, 12});
  const Interval left(1, 6), right(7, 12);

  const IntervalSeq ical = minimal_intervals(p, left, 2);
  const IntervalSeq jcal = minimal_intervals(p, right, 2);
  REQUIRE(format_interval_seq(ical) == "2-2,4-4");
  REQUIRE(format_interval_seq(jcal) == "8-9,()");
  const DirectedGraph g = induced_graph(p, ical, jcal);
  REQUIRE(g.arcs() == std::set<std::pair<int, int>>{{1, 2}});

  const FormulaPtr arc = stats::detail::gap_arc(2, "e", "f", {"ia", "ib"},
                                         {"ja", "jb"}, {});
  MemoEvaluator memo(p);
  // Vertex 1 of the induced graph is the gap delimited by 1, vertex 2 the
  // gap delimited by 3; 5 is a witness but last, so no vertex at all.
  auto arc_holds = [&](int e, int f) {
    Assignment env{{"e", e},  {"f", f},  {"ia", 1},
                   {"ib", 6}, {"ja", 7}, {"jb", 12}};
    return memo.eval(arc, env);
  };
  for (int e : {1, 3, 5})
    for (int f : {1, 3, 5}) {
      const bool expect = e == 1 && f == 3;
      REQUIRE(arc_holds(e, f) == expect);
    }
}

TEST_CASE("oscillation machinery is well formed", "[builders]") {
  const FormulaPtr omega = build_omega(2);
  CHECK(free_variables(omega).empty());
  CHECK_FALSE(uses_relation(omega, Rel::R));
  CHECK(depth(omega) > 10);

  const FormulaPtr phi = build_universal_phi(2);
  CHECK(free_variables(phi).empty());
  CHECK_FALSE(uses_relation(phi, Rel::R));
  CHECK(depth(phi) > depth(omega));

  CHECK_THROWS_AS(build_omega(1), std::invalid_argument);
  CHECK_THROWS_AS(build_universal_phi(0), std::invalid_argument);
}

TEST_CASE("builder output survives a render and parse round trip",
          "[builders]") {
  const Signature sig = Signature::TOTO;
  for (const FormulaPtr& f :
       {build_zeta(2), build_j1_witness(), build_k1_witness(), build_rho(),
        build_omega(2), build_universal_phi(2)}) {
    CHECK(equal(parse(render(f), sig), f));
  }
}
