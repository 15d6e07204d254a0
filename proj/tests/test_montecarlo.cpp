#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mallows/distribution.hpp"
#include "mallows/logic/formula.hpp"
#include "mallows/logic/parser.hpp"
#include "mallows/rng.hpp"
#include "mallows/sim/chain.hpp"
#include "mallows/sim/estimate.hpp"
#include "mallows/sim/exact.hpp"
#include "mallows/sim/poisson.hpp"
#include "mallows/stats/builders.hpp"
#include "mallows/stream.hpp"

using namespace mallows;
using namespace mallows::logic;
using namespace mallows::sim;
using Catch::Matchers::Message;

namespace {

FormulaPtr fixed_point_sentence() {
  return parse("exists x. R(x,x)", Signature::TOOB);
}

// Small random TOTO sentence of quantifier depth exactly 2: two quantified
// variables over a random boolean combination of atoms.
FormulaPtr random_sentence(Rng& rng) {
  const std::vector<std::string> vars = {"x", "y"};
  auto var = [&] { return vars[rng.uniform_int(2) - 1]; };
  auto atom = [&]() -> FormulaPtr {
    switch (rng.uniform_int(3)) {
      case 1: return eq(var(), var());
      case 2: return lt1(var(), var());
      default: return lt2(var(), var());
    }
  };
  std::function<FormulaPtr(int)> boolean = [&](int budget) -> FormulaPtr {
    if (budget == 0 || rng.uniform_int(3) == 1) return atom();
    switch (rng.uniform_int(4)) {
      case 1: return not_(boolean(budget - 1));
      case 2: return and_(boolean(budget - 1), boolean(budget - 1));
      case 3: return or_(boolean(budget - 1), boolean(budget - 1));
      default: return implies(boolean(budget - 1), boolean(budget - 1));
    }
  };
  FormulaPtr body = boolean(2);
  body = rng.uniform_int(2) == 1 ? exists("y", body) : forall("y", body);
  return rng.uniform_int(2) == 1 ? exists("x", body) : forall("x", body);
}

}  // namespace

TEST_CASE("q schedules map sizes to parameters", "[montecarlo]") {
  CHECK(QSchedule::fixed(0.5).q_at(1) == 0.5);
  CHECK(QSchedule::fixed(0.5).q_at(1000) == 0.5);
  CHECK(QSchedule::one_minus_c_over_n4(1.0).q_at(4) ==
        Catch::Approx(1.0 - 1.0 / 256.0));
  CHECK(QSchedule::one_minus_c_over_n(2.0).q_at(8) == Catch::Approx(0.75));

  // log*(2) = 1, log*(16) = 3, log*(17) = 4.
  CHECK(QSchedule::log_star_band(1).q_at(2) == Catch::Approx(2.0));
  CHECK(QSchedule::log_star_band(1).q_at(16) == Catch::Approx(4.0 / 3.0));
  CHECK(QSchedule::log_star_band(-1).q_at(17) == Catch::Approx(0.75));

  CHECK_THROWS_MATCHES(QSchedule::log_star_band(2), std::invalid_argument,
                       Message("schedule: sign must be +1 or -1"));
  CHECK_THROWS_MATCHES(QSchedule::log_star_band(1).q_at(1),
                       std::invalid_argument,
                       Message("schedule: log* band needs n >= 2"));
  CHECK_THROWS_MATCHES(QSchedule::log_star_band(-1).q_at(2),
                       std::invalid_argument,
                       Message("schedule: q must be positive"));
  CHECK_THROWS_MATCHES(QSchedule::one_minus_c_over_n(2.0).q_at(2),
                       std::invalid_argument,
                       Message("schedule: q must be positive"));
  CHECK_THROWS_MATCHES(QSchedule::fixed(0.5).q_at(0), std::invalid_argument,
                       Message("schedule: n must be >= 1"));
}

TEST_CASE("experiment configs are validated", "[montecarlo]") {
  ExperimentConfig cfg;
  cfg.sentence = fixed_point_sentence();
  cfg.schedule = QSchedule::fixed(1.0);
  cfg.sizes = {4};
  cfg.samples = 10;

  ExperimentConfig bad = cfg;
  bad.sentence = nullptr;
  CHECK_THROWS_MATCHES(estimate_sat_prob(bad), std::invalid_argument,
                       Message("experiment: sentence required"));
  bad = cfg;
  bad.sizes.clear();
  CHECK_THROWS_MATCHES(estimate_sat_prob(bad), std::invalid_argument,
                       Message("experiment: sizes must be nonempty"));
  bad = cfg;
  bad.samples = 0;
  CHECK_THROWS_MATCHES(estimate_sat_prob(bad), std::invalid_argument,
                       Message("experiment: samples must be >= 1"));
  bad = cfg;
  bad.workers = 0;
  CHECK_THROWS_MATCHES(estimate_sat_prob(bad), std::invalid_argument,
                       Message("experiment: workers must be >= 1"));
}

TEST_CASE("estimates are bit-identical for every worker count",
          "[montecarlo]") {
  ExperimentConfig cfg;
  cfg.sentence = fixed_point_sentence();
  cfg.schedule = QSchedule::fixed(0.8);
  cfg.sizes = {30, 50};
  cfg.samples = 4000;
  cfg.seed = 42;

  cfg.workers = 1;
  const auto serial = estimate_sat_prob(cfg);
  cfg.workers = 4;
  const auto parallel = estimate_sat_prob(cfg);
  cfg.workers = 7;
  const auto odd = estimate_sat_prob(cfg);

  REQUIRE(serial.size() == 2);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].p_hat == parallel[i].p_hat);
    CHECK(serial[i].p_hat == odd[i].p_hat);
    CHECK(serial[i].half_width_95 == parallel[i].half_width_95);
    CHECK(serial[i].samples == 4000);
    CHECK(serial[i].half_width_95 ==
          Catch::Approx(1.96 * std::sqrt(serial[i].p_hat *
                                         (1.0 - serial[i].p_hat) / 4000.0)));
  }
}

TEST_CASE("estimates agree with exact enumeration on random sentences",
          "[montecarlo]") {
  Rng source(20260814);
  const double qs[3] = {0.5, 1.0, 2.0};
  for (int trial = 0; trial < 50; ++trial) {
    const FormulaPtr sentence = random_sentence(source);
    const int n = static_cast<int>(source.uniform_int(6));
    const double q = qs[source.uniform_int(3) - 1];

    ExperimentConfig cfg;
    cfg.sentence = sentence;
    cfg.schedule = QSchedule::fixed(q);
    cfg.sizes = {n};
    cfg.samples = 2000;
    cfg.seed = derive_seed(99, static_cast<std::uint64_t>(trial));
    cfg.workers = 2;
    const SatEstimate est = estimate_sat_prob(cfg)[0];

    const double exact = exact_sat_prob(sentence, n, q);
    const double tolerance = std::max(4.0 * est.half_width_95, 0.01);
    INFO("trial " << trial << " n=" << n << " q=" << q);
    CHECK(std::abs(est.p_hat - exact) <= tolerance);
  }
}

TEST_CASE("fixed-point probability approaches 1 - 1/e", "[montecarlo]") {
  ExperimentConfig cfg;
  cfg.sentence = fixed_point_sentence();
  cfg.schedule = QSchedule::fixed(1.0);
  cfg.sizes = {1000};
  cfg.samples = 40000;
  cfg.seed = 7;
  cfg.workers = 4;
  const SatEstimate est = estimate_sat_prob(cfg)[0];
  CHECK(std::abs(est.p_hat - (1.0 - std::exp(-1.0))) < 0.01);
}

TEST_CASE("the first exceeds the last under strong bias", "[montecarlo]") {
  ExperimentConfig cfg;
  cfg.sentence = stats::build_rho();
  cfg.sizes = {60};
  cfg.samples = 3000;
  cfg.seed = 11;
  cfg.workers = 2;

  cfg.schedule = QSchedule::fixed(2.0);
  CHECK(estimate_sat_prob(cfg)[0].p_hat > 0.9);

  cfg.schedule = QSchedule::fixed(0.4);
  CHECK(estimate_sat_prob(cfg)[0].p_hat < 0.1);
}

TEST_CASE("displacement of the first position stays under the bound",
          "[montecarlo]") {
  CHECK(displacement_bound_check(100, 0.5, 5000, 21));
  CHECK(displacement_bound_check(50, 0.01, 2000, 22));
  for (double q : {0.2, 0.5, 0.8}) CHECK(displacement_bound_check(2, q, 4000, 23));

  // Exhaustive S_2 mean is q/(1+q); the bound min(2q/(1-q), 1) dominates it
  // for every q in (0,1).
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double mean = q / (1.0 + q);
    CHECK(mean <= std::min(2.0 * q / (1.0 - q), 1.0));
  }

  // Near-identity regime: the empirical mean itself is tiny.
  double sum = 0.0;
  const MallowsParams params{50, 0.01};
  for (int s = 0; s < 2000; ++s) {
    Rng rng(derive_seed(22, static_cast<std::uint64_t>(s)));
    sum += std::abs(static_cast<double>(sample_mallows(params, rng)(1) - 1));
  }
  CHECK(sum / 2000.0 < 0.05);

  CHECK_THROWS_AS(displacement_bound_check(10, 1.0, 100, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(displacement_bound_check(10, 0.0, 100, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(displacement_bound_check(10, 0.5, 0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(displacement_bound_check(0, 0.5, 100, 0),
                  std::invalid_argument);
}

TEST_CASE("sampled cycle counts approach the Poisson product",
          "[montecarlo]") {
  CHECK(poisson_cycle_distance(2000, 3, 100000, 31) < 0.02);

  // Consistency: doubling the sample count moves the estimate very little.
  const double once = poisson_cycle_distance(30, 1, 100000, 32);
  const double twice = poisson_cycle_distance(30, 1, 200000, 33);
  CHECK(std::abs(once - twice) < 0.01);

  // Deterministic in the seed.
  CHECK(poisson_cycle_distance(30, 1, 20000, 34) ==
        poisson_cycle_distance(30, 1, 20000, 34));
}

TEST_CASE("chain traces are deterministic and regenerate cleanly",
          "[montecarlo]") {
  const auto trace = chain_trace(0.5, 2, 50, 77);
  const auto again = chain_trace(0.5, 2, 50, 77);
  REQUIRE(trace.size() == 50);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(trace[i].n == static_cast<int>(i) + 1);
    CHECK(trace[i].class_label == again[i].class_label);
    CHECK(trace[i].tail == again[i].tail);
  }

  // The tail is empty exactly at regeneration times; an independent replay
  // of the same stream tells us which times those are.
  RegenerativeStream stream(0.5, 77);
  stream.extend(50);
  for (const auto& state : trace)
    CHECK(state.tail.empty() == stream.is_regeneration(state.n));
}

TEST_CASE("the composition identity holds move by move", "[montecarlo]") {
  // chain_trace re-checks prefix ~ rep(class) + replayed tail via EF games
  // at every n <= 10 and throws if any step fails.
  for (double q : {0.3, 0.6}) {
    for (int d : {0, 1, 2}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        CHECK_NOTHROW(chain_trace(q, d, 10, seed));
      }
    }
  }

  CHECK_THROWS_MATCHES(chain_trace(0.5, 3, 10, 0), std::invalid_argument,
                       Message("chain: d must be between 0 and 2"));
  CHECK_THROWS_MATCHES(chain_trace(0.5, 2, 0, 0), std::invalid_argument,
                       Message("chain: n_max must be >= 1"));
  CHECK_THROWS_AS(chain_trace(1.0, 2, 10, 0), std::invalid_argument);
}

TEST_CASE("regeneration times arrive quickly at q = 1/2", "[montecarlo]") {
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    RegenerativeStream stream(0.5, derive_seed(55, static_cast<std::uint64_t>(i)));
    sum += static_cast<double>(stream.next_regeneration());
  }
  const double mean = sum / 10000.0;
  CHECK(mean >= 1.0);
  CHECK(mean < 20.0);
}

TEST_CASE("class occupancy stabilizes between n = 100 and n = 200",
          "[montecarlo]") {
  std::map<int, int> at100, at200;
  const int runs = 10000;
  for (int i = 0; i < runs; ++i) {
    const auto trace =
        chain_trace(0.5, 1, 200, derive_seed(88, static_cast<std::uint64_t>(i)));
    ++at100[trace[99].class_label.id];
    ++at200[trace[199].class_label.id];
  }
  double tv = 0.0;
  std::map<int, double> diff;
  for (const auto& [id, c] : at100) diff[id] += static_cast<double>(c) / runs;
  for (const auto& [id, c] : at200) diff[id] -= static_cast<double>(c) / runs;
  for (const auto& [id, d] : diff) tv += std::abs(d);
  CHECK(tv / 2.0 < 0.05);
}
