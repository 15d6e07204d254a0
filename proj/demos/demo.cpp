// A guided tour: sample Mallows permutations, query sentences on them,
// estimate limiting satisfaction probabilities, and watch the regenerative
// prefix chain carry a class label plus a finite tail.

#include <iostream>
#include <string>

#include <mallows/distribution.hpp>
#include <mallows/logic/ef.hpp>
#include <mallows/logic/evaluate.hpp>
#include <mallows/logic/parser.hpp>
#include <mallows/logic/transform.hpp>
#include <mallows/permutation.hpp>
#include <mallows/rng.hpp>
#include <mallows/sim/chain.hpp>
#include <mallows/sim/estimate.hpp>
#include <mallows/sim/exact.hpp>
#include <mallows/sim/poisson.hpp>
#include <mallows/stats/builders.hpp>
#include <mallows/towers.hpp>

using namespace mallows;

int main() {
  std::cout << "== Sampling ==\n";
  Rng rng(2026);
  for (double q : {0.5, 1.0, 2.0}) {
    std::cout << "Mallows(12, " << q << "):";
    for (int i = 0; i < 3; ++i)
      std::cout << "  " << format_one_line(sample_mallows({12, q}, rng));
    std::cout << "\n";
  }
  std::cout << "Small q favors few inversions, large q many; q = 1 is uniform.\n\n";

  std::cout << "== Exact satisfaction probabilities ==\n";
  const auto fixed_point =
      logic::parse("exists x. R(x,x)", logic::Signature::TOOB);
  std::cout << "P(some fixed point), n = 6:\n";
  for (double q : {0.5, 1.0, 2.0})
    std::cout << "  q = " << q << ": "
              << sim::exact_sat_prob(fixed_point, 6, q) << "\n";
  std::cout << "At q = 1 this tends to 1 - 1/e = 0.6321 as n grows.\n\n";

  const auto rho = stats::build_rho();
  std::cout << "rho says the first value exceeds the last: "
            << logic::render(rho) << "\n";
  std::cout << "P(rho) at n = 6: q = 0.5 gives "
            << sim::exact_sat_prob(rho, 6, 0.5) << ", q = 2 gives "
            << sim::exact_sat_prob(rho, 6, 2.0)
            << "; the q <-> 1/q reversal symmetry makes these sum to 1.\n\n";

  std::cout << "== Monte Carlo at larger sizes ==\n";
  sim::ExperimentConfig cfg;
  cfg.sentence = rho;
  cfg.schedule = sim::QSchedule::fixed(2.0);
  cfg.sizes = {20, 40, 80};
  cfg.samples = 4000;
  cfg.seed = 7;
  cfg.workers = 2;
  const auto est = sim::estimate_sat_prob(cfg);
  std::cout << "P(rho) under q = 2 (rho is asymptotically certain):\n";
  for (std::size_t i = 0; i < est.size(); ++i)
    std::cout << "  n = " << cfg.sizes[i] << ": " << est[i].p_hat << " +- "
              << est[i].half_width_95 << "\n";
  std::cout << "\n";

  std::cout << "== Ehrenfeucht-Fraisse classes ==\n";
  const auto p = parse_one_line("3,1,4,2,5");
  const auto s = parse_one_line("4,1,5,2,3");
  std::cout << "Depth-2 two-order class of 3,1,4,2,5 is "
            << logic::ef_type(p, 2, logic::Signature::TOTO).label() << "\n";
  std::cout << "3,1,4,2,5 and 4,1,5,2,3 depth-2 equivalent? "
            << (logic::ef_equivalent(p, s, 2, logic::Signature::TOTO) ? "yes"
                                                                      : "no")
            << "\n\n";

  std::cout << "== Regenerative prefix chain (q < 1) ==\n";
  std::cout << "Each step: prefix size, depth-1 class label, tail since the\n"
               "last regeneration (- when the prefix is itself complete).\n";
  for (const auto& st : sim::chain_trace(0.4, 1, 10, 11))
    std::cout << "  n = " << st.n << "  class " << st.class_label.label()
              << "  tail size " << st.tail.size() << "\n";
  std::cout << "\n";

  std::cout << "== Cycle counts at q = 1 ==\n";
  std::cout << "TV distance of cycle counts (lengths <= 3) from the Poisson "
               "limit:\n";
  std::cout << "  n = 6 (exact):        " << sim::poisson_cycle_distance(6, 3, 0, 0)
            << "\n";
  std::cout << "  n = 500 (Monte Carlo): "
            << sim::poisson_cycle_distance(500, 3, 20000, 5) << "\n\n";

  std::cout << "== Towers ==\n";
  std::cout << "T(4) = " << tower(4).get_str()
            << ", log*(65536) = " << log_star(mpz_class(65536))
            << ", log**(W(3) + 1) = " << log_star_star(wowzer(3) + 1) << "\n";
  std::cout << "W(3) = T(4) = 65536, while W(4) = T(65536) dwarfs T(5).\n";
  return 0;
}
