#pragma once

// Command-line front end. run_cli takes argv-style arguments (program name
// already stripped) plus explicit output streams so tests can drive every
// subcommand in-process; tools/mallows_cli.cpp is a thin forwarding main.
//
// Exit codes: 0 success, 1 usage or bad input (flag errors, malformed
// permutations/formulas, mode preconditions), 2 resource budgets and
// internal failures.

#include <CLI11.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <mallows/distribution.hpp>
#include <mallows/errors.hpp>
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
#include <mallows/sim/records.hpp>
#include <mallows/stats/builders.hpp>
#include <mallows/stats/graphs.hpp>
#include <mallows/stats/intervals.hpp>
#include <mallows/towers.hpp>

namespace mallows::cli {

namespace detail {

inline std::string fmt_double(double x) { return sim::detail::format_double(x); }

inline logic::Signature sig_from_name(const std::string& name) {
  return name == "toob" ? logic::Signature::TOOB : logic::Signature::TOTO;
}

template <class C>
std::string join_commas(const C& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out.empty() ? std::string("-") : out;
}

// Structured results go out as one line per record: the op-specific plain
// form by default, or the uniform record schema under --format json/csv.
struct Row {
  sim::ResultRecord rec;
  std::string plain;
};

inline void emit_rows(const std::vector<Row>& rows, const std::string& format,
                      std::ostream& out) {
  if (format == "csv") out << sim::csv_header() << "\n";
  for (const auto& row : rows) {
    if (format == "plain")
      out << row.plain << "\n";
    else if (format == "json")
      out << sim::to_json(row.rec).dump() << "\n";
    else
      out << sim::to_csv_row(row.rec) << "\n";
  }
}

inline void add_format_option(CLI::App* sub, std::string& format) {
  sub->add_option("--format", format, "output format: plain, json or csv")
      ->check(CLI::IsMember({"plain", "json", "csv"}));
}

// --perm takes one permutation inline, --perm-file one per line; every
// consumer requires exactly one of the two.
inline std::vector<Permutation> gather_perms(bool have_perm, const std::string& perm,
                                             bool have_file, const std::string& file) {
  if (have_perm == have_file)
    throw std::invalid_argument("need exactly one of --perm and --perm-file");
  if (have_perm) return {parse_one_line(perm)};
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open " + file);
  std::vector<Permutation> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(parse_one_line(line));
  }
  if (out.empty()) throw std::invalid_argument("no permutations in " + file);
  return out;
}

inline void setup_sample(CLI::App& app, std::ostream& out) {
  struct Opts {
    int n = 1;
    double q = 1.0;
    std::uint64_t seed = 0;
    long long count = 1;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("sample", "Draw Mallows(n, q) permutations");
  sub->add_option("--n", opt->n, "permutation size")->required()->check(CLI::PositiveNumber);
  sub->add_option("--q", opt->q, "Mallows parameter, q > 0")
      ->required()
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", opt->seed, "RNG seed")->required();
  sub->add_option("--count", opt->count, "number of draws")->check(CLI::PositiveNumber);
  sub->callback([opt, &out] {
    Rng rng(opt->seed);
    for (long long i = 0; i < opt->count; ++i)
      out << format_one_line(sample_mallows({opt->n, opt->q}, rng)) << "\n";
  });
}

inline void setup_pmf(CLI::App& app, std::ostream& out) {
  struct Opts {
    std::string perm, file;
    double q = 1.0;
    bool rational = false;
    CLI::Option *perm_opt = nullptr, *file_opt = nullptr;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("pmf", "Mallows probability of given permutations");
  opt->perm_opt = sub->add_option("--perm", opt->perm, "one-line permutation, e.g. 2,3,1");
  opt->file_opt = sub->add_option("--perm-file", opt->file, "file with one permutation per line");
  sub->add_option("--q", opt->q, "Mallows parameter, q > 0")
      ->required()
      ->check(CLI::PositiveNumber);
  sub->add_flag("--rational", opt->rational, "exact rational output via the binary value of q");
  sub->callback([opt, &out] {
    auto perms = gather_perms(opt->perm_opt->count() > 0, opt->perm,
                              opt->file_opt->count() > 0, opt->file);
    for (const auto& p : perms) {
      if (opt->rational)
        out << mallows_pmf_rational(p, mpq_class(opt->q)).get_str() << "\n";
      else
        out << fmt_double(mallows_pmf(p, opt->q)) << "\n";
    }
  });
}

inline void setup_eval(CLI::App& app, std::ostream& out) {
  struct Opts {
    std::string perm, file, formula, sig;
    CLI::Option *perm_opt = nullptr, *file_opt = nullptr;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("eval", "Evaluate a sentence on permutations");
  opt->perm_opt = sub->add_option("--perm", opt->perm, "one-line permutation");
  opt->file_opt = sub->add_option("--perm-file", opt->file, "file with one permutation per line");
  sub->add_option("--formula", opt->formula, "sentence text")->required();
  sub->add_option("--sig", opt->sig, "signature: toob or toto")
      ->required()
      ->check(CLI::IsMember({"toob", "toto"}));
  sub->callback([opt, &out] {
    auto f = logic::parse(opt->formula, sig_from_name(opt->sig));
    auto perms = gather_perms(opt->perm_opt->count() > 0, opt->perm,
                              opt->file_opt->count() > 0, opt->file);
    for (const auto& p : perms)
      out << (logic::evaluate(p, f) ? "true" : "false") << "\n";
  });
}

inline void setup_transform(CLI::App& app, std::ostream& out) {
  struct Opts {
    std::string formula, sig;
    bool reverse = false, relativize = false;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("transform", "Rewrite a formula");
  sub->add_option("--formula", opt->formula, "formula text")->required();
  sub->add_option("--sig", opt->sig, "signature: toob or toto")
      ->required()
      ->check(CLI::IsMember({"toob", "toto"}));
  auto* mode = sub->add_option_group("mode");
  mode->add_flag("--reverse", opt->reverse, "swap the second order");
  mode->add_flag("--relativize", opt->relativize, "relativize to a window");
  mode->require_option(1);
  sub->callback([opt, &out] {
    auto f = logic::parse(opt->formula, sig_from_name(opt->sig));
    auto g = opt->reverse ? logic::reverse_formula(f) : logic::relativize(f);
    out << logic::render(g) << "\n";
  });
}

inline void setup_ef(CLI::App& app, std::ostream& out) {
  struct Opts {
    std::string perm, perm2, file, sig;
    int d = 0;
    CLI::Option *perm_opt = nullptr, *perm2_opt = nullptr, *file_opt = nullptr;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "ef", "Ehrenfeucht-Fraisse class label, or equivalence of a pair");
  opt->perm_opt = sub->add_option("--perm", opt->perm, "one-line permutation");
  opt->perm2_opt = sub->add_option("--perm2", opt->perm2, "second permutation (pair mode)");
  opt->file_opt = sub->add_option("--perm-file", opt->file, "file with one permutation per line");
  sub->add_option("--d", opt->d, "quantifier depth")->required()->check(CLI::NonNegativeNumber);
  sub->add_option("--sig", opt->sig, "signature: toob or toto")
      ->required()
      ->check(CLI::IsMember({"toob", "toto"}));
  sub->callback([opt, &out] {
    const auto sig = sig_from_name(opt->sig);
    if (opt->perm2_opt->count() > 0) {
      if (opt->perm_opt->count() == 0)
        throw std::invalid_argument("--perm2 needs --perm");
      const auto p = parse_one_line(opt->perm);
      const auto s = parse_one_line(opt->perm2);
      out << (logic::ef_equivalent(p, s, opt->d, sig) ? "true" : "false") << "\n";
      return;
    }
    auto perms = gather_perms(opt->perm_opt->count() > 0, opt->perm,
                              opt->file_opt->count() > 0, opt->file);
    for (const auto& p : perms)
      out << logic::ef_type(p, opt->d, sig).label() << "\n";
  });
}

inline void setup_stats(CLI::App& app, std::ostream& out) {
  struct Opts {
    std::string perm, file, i_text, j_text;
    int k = 1;
    bool j1 = false, k1 = false, wk = false, hgraph = false;
    CLI::Option *perm_opt = nullptr, *file_opt = nullptr;
    CLI::Option *i_opt = nullptr, *j_opt = nullptr, *k_opt = nullptr;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("stats", "Interval statistics of a permutation");
  opt->perm_opt = sub->add_option("--perm", opt->perm, "one-line permutation");
  opt->file_opt = sub->add_option("--perm-file", opt->file, "file with one permutation per line");
  auto* mode = sub->add_option_group("statistic");
  mode->add_flag("--j1", opt->j1, "largest j with [1..j] mapped into itself");
  mode->add_flag("--k1", opt->k1, "least k with a k-step witness pair");
  mode->add_flag("--wk", opt->wk, "W_k set of an interval (needs --I, --k)");
  mode->add_flag("--hgraph", opt->hgraph,
                 "induced interval graph (needs --I, --J, --k)");
  mode->require_option(1);
  opt->i_opt = sub->add_option("--I", opt->i_text, "interval lo-hi");
  opt->j_opt = sub->add_option("--J", opt->j_text, "interval lo-hi");
  opt->k_opt = sub->add_option("--k", opt->k, "step bound k >= 1");
  sub->callback([opt, &out] {
    auto perms = gather_perms(opt->perm_opt->count() > 0, opt->perm,
                              opt->file_opt->count() > 0, opt->file);
    for (const auto& p : perms) {
      if (opt->j1) {
        const auto j = stats::j1(p);
        if (j)
          out << *j << "\n";
        else
          out << "inf" << "\n";
      } else if (opt->k1) {
        out << stats::k1(p) << "\n";
      } else if (opt->wk) {
        if (opt->i_opt->count() == 0 || opt->k_opt->count() == 0)
          throw std::invalid_argument("stats: --wk needs --I and --k");
        const auto iv = stats::parse_interval(opt->i_text);
        std::set<int> positions;
        for (int i = iv.lo(); i <= iv.hi(); ++i) positions.insert(i);
        out << join_commas(stats::w_set(p, positions, opt->k)) << "\n";
      } else {
        if (opt->i_opt->count() == 0 || opt->j_opt->count() == 0 ||
            opt->k_opt->count() == 0)
          throw std::invalid_argument("stats: --hgraph needs --I, --J and --k");
        const auto iv = stats::parse_interval(opt->i_text);
        const auto jv = stats::parse_interval(opt->j_text);
        const auto ical = stats::minimal_intervals(p, iv, opt->k);
        const auto jcal = stats::minimal_intervals(p, jv, opt->k);
        out << stats::format_graph(stats::induced_graph(p, ical, jcal));
      }
    }
  });
}

inline void setup_tv(CLI::App& app, std::ostream& out) {
  struct Opts {
    bool mallows = false, tgeo = false, poisson = false;
    int n = 1, m = 1, b = 0;
    double q = 1.0, q1 = 1.0, q2 = 1.0;
    long long samples = 0;
    std::uint64_t seed = 0;
    std::string format = "plain";
    CLI::Option* seed_opt = nullptr;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("tv", "Total variation distances");
  auto* mode = sub->add_option_group("distance");
  mode->add_flag("--mallows", opt->mallows, "TV between Mallows(n, q1) and Mallows(n, q2)");
  mode->add_flag("--tgeo", opt->tgeo, "TV between TGeo(m, q) and uniform on [m]");
  mode->add_flag("--poisson", opt->poisson,
                 "TV of small cycle counts from the Poisson limit at q = 1");
  mode->require_option(1);
  sub->add_option("--n", opt->n, "permutation size");
  sub->add_option("--m", opt->m, "support size");
  sub->add_option("--b", opt->b, "track cycle lengths up to b");
  sub->add_option("--q", opt->q, "Mallows parameter");
  sub->add_option("--q1", opt->q1, "first parameter");
  sub->add_option("--q2", opt->q2, "second parameter");
  sub->add_option("--samples", opt->samples, "0 for exact enumeration");
  opt->seed_opt = sub->add_option("--seed", opt->seed, "RNG seed (Monte Carlo only)");
  add_format_option(sub, opt->format);
  sub->callback([opt, &out] {
    Row row;
    if (opt->mallows) {
      const double v = sim::tv_exact_mallows(opt->n, opt->q1, opt->q2);
      row.rec = {"tv_exact_mallows", {{"q2", opt->q2}}, opt->n, opt->q1, v, 0.0, 0};
      row.plain = fmt_double(v);
    } else if (opt->tgeo) {
      const double v = sim::tv_tgeo_uniform(opt->m, opt->q);
      row.rec = {"tv_tgeo_uniform", nlohmann::json::object(), opt->m, opt->q, v, 0.0, 0};
      row.plain = fmt_double(v);
    } else {
      if (opt->samples > 0 && opt->seed_opt->count() == 0)
        throw std::invalid_argument("tv: --poisson with samples needs --seed");
      const double v =
          sim::poisson_cycle_distance(opt->n, opt->b, opt->samples, opt->seed);
      row.rec = {"poisson_cycle_distance",
                 {{"b", opt->b}, {"samples", opt->samples}},
                 opt->n,
                 1.0,
                 v,
                 0.0,
                 opt->samples > 0 ? opt->seed : 0};
      row.plain = fmt_double(v);
    }
    emit_rows({row}, opt->format, out);
  });
}

inline void setup_experiment(CLI::App& app, std::ostream& out) {
  struct Opts {
    bool exact = false, displacement = false;
    std::string formula, sig, schedule = "fixed", format = "plain";
    std::vector<int> sizes;
    int n = 1, workers = 1, sign = 1;
    double q = 1.0, c = 1.0;
    long long samples = 0;
    std::uint64_t seed = 0;
    CLI::Option *formula_opt = nullptr, *sizes_opt = nullptr, *n_opt = nullptr;
    CLI::Option *q_opt = nullptr, *c_opt = nullptr, *samples_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "experiment", "Satisfaction probabilities along a size/parameter schedule");
  auto* mode = sub->add_option_group("mode");
  mode->add_flag("--exact", opt->exact, "exact enumeration at one size");
  mode->add_flag("--displacement", opt->displacement,
                 "check the mean displacement bound instead");
  mode->require_option(0, 1);
  opt->formula_opt = sub->add_option("--formula", opt->formula, "sentence text");
  sub->add_option("--sig", opt->sig, "signature: toob or toto")
      ->check(CLI::IsMember({"toob", "toto"}));
  opt->sizes_opt = sub->add_option("--sizes", opt->sizes, "sizes, e.g. 10,20,40")
                       ->delimiter(',');
  opt->n_opt = sub->add_option("--n", opt->n, "single size (exact/displacement)");
  opt->q_opt = sub->add_option("--q", opt->q, "fixed Mallows parameter");
  opt->c_opt = sub->add_option("--c", opt->c, "constant for the n and n4 schedules");
  sub->add_option("--sign", opt->sign, "+1 or -1 for the logstar schedule");
  sub->add_option("--schedule", opt->schedule, "fixed, n4, n or logstar")
      ->check(CLI::IsMember({"fixed", "n4", "n", "logstar"}));
  opt->samples_opt = sub->add_option("--samples", opt->samples, "Monte Carlo samples");
  opt->seed_opt = sub->add_option("--seed", opt->seed, "RNG seed");
  sub->add_option("--workers", opt->workers, "worker threads")->check(CLI::PositiveNumber);
  add_format_option(sub, opt->format);
  sub->callback([opt, &out] {
    std::vector<Row> rows;
    if (opt->exact) {
      if (opt->formula_opt->count() == 0 || opt->sig.empty())
        throw std::invalid_argument("experiment: --exact needs --formula and --sig");
      if (opt->n_opt->count() == 0 || opt->q_opt->count() == 0)
        throw std::invalid_argument("experiment: --exact needs --n and --q");
      auto f = logic::parse(opt->formula, sig_from_name(opt->sig));
      const double v = sim::exact_sat_prob(f, opt->n, opt->q);
      rows.push_back({{"exact_sat_prob", nlohmann::json::object(), opt->n, opt->q,
                       v, 0.0, 0},
                      fmt_double(v)});
    } else if (opt->displacement) {
      if (opt->n_opt->count() == 0 || opt->q_opt->count() == 0 ||
          opt->samples_opt->count() == 0 || opt->seed_opt->count() == 0)
        throw std::invalid_argument(
            "experiment: --displacement needs --n, --q, --samples and --seed");
      const bool ok = sim::displacement_bound_check(opt->n, opt->q, opt->samples,
                                                    opt->seed);
      rows.push_back({{"displacement_bound_check",
                       {{"samples", opt->samples}},
                       opt->n,
                       opt->q,
                       ok ? 1.0 : 0.0,
                       0.0,
                       opt->seed},
                      ok ? "true" : "false"});
    } else {
      if (opt->formula_opt->count() == 0 || opt->sig.empty())
        throw std::invalid_argument("experiment: needs --formula and --sig");
      if (opt->sizes_opt->count() == 0 || opt->samples_opt->count() == 0 ||
          opt->seed_opt->count() == 0)
        throw std::invalid_argument("experiment: needs --sizes, --samples and --seed");
      sim::ExperimentConfig cfg;
      cfg.sentence = logic::parse(opt->formula, sig_from_name(opt->sig));
      if (opt->schedule == "fixed") {
        if (opt->q_opt->count() == 0)
          throw std::invalid_argument("experiment: --schedule fixed needs --q");
        cfg.schedule = sim::QSchedule::fixed(opt->q);
      } else if (opt->schedule == "n4") {
        if (opt->c_opt->count() == 0)
          throw std::invalid_argument("experiment: --schedule n4 needs --c");
        cfg.schedule = sim::QSchedule::one_minus_c_over_n4(opt->c);
      } else if (opt->schedule == "n") {
        if (opt->c_opt->count() == 0)
          throw std::invalid_argument("experiment: --schedule n needs --c");
        cfg.schedule = sim::QSchedule::one_minus_c_over_n(opt->c);
      } else {
        cfg.schedule = sim::QSchedule::log_star_band(opt->sign);
      }
      cfg.sizes = opt->sizes;
      std::sort(cfg.sizes.begin(), cfg.sizes.end());
      cfg.samples = opt->samples;
      cfg.seed = opt->seed;
      cfg.workers = opt->workers;
      const auto res = sim::estimate_sat_prob(cfg);
      for (std::size_t i = 0; i < res.size(); ++i) {
        const int n = cfg.sizes[i];
        const double qn = cfg.schedule.q_at(n);
        rows.push_back({{"estimate_sat_prob",
                         {{"samples", cfg.samples}, {"workers", cfg.workers}},
                         n,
                         qn,
                         res[i].p_hat,
                         res[i].half_width_95,
                         cfg.seed},
                        std::to_string(n) + " " + fmt_double(res[i].p_hat) + " " +
                            fmt_double(res[i].half_width_95)});
      }
    }
    emit_rows(rows, opt->format, out);
  });
}

inline void setup_chain(CLI::App& app, std::ostream& out) {
  struct Opts {
    double q = 0.5;
    int d = 1, n = 1;
    std::uint64_t seed = 0;
    std::string format = "plain";
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "chain", "Class-and-tail trace of the regenerative prefix chain");
  sub->add_option("--q", opt->q, "Mallows parameter in (0, 1)")->required();
  sub->add_option("--d", opt->d, "quantifier depth of the class labels")->required();
  sub->add_option("--n", opt->n, "trace length")->required()->check(CLI::PositiveNumber);
  sub->add_option("--seed", opt->seed, "RNG seed")->required();
  add_format_option(sub, opt->format);
  sub->callback([opt, &out] {
    const auto trace = sim::chain_trace(opt->q, opt->d, opt->n, opt->seed);
    std::vector<Row> rows;
    rows.reserve(trace.size());
    for (const auto& st : trace) {
      const auto label = st.class_label.label();
      rows.push_back({{"chain",
                       {{"d", opt->d}, {"class", label}, {"tail", st.tail}},
                       st.n,
                       opt->q,
                       static_cast<double>(st.tail.size()),
                       0.0,
                       opt->seed},
                      std::to_string(st.n) + " " + label + " " +
                          join_commas(st.tail)});
    }
    emit_rows(rows, opt->format, out);
  });
}

inline void setup_build_sentence(CLI::App& app, std::ostream& out) {
  struct Opts {
    int zeta = 1, omega = 1, phi = 1;
    bool rho = false;
    CLI::Option *zeta_opt = nullptr, *omega_opt = nullptr, *phi_opt = nullptr;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("build-sentence", "Emit a library sentence as text");
  auto* mode = sub->add_option_group("sentence");
  opt->zeta_opt = mode->add_option("--zeta", opt->zeta, "zeta_k: some point moves by at least k");
  mode->add_flag("--rho", opt->rho, "rho: first value exceeds last value");
  opt->omega_opt = mode->add_option("--omega", opt->omega, "omega_k: window classifier at cutoff k");
  opt->phi_opt = mode->add_option("--phi", opt->phi, "phi_k: relativized window classifier");
  mode->require_option(1);
  sub->callback([opt, &out] {
    logic::FormulaPtr f;
    if (opt->zeta_opt->count() > 0)
      f = stats::build_zeta(opt->zeta);
    else if (opt->rho)
      f = stats::build_rho();
    else if (opt->omega_opt->count() > 0)
      f = stats::build_omega(opt->omega);
    else
      f = stats::build_universal_phi(opt->phi);
    out << logic::render(f) << "\n";
  });
}

inline void setup_towers(CLI::App& app, std::ostream& out) {
  struct Opts {
    int tower = 0, wowzer = 0;
    std::string log_star, log_star_star;
    CLI::Option *tower_opt = nullptr, *wowzer_opt = nullptr;
    CLI::Option *ls_opt = nullptr, *lss_opt = nullptr;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("towers", "Tower functions and iterated logarithms");
  auto* mode = sub->add_option_group("function");
  opt->tower_opt = mode->add_option("--tower", opt->tower, "T(n), exact");
  opt->wowzer_opt = mode->add_option("--wowzer", opt->wowzer, "W(n), exact");
  opt->ls_opt = mode->add_option("--logstar", opt->log_star, "log*(x) for integer x");
  opt->lss_opt = mode->add_option("--logstarstar", opt->log_star_star,
                                  "log**(x) for integer x");
  mode->require_option(1);
  sub->callback([opt, &out] {
    if (opt->tower_opt->count() > 0)
      out << tower(opt->tower).get_str() << "\n";
    else if (opt->wowzer_opt->count() > 0)
      out << wowzer(opt->wowzer).get_str() << "\n";
    else if (opt->ls_opt->count() > 0)
      out << log_star(mpz_class(opt->log_star, 10)) << "\n";
    else
      out << log_star_star(mpz_class(opt->log_star_star, 10)) << "\n";
  });
}

}  // namespace detail

// Parses and runs one invocation. args is argv[1..] in natural order.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Mallows permutation laboratory"};
  app.require_subcommand(1);
  detail::setup_sample(app, out);
  detail::setup_pmf(app, out);
  detail::setup_eval(app, out);
  detail::setup_transform(app, out);
  detail::setup_ef(app, out);
  detail::setup_stats(app, out);
  detail::setup_tv(app, out);
  detail::setup_experiment(app, out);
  detail::setup_chain(app, out);
  detail::setup_build_sentence(app, out);
  detail::setup_towers(app, out);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const budget_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace mallows::cli
