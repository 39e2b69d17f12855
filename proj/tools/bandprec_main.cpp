#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bandprec/estimators.hpp"
#include "bandprec/evidence.hpp"
#include "bandprec/experiment.hpp"
#include "bandprec/io.hpp"
#include "bandprec/sampler.hpp"
#include "bandprec/scenarios.hpp"

namespace {

using namespace bandprec;

struct CommonIo {
  std::string input;
  std::string output;
  std::string format = "csv";
  bool header = false;
  bool center = false;
};

void add_io_flags(CLI::App* cmd, CommonIo& io, bool needs_input) {
  if (needs_input)
    cmd->add_option("-i,--input", io.input, "data CSV (rows = observations)")->required();
  cmd->add_option("-o,--output", io.output, "output path (default: standard output)");
  cmd->add_option("--format", io.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--header", io.header, "skip the first line of the input CSV");
  cmd->add_flag("--center", io.center, "subtract column means before forming S");
}

void emit(const CommonIo& io, const std::string& text) {
  if (io.output.empty())
    std::cout << text;
  else
    write_text_file(io.output, text);
}

PriorOverK make_rho_prior(const std::string& name) {
  if (name == "exp-quartic") return PriorOverK::exp_quartic();
  if (name == "uniform") return PriorOverK::uniform();
  throw CLI::ValidationError("--rho-prior", "expected exp-quartic or uniform");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Banded-graph precision matrix estimation"};
  app.require_subcommand(1);

  // --- estimate ---
  CommonIo est_io;
  std::string est_name = "mle";
  std::optional<std::int64_t> est_k;
  bool est_auto_k = false;
  double est_delta = 3.0;
  std::string est_rho_prior = "exp-quartic";
  auto* est = app.add_subcommand("estimate", "estimate a precision matrix from data");
  est->set_config("--config");
  add_io_flags(est, est_io, true);
  est->add_option("--estimator", est_name, "mle, bayes-l1, bayes-l2, ref, cholesky");
  auto* est_k_opt = est->add_option("--k", est_k, "fixed bandwidth");
  est->add_flag("--auto-k", est_auto_k, "select bandwidth by posterior mode (default if --k absent)")
      ->excludes(est_k_opt);
  est->add_option("--delta", est_delta, "G-Wishart degrees of freedom (> 2)");
  est->add_option("--rho-prior", est_rho_prior, "prior over bandwidths for --auto-k");

  // --- select-k ---
  CommonIo sel_io;
  double sel_delta = 3.0;
  std::string sel_rho_prior = "exp-quartic";
  std::optional<std::int64_t> sel_k_max;
  auto* sel = app.add_subcommand("select-k", "posterior over candidate bandwidths");
  sel->set_config("--config");
  add_io_flags(sel, sel_io, true);
  sel->add_option("--delta", sel_delta, "G-Wishart degrees of freedom (> 2)");
  sel->add_option("--rho-prior", sel_rho_prior, "exp-quartic or uniform");
  sel->add_option("--k-max", sel_k_max, "largest candidate bandwidth (default min(p-1, n-2, 50))");

  // --- simulate ---
  CommonIo sim_io;
  std::string sim_scenario = "ar1";
  double sim_rho = 0.3;
  double sim_hurst = 0.7;
  std::int64_t sim_p = 50;
  std::int64_t sim_n = 100;
  int sim_reps = 100;
  std::uint64_t sim_seed = 0;
  std::optional<std::int64_t> sim_k;
  bool sim_auto_k = false;
  double sim_delta = 3.0;
  std::string sim_rho_prior = "exp-quartic";
  std::vector<std::string> sim_estimators = {"mle", "bayes-l2", "bayes-l1", "cholesky"};
  std::vector<std::string> sim_norms = {"linf-op", "l2-op", "frobenius", "max-abs"};
  int sim_workers = 0;
  auto* sim = app.add_subcommand("simulate", "replication experiment against a known truth");
  sim->set_config("--config");
  add_io_flags(sim, sim_io, false);
  sim->add_option("--scenario", sim_scenario, "ar1, ar4, fgn");
  sim->add_option("--rho", sim_rho, "AR(1) correlation");
  sim->add_option("--hurst", sim_hurst, "fGn Hurst parameter");
  sim->add_option("--p", sim_p, "dimension");
  sim->add_option("--n", sim_n, "sample size");
  sim->add_option("--reps", sim_reps, "replication count");
  sim->add_option("--seed", sim_seed, "master seed");
  auto* sim_k_opt = sim->add_option("--k", sim_k, "fixed bandwidth");
  sim->add_flag("--auto-k", sim_auto_k, "select bandwidth per replication (default if --k absent)")
      ->excludes(sim_k_opt);
  sim->add_option("--delta", sim_delta, "G-Wishart degrees of freedom (> 2)");
  sim->add_option("--rho-prior", sim_rho_prior, "exp-quartic or uniform");
  sim->add_option("--estimator", sim_estimators, "estimators to run")->delimiter(',');
  sim->add_option("--norms", sim_norms, "norms to report")->delimiter(',');
  sim->add_option("--workers", sim_workers, "worker threads (0 = all hardware threads)");

  // --- sample-posterior ---
  CommonIo smp_io;
  std::int64_t smp_k = 1;
  double smp_delta = 3.0;
  int smp_draws = 100;
  std::uint64_t smp_seed = 0;
  auto* smp = app.add_subcommand("sample-posterior", "draws from the G-Wishart posterior");
  smp->set_config("--config");
  add_io_flags(smp, smp_io, true);
  smp->add_option("--k", smp_k, "bandwidth of the posterior graph")->required();
  smp->add_option("--delta", smp_delta, "G-Wishart degrees of freedom (> 2)");
  smp->add_option("--draws", smp_draws, "number of posterior draws");
  smp->add_option("--seed", smp_seed, "seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) {
      const SampleStats stats = stats_from_csv(est_io.input, {est_io.header, est_io.center});
      const PriorSpec prior{est_delta};
      Index k;
      if (est_k) {
        k = Index(*est_k);
      } else {
        const auto bp = band_posterior(stats, prior, make_rho_prior(est_rho_prior),
                                       default_k_max(stats.dim(), stats.n));
        k = bp.mode;
        std::cerr << "selected k = " << k << "\n";
      }
      const Matrix omega = estimate(parse_estimator_kind(est_name), stats, k, prior);
      emit(est_io, matrix_to_csv(omega));
      return 0;
    }

    if (sel->parsed()) {
      const SampleStats stats = stats_from_csv(sel_io.input, {sel_io.header, sel_io.center});
      const PriorSpec prior{sel_delta};
      const Index k_max = sel_k_max ? Index(*sel_k_max) : default_k_max(stats.dim(), stats.n);
      const auto bp = band_posterior(stats, prior, make_rho_prior(sel_rho_prior), k_max);
      emit(sel_io, sel_io.format == "json" ? band_posterior_to_json(bp)
                                           : band_posterior_to_csv(bp));
      if (!sel_io.output.empty()) std::cout << "posterior mode: k = " << bp.mode << "\n";
      return 0;
    }

    if (sim->parsed()) {
      ExperimentConfig config;
      config.scenario.kind = parse_scenario_kind(sim_scenario);
      config.scenario.rho = sim_rho;
      config.scenario.hurst = sim_hurst;
      config.scenario.p = Index(sim_p);
      config.scenario.n = Index(sim_n);
      config.scenario.replications = sim_reps;
      config.scenario.seed = sim_seed;
      if (sim_k) config.fixed_k = Index(*sim_k);
      config.prior = PriorSpec{sim_delta};
      config.rho_prior = make_rho_prior(sim_rho_prior);
      config.estimators.clear();
      for (const auto& name : sim_estimators) config.estimators.push_back(parse_estimator_kind(name));
      config.norms.clear();
      for (const auto& name : sim_norms) config.norms.push_back(parse_norm_kind(name));
      config.workers = sim_workers;
      const ResultTable table = run_experiment(config);
      if (!sim_io.output.empty())
        write_text_file(sim_io.output, sim_io.format == "json" ? result_table_to_json(table)
                                                               : result_table_to_csv(table));
      print_result_table(std::cout, table);
      return 0;
    }

    if (smp->parsed()) {
      const SampleStats stats = stats_from_csv(smp_io.input, {smp_io.header, smp_io.center});
      const auto draws =
          sample_posterior(stats, Index(smp_k), PriorSpec{smp_delta}, smp_draws, smp_seed);
      emit(smp_io, smp_io.format == "json" ? draws_to_json(draws) : draws_to_csv(draws));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
