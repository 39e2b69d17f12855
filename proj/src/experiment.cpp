#include "bandprec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "bandprec/rng.hpp"

namespace bandprec {

const ResultCell& ResultTable::cell(EstimatorKind e, NormKind n) const {
  for (size_t i = 0; i < estimators.size(); ++i)
    for (size_t j = 0; j < norms.size(); ++j)
      if (estimators[i] == e && norms[j] == n) return cells[i][j];
  throw std::out_of_range("ResultTable: no cell for this estimator/norm pair");
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct ReplicationResult {
  Index selected_k = 0;
  std::vector<std::vector<double>> errors;  // [estimator][norm], NaN on failure
  std::vector<Failure> failures;
};

ReplicationResult run_replication(const ExperimentConfig& config, const TruthPair& truth, int rep) {
  ReplicationResult out;
  out.errors.assign(config.estimators.size(),
                    std::vector<double>(config.norms.size(), kNan));
  const Matrix x =
      sample_mvn(truth.sigma, config.scenario.n, substream_seed(config.scenario.seed, uint64_t(rep)));
  const SampleStats stats = SampleStats::from_data(x);

  if (config.fixed_k) {
    out.selected_k = *config.fixed_k;
  } else {
    try {
      out.selected_k =
          band_posterior(stats, config.prior, config.rho_prior,
                         default_k_max(config.scenario.p, config.scenario.n))
              .mode;
    } catch (const std::exception& e) {
      out.failures.push_back({rep, "selection", e.what()});
      return out;
    }
  }

  for (size_t i = 0; i < config.estimators.size(); ++i) {
    try {
      const Matrix est = estimate(config.estimators[i], stats, out.selected_k, config.prior);
      for (size_t j = 0; j < config.norms.size(); ++j)
        out.errors[i][j] = norm(Matrix(est - truth.omega), config.norms[j]);
    } catch (const std::exception& e) {
      out.failures.push_back({rep, estimator_name(config.estimators[i]), e.what()});
    }
  }
  return out;
}

ResultCell aggregate(const std::vector<ReplicationResult>& reps, size_t i, size_t j) {
  ResultCell cell;
  double sum = 0.0;
  for (const auto& r : reps)
    if (!std::isnan(r.errors[i][j])) {
      sum += r.errors[i][j];
      ++cell.count;
    }
  if (cell.count == 0) return cell;
  cell.mean = sum / cell.count;
  if (cell.count > 1) {
    double ss = 0.0;
    for (const auto& r : reps)
      if (!std::isnan(r.errors[i][j])) {
        const double d = r.errors[i][j] - cell.mean;
        ss += d * d;
      }
    cell.sd = std::sqrt(ss / (cell.count - 1));
  }
  return cell;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& config) {
  if (config.estimators.empty())
    throw std::invalid_argument("run_experiment: need at least one estimator");
  if (config.norms.empty()) throw std::invalid_argument("run_experiment: need at least one norm");
  if (config.scenario.replications < 1)
    throw std::invalid_argument("run_experiment: need at least one replication");
  if (config.fixed_k &&
      (*config.fixed_k < 0 || *config.fixed_k > config.scenario.p - 1))
    throw std::invalid_argument("run_experiment: fixed bandwidth outside 0..p-1");

  const TruthPair truth = scenario_truth(config.scenario);
  const int reps = config.scenario.replications;
  std::vector<ReplicationResult> results(static_cast<size_t>(reps));

  int workers = config.workers;
  if (workers <= 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, reps);

  if (workers <= 1) {
    for (int r = 0; r < reps; ++r) results[size_t(r)] = run_replication(config, truth, r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int r = w; r < reps; r += workers)
          results[size_t(r)] = run_replication(config, truth, r);
      });
    for (auto& t : pool) t.join();
  }

  ResultTable table;
  table.scenario = config.scenario;
  table.delta = config.prior.delta;
  table.fixed_k = config.fixed_k;
  table.rho_prior_name = config.rho_prior.name();
  table.estimators = config.estimators;
  table.norms = config.norms;
  table.degenerate_sd = reps == 1;
  table.selected_k.reserve(size_t(reps));
  for (const auto& r : results) table.selected_k.push_back(r.selected_k);
  for (const auto& r : results)
    table.failures.insert(table.failures.end(), r.failures.begin(), r.failures.end());
  table.cells.assign(config.estimators.size(), std::vector<ResultCell>(config.norms.size()));
  for (size_t i = 0; i < config.estimators.size(); ++i)
    for (size_t j = 0; j < config.norms.size(); ++j) table.cells[i][j] = aggregate(results, i, j);
  return table;
}

}  // namespace bandprec
