#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bandprec/estimators.hpp"
#include "bandprec/evidence.hpp"
#include "bandprec/matrix.hpp"
#include "bandprec/scenarios.hpp"

namespace bandprec {

// A replication experiment: draw data from a scenario, pick or fix the
// bandwidth, run the requested estimators, and record norm errors against the
// scenario's true precision matrix.
struct ExperimentConfig {
  Scenario scenario;
  std::vector<EstimatorKind> estimators = {
      EstimatorKind::GraphicalMle, EstimatorKind::BayesFrobenius, EstimatorKind::BayesStein,
      EstimatorKind::CholeskyBanding};
  std::optional<Index> fixed_k;  // empty: select per replication via the band posterior mode
  PriorSpec prior;
  PriorOverK rho_prior = PriorOverK::exp_quartic();
  std::vector<NormKind> norms = {NormKind::LInfOp, NormKind::L2Op, NormKind::Frobenius,
                                 NormKind::MaxAbs};
  int workers = 1;  // <= 0: one worker per hardware thread
};

struct ResultCell {
  double mean = 0.0;
  double sd = 0.0;
  int count = 0;  // replications that produced this estimate

  friend bool operator==(const ResultCell&, const ResultCell&) = default;
};

// A replication whose selection or estimation step failed. Failed replications
// are reported, never silently dropped.
struct Failure {
  int replication = 0;     // 0-based
  std::string stage;       // estimator name or "selection"
  std::string message;

  friend bool operator==(const Failure&, const Failure&) = default;
};

struct ResultTable {
  Scenario scenario;
  double delta = 3.0;
  std::optional<Index> fixed_k;
  std::string rho_prior_name;
  std::vector<EstimatorKind> estimators;
  std::vector<NormKind> norms;
  std::vector<Index> selected_k;                // per replication (fixed or selected)
  std::vector<std::vector<ResultCell>> cells;   // [estimator][norm]
  std::vector<Failure> failures;
  bool degenerate_sd = false;  // single replication: sd is 0 by convention

  const ResultCell& cell(EstimatorKind e, NormKind n) const;
  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

// Deterministic for a fixed config: replication r draws from substream
// (seed, r) and aggregation follows replication order, so the result does not
// depend on the worker count.
ResultTable run_experiment(const ExperimentConfig& config);

}  // namespace bandprec
