#pragma once

#include <cstdint>

#include "bandprec/types.hpp"

namespace bandprec {

enum class ScenarioKind { Ar1, Ar4, Fgn };

// A data-generating model with its size and replication plan.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Ar1;
  double rho = 0.3;    // AR(1) correlation, |rho| < 1
  double hurst = 0.7;  // fGn Hurst parameter, in [0.5, 1]
  Index p = 50;
  Index n = 100;
  int replications = 100;
  std::uint64_t seed = 0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// AR(1) covariance: sigma_ij = rho^|i-j|. Its inverse is tridiagonal.
Matrix ar1_covariance(Index p, double rho);

// AR(4)-style precision: 1 on the diagonal, 0.4 at lag 1, 0.2 at lags 2 and 3,
// 0.1 at lag 4. Positive definiteness is verified at construction.
Matrix ar4_precision(Index p);

// Fractional Gaussian noise covariance:
// sigma_ij = ((|i-j|+1)^2H - 2|i-j|^2H + ||i-j|-1|^2H) / 2. Unit diagonal.
Matrix fgn_covariance(Index p, double hurst);

// n i.i.d. rows from N_p(0, sigma), generated as (L z)^T with L the Cholesky
// factor of sigma. Bitwise reproducible for a fixed seed.
Matrix sample_mvn(const Matrix& sigma, Index n, std::uint64_t seed);

struct TruthPair {
  Matrix sigma;
  Matrix omega;
};

// The (covariance, precision) pair of a scenario. AR(4) defines the precision
// and solves for the covariance; the others define the covariance.
TruthPair scenario_truth(const Scenario& s);

}  // namespace bandprec
