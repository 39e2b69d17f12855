#include "bandprec/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "bandprec/cholesky.hpp"
#include "bandprec/matrix.hpp"
#include "bandprec/rng.hpp"

namespace bandprec {

Matrix ar1_covariance(Index p, double rho) {
  if (p < 1) throw std::invalid_argument("ar1_covariance: dimension must be >= 1");
  if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("ar1_covariance: |rho| must be < 1");
  Matrix sigma(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) sigma(i, j) = std::pow(rho, double(std::abs(i - j)));
  return sigma;
}

Matrix ar4_precision(Index p) {
  if (p < 5) throw std::invalid_argument("ar4_precision: dimension must be >= 5");
  constexpr double stencil[5] = {1.0, 0.4, 0.2, 0.2, 0.1};
  Matrix omega = Matrix::Zero(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) {
      const Index lag = std::abs(i - j);
      if (lag <= 4) omega(i, j) = stencil[lag];
    }
  if (!is_positive_definite(omega))
    throw NotPositiveDefinite("ar4_precision: stencil matrix not positive definite");
  return omega;
}

Matrix fgn_covariance(Index p, double hurst) {
  if (p < 1) throw std::invalid_argument("fgn_covariance: dimension must be >= 1");
  if (!(hurst >= 0.5 && hurst <= 1.0))
    throw std::invalid_argument("fgn_covariance: Hurst parameter must lie in [0.5, 1]");
  const double two_h = 2.0 * hurst;
  Matrix sigma(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) {
      const double lag = double(std::abs(i - j));
      sigma(i, j) =
          0.5 * (std::pow(lag + 1.0, two_h) - 2.0 * std::pow(lag, two_h) +
                 std::pow(std::abs(lag - 1.0), two_h));
    }
  return sigma;
}

Matrix sample_mvn(const Matrix& sigma, Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_mvn: need at least one observation");
  const Index p = sigma.rows();
  const auto chol = cholesky_or_throw(sigma, "sample_mvn: covariance");
  CounterRng rng = CounterRng::stream(seed, 0);
  Matrix x(n, p);
  Vector z(p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) z[j] = rng.next_normal();
    x.row(i) = (chol.matrix_l().triangularView<Eigen::Lower>() * z).transpose();
  }
  return x;
}

TruthPair scenario_truth(const Scenario& s) {
  switch (s.kind) {
    case ScenarioKind::Ar1: {
      Matrix sigma = ar1_covariance(s.p, s.rho);
      return {sigma, cholesky_or_throw(sigma, "scenario_truth: AR(1) covariance").inverse()};
    }
    case ScenarioKind::Ar4: {
      Matrix omega = ar4_precision(s.p);
      Matrix sigma = cholesky_or_throw(omega, "scenario_truth: AR(4) precision").inverse();
      return {sigma, omega};
    }
    case ScenarioKind::Fgn: {
      Matrix sigma = fgn_covariance(s.p, s.hurst);
      return {sigma, cholesky_or_throw(sigma, "scenario_truth: fGn covariance").inverse()};
    }
  }
  throw std::logic_error("scenario_truth: unknown scenario kind");
}

}  // namespace bandprec
