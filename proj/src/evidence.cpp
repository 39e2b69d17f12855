#include "bandprec/evidence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bandprec/band_graph.hpp"
#include "bandprec/cholesky.hpp"

namespace bandprec {

double log_mv_gamma(int d, double a) {
  if (d < 1) throw std::domain_error("log_mv_gamma: dimension must be >= 1");
  if (!(a > 0.5 * double(d - 1)))
    throw std::domain_error("log_mv_gamma: argument must exceed (d-1)/2");
  double out = 0.25 * double(d) * double(d - 1) * std::log(std::numbers::pi);
  for (int i = 0; i < d; ++i) out += std::lgamma(a - 0.5 * double(i));
  return out;
}

namespace {

// The normalizing constant itself is finite whenever the implied Wishart
// degrees of freedom are valid (delta > 0); the statistical entry points
// below demand the stricter propriety condition delta > 2.
void check_delta_positive(double delta) {
  if (!(delta > 0.0))
    throw std::domain_error("G-Wishart normalizing constant: delta must be positive");
}

void check_delta_proper(double delta) {
  if (!(delta > 2.0)) throw std::domain_error("G-Wishart evidence: delta must exceed 2");
}

double log_ig_complete_block(double delta, double log_det, Index d) {
  const double b = 0.5 * (delta + double(d) - 1.0);
  return b * double(d) * std::numbers::ln2 + log_mv_gamma(int(d), b) - b * log_det;
}

}  // namespace

double log_ig_complete(double delta, const Matrix& d_scale) {
  check_delta_positive(delta);
  const auto chol = cholesky_or_throw(d_scale, "log_ig_complete: scale matrix");
  return log_ig_complete_block(delta, chol.log_det(), d_scale.rows());
}

double log_ig_banded(double delta, const Matrix& d_scale, Index k) {
  check_delta_positive(delta);
  const BandModel g(d_scale.rows(), k);
  double out = 0.0;
  for (Index j = 0; j < g.clique_count(); ++j) {
    const IndexRange r = g.clique(j);
    const Matrix block = d_scale.block(r.first, r.first, r.size, r.size);
    const auto chol = cholesky_or_throw(
        block, "log_ig_banded: clique " + std::to_string(j + 1) + " of scale matrix");
    out += log_ig_complete_block(delta, chol.log_det(), r.size);
  }
  for (Index j = 0; j < g.separator_count(); ++j) {
    const IndexRange r = g.separator(j);
    const Matrix block = d_scale.block(r.first, r.first, r.size, r.size);
    const auto chol = cholesky_or_throw(
        block, "log_ig_banded: separator " + std::to_string(j + 1) + " of scale matrix");
    out -= log_ig_complete_block(delta, chol.log_det(), r.size);
  }
  return out;
}

double log_marginal_likelihood(const SampleStats& stats, Index k, const PriorSpec& prior) {
  check_delta_proper(prior.delta);
  const Index p = stats.dim();
  const Matrix posterior_scale =
      Matrix::Identity(p, p) + double(stats.n) * stats.s;
  return -0.5 * double(stats.n) * double(p) * std::log(2.0 * std::numbers::pi) +
         log_ig_banded(prior.delta + double(stats.n), posterior_scale, k) -
         log_ig_banded(prior.delta, Matrix::Identity(p, p), k);
}

PriorOverK PriorOverK::custom(std::vector<double> weights) {
  if (weights.empty()) throw std::invalid_argument("PriorOverK: weights must be non-empty");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("PriorOverK: weights must be positive");
  return PriorOverK(Kind::Custom, std::move(weights));
}

double PriorOverK::log_weight(Index k) const {
  switch (kind_) {
    case Kind::ExpQuartic: {
      const double kd = double(k);
      return -kd * kd * kd * kd;
    }
    case Kind::Uniform: return 0.0;
    case Kind::Custom:
      if (k < 0 || size_t(k) >= weights_.size())
        throw std::out_of_range("PriorOverK: no weight for this bandwidth");
      return std::log(weights_[size_t(k)]);
  }
  throw std::logic_error("PriorOverK: unknown kind");
}

const char* PriorOverK::name() const {
  switch (kind_) {
    case Kind::ExpQuartic: return "exp-quartic";
    case Kind::Uniform: return "uniform";
    case Kind::Custom: return "custom";
  }
  return "unknown";
}

Index default_k_max(Index p, Index n) { return std::min({p - 1, n - 2, Index(50)}); }

BandPosterior band_posterior(const SampleStats& stats, const PriorSpec& prior,
                             const PriorOverK& rho, Index k_max) {
  if (k_max < 0 || k_max > stats.dim() - 1)
    throw std::invalid_argument("band_posterior: k_max must satisfy 0 <= k_max <= p-1");
  BandPosterior out;
  const Index count = k_max + 1;
  out.k_values.reserve(size_t(count));
  out.log_marginals.reserve(size_t(count));
  out.log_priors.reserve(size_t(count));
  std::vector<double> log_post(static_cast<size_t>(count), 0.0);
  for (Index k = 0; k <= k_max; ++k) {
    out.k_values.push_back(k);
    out.log_marginals.push_back(log_marginal_likelihood(stats, k, prior));
    out.log_priors.push_back(rho.log_weight(k));
    log_post[size_t(k)] = out.log_marginals.back() + out.log_priors.back();
  }
  // Log-sum-exp with a max shift; ties resolve to the smallest k.
  double shift = log_post[0];
  for (double v : log_post) shift = std::max(shift, v);
  double total = 0.0;
  out.posterior.resize(size_t(count));
  for (size_t i = 0; i < log_post.size(); ++i) {
    out.posterior[i] = std::exp(log_post[i] - shift);
    total += out.posterior[i];
  }
  Index mode = 0;
  for (size_t i = 0; i < out.posterior.size(); ++i) {
    out.posterior[i] /= total;
    if (out.posterior[i] > out.posterior[size_t(mode)]) mode = Index(i);
  }
  out.mode = mode;
  return out;
}

}  // namespace bandprec
