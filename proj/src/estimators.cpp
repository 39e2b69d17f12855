#include "bandprec/estimators.hpp"

#include <stdexcept>
#include <string>

#include "bandprec/band_graph.hpp"
#include "bandprec/cholesky.hpp"
#include "bandprec/matrix.hpp"

namespace bandprec {

SampleStats SampleStats::from_data(const Matrix& x) {
  if (x.rows() < 1 || x.cols() < 1)
    throw std::invalid_argument("SampleStats: need at least one observation and one variable");
  Matrix s = symmetrize(x.transpose() * x) / double(x.rows());
  return {x.rows(), std::move(s)};
}

namespace {

void check_inputs(const SampleStats& stats, Index k) {
  if (stats.n < 1) throw std::invalid_argument("estimator: observation count must be >= 1");
  if (stats.s.rows() != stats.s.cols() || stats.s.rows() < 1)
    throw std::invalid_argument("estimator: sample covariance must be square and non-empty");
  if (k < 0 || k > stats.dim() - 1)
    throw std::invalid_argument("estimator: bandwidth must satisfy 0 <= k <= p-1");
}

void check_prior(const PriorSpec& prior) {
  if (!(prior.delta > 2.0)) throw std::domain_error("estimator: delta must exceed 2");
}

std::string block_label(const char* what, Index j, IndexRange r) {
  return std::string(what) + " " + std::to_string(j + 1) + " (rows " + std::to_string(r.first + 1) +
         ".." + std::to_string(r.last() + 1) + ")";
}

// out += coeff * (S_T)^{-1} placed on T x T. Summation order follows the
// caller's loop so results do not depend on scheduling.
void add_block_inverse(Matrix& out, const Matrix& s, IndexRange r, double coeff,
                       const std::string& label) {
  const Matrix block = s.block(r.first, r.first, r.size, r.size);
  out.block(r.first, r.first, r.size, r.size) += coeff * cholesky_or_throw(block, label).inverse();
}

// out += coeff * (n^{-1} I + S_T)^{-1} on T x T, computed as n (I + n S_T)^{-1}
// for conditioning (eigenvalues of I + n S_T are at least 1).
void add_regularized_block_inverse(Matrix& out, const Matrix& s, Index n, IndexRange r,
                                   double coeff, const std::string& label) {
  const Matrix block =
      Matrix::Identity(r.size, r.size) + double(n) * s.block(r.first, r.first, r.size, r.size);
  out.block(r.first, r.first, r.size, r.size) +=
      coeff * double(n) * cholesky_or_throw(block, label).inverse();
}

}  // namespace

Matrix graphical_mle(const SampleStats& stats, Index k) {
  check_inputs(stats, k);
  const BandModel g(stats.dim(), k);
  Matrix omega = Matrix::Zero(stats.dim(), stats.dim());
  for (Index j = 0; j < g.clique_count(); ++j)
    add_block_inverse(omega, stats.s, g.clique(j), 1.0, block_label("clique", j, g.clique(j)));
  for (Index j = 0; j < g.separator_count(); ++j)
    add_block_inverse(omega, stats.s, g.separator(j), -1.0,
                      block_label("separator", j, g.separator(j)));
  return omega;
}

Matrix bayes_frobenius(const SampleStats& stats, Index k, const PriorSpec& prior) {
  check_inputs(stats, k);
  check_prior(prior);
  const BandModel g(stats.dim(), k);
  const double n = double(stats.n);
  const double clique_coeff = (prior.delta + double(k) + n) / n;
  Matrix omega = Matrix::Zero(stats.dim(), stats.dim());
  for (Index j = 0; j < g.clique_count(); ++j)
    add_regularized_block_inverse(omega, stats.s, stats.n, g.clique(j), clique_coeff,
                                  block_label("clique", j, g.clique(j)));
  for (Index j = 0; j < g.separator_count(); ++j)
    add_regularized_block_inverse(omega, stats.s, stats.n, g.separator(j),
                                  -clique_coeff + 1.0 / n,
                                  block_label("separator", j, g.separator(j)));
  return omega;
}

Matrix bayes_stein(const SampleStats& stats, Index k, const PriorSpec& prior) {
  check_inputs(stats, k);
  check_prior(prior);
  const BandModel g(stats.dim(), k);
  const double n = double(stats.n);
  const double coeff = (prior.delta + n - 2.0) / n;
  Matrix omega = Matrix::Zero(stats.dim(), stats.dim());
  for (Index j = 0; j < g.clique_count(); ++j)
    add_regularized_block_inverse(omega, stats.s, stats.n, g.clique(j), coeff,
                                  block_label("clique", j, g.clique(j)));
  for (Index j = 0; j < g.separator_count(); ++j)
    add_regularized_block_inverse(omega, stats.s, stats.n, g.separator(j), -coeff,
                                  block_label("separator", j, g.separator(j)));
  return omega;
}

Matrix reference_prior(const SampleStats& stats, Index k) {
  check_inputs(stats, k);
  const BandModel g(stats.dim(), k);
  const double n = double(stats.n);
  Matrix omega = Matrix::Zero(stats.dim(), stats.dim());
  for (Index j = 0; j < g.clique_count(); ++j)
    add_block_inverse(omega, stats.s, g.clique(j), 1.0, block_label("clique", j, g.clique(j)));
  for (Index j = 0; j < g.separator_count(); ++j) {
    // First separator carries c_1 + c_2 - 2 s_2 = 2; the rest carry c_j - s_j = 1.
    const double coeff = j == 0 ? 1.0 - 2.0 / n : 1.0 - 1.0 / n;
    add_block_inverse(omega, stats.s, g.separator(j), -coeff,
                      block_label("separator", j, g.separator(j)));
  }
  return omega;
}

Matrix cholesky_banding(const SampleStats& stats, Index k) {
  check_inputs(stats, k);
  const Index p = stats.dim();
  Matrix t = Matrix::Zero(p, p);
  Vector d_inv(p);
  for (Index i = 0; i < p; ++i) {
    t(i, i) = 1.0;
    const Index len = std::min(k, i);
    double resid = stats.s(i, i);
    if (len > 0) {
      const IndexRange pred{i - len, len};
      const Matrix s_jj = stats.s.block(pred.first, pred.first, len, len);
      const Vector s_ji = stats.s.block(pred.first, i, len, 1);
      Cholesky<double> chol(s_jj);
      if (!chol.ok())
        throw NotPositiveDefinite(block_label("regression block for row", i, pred) +
                                  ": singular predecessor covariance");
      const Vector coef = chol.solve(s_ji);
      t.row(i).segment(pred.first, len) = -coef.transpose();
      resid -= s_ji.dot(coef);
    }
    if (!(resid > 0.0))
      throw NotPositiveDefinite("residual variance for row " + std::to_string(i + 1) +
                                " is not positive");
    d_inv[i] = 1.0 / resid;
  }
  return t.transpose() * d_inv.asDiagonal() * t;
}

Matrix estimate(EstimatorKind kind, const SampleStats& stats, Index k, const PriorSpec& prior) {
  switch (kind) {
    case EstimatorKind::GraphicalMle: return graphical_mle(stats, k);
    case EstimatorKind::BayesFrobenius: return bayes_frobenius(stats, k, prior);
    case EstimatorKind::BayesStein: return bayes_stein(stats, k, prior);
    case EstimatorKind::ReferencePrior: return reference_prior(stats, k);
    case EstimatorKind::CholeskyBanding: return cholesky_banding(stats, k);
  }
  throw std::logic_error("estimate: unknown estimator kind");
}

const char* estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::GraphicalMle: return "mle";
    case EstimatorKind::BayesFrobenius: return "bayes-l2";
    case EstimatorKind::BayesStein: return "bayes-l1";
    case EstimatorKind::ReferencePrior: return "ref";
    case EstimatorKind::CholeskyBanding: return "cholesky";
  }
  return "unknown";
}

}  // namespace bandprec
