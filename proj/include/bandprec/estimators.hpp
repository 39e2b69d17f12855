#pragma once

#include "bandprec/types.hpp"

namespace bandprec {

// Observation count and sample covariance S = n^{-1} sum_i x_i x_i^T
// (mean-zero model; no centering unless requested upstream).
struct SampleStats {
  Index n = 0;
  Matrix s;

  Index dim() const { return s.rows(); }

  // rows = observations, columns = variables.
  static SampleStats from_data(const Matrix& x);
};

// G-Wishart prior W_G(delta, I_p): degrees of freedom delta > 2, identity scale.
struct PriorSpec {
  double delta = 3.0;
};

enum class EstimatorKind { GraphicalMle, BayesFrobenius, BayesStein, ReferencePrior, CholeskyBanding };

// Maximum-likelihood precision estimate under the banded graph:
//   sum_j (S_{C_j}^{-1})^0 - sum_j (S_{S_j}^{-1})^0.
// Requires every clique submatrix of S to be positive definite (holds for
// continuous data once n >= k+2); the error names the failing clique.
Matrix graphical_mle(const SampleStats& stats, Index k);

// Posterior mean under W_G(delta, I_p):
//   ((delta+k+n)/n) [sum_j ((n^{-1}I + S_{C_j})^{-1})^0 - sum_j ((n^{-1}I + S_{S_j})^{-1})^0]
//   + n^{-1} sum_j ((n^{-1}I + S_{S_j})^{-1})^0.
// Defined for any S: the regularized blocks are always positive definite.
Matrix bayes_frobenius(const SampleStats& stats, Index k, const PriorSpec& prior = {});

// Bayes rule under Stein's loss:
//   ((delta+n-2)/n) [sum_j ((n^{-1}I + S_{C_j})^{-1})^0 - sum_j ((n^{-1}I + S_{S_j})^{-1})^0].
Matrix bayes_stein(const SampleStats& stats, Index k, const PriorSpec& prior = {});

// Posterior mean under the reference prior:
//   sum_j (S_{C_j}^{-1})^0 - (1 - 2/n) (S_{S_2}^{-1})^0 - (1 - 1/n) sum_{j>=3} (S_{S_j}^{-1})^0.
Matrix reference_prior(const SampleStats& stats, Index k);

// Modified-Cholesky banding comparator: regress each variable on its k
// immediate predecessors using S blocks, assemble the unit lower-triangular
// banded T and residual variances D, and return T^T D^{-1} T.
Matrix cholesky_banding(const SampleStats& stats, Index k);

Matrix estimate(EstimatorKind kind, const SampleStats& stats, Index k, const PriorSpec& prior = {});

const char* estimator_name(EstimatorKind kind);

}  // namespace bandprec
