#include "bandprec/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bandprec/band_graph.hpp"
#include "bandprec/cholesky.hpp"
#include "bandprec/matrix.hpp"
#include "bandprec/rng.hpp"

namespace bandprec {

namespace {

// Bartlett factor of W(df, I): lower triangular, chi-squared diagonal,
// standard-normal strict lower part. Fill order is fixed row by row.
Matrix bartlett_lower(Index d, double df, CounterRng& rng) {
  Matrix a = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    a(i, i) = std::sqrt(rng.next_chi_squared(df - double(i)));
    for (Index j = 0; j < i; ++j) a(i, j) = rng.next_normal();
  }
  return a;
}

// Draw-independent pieces of the clique-sequential decomposition.
struct SamplerPlan {
  Index p = 0;
  Index k = 0;
  double delta_post = 0.0;
  Matrix first_clique_l;        // Cholesky factor of (I+nS)_{C_1}
  std::vector<Matrix> sep_l;    // Cholesky factors of (I+nS)_{S_j}
  std::vector<Vector> reg_mean; // D_{S_j}^{-1} d_{S_j, t_j}
  std::vector<double> cond_scale;  // Schur complements d_{t_j t_j . S_j}
  Vector diag_scale;            // k = 0: diagonal of I+nS
};

SamplerPlan make_plan(const SampleStats& stats, Index k, const PriorSpec& prior) {
  if (!(prior.delta > 2.0)) throw std::domain_error("sample_posterior: delta must exceed 2");
  const Index p = stats.dim();
  if (k < 0 || k > p - 1)
    throw std::invalid_argument("sample_posterior: bandwidth must satisfy 0 <= k <= p-1");
  const Matrix d_post = Matrix::Identity(p, p) + double(stats.n) * stats.s;

  SamplerPlan plan;
  plan.p = p;
  plan.k = k;
  plan.delta_post = prior.delta + double(stats.n);
  if (k == 0) {
    plan.diag_scale = d_post.diagonal();
    return plan;
  }
  const BandModel g(p, k);
  plan.first_clique_l =
      cholesky_or_throw(Matrix(d_post.block(0, 0, k + 1, k + 1)), "posterior scale, clique 1")
          .matrix_l();
  const Index extra = g.clique_count() - 1;
  plan.sep_l.reserve(size_t(extra));
  plan.reg_mean.reserve(size_t(extra));
  plan.cond_scale.reserve(size_t(extra));
  for (Index j = 1; j < g.clique_count(); ++j) {
    const Index s0 = j;        // separator rows {j, ..., j+k-1}
    const Index t = j + k;     // the one new variable of clique j+1
    const Matrix d_ss = d_post.block(s0, s0, k, k);
    const Vector d_st = d_post.block(s0, t, k, 1);
    const auto chol =
        cholesky_or_throw(d_ss, "posterior scale, separator " + std::to_string(j + 1));
    const Vector mean = chol.solve(d_st);
    const double cond = d_post(t, t) - d_st.dot(mean);
    if (!(cond > Cholesky<double>::kPivotRelTol * d_post(t, t)))
      throw NotPositiveDefinite("sample_posterior: degenerate conditional scale at clique " +
                                std::to_string(j + 1));
    plan.sep_l.push_back(chol.matrix_l());
    plan.reg_mean.push_back(mean);
    plan.cond_scale.push_back(cond);
  }
  return plan;
}

Matrix draw_omega(const SamplerPlan& plan, CounterRng& rng) {
  const Index p = plan.p;
  const Index k = plan.k;
  Matrix omega = Matrix::Zero(p, p);

  if (k == 0) {
    // Independent scalar marginals: omega_jj ~ Gamma(delta_post/2, d_jj/2).
    for (Index j = 0; j < p; ++j)
      omega(j, j) = 2.0 * rng.next_gamma(0.5 * plan.delta_post) / plan.diag_scale[j];
    return omega;
  }

  // Covariance blocks of the draw on the banded support.
  Matrix sigma = Matrix::Zero(p, p);

  // First clique: Sigma_{C_1} = (L A^{-T}) (L A^{-T})^T for Bartlett A of
  // W(delta_post + k, (D_{C_1})^{-1}).
  const Matrix a = bartlett_lower(k + 1, plan.delta_post + double(k), rng);
  const Matrix g = a.triangularView<Eigen::Lower>()
                       .solve(plan.first_clique_l.transpose())
                       .transpose();
  sigma.block(0, 0, k + 1, k + 1) = symmetrize(g * g.transpose());

  const Index cliques = p - k;
  Vector z(k);
  for (Index j = 1; j < cliques; ++j) {
    const Index s0 = j;
    const Index t = j + k;
    // Conditional scale ~ inverse-Wishart of dimension one.
    const double cond_var =
        plan.cond_scale[size_t(j - 1)] / (2.0 * rng.next_gamma(0.5 * (plan.delta_post + double(k))));
    // Regression coefficients ~ N(mean, cond_var * D_{S_j}^{-1}).
    for (Index i = 0; i < k; ++i) z[i] = rng.next_normal();
    Vector b = plan.sep_l[size_t(j - 1)]
                   .transpose()
                   .triangularView<Eigen::Upper>()
                   .solve(z);
    b = plan.reg_mean[size_t(j - 1)] + std::sqrt(cond_var) * b;

    const auto sigma_ss = sigma.block(s0, s0, k, k);
    const Vector sigma_st = sigma_ss * b;
    sigma.block(s0, t, k, 1) = sigma_st;
    sigma.block(t, s0, 1, k) = sigma_st.transpose();
    sigma(t, t) = cond_var + b.dot(sigma_st);
  }

  // Assemble the precision draw from clique and separator inverses.
  const BandModel graph(p, k);
  for (Index j = 0; j < graph.clique_count(); ++j) {
    const IndexRange r = graph.clique(j);
    const Matrix block = sigma.block(r.first, r.first, r.size, r.size);
    omega.block(r.first, r.first, r.size, r.size) +=
        cholesky_or_throw(block, "sampled covariance, clique " + std::to_string(j + 1)).inverse();
  }
  for (Index j = 0; j < graph.separator_count(); ++j) {
    const IndexRange r = graph.separator(j);
    const Matrix block = sigma.block(r.first, r.first, r.size, r.size);
    omega.block(r.first, r.first, r.size, r.size) -=
        cholesky_or_throw(block, "sampled covariance, separator " + std::to_string(j + 1))
            .inverse();
  }
  return omega;
}

}  // namespace

std::vector<Matrix> sample_posterior(const SampleStats& stats, Index k, const PriorSpec& prior,
                                     int draws, std::uint64_t seed) {
  if (draws < 1) throw std::invalid_argument("sample_posterior: need at least one draw");
  const SamplerPlan plan = make_plan(stats, k, prior);
  std::vector<Matrix> out;
  out.reserve(size_t(draws));
  for (int i = 0; i < draws; ++i) {
    CounterRng rng = CounterRng::stream(seed, std::uint64_t(i));
    out.push_back(draw_omega(plan, rng));
  }
  return out;
}

}  // namespace bandprec
