#pragma once

#include <vector>

#include "bandprec/estimators.hpp"
#include "bandprec/types.hpp"

namespace bandprec {

// log Gamma_d(a) = (d(d-1)/4) log pi + sum_{i=0}^{d-1} log Gamma(a - i/2).
// Requires a > (d-1)/2.
double log_mv_gamma(int d, double a);

// log of the G-Wishart normalizing constant for a complete graph of
// dimension d = dim(D):
//   ((delta+d-1)d/2) log 2 + log Gamma_d((delta+d-1)/2) - ((delta+d-1)/2) log det D.
double log_ig_complete(double delta, const Matrix& d_scale);

// Clique/separator factorization over the banded graph:
//   sum_j log I(delta, D_{C_j}) - sum_j log I(delta, D_{S_j}).
double log_ig_banded(double delta, const Matrix& d_scale, Index k);

// log p(X | G^k) = -(np/2) log(2 pi)
//                  + log I_{G^k}(delta+n, I+nS) - log I_{G^k}(delta, I).
double log_marginal_likelihood(const SampleStats& stats, Index k, const PriorSpec& prior = {});

// Prior over candidate bandwidths; weights are unnormalized.
class PriorOverK {
 public:
  static PriorOverK exp_quartic() { return PriorOverK(Kind::ExpQuartic, {}); }
  static PriorOverK uniform() { return PriorOverK(Kind::Uniform, {}); }
  static PriorOverK custom(std::vector<double> weights);

  // log rho_k, up to an additive constant.
  double log_weight(Index k) const;

  bool is_uniform() const { return kind_ == Kind::Uniform; }
  const char* name() const;

 private:
  enum class Kind { ExpQuartic, Uniform, Custom };
  PriorOverK(Kind kind, std::vector<double> weights) : kind_(kind), weights_(std::move(weights)) {}

  Kind kind_;
  std::vector<double> weights_;
};

// Posterior over candidate bandwidths 0..k_max.
struct BandPosterior {
  std::vector<Index> k_values;
  std::vector<double> log_marginals;
  std::vector<double> log_priors;  // unnormalized log rho_k
  std::vector<double> posterior;   // normalized, sums to 1
  Index mode = 0;                  // argmax posterior; ties broken to smallest k
};

// Default candidate cap: min(p-1, n-2, 50).
Index default_k_max(Index p, Index n);

// Posterior over G^k for k = 0..k_max, normalized with a max shift.
BandPosterior band_posterior(const SampleStats& stats, const PriorSpec& prior,
                             const PriorOverK& rho, Index k_max);

}  // namespace bandprec
