#pragma once

#include <cstdint>
#include <vector>

#include "bandprec/estimators.hpp"
#include "bandprec/types.hpp"

namespace bandprec {

// Independent draws from the G-Wishart posterior W_{G^k}(delta+n, I+nS).
//
// Each draw walks the perfect clique order: the first clique covariance block
// comes from its inverse-Wishart marginal; every later clique adds one
// variable whose conditional scale is inverse-Wishart and whose regression on
// the separator is Gaussian. The precision draw is then assembled as
//   Omega = sum_j (Sigma_{C_j}^{-1})^0 - sum_j (Sigma_{S_j}^{-1})^0,
// so every draw is k-banded and positive definite.
//
// Draw i uses substream (seed, i), making the result independent of how draws
// are scheduled.
std::vector<Matrix> sample_posterior(const SampleStats& stats, Index k, const PriorSpec& prior,
                                     int draws, std::uint64_t seed);

}  // namespace bandprec
