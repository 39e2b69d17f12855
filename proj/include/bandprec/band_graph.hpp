#pragma once

#include <stdexcept>
#include <vector>

#include "bandprec/types.hpp"

namespace bandprec {

// The banded graph on p vertices with edges {(i,j): |i-j| <= k}. Decomposable,
// with a perfect clique order C_j = {j,...,j+k} and separators
// S_j = C_{j-1} n C_j = {j,...,j+k-1}. For k = 0 the graph is edgeless: p
// singleton cliques and no separators.
class BandModel {
 public:
  BandModel(Index p, Index k) : p_(p), k_(k) {
    if (p < 1) throw std::invalid_argument("BandModel: dimension must be >= 1");
    if (k < 0 || k > p - 1) throw std::invalid_argument("BandModel: bandwidth must satisfy 0 <= k <= p-1");
  }

  Index dim() const { return p_; }
  Index bandwidth() const { return k_; }

  Index clique_count() const { return p_ - k_; }
  Index separator_count() const { return k_ == 0 ? 0 : p_ - k_ - 1; }

  // j in [0, clique_count): the window {j, ..., j+k}.
  IndexRange clique(Index j) const { return {j, k_ + 1}; }

  // j in [0, separator_count): the window {j+1, ..., j+k}.
  IndexRange separator(Index j) const { return {j + 1, k_}; }

  std::vector<IndexRange> cliques() const {
    std::vector<IndexRange> out;
    out.reserve(size_t(clique_count()));
    for (Index j = 0; j < clique_count(); ++j) out.push_back(clique(j));
    return out;
  }

  std::vector<IndexRange> separators() const {
    std::vector<IndexRange> out;
    out.reserve(size_t(separator_count()));
    for (Index j = 0; j < separator_count(); ++j) out.push_back(separator(j));
    return out;
  }

 private:
  Index p_;
  Index k_;
};

}  // namespace bandprec
