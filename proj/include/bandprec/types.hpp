#pragma once

#include <Eigen/Dense>

namespace bandprec {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<double>;
using Vector = DenseVector<double>;
using Index = Eigen::Index;

// Contiguous run of row/column indices, 0-based internally.
// File formats and log messages use 1-based indices.
struct IndexRange {
  Index first = 0;
  Index size = 0;

  Index last() const { return first + size - 1; }
  bool contains(Index i) const { return i >= first && i <= last(); }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

}  // namespace bandprec
