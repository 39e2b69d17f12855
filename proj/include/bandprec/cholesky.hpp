#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "bandprec/matrix.hpp"
#include "bandprec/types.hpp"

namespace bandprec {

// Raised when a matrix that must be positive definite fails its pivot test.
// The message names the offending block (clique/separator) where applicable.
class NotPositiveDefinite : public std::runtime_error {
 public:
  explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

// Lower-triangular Cholesky factorization A = L L^T with a scale-relative
// positive-definiteness test: a pivot is rejected when it falls at or below
// 1e-12 times the largest diagonal entry of A.
template <typename Scalar>
class Cholesky {
 public:
  static constexpr Scalar kPivotRelTol = Scalar(1e-12);

  explicit Cholesky(const DenseMatrix<Scalar>& a) : l_(DenseMatrix<Scalar>::Zero(a.rows(), a.rows())) {
    const Index n = a.rows();
    const Scalar tol = kPivotRelTol * std::max(n > 0 ? Scalar(a.diagonal().maxCoeff()) : Scalar(0), Scalar(0));
    for (Index j = 0; j < n; ++j) {
      const Scalar d = a(j, j) - l_.row(j).head(j).squaredNorm();
      if (!(d > tol)) {  // also catches NaN
        failed_ = j;
        return;
      }
      l_(j, j) = std::sqrt(d);
      for (Index i = j + 1; i < n; ++i)
        l_(i, j) = (a(i, j) - l_.row(i).head(j).dot(l_.row(j).head(j))) / l_(j, j);
    }
  }

  bool ok() const { return failed_ < 0; }
  // Pivot index at which factorization failed; -1 on success.
  Index failed_index() const { return failed_; }

  const DenseMatrix<Scalar>& matrix_l() const { return l_; }

  // log det A = 2 sum_i log L_ii.
  Scalar log_det() const { return Scalar(2) * l_.diagonal().array().log().sum(); }

  DenseMatrix<Scalar> solve(const DenseMatrix<Scalar>& rhs) const {
    DenseMatrix<Scalar> x = l_.template triangularView<Eigen::Lower>().solve(rhs);
    l_.transpose().template triangularView<Eigen::Upper>().solveInPlace(x);
    return x;
  }

  DenseVector<Scalar> solve(const DenseVector<Scalar>& rhs) const {
    DenseVector<Scalar> x = l_.template triangularView<Eigen::Lower>().solve(rhs);
    l_.transpose().template triangularView<Eigen::Upper>().solveInPlace(x);
    return x;
  }

  // Symmetrized A^{-1}.
  DenseMatrix<Scalar> inverse() const {
    const DenseMatrix<Scalar> id = DenseMatrix<Scalar>::Identity(l_.rows(), l_.rows());
    return symmetrize(solve(id));
  }

 private:
  DenseMatrix<Scalar> l_;
  Index failed_ = -1;
};

template <typename Scalar>
bool is_positive_definite(const DenseMatrix<Scalar>& a) {
  return a.rows() == a.cols() && Cholesky<Scalar>(a).ok();
}

// Factorization that must succeed; `what` names the block being factored.
template <typename Scalar>
Cholesky<Scalar> cholesky_or_throw(const DenseMatrix<Scalar>& a, const std::string& what) {
  Cholesky<Scalar> c(a);
  if (!c.ok())
    throw NotPositiveDefinite(what + ": not positive definite (pivot " +
                              std::to_string(c.failed_index() + 1) + " of " +
                              std::to_string(a.rows()) + ")");
  return c;
}

}  // namespace bandprec
