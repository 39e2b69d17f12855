#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

#include "bandprec/types.hpp"

namespace bandprec {

enum class NormKind { LInfOp, L2Op, Frobenius, MaxAbs };

// Exact symmetry: (a_ij + a_ji)/2 evaluates identically for both orders.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> symmetrize(const Eigen::MatrixBase<Derived>& a) {
  return (a.derived() + a.derived().transpose()) * typename Derived::Scalar(0.5);
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& a) {
  return a.rows() == a.cols() && a.derived() == a.derived().transpose();
}

// Max absolute row sum, ||A||_(inf,inf).
template <typename Derived>
typename Derived::Scalar op_norm_inf(const Eigen::MatrixBase<Derived>& a) {
  return a.derived().cwiseAbs().rowwise().sum().maxCoeff();
}

template <typename Derived>
typename Derived::Scalar max_abs_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.derived().cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Derived::Scalar frobenius_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.derived().norm();
}

namespace detail {

// Power iteration on A^2 for a symmetric A, so paired eigenvalues of
// opposite sign cannot stall the Rayleigh estimate ||A v||.
template <typename Scalar>
Scalar power_iteration_norm(const DenseMatrix<Scalar>& a, Scalar tol, Index max_iter) {
  const Index n = a.rows();
  DenseVector<Scalar> v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = Scalar(0.5) + Scalar(std::fmod(double(i + 1) * 0.6180339887498949, 1.0));
  v /= v.norm();

  Scalar estimate = 0;
  for (Index it = 0; it < max_iter; ++it) {
    DenseVector<Scalar> w = a * v;
    const Scalar next = w.norm();
    v = a * w;
    const Scalar vn = v.norm();
    if (vn == Scalar(0)) return next;  // A^2 v vanished; ||A v|| is already exact
    v /= vn;
    if (std::abs(next - estimate) <= tol * std::max(next, Scalar(1e-300))) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace detail

// Spectral norm of a symmetric matrix: max |eigenvalue|.
// Full eigendecomposition up to dimension 64, power iteration beyond
// (relative tolerance 1e-10, iteration cap 10*dim).
template <typename Scalar>
Scalar op_norm_2(const DenseMatrix<Scalar>& a) {
  constexpr Index kDenseThreshold = 64;
  if (a.rows() == 0) return Scalar(0);
  if (a.rows() <= kDenseThreshold) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  return detail::power_iteration_norm<Scalar>(a, Scalar(1e-10), 10 * a.rows());
}

template <typename Scalar>
Scalar norm(const DenseMatrix<Scalar>& a, NormKind kind) {
  switch (kind) {
    case NormKind::LInfOp: return op_norm_inf(a);
    case NormKind::L2Op: return op_norm_2(a);
    case NormKind::Frobenius: return frobenius_norm(a);
    case NormKind::MaxAbs: return max_abs_norm(a);
  }
  throw std::logic_error("unknown NormKind");
}

// B_k(A): zero all entries with |i - j| > k.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> band(const Eigen::MatrixBase<Derived>& a, Index k) {
  using Scalar = typename Derived::Scalar;
  const Index n = a.rows();
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(n, a.cols());
  for (Index i = 0; i < n; ++i) {
    const Index j0 = std::max<Index>(0, i - k);
    const Index j1 = std::min<Index>(a.cols() - 1, i + k);
    if (j1 >= j0) out.row(i).segment(j0, j1 - j0 + 1) = a.derived().row(i).segment(j0, j1 - j0 + 1);
  }
  return out;
}

// A_T for a contiguous index range.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> submatrix(const Eigen::MatrixBase<Derived>& a,
                                                IndexRange t) {
  if (t.size < 1 || t.first < 0 || t.last() >= a.rows())
    throw std::out_of_range("submatrix: index range outside matrix");
  return a.derived().block(t.first, t.first, t.size, t.size);
}

// A_T for a general strictly increasing index set.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> submatrix(const Eigen::MatrixBase<Derived>& a,
                                                std::span<const Index> t) {
  const Index m = Index(t.size());
  if (m < 1) throw std::out_of_range("submatrix: empty index set");
  for (Index i = 0; i < m; ++i) {
    if (t[i] < 0 || t[i] >= a.rows()) throw std::out_of_range("submatrix: index outside matrix");
    if (i > 0 && t[i] <= t[i - 1]) throw std::invalid_argument("submatrix: indices not increasing");
  }
  DenseMatrix<typename Derived::Scalar> out(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) out(i, j) = a.derived()(t[i], t[j]);
  return out;
}

// (A_T)^0: place B on T x T inside a p x p zero matrix.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> embed(const Eigen::MatrixBase<Derived>& b, IndexRange t,
                                            Index p) {
  if (b.rows() != t.size) throw std::invalid_argument("embed: block size does not match range");
  if (t.first < 0 || t.last() >= p) throw std::out_of_range("embed: index range outside matrix");
  DenseMatrix<typename Derived::Scalar> out = DenseMatrix<typename Derived::Scalar>::Zero(p, p);
  out.block(t.first, t.first, t.size, t.size) = b.derived();
  return out;
}

template <typename Derived>
DenseMatrix<typename Derived::Scalar> embed(const Eigen::MatrixBase<Derived>& b,
                                            std::span<const Index> t, Index p) {
  const Index m = Index(t.size());
  if (b.rows() != m) throw std::invalid_argument("embed: block size does not match index set");
  DenseMatrix<typename Derived::Scalar> out = DenseMatrix<typename Derived::Scalar>::Zero(p, p);
  for (Index i = 0; i < m; ++i) {
    if (t[i] < 0 || t[i] >= p) throw std::out_of_range("embed: index outside matrix");
    for (Index j = 0; j < m; ++j) out(t[i], t[j]) = b.derived()(i, j);
  }
  return out;
}

}  // namespace bandprec
