#pragma once

// Dense square-matrix kernel. Everything here is a free function templated on
// the Eigen expression type, so it accepts blocks, maps and products without
// forcing a copy at the call site.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "algpaths/errors.hpp"
#include "algpaths/tolerance.hpp"

namespace algpaths {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

/// Singular values, largest first.
template <typename Derived>
Eigen::Matrix<RealOf<Derived>, Eigen::Dynamic, 1> singular_values(
    const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  if (a.size() == 0) return {};
  Eigen::JacobiSVD<Plain> svd(a.eval());
  return svd.singularValues();
}

/// Largest singular value: the norm of B(C^m).
template <typename Derived>
RealOf<Derived> operator_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return RealOf<Derived>(0);
  return singular_values(a)(0);
}

/// Numerical rank: singular values above rank_rel_tol * sigma_max * m.
template <typename Derived>
int rank(const Eigen::MatrixBase<Derived>& a, const ToleranceConfig& cfg = {}) {
  const auto sv = singular_values(a);
  if (sv.size() == 0) return 0;
  const auto threshold = cfg.rank_rel_tol * sv(0) * static_cast<double>(a.rows());
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++r;
  return r;
}

/// e^x by scaling and squaring around a Taylor core. The argument is scaled
/// until its Frobenius norm (an upper bound for the operator norm) is <= 1/2.
template <typename Derived>
typename Derived::PlainObject mat_exp(const Eigen::MatrixBase<Derived>& x) {
  using Plain = typename Derived::PlainObject;
  using Real = RealOf<Derived>;
  const Eigen::Index m = x.rows();
  const Real norm = x.norm();
  int squarings = 0;
  if (norm > Real(0.5))
    squarings = static_cast<int>(std::ceil(std::log2(norm / Real(0.5))));
  const Plain scaled = x / std::ldexp(Real(1), squarings);

  Plain result = Plain::Identity(m, m);
  Plain term = Plain::Identity(m, m);
  for (int k = 1; k <= 40; ++k) {
    term = (term * scaled) / Real(k);
    result += term;
    if (term.norm() <= std::numeric_limits<Real>::epsilon() * Real(0.25) * result.norm())
      break;
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result;
}

/// Principal logarithm of w through the Mercator series of log(1 + X),
/// X = w - 1. Only defined in the near-identity regime.
template <typename Derived>
typename Derived::PlainObject mat_log_near_identity(const Eigen::MatrixBase<Derived>& w,
                                                    const ToleranceConfig& cfg = {}) {
  using Plain = typename Derived::PlainObject;
  using Real = RealOf<Derived>;
  const Eigen::Index m = w.rows();
  const Plain x = w - Plain::Identity(m, m);
  const Real dist = operator_norm(x);
  if (!(dist < cfg.invertibility_margin))
    throw Error(ErrorKind::NotNearIdentity,
                "||w - 1|| = " + format_residual(static_cast<double>(dist)) + " is not below the invertibility margin",
                dist);

  Plain result = Plain::Zero(m, m);
  if (dist == Real(0)) return result;
  Plain power = x;
  constexpr int kMaxTerms = 20000;
  for (int k = 1; k <= kMaxTerms; ++k) {
    const Real sign = (k % 2 == 1) ? Real(1) : Real(-1);
    result += (sign / Real(k)) * power;
    // ||X^k|| / k bounds the remaining terms geometrically once it is tiny
    const Real tail = power.norm() / Real(k);
    if (tail <= std::numeric_limits<Real>::epsilon() * Real(1e-2) * (Real(1) + result.norm()))
      break;
    power = (power * x).eval();
  }
  return result;
}

/// p(a) by Horner's rule; coefficients are in ascending order of degree.
template <typename Derived, typename CoeffScalar>
typename Derived::PlainObject poly_eval_scalar_coeffs(std::span<const CoeffScalar> coeffs,
                                                      const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  const Eigen::Index m = a.rows();
  if (coeffs.empty()) return Plain::Zero(m, m);
  Plain result = coeffs.back() * Plain::Identity(m, m);
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    result = (result * a).eval();
    result.diagonal().array() += coeffs[k];
  }
  return result;
}

template <typename Derived, typename CoeffScalar>
typename Derived::PlainObject poly_eval_scalar_coeffs(const std::vector<CoeffScalar>& coeffs,
                                                      const Eigen::MatrixBase<Derived>& a) {
  return poly_eval_scalar_coeffs(std::span<const CoeffScalar>(coeffs), a);
}

/// Conjugate-transpose distance ||a - a*||.
template <typename Derived>
RealOf<Derived> hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
  return operator_norm((a - a.adjoint()).eval());
}

/// Unitary factor u and positive factor h of a = u h, from a full SVD.
template <typename MatrixType>
struct PolarFactors {
  MatrixType unitary;
  MatrixType positive;
};

template <typename Derived>
PolarFactors<typename Derived::PlainObject> polar_decomposition(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(a.eval(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Plain& u = svd.matrixU();
  const Plain& v = svd.matrixV();
  Plain h = v * svd.singularValues().asDiagonal() * v.adjoint();
  h = (Plain(0.5 * (h + h.adjoint())));
  return {u * v.adjoint(), h};
}

/// Orthonormal basis of the column space, using the numerical rank.
template <typename Derived>
typename Derived::PlainObject range_basis(const Eigen::MatrixBase<Derived>& a,
                                          const ToleranceConfig& cfg = {}) {
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(a.eval(), Eigen::ComputeFullU);
  const int r = rank(a, cfg);
  return svd.matrixU().leftCols(r);
}

/// Reciprocal 2-norm condition number; zero for singular input.
template <typename Derived>
RealOf<Derived> inverse_condition(const Eigen::MatrixBase<Derived>& a) {
  const auto sv = singular_values(a);
  if (sv.size() == 0 || sv(0) == 0) return RealOf<Derived>(0);
  return sv(sv.size() - 1) / sv(0);
}

}  // namespace algpaths
