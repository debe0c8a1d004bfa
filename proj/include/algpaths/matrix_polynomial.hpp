#pragma once

// Polynomials in a real/complex parameter t whose coefficients are square
// matrices. Products are coefficient convolutions, so p(x(t)) is obtained
// exactly (up to rounding) as another MatrixPolynomial, and a polynomial
// identity can be certified coefficient by coefficient instead of by sampling.

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <span>
#include <utility>
#include <vector>

#include "algpaths/matkernel.hpp"

namespace algpaths {

template <typename ScalarT>
class MatrixPolynomial {
 public:
  using ScalarType = ScalarT;
  using MatrixType = Eigen::Matrix<ScalarT, Eigen::Dynamic, Eigen::Dynamic>;
  using RealType = typename Eigen::NumTraits<ScalarT>::Real;

  MatrixPolynomial() = default;

  /// Zero polynomial with degree + 1 coefficient slots.
  MatrixPolynomial(Eigen::Index dim, int degree)
      : coeffs_(static_cast<std::size_t>(degree + 1), MatrixType::Zero(dim, dim)) {}

  explicit MatrixPolynomial(std::vector<MatrixType> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial needs a coefficient");
    for (const auto& c : coeffs_)
      if (c.rows() != coeffs_.front().rows() || c.cols() != c.rows())
        throw Error(ErrorKind::DimMismatch, "coefficients must be square and of equal size");
  }

  static MatrixPolynomial constant(const MatrixType& c) { return MatrixPolynomial({c}); }

  /// (1 - t) a + t b
  static MatrixPolynomial segment(const MatrixType& a, const MatrixType& b) {
    return MatrixPolynomial({a, b - a});
  }

  /// a + t b
  static MatrixPolynomial line(const MatrixType& a, const MatrixType& b) {
    return MatrixPolynomial({a, b});
  }

  /// Storage degree; the leading coefficient is not normalized away.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Eigen::Index dim() const { return coeffs_.empty() ? 0 : coeffs_.front().rows(); }

  const MatrixType& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  MatrixType& coeff(int k) { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<MatrixType>& coeffs() const { return coeffs_; }

  MatrixType operator()(ScalarT t) const {
    MatrixType result = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) result = (result * t + coeffs_[k]).eval();
    return result;
  }

  MatrixPolynomial derivative() const {
    if (degree() == 0) return MatrixPolynomial(dim(), 0);
    std::vector<MatrixType> d;
    d.reserve(coeffs_.size() - 1);
    for (int k = 1; k <= degree(); ++k) d.push_back(RealType(k) * coeff(k));
    return MatrixPolynomial(std::move(d));
  }

  /// Largest operator norm among the coefficients.
  RealType max_coeff_norm() const {
    RealType best(0);
    for (const auto& c : coeffs_) best = std::max(best, operator_norm(c));
    return best;
  }

  MatrixPolynomial& operator+=(const MatrixPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size())
      coeffs_.resize(rhs.coeffs_.size(), MatrixType::Zero(dim(), dim()));
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    return *this;
  }

  MatrixPolynomial& operator*=(ScalarT s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  /// Adds s * identity to the constant coefficient.
  MatrixPolynomial& add_identity(ScalarT s) {
    coeffs_.front().diagonal().array() += s;
    return *this;
  }

  friend MatrixPolynomial operator+(MatrixPolynomial lhs, const MatrixPolynomial& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend MatrixPolynomial operator*(ScalarT s, MatrixPolynomial x) {
    x *= s;
    return x;
  }

  /// Coefficient convolution: (x y)_k = sum_{i+j=k} x_i y_j.
  friend MatrixPolynomial operator*(const MatrixPolynomial& x, const MatrixPolynomial& y) {
    assert(x.dim() == y.dim());
    MatrixPolynomial out(x.dim(), x.degree() + y.degree());
    for (int i = 0; i <= x.degree(); ++i)
      for (int j = 0; j <= y.degree(); ++j) out.coeff(i + j).noalias() += x.coeff(i) * y.coeff(j);
    return out;
  }

 private:
  std::vector<MatrixType> coeffs_;
};

using MatPoly = MatrixPolynomial<Scalar>;

/// q(t) = p(x(t)) by Horner's rule over matrix polynomials. The result has
/// degree n * deg(x) where n = coeffs.size() - 1.
template <typename ScalarT, typename CoeffScalar>
MatrixPolynomial<ScalarT> matpoly_compose_p(std::span<const CoeffScalar> coeffs,
                                            const MatrixPolynomial<ScalarT>& x) {
  const Eigen::Index m = x.dim();
  using MatrixType = typename MatrixPolynomial<ScalarT>::MatrixType;
  if (coeffs.empty()) return MatrixPolynomial<ScalarT>(m, 0);
  MatrixPolynomial<ScalarT> q =
      MatrixPolynomial<ScalarT>::constant(ScalarT(coeffs.back()) * MatrixType::Identity(m, m));
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    q = q * x;
    q.add_identity(ScalarT(coeffs[k]));
  }
  return q;
}

template <typename ScalarT, typename CoeffScalar>
MatrixPolynomial<ScalarT> matpoly_compose_p(const std::vector<CoeffScalar>& coeffs,
                                            const MatrixPolynomial<ScalarT>& x) {
  return matpoly_compose_p(std::span<const CoeffScalar>(coeffs), x);
}

struct ZeroTest {
  bool is_zero = false;
  double max_coeff_norm = 0.0;
};

/// A polynomial identity holds when every coefficient has operator norm
/// <= residual_tol * (1 + input_scale). The largest coefficient norm is the
/// certificate value.
template <typename ScalarT>
ZeroTest matpoly_is_zero(const MatrixPolynomial<ScalarT>& q, const ToleranceConfig& cfg,
                         double input_scale = 0.0) {
  const double worst = static_cast<double>(q.max_coeff_norm());
  return {worst <= cfg.residual_tol * (1.0 + input_scale), worst};
}

}  // namespace algpaths
