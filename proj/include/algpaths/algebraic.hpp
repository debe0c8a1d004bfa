#pragma once

// Algebraic elements: matrices annihilated by p(z) = prod (z - root_i) with
// pairwise distinct roots, and their resolution into a partition of unity
// e_1, ..., e_n built from Lagrange polynomials of the element.

#include <cstdint>
#include <vector>

#include "algpaths/matkernel.hpp"
#include "algpaths/random.hpp"
#include "algpaths/signature.hpp"

namespace algpaths {

class RootSystem {
 public:
  const std::vector<Scalar>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }
  const Scalar& operator[](std::size_t i) const { return roots_[i]; }

  /// min_{i != j} |root_i - root_j|; +inf for a single root.
  double min_gap() const { return min_gap_; }
  bool all_real() const { return all_real_; }
  double max_modulus() const;

  /// Coefficients of p in ascending order (monic, degree n).
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  /// Exact equality of the root lists (same order).
  friend bool operator==(const RootSystem& x, const RootSystem& y) { return x.roots_ == y.roots_; }

 private:
  friend RootSystem validate_roots(std::vector<Scalar> roots);
  RootSystem() = default;

  std::vector<Scalar> roots_;
  std::vector<Scalar> coeffs_;
  double min_gap_ = 0.0;
  bool all_real_ = true;
};

/// Checks distinctness; throws MultipleRoots if two roots are closer than
/// 1e-12 * (1 + max |root|).
RootSystem validate_roots(std::vector<Scalar> roots);

/// Sub-system of the real roots. Self-adjoint solutions of p(a) = 0 also
/// solve q(a) = 0 for q built from the real roots only.
/// Throws EmptyRealPart when no root is real.
RootSystem q_reduction(const RootSystem& roots);

class AlgebraicElement {
 public:
  const Matrix& matrix() const { return a_; }
  const RootSystem& roots() const { return roots_; }
  /// ||p(a)|| measured at certification time.
  double residual() const { return residual_; }
  bool self_adjoint() const { return self_adjoint_; }
  Eigen::Index dim() const { return a_.rows(); }

 private:
  friend AlgebraicElement certify(Matrix a, const RootSystem& roots, const ToleranceConfig& cfg);
  friend AlgebraicElement certify_scaled(Matrix a, const RootSystem& roots,
                                         const ToleranceConfig& cfg);
  AlgebraicElement(Matrix a, RootSystem roots, double residual, bool self_adjoint)
      : a_(std::move(a)), roots_(std::move(roots)), residual_(residual), self_adjoint_(self_adjoint) {}

  Matrix a_;
  RootSystem roots_;
  double residual_ = 0.0;
  bool self_adjoint_ = false;
};

/// ||p(a)|| in operator norm.
double algebraic_residual(const Matrix& a, const RootSystem& roots);

/// Throws NotAlgebraic when ||p(a)|| > residual_tol.
AlgebraicElement certify(Matrix a, const RootSystem& roots, const ToleranceConfig& cfg = {});

/// certify() with residual_tol scaled by (1 + ||a||)^n, the size of the
/// rounding error of p(a) itself. Used for far-away points such as
/// a0 + 1e6 b on a complex line.
AlgebraicElement certify_scaled(Matrix a, const RootSystem& roots, const ToleranceConfig& cfg = {});

struct PartitionOfUnity {
  std::vector<Matrix> members;
  RootSystem roots;
  bool self_adjoint = false;
};

struct PartitionResiduals {
  double idempotency = 0.0;    // max ||e_i^2 - e_i||
  double annihilation = 0.0;   // max_{i != j} ||e_i e_j||
  double sum = 0.0;            // ||sum e_i - 1||
  double hermiticity = 0.0;    // max ||e_i - e_i^*||
  double commutation = 0.0;    // max ||[e_i, a]||, when a is supplied
  double reconstruction = 0.0; // ||sum lambda_i e_i - a||, when a is supplied

  double worst() const;
};

PartitionResiduals partition_residuals(const PartitionOfUnity& part, const Matrix* a = nullptr);

/// e_i = prod_{j != i} (a - lambda_j) / (lambda_i - lambda_j), factors taken
/// in order of increasing |lambda_i - lambda_j|. Throws
/// ResolutionResidualExceeded when the invariants fail beyond tolerance.
PartitionOfUnity spectral_resolution(const AlgebraicElement& el, const ToleranceConfig& cfg = {});

/// sum lambda_i e_i, re-certified.
AlgebraicElement recombine(const PartitionOfUnity& part, const ToleranceConfig& cfg = {});

/// s D s^{-1} (u D u* when self_adjoint) with D = diag(lambda_i repeated
/// ranks[i] times). Deterministic in seed. A signature concentrated on a
/// single root returns exactly lambda * 1.
AlgebraicElement random_element(const ComponentSignature& sig, const RootSystem& roots,
                                std::uint64_t seed, bool self_adjoint, double cond_bound = 20.0,
                                const ToleranceConfig& cfg = {});

/// Same construction with a caller-owned generator.
AlgebraicElement random_element(const ComponentSignature& sig, const RootSystem& roots, Rng& rng,
                                bool self_adjoint, double cond_bound = 20.0,
                                const ToleranceConfig& cfg = {});

}  // namespace algpaths
