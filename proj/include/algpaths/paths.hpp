#pragma once

// Connecting paths inside a component of algebraic elements:
//   * similarity paths t -> g(t) a g(t)^{-1}, g(t) a product of exponentials,
//   * polygonal paths, every segment an exact polynomial identity,
//   * polynomial paths of low degree found by least-squares search.
// Every constructor output can be re-checked with verify_path().

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "algpaths/algebraic.hpp"
#include "algpaths/matrix_polynomial.hpp"

namespace algpaths {

struct ExpSimilarityPath {
  AlgebraicElement base;
  /// Endpoint the path was built to reach; used by verify_path.
  Matrix target;
  /// c_1, ..., c_m; g(t) = e^{c_m t} ... e^{c_1 t}. In self-adjoint mode the
  /// generators are Hermitian and g(t) = e^{i c_m t} ... e^{i c_1 t}.
  std::vector<Matrix> generators;
  bool self_adjoint_mode = false;

  Matrix similarity(double t) const;
  /// g(t) a g(t)^{-1}; returns the base matrix untouched at t = 0.
  Matrix at(double t) const;
};

struct PolygonalPath {
  std::vector<AlgebraicElement> breakpoints;
  /// Largest coefficient norm of p((1 - t) a_k + t a_{k+1}) per segment.
  std::vector<double> segment_certificates;

  std::size_t segments() const { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }
  /// Piecewise-linear evaluation with equal parameter length per segment.
  Matrix at(double t) const;
};

struct PolynomialPath {
  MatPoly x;
  RootSystem roots;
  /// Largest coefficient norm of p(x(t)).
  double certificate = 0.0;
};

using Path = std::variant<ExpSimilarityPath, PolygonalPath, PolynomialPath>;

/// Partition-matching similarity w = sum f_i M e_i. It satisfies
/// w e_j = f_j w for every M, hence w a w^{-1} = b whenever it is invertible.
Matrix matching_similarity(const PartitionOfUnity& from, const PartitionOfUnity& to,
                           const Matrix* mixer = nullptr);

/// Single generator c = log w, defined when ||w - 1|| < invertibility_margin.
/// Throws NotSameComponent, NotLocallyClose.
ExpSimilarityPath connect_exp_local(const AlgebraicElement& a, const AlgebraicElement& b,
                                    const ToleranceConfig& cfg = {});

/// Product of exponentials from the polar factorization w = u h:
/// c_1 = log h, then the Hermitian logarithms of u (two factors when u has an
/// eigenvalue near -1). Falls back to connect_exp_local when w is near 1.
/// Throws NotSameComponent, FactorizationFailed.
ExpSimilarityPath connect_exp_global(const AlgebraicElement& a, const AlgebraicElement& b,
                                     const ToleranceConfig& cfg = {});

/// Unitary-orbit path e^{ict} a e^{-ict} with c Hermitian, between two
/// self-adjoint elements. Throws NotSelfAdjoint, NotSameComponent.
ExpSimilarityPath connect_selfadjoint(const AlgebraicElement& a, const AlgebraicElement& b,
                                      const ToleranceConfig& cfg = {});

/// Polygonal path built from a block LU factorization of the matching
/// similarity: each factor 1 + P_S Z P_T (disjoint root blocks S, T) moves
/// the current element along an exactly affine segment. Two roots give two
/// segments. Throws NotSameComponent, SubspaceSplitFailed.
PolygonalPath connect_polygonal(const AlgebraicElement& a, const AlgebraicElement& b,
                                const ToleranceConfig& cfg = {});

struct MinDegreeOptions {
  int restarts = 32;
  int inner_iterations = 2000;
  /// Restrict to Hermitian coefficients (paths inside the self-adjoint set).
  bool self_adjoint = false;
  /// Required ||x(1) - x(0)||; with pinned endpoints this bounds the mean
  /// speed of the path from below.
  double min_motion = 0.0;
  /// Certification threshold on the largest coefficient norm of p(x(t)).
  double success_tol = 1e-8;
};

struct MinDegreeResult {
  std::optional<PolynomialPath> path;
  int degree = 0;  // degree of the returned path, 0 on failure
  /// Smallest certificate reached at each degree 1..d_max that was tried.
  std::vector<double> best_residual_per_degree;
  std::vector<int> restarts_used;
};

/// For d = 1, ..., d_max, searches for x(t) of degree d with x(0) = a,
/// x(1) = b and p(x(t)) == 0, minimizing the squared coefficient norms of
/// p(x(t)) by L-BFGS followed by Gauss-Newton polishing. Restarts are
/// seeded from the polygonal path. Throws NotSameComponent.
MinDegreeResult min_degree_search(const AlgebraicElement& a, const AlgebraicElement& b, int d_max,
                                  std::uint64_t seed, const MinDegreeOptions& options = {},
                                  const ToleranceConfig& cfg = {});

/// Squared-coefficient objective and its gradient with respect to each
/// coefficient of x, as used by min_degree_search. Exposed for testing.
double composition_objective(const std::vector<Scalar>& p_coeffs, const MatPoly& x,
                             std::vector<Matrix>* gradient = nullptr);

struct Certificate {
  bool passed = false;
  /// Worst residual found and where: "segment 1", "coefficient 3", "t=0.25", ...
  double worst = 0.0;
  std::string where;
  double endpoint_error = 0.0;
  double membership = 0.0;
  double hermiticity = 0.0;
};

/// Re-certifies a path without throwing.
Certificate inspect_path(const Path& path, const RootSystem& roots, const ToleranceConfig& cfg = {});

/// inspect_path, throwing CertificationFailed on failure.
Certificate verify_path(const Path& path, const RootSystem& roots, const ToleranceConfig& cfg = {});

/// Hermitian generators K_1, ..., K_r with u = e^{i K_r} ... e^{i K_1}; a
/// second factor appears when an eigenphase of u is within 1e-6 of pi.
std::vector<Matrix> unitary_log_factors(const Matrix& u, std::uint64_t seed = 0);

}  // namespace algpaths
