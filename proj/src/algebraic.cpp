#include "algpaths/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace algpaths {

double RootSystem::max_modulus() const {
  double best = 0.0;
  for (const auto& r : roots_) best = std::max(best, std::abs(r));
  return best;
}

RootSystem validate_roots(std::vector<Scalar> roots) {
  if (roots.empty()) throw Error(ErrorKind::InvalidArgument, "root system needs at least one root");
  for (const auto& r : roots)
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
      throw Error(ErrorKind::InvalidArgument, "roots must be finite");

  double max_mod = 0.0;
  for (const auto& r : roots) max_mod = std::max(max_mod, std::abs(r));
  const double merge_tol = 1e-12 * (1.0 + max_mod);

  RootSystem rs;
  rs.min_gap_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double gap = std::abs(roots[i] - roots[j]);
      if (gap < merge_tol)
        throw Error(ErrorKind::MultipleRoots,
                    "roots " + std::to_string(i) + " and " + std::to_string(j) + " coincide", gap);
      rs.min_gap_ = std::min(rs.min_gap_, gap);
    }
  rs.all_real_ = std::all_of(roots.begin(), roots.end(), [](const Scalar& r) { return r.imag() == 0.0; });

  // expand prod (z - r_i), ascending coefficients
  std::vector<Scalar> c{Scalar(1)};
  for (const auto& r : roots) {
    std::vector<Scalar> next(c.size() + 1, Scalar(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  rs.coeffs_ = std::move(c);
  rs.roots_ = std::move(roots);
  return rs;
}

RootSystem q_reduction(const RootSystem& roots) {
  std::vector<Scalar> real;
  for (const auto& r : roots.roots())
    if (r.imag() == 0.0) real.push_back(r);
  if (real.empty())
    throw Error(ErrorKind::EmptyRealPart,
                "no real root: no self-adjoint element satisfies p(a) = 0");
  return validate_roots(std::move(real));
}

double algebraic_residual(const Matrix& a, const RootSystem& roots) {
  return operator_norm(poly_eval_scalar_coeffs(roots.coefficients(), a));
}

AlgebraicElement certify(Matrix a, const RootSystem& roots, const ToleranceConfig& cfg) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorKind::InvalidArgument, "element must be a non-empty square matrix");
  if (!a.allFinite()) throw Error(ErrorKind::InvalidArgument, "element has non-finite entries");
  const double residual = algebraic_residual(a, roots);
  if (!(residual <= cfg.residual_tol))
    throw Error(ErrorKind::NotAlgebraic, "||p(a)|| = " + format_residual(residual), residual);
  const bool sa = hermitian_defect(a) <= cfg.residual_tol;
  return AlgebraicElement(std::move(a), roots, residual, sa);
}

AlgebraicElement certify_scaled(Matrix a, const RootSystem& roots, const ToleranceConfig& cfg) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorKind::InvalidArgument, "element must be a non-empty square matrix");
  if (!a.allFinite()) throw Error(ErrorKind::InvalidArgument, "element has non-finite entries");
  const double scale = std::pow(1.0 + operator_norm(a), static_cast<double>(roots.size()));
  const double residual = algebraic_residual(a, roots);
  if (!(residual <= cfg.residual_tol * scale))
    throw Error(ErrorKind::NotAlgebraic,
                "relative ||p(a)|| = " + format_residual(residual / scale), residual);
  const bool sa = hermitian_defect(a) <= cfg.residual_tol * (1.0 + operator_norm(a));
  return AlgebraicElement(std::move(a), roots, residual, sa);
}

double PartitionResiduals::worst() const {
  return std::max({idempotency, annihilation, sum, hermiticity, commutation, reconstruction});
}

PartitionResiduals partition_residuals(const PartitionOfUnity& part, const Matrix* a) {
  PartitionResiduals r;
  const auto& e = part.members;
  if (e.empty()) return r;
  const Eigen::Index m = e.front().rows();
  Matrix total = Matrix::Zero(m, m);
  Matrix recombined = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < e.size(); ++i) {
    r.idempotency = std::max(r.idempotency, operator_norm((e[i] * e[i] - e[i]).eval()));
    r.hermiticity = std::max(r.hermiticity, hermitian_defect(e[i]));
    for (std::size_t j = 0; j < e.size(); ++j)
      if (i != j) r.annihilation = std::max(r.annihilation, operator_norm((e[i] * e[j]).eval()));
    total += e[i];
    recombined += part.roots[i] * e[i];
    if (a) r.commutation = std::max(r.commutation, operator_norm((e[i] * *a - *a * e[i]).eval()));
  }
  r.sum = operator_norm((total - Matrix::Identity(m, m)).eval());
  if (a) r.reconstruction = operator_norm((recombined - *a).eval());
  return r;
}

PartitionOfUnity spectral_resolution(const AlgebraicElement& el, const ToleranceConfig& cfg) {
  const auto& roots = el.roots();
  const Matrix& a = el.matrix();
  const Eigen::Index m = a.rows();
  const std::size_t n = roots.size();

  PartitionOfUnity part{{}, roots, el.self_adjoint() && roots.all_real()};
  part.members.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    std::stable_sort(others.begin(), others.end(), [&](std::size_t x, std::size_t y) {
      return std::abs(roots[i] - roots[x]) < std::abs(roots[i] - roots[y]);
    });
    Matrix e = Matrix::Identity(m, m);
    for (std::size_t j : others) {
      Matrix factor = a;
      factor.diagonal().array() -= roots[j];
      e = (e * factor / (roots[i] - roots[j])).eval();
    }
    part.members.push_back(std::move(e));
  }

  const PartitionResiduals res = partition_residuals(part, &a);
  const double gap_factor = n > 1 ? std::pow(std::max(1.0, 1.0 / roots.min_gap()),
                                             static_cast<double>(n - 1))
                                  : 1.0;
  const double tol = cfg.residual_tol * (1.0 + operator_norm(a)) * gap_factor;
  double worst = std::max({res.idempotency, res.annihilation, res.sum, res.commutation,
                           res.reconstruction});
  if (part.self_adjoint) worst = std::max(worst, res.hermiticity);
  if (!(worst <= tol))
    throw Error(ErrorKind::ResolutionResidualExceeded,
                "partition invariants off by " + format_residual(worst), worst);
  return part;
}

AlgebraicElement recombine(const PartitionOfUnity& part, const ToleranceConfig& cfg) {
  if (part.members.size() != part.roots.size())
    throw Error(ErrorKind::InvalidArgument, "partition and root system differ in length");
  const Eigen::Index m = part.members.front().rows();
  Matrix a = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < part.members.size(); ++i) a += part.roots[i] * part.members[i];
  return certify(std::move(a), part.roots, cfg);
}

namespace {

void check_signature(const ComponentSignature& sig, const RootSystem& roots) {
  if (sig.ranks.size() != roots.size())
    throw Error(ErrorKind::BadSignature, "signature length differs from the number of roots");
  int total = 0;
  for (int r : sig.ranks) {
    if (r < 0) throw Error(ErrorKind::BadSignature, "negative rank in signature");
    total += r;
  }
  if (total != sig.dim || total <= 0)
    throw Error(ErrorKind::BadSignature, "signature ranks must add up to the dimension");
}

}  // namespace

AlgebraicElement random_element(const ComponentSignature& sig, const RootSystem& roots, Rng& rng,
                                bool self_adjoint, double cond_bound, const ToleranceConfig& cfg) {
  check_signature(sig, roots);
  if (self_adjoint && !roots.all_real())
    throw Error(ErrorKind::InvalidArgument, "self-adjoint sampling needs real roots");
  const Eigen::Index m = sig.dim;

  Vector diag(m);
  Eigen::Index pos = 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (int k = 0; k < sig.ranks[i]; ++k) diag(pos++) = roots[i];

  for (std::size_t i = 0; i < roots.size(); ++i)
    if (sig.ranks[i] == m) return certify(roots[i] * Matrix::Identity(m, m), roots, cfg);

  Matrix a;
  if (self_adjoint) {
    const Matrix u = random_unitary(m, rng);
    a = u * diag.asDiagonal() * u.adjoint();
    a = (0.5 * (a + a.adjoint())).eval();
  } else {
    const Matrix u = random_unitary(m, rng);
    const Matrix v = random_unitary(m, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_cond = std::log(std::max(cond_bound, 1.0));
    Vector s(m), s_inv(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double sv = std::exp(log_cond * unit(rng));
      s(i) = sv;
      s_inv(i) = 1.0 / sv;
    }
    // s = u S v*, s^{-1} = v S^{-1} u*
    a = u * s.asDiagonal() * (v.adjoint() * diag.asDiagonal() * v) * s_inv.asDiagonal() *
        u.adjoint();
  }
  return certify(std::move(a), roots, cfg);
}

AlgebraicElement random_element(const ComponentSignature& sig, const RootSystem& roots,
                                std::uint64_t seed, bool self_adjoint, double cond_bound,
                                const ToleranceConfig& cfg) {
  Rng rng(seed);
  return random_element(sig, roots, rng, self_adjoint, cond_bound, cfg);
}

}  // namespace algpaths
