#include "algpaths/paths.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "algpaths/components.hpp"
#include "algpaths/random.hpp"
#include "optimize.hpp"

namespace algpaths {

namespace {

constexpr double kMinInverseCondition = 1e-6;
constexpr double kPhaseClearance = 1e-6;
constexpr int kMixerAttempts = 12;

Matrix identity(Eigen::Index m) { return Matrix::Identity(m, m); }

void require_same_component(const AlgebraicElement& a, const AlgebraicElement& b,
                            const ToleranceConfig& cfg) {
  if (!same_component(a, b, cfg))
    throw Error(ErrorKind::NotSameComponent, "endpoints have different signatures");
}

// Mixers M for w = sum f_i M e_i: identity, then a fixed real skew
// perturbation, then seeded random ones.
Matrix mixer(Eigen::Index m, int attempt) {
  if (attempt == 0) return identity(m);
  if (attempt == 1) {
    Matrix k = identity(m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        if (i < j) k(i, j) = 1.0;
        else if (i > j) k(i, j) = -1.0;
    return k;
  }
  Rng rng(derive_seed(0x6d69786572ULL, static_cast<std::uint64_t>(attempt)));
  Matrix z = random_gaussian(m, rng);
  return identity(m) + z / z.norm();
}

double endpoint_tolerance(const ToleranceConfig& cfg, const Matrix& target) {
  return cfg.residual_tol * (1.0 + operator_norm(target));
}

// Hermitian K with e^{iK} = u on the principal branch; reports how close the
// nearest eigenphase comes to +-pi.
Matrix hermitian_log_of_unitary(const Matrix& u, double& phase_clearance) {
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  const Eigen::Index m = u.rows();
  Eigen::VectorXd phases(m);
  phase_clearance = std::numbers::pi;
  for (Eigen::Index i = 0; i < m; ++i) {
    phases(i) = std::arg(t(i, i));
    phase_clearance = std::min(phase_clearance, std::numbers::pi - std::abs(phases(i)));
  }
  Matrix k = q * phases.cast<Scalar>().asDiagonal() * q.adjoint();
  return 0.5 * (k + k.adjoint());
}

// log of a positive definite Hermitian matrix
Matrix hermitian_log_of_positive(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd vals = es.eigenvalues();
  if (vals.minCoeff() <= 0.0)
    throw Error(ErrorKind::FactorizationFailed, "positive polar factor is singular");
  const Eigen::VectorXd logs = vals.array().log();
  Matrix c = es.eigenvectors() * logs.cast<Scalar>().asDiagonal() * es.eigenvectors().adjoint();
  return 0.5 * (c + c.adjoint());
}

}  // namespace

// ---------------------------------------------------------------------------
// Path evaluation

Matrix ExpSimilarityPath::similarity(double t) const {
  const Eigen::Index m = base.dim();
  Matrix g = identity(m);
  for (const auto& c : generators) {
    const Matrix arg = self_adjoint_mode ? Matrix(Scalar(0, t) * c) : Matrix(t * c);
    g = (mat_exp(arg) * g).eval();
  }
  return g;
}

Matrix ExpSimilarityPath::at(double t) const {
  if (t == 0.0) return base.matrix();
  const Matrix g = similarity(t);
  if (self_adjoint_mode) return g * base.matrix() * g.adjoint();
  return g * base.matrix() * g.partialPivLu().inverse();
}

Matrix PolygonalPath::at(double t) const {
  if (breakpoints.empty()) return {};
  const std::size_t k = segments();
  if (k == 0) return breakpoints.front().matrix();
  const double s = std::clamp(t, 0.0, 1.0) * static_cast<double>(k);
  const std::size_t idx = std::min(static_cast<std::size_t>(s), k - 1);
  const double tau = s - static_cast<double>(idx);
  return (1.0 - tau) * breakpoints[idx].matrix() + tau * breakpoints[idx + 1].matrix();
}

// ---------------------------------------------------------------------------
// Similarity constructions

Matrix matching_similarity(const PartitionOfUnity& from, const PartitionOfUnity& to,
                           const Matrix* mix) {
  const Eigen::Index m = from.members.front().rows();
  Matrix w = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < from.members.size(); ++i)
    w += mix ? Matrix(to.members[i] * *mix * from.members[i])
             : Matrix(to.members[i] * from.members[i]);
  return w;
}

std::vector<Matrix> unitary_log_factors(const Matrix& u, std::uint64_t seed) {
  double clearance = 0.0;
  Matrix k = hermitian_log_of_unitary(u, clearance);
  if (clearance >= kPhaseClearance) return {k};

  // eigenvalue at -1: peel off a small random unitary first
  Rng rng(derive_seed(seed, 0x7069ULL));
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Matrix h = 0.5 * random_hermitian(u.rows(), rng);
    const Matrix v = mat_exp(Matrix(Scalar(0, 1) * h));
    double c2 = 0.0;
    Matrix k2 = hermitian_log_of_unitary(u * v.adjoint(), c2);
    if (c2 >= 1e-3) return {h, k2};
  }
  throw Error(ErrorKind::FactorizationFailed, "could not split the unitary factor away from -1");
}

ExpSimilarityPath connect_exp_local(const AlgebraicElement& a, const AlgebraicElement& b,
                                    const ToleranceConfig& cfg) {
  require_same_component(a, b, cfg);
  const PartitionOfUnity e = spectral_resolution(a, cfg);
  const PartitionOfUnity f = spectral_resolution(b, cfg);
  const Matrix w = matching_similarity(e, f);
  const double dist = operator_norm((w - identity(a.dim())).eval());
  if (!(dist < cfg.invertibility_margin))
    throw Error(ErrorKind::NotLocallyClose,
                "||w - 1|| = " + format_residual(dist) + " exceeds the invertibility margin", dist);
  return ExpSimilarityPath{a, b.matrix(), {mat_log_near_identity(w, cfg)}, false};
}

ExpSimilarityPath connect_exp_global(const AlgebraicElement& a, const AlgebraicElement& b,
                                     const ToleranceConfig& cfg) {
  require_same_component(a, b, cfg);
  const Eigen::Index m = a.dim();
  const PartitionOfUnity e = spectral_resolution(a, cfg);
  const PartitionOfUnity f = spectral_resolution(b, cfg);

  {
    const Matrix w = matching_similarity(e, f);
    if (operator_norm((w - identity(m)).eval()) < cfg.invertibility_margin)
      return connect_exp_local(a, b, cfg);
  }

  const double tol = endpoint_tolerance(cfg, b.matrix());
  for (int attempt = 0; attempt < kMixerAttempts; ++attempt) {
    const Matrix mix = mixer(m, attempt);
    const Matrix w = matching_similarity(e, f, &mix);
    if (inverse_condition(w) < kMinInverseCondition) continue;
    const auto polar = polar_decomposition(w);
    std::vector<Matrix> gens{hermitian_log_of_positive(polar.positive)};
    std::vector<Matrix> ks;
    try {
      ks = unitary_log_factors(polar.unitary, static_cast<std::uint64_t>(attempt));
    } catch (const Error&) {
      continue;
    }
    for (const auto& k : ks) gens.push_back(Scalar(0, 1) * k);
    ExpSimilarityPath path{a, b.matrix(), std::move(gens), false};
    if (operator_norm((path.at(1.0) - b.matrix()).eval()) <= tol) return path;
  }
  throw Error(ErrorKind::FactorizationFailed, "no invertible matching similarity reached the endpoint");
}

ExpSimilarityPath connect_selfadjoint(const AlgebraicElement& a, const AlgebraicElement& b,
                                      const ToleranceConfig& cfg) {
  if (!a.self_adjoint() || !b.self_adjoint())
    throw Error(ErrorKind::NotSelfAdjoint, "both endpoints must be self-adjoint");
  if (!a.roots().all_real())
    throw Error(ErrorKind::NotSelfAdjoint, "self-adjoint paths need a real root system");
  require_same_component(a, b, cfg);
  const Eigen::Index m = a.dim();
  const PartitionOfUnity e = spectral_resolution(a, cfg);
  const PartitionOfUnity f = spectral_resolution(b, cfg);

  // For orthogonal projections, w = sum f_i M e_i has |w| commuting with
  // every e_i, so its unitary polar factor maps range(e_i) onto range(f_i).
  const double tol = endpoint_tolerance(cfg, b.matrix());
  for (int attempt = 0; attempt < kMixerAttempts; ++attempt) {
    const Matrix mix = mixer(m, attempt);
    const Matrix w = matching_similarity(e, f, &mix);
    if (inverse_condition(w) < kMinInverseCondition) continue;
    const Matrix u = polar_decomposition(w).unitary;
    std::vector<Matrix> ks;
    try {
      ks = unitary_log_factors(u, static_cast<std::uint64_t>(attempt));
    } catch (const Error&) {
      continue;
    }
    ExpSimilarityPath path{a, b.matrix(), std::move(ks), true};
    if (operator_norm((path.at(1.0) - b.matrix()).eval()) <= tol) return path;
  }
  throw Error(ErrorKind::FactorizationFailed, "no unitary intertwiner reached the endpoint");
}

// ---------------------------------------------------------------------------
// Polygonal paths

namespace {

struct AdaptedFrame {
  Matrix basis;                      // columns: bases of range(e_1), ..., range(e_n)
  std::vector<Eigen::Index> offset;  // block offsets, size n + 1
};

AdaptedFrame adapted_frame(const PartitionOfUnity& part, const ComponentSignature& sig) {
  const Eigen::Index m = sig.dim;
  AdaptedFrame frame{Matrix(m, m), {0}};
  for (std::size_t i = 0; i < part.members.size(); ++i) {
    const Eigen::Index r = sig.ranks[i];
    if (r > 0) {
      Eigen::JacobiSVD<Matrix> svd(part.members[i], Eigen::ComputeFullU);
      frame.basis.middleCols(frame.offset.back(), r) = svd.matrixU().leftCols(r);
    }
    frame.offset.push_back(frame.offset.back() + r);
  }
  return frame;
}

// Block LDU without pivoting; returns unit lower L and U' = D U D^{-1}.
bool block_lu(const Matrix& w, const std::vector<Eigen::Index>& off, Matrix& lower, Matrix& upper) {
  const std::size_t n = off.size() - 1;
  const Eigen::Index m = w.rows();
  Matrix work = w;
  lower = identity(m);
  Matrix unit_upper = identity(m);
  std::vector<Matrix> pivots(n);
  auto blk = [&](Matrix& x, std::size_t i, std::size_t j) {
    return x.block(off[i], off[j], off[i + 1] - off[i], off[j + 1] - off[j]);
  };
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Index rk = off[k + 1] - off[k];
    if (rk == 0) continue;
    Matrix pivot = blk(work, k, k);
    if (inverse_condition(pivot) < 1e-10) return false;
    const Eigen::PartialPivLU<Matrix> lu(pivot);
    const Matrix pivot_inv = lu.inverse();
    pivots[k] = pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (off[i + 1] == off[i]) continue;
      // L_ik = A_ik D_k^{-1}
      blk(lower, i, k) = Matrix(blk(work, i, k)) * pivot_inv;
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (off[j + 1] == off[j]) continue;
      blk(unit_upper, k, j) = lu.solve(Matrix(blk(work, k, j)));
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        if (off[i + 1] == off[i] || off[j + 1] == off[j]) continue;
        blk(work, i, j) -= Matrix(blk(lower, i, k)) * pivot * Matrix(blk(unit_upper, k, j));
      }
  }
  upper = identity(m);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = k + 1; j < n; ++j) {
      if (off[k + 1] == off[k] || off[j + 1] == off[j]) continue;
      const Matrix dj = pivots[j];
      blk(upper, k, j) =
          Matrix(pivots[k] * Matrix(blk(unit_upper, k, j))) * dj.partialPivLu().inverse();
    }
  return true;
}

std::optional<PolygonalPath> polygonal_by_factorization(const AlgebraicElement& a,
                                                        const AlgebraicElement& b,
                                                        const ToleranceConfig& cfg) {
  const Eigen::Index m = a.dim();
  const PartitionOfUnity e = spectral_resolution(a, cfg);
  const PartitionOfUnity f = spectral_resolution(b, cfg);
  const ComponentSignature sig = signature(e, cfg);
  const AdaptedFrame frame = adapted_frame(e, sig);
  const auto frame_lu = frame.basis.partialPivLu();
  const std::size_t n = e.members.size();
  const double end_tol = endpoint_tolerance(cfg, b.matrix());

  for (int attempt = 0; attempt < kMixerAttempts; ++attempt) {
    const Matrix mix = mixer(m, attempt);
    const Matrix w = matching_similarity(e, f, &mix);
    if (inverse_condition(w) < kMinInverseCondition) continue;
    const Matrix w_frame = frame_lu.solve(Matrix(w * frame.basis));
    Matrix lower, upper;
    if (!block_lu(w_frame, frame.offset, lower, upper)) continue;

    // g = L U' = (1 + B_1) ... (1 + B_{n-1}) (1 + A_n) ... (1 + A_2)
    std::vector<Matrix> moves;
    // block column j of the strictly lower (below) or strictly upper part;
    // empty blocks give no factor, numerically zero ones a constant segment
    auto push_column_part = [&](const Matrix& x, std::size_t j, bool below) {
      const Eigen::Index cols = frame.offset[j + 1] - frame.offset[j];
      const Eigen::Index r0 = below ? frame.offset[j + 1] : 0;
      const Eigen::Index r1 = below ? m : frame.offset[j];
      if (cols == 0 || r1 == r0) return;
      Matrix out = Matrix::Zero(m, m);
      out.block(r0, frame.offset[j], r1 - r0, cols) = x.block(r0, frame.offset[j], r1 - r0, cols);
      moves.push_back(std::move(out));
    };
    for (std::size_t j = 0; j + 1 < n; ++j) push_column_part(lower, j, true);
    for (std::size_t j = n; j-- > 1;) push_column_part(upper, j, false);

    const Matrix frame_inv = frame_lu.inverse();
    std::vector<AlgebraicElement> points{a};
    Matrix g = identity(m);
    bool ok = true;
    for (const Matrix& move : moves) {
      g = (g * (identity(m) + frame.basis * move * frame_inv)).eval();
      try {
        points.push_back(certify(g * a.matrix() * g.partialPivLu().inverse(), a.roots(), cfg));
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (operator_norm((points.back().matrix() - b.matrix()).eval()) > end_tol) continue;
    if (points.size() == 1) points.push_back(b);
    else points.back() = b;

    PolygonalPath path{std::move(points), {}};
    bool certified = true;
    for (std::size_t k = 0; k + 1 < path.breakpoints.size(); ++k) {
      const Matrix& x0 = path.breakpoints[k].matrix();
      const Matrix& x1 = path.breakpoints[k + 1].matrix();
      const ZeroTest zt = matpoly_is_zero(
          matpoly_compose_p(a.roots().coefficients(), MatPoly::segment(x0, x1)), cfg,
          std::max(operator_norm(x0), operator_norm(x1)));
      path.segment_certificates.push_back(zt.max_coeff_norm);
      certified = certified && zt.is_zero;
    }
    if (certified) return path;
  }
  return std::nullopt;
}

PolygonalPath connect_polygonal_impl(const AlgebraicElement& a, const AlgebraicElement& b,
                                     const ToleranceConfig& cfg, int depth) {
  if (a.matrix() == b.matrix()) return PolygonalPath{{a}, {}};
  if (auto path = polygonal_by_factorization(a, b, cfg)) return *path;
  if (depth >= 3)
    throw Error(ErrorKind::SubspaceSplitFailed, "no certified polygonal split after midpoint retries");
  // insert a midpoint on a similarity path and split the problem
  const ExpSimilarityPath bridge = connect_exp_global(a, b, cfg);
  const AlgebraicElement mid = certify(bridge.at(0.5), a.roots(), cfg);
  PolygonalPath first = connect_polygonal_impl(a, mid, cfg, depth + 1);
  PolygonalPath second = connect_polygonal_impl(mid, b, cfg, depth + 1);
  for (std::size_t k = 1; k < second.breakpoints.size(); ++k)
    first.breakpoints.push_back(second.breakpoints[k]);
  first.segment_certificates.insert(first.segment_certificates.end(),
                                    second.segment_certificates.begin(),
                                    second.segment_certificates.end());
  return first;
}

}  // namespace

PolygonalPath connect_polygonal(const AlgebraicElement& a, const AlgebraicElement& b,
                                const ToleranceConfig& cfg) {
  require_same_component(a, b, cfg);
  return connect_polygonal_impl(a, b, cfg, 0);
}

// ---------------------------------------------------------------------------
// Polynomial paths

double composition_objective(const std::vector<Scalar>& p, const MatPoly& x,
                             std::vector<Matrix>* gradient) {
  const Eigen::Index m = x.dim();
  const std::size_t n = p.size() - 1;
  // Horner stack: y[n] = p_n, y[i] = y[i+1] x + p_i
  std::vector<MatPoly> y(n + 1);
  y[n] = MatPoly::constant(p[n] * identity(m));
  for (std::size_t i = n; i-- > 0;) {
    y[i] = y[i + 1] * x;
    y[i].add_identity(p[i]);
  }
  double value = 0.0;
  for (const auto& q : y[0].coeffs()) value += q.squaredNorm();
  if (!gradient) return value;

  // reverse sweep; for C = A * B: dA_a += sum_j dC_j B_{j-a}^*, dB_b += sum_j A_{j-b}^* dC_j
  gradient->assign(static_cast<std::size_t>(x.degree() + 1), Matrix::Zero(m, m));
  MatPoly bar = 2.0 * y[0];
  for (std::size_t i = 0; i < n; ++i) {
    const MatPoly& a_poly = y[i + 1];
    MatPoly a_bar(m, a_poly.degree());
    for (int j = 0; j <= bar.degree(); ++j)
      for (int al = 0; al <= a_poly.degree(); ++al) {
        const int be = j - al;
        if (be < 0 || be > x.degree()) continue;
        a_bar.coeff(al).noalias() += bar.coeff(j) * x.coeff(be).adjoint();
        (*gradient)[static_cast<std::size_t>(be)].noalias() += a_poly.coeff(al).adjoint() * bar.coeff(j);
      }
    bar = std::move(a_bar);
  }
  return value;
}

namespace {

// Unknowns: interior coefficients c_1..c_{d-1} of x(t) = a + sum c_k t^k,
// with c_d fixed by x(1) = b.
class DegreeProblem {
 public:
  DegreeProblem(const std::vector<Scalar>& p, const Matrix& a, const Matrix& b, int degree,
                bool hermitian)
      : p_(p), a_(a), b_(b), degree_(degree), hermitian_(hermitian), m_(a.rows()) {}

  Eigen::Index block_size() const { return hermitian_ ? m_ * m_ : 2 * m_ * m_; }
  Eigen::Index size() const { return (degree_ - 1) * block_size(); }

  Matrix unpack_block(const double* v) const {
    Matrix c(m_, m_);
    if (!hermitian_) {
      for (Eigen::Index j = 0; j < m_; ++j)
        for (Eigen::Index i = 0; i < m_; ++i, v += 2) c(i, j) = Scalar(v[0], v[1]);
      return c;
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      c(i, i) = *v++;
      for (Eigen::Index j = i + 1; j < m_; ++j, v += 2) {
        c(i, j) = Scalar(v[0], v[1]);
        c(j, i) = std::conj(c(i, j));
      }
    }
    return c;
  }

  void pack_block(const Matrix& c, double* v) const {
    if (!hermitian_) {
      for (Eigen::Index j = 0; j < m_; ++j)
        for (Eigen::Index i = 0; i < m_; ++i, v += 2) {
          v[0] = c(i, j).real();
          v[1] = c(i, j).imag();
        }
      return;
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      *v++ = c(i, i).real();
      for (Eigen::Index j = i + 1; j < m_; ++j, v += 2) {
        v[0] = c(i, j).real();
        v[1] = c(i, j).imag();
      }
    }
  }

  // chain rule from an entrywise gradient G (dF = Re tr(G^* dC))
  void pack_gradient(const Matrix& g, double* v) const {
    if (!hermitian_) {
      pack_block(g, v);
      return;
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      *v++ = g(i, i).real();
      for (Eigen::Index j = i + 1; j < m_; ++j, v += 2) {
        v[0] = g(i, j).real() + g(j, i).real();
        v[1] = g(i, j).imag() - g(j, i).imag();
      }
    }
  }

  MatPoly assemble(const Eigen::VectorXd& theta) const {
    std::vector<Matrix> c(static_cast<std::size_t>(degree_ + 1));
    c[0] = a_;
    Matrix last = b_ - a_;
    for (int k = 1; k < degree_; ++k) {
      c[static_cast<std::size_t>(k)] = unpack_block(theta.data() + (k - 1) * block_size());
      last -= c[static_cast<std::size_t>(k)];
    }
    c[static_cast<std::size_t>(degree_)] = last;
    return MatPoly(std::move(c));
  }

  Eigen::VectorXd parameters_of(const MatPoly& x) const {
    Eigen::VectorXd theta(size());
    for (int k = 1; k < degree_; ++k) {
      const Matrix c = k <= x.degree() ? x.coeff(k) : Matrix(Matrix::Zero(m_, m_));
      pack_block(c, theta.data() + (k - 1) * block_size());
    }
    return theta;
  }

  double value_and_gradient(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const {
    std::vector<Matrix> xbar;
    const double f = composition_objective(p_, assemble(theta), &xbar);
    grad.resize(size());
    for (int k = 1; k < degree_; ++k) {
      const Matrix g = xbar[static_cast<std::size_t>(k)] - xbar[static_cast<std::size_t>(degree_)];
      pack_gradient(g, grad.data() + (k - 1) * block_size());
    }
    return f;
  }

  // Residual vector (real/imag parts of every coefficient of p(x(t))) and
  // its Jacobian by forward-mode differentiation of the Horner recursion.
  void residual_and_jacobian(const Eigen::VectorXd& theta, Eigen::VectorXd& r,
                             Eigen::MatrixXd& jac) const {
    const MatPoly x = assemble(theta);
    const std::size_t n = p_.size() - 1;
    std::vector<MatPoly> y(n + 1);
    y[n] = MatPoly::constant(p_[n] * identity(m_));
    for (std::size_t i = n; i-- > 0;) {
      y[i] = y[i + 1] * x;
      y[i].add_identity(p_[i]);
    }
    const int qdeg = y[0].degree();
    const Eigen::Index per = 2 * m_ * m_;
    r.resize(per * (qdeg + 1));
    auto flatten = [&](const MatPoly& q, double* out) {
      for (int k = 0; k <= qdeg; ++k) {
        const Matrix zero = Matrix::Zero(m_, m_);
        const Matrix& c = k <= q.degree() ? q.coeff(k) : zero;
        for (Eigen::Index j = 0; j < m_; ++j)
          for (Eigen::Index i = 0; i < m_; ++i, out += 2) {
            out[0] = c(i, j).real();
            out[1] = c(i, j).imag();
          }
      }
    };
    flatten(y[0], r.data());

    jac.resize(r.size(), size());
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(block_size());
    for (Eigen::Index col = 0; col < size(); ++col) {
      const int k = static_cast<int>(col / block_size()) + 1;
      unit.setZero();
      unit(col % block_size()) = 1.0;
      const Matrix dc = unpack_block(unit.data());
      // dx = dc t^k - dc t^d
      MatPoly dx(m_, degree_);
      dx.coeff(k) = dc;
      dx.coeff(degree_) = -dc;
      MatPoly dy(m_, 0);
      for (std::size_t i = n; i-- > 0;) {
        MatPoly next = dy * x;
        next += y[i + 1] * dx;
        dy = std::move(next);
      }
      flatten(dy, jac.col(col).data());
    }
  }

 private:
  const std::vector<Scalar>& p_;
  Matrix a_, b_;
  int degree_;
  bool hermitian_;
  Eigen::Index m_;
};

double max_coefficient_residual(const std::vector<Scalar>& p, const MatPoly& x) {
  return matpoly_compose_p(p, x).max_coeff_norm();
}

// Degree-3 idempotent path lifted from the polygonal breakpoint r, which
// shares its kernel with e and its range with f:
//   x(t) = q + t q f (1 - q),  q = (1 - t) e + t r.
std::optional<MatPoly> lifted_polygonal_seed(const AlgebraicElement& a, const AlgebraicElement& b,
                                             const ToleranceConfig& cfg) {
  if (a.roots().size() != 2) return std::nullopt;
  try {
    const PolygonalPath poly = connect_polygonal(a, b, cfg);
    if (poly.segments() != 2) return std::nullopt;
    const Scalar l1 = a.roots()[0], l2 = a.roots()[1];
    const Eigen::Index m = a.dim();
    auto idempotent = [&](const Matrix& x) {
      Matrix e = x;
      e.diagonal().array() -= l2;
      return Matrix(e / (l1 - l2));
    };
    const Matrix e = idempotent(a.matrix());
    const Matrix r = idempotent(poly.breakpoints[1].matrix());
    const Matrix f = idempotent(b.matrix());
    const MatPoly q = MatPoly::segment(e, r);
    MatPoly one_minus_q = (-1.0) * q;
    one_minus_q.add_identity(1.0);
    const MatPoly t_poly({Matrix::Zero(m, m), identity(m)});
    MatPoly xe = q + t_poly * q * MatPoly::constant(f) * one_minus_q;
    // back to the root system: x = l2 + (l1 - l2) xe
    MatPoly x = (l1 - l2) * xe;
    x.add_identity(l2);
    // pin the endpoints exactly
    x.coeff(0) = a.matrix();
    Matrix sum = Matrix::Zero(m, m);
    for (int k = 0; k < x.degree(); ++k) sum += x.coeff(k);
    x.coeff(x.degree()) = b.matrix() - sum;
    return x;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

MinDegreeResult min_degree_search(const AlgebraicElement& a, const AlgebraicElement& b, int d_max,
                                  std::uint64_t seed, const MinDegreeOptions& options,
                                  const ToleranceConfig& cfg) {
  require_same_component(a, b, cfg);
  if (d_max < 1) throw Error(ErrorKind::InvalidArgument, "d_max must be at least 1");
  if (options.self_adjoint && (!a.self_adjoint() || !b.self_adjoint()))
    throw Error(ErrorKind::NotSelfAdjoint, "self-adjoint search needs self-adjoint endpoints");
  const double motion = operator_norm((b.matrix() - a.matrix()).eval());
  if (motion < options.min_motion)
    throw Error(ErrorKind::InvalidArgument, "endpoints are closer than the required motion");

  const auto& p = a.roots().coefficients();
  const Eigen::Index m = a.dim();
  const double f_target = 1e-2 * options.success_tol * options.success_tol;
  const std::optional<MatPoly> lifted =
      options.self_adjoint ? std::nullopt : lifted_polygonal_seed(a, b, cfg);

  MinDegreeResult result;
  for (int d = 1; d <= d_max; ++d) {
    double best = std::numeric_limits<double>::infinity();
    int used = 0;
    std::optional<MatPoly> found;

    if (d == 1) {
      const MatPoly x = MatPoly::segment(a.matrix(), b.matrix());
      best = max_coefficient_residual(p, x);
      used = 1;
      if (best <= options.success_tol) found = x;
    } else {
      const DegreeProblem problem(p, a.matrix(), b.matrix(), d, options.self_adjoint);
      auto fg = [&](const Eigen::VectorXd& th, Eigen::VectorXd& g) {
        return problem.value_and_gradient(th, g);
      };
      auto rj = [&](const Eigen::VectorXd& th, Eigen::VectorXd& r, Eigen::MatrixXd& j) {
        problem.residual_and_jacobian(th, r, j);
      };
      const double scale = (b.matrix() - a.matrix()).norm() / std::sqrt(static_cast<double>(m));
      for (int restart = 0; restart < options.restarts && !found; ++restart) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(d) * 1000003ULL +
                                      static_cast<std::uint64_t>(restart)));
        Eigen::VectorXd theta;
        if (lifted && d >= lifted->degree()) {
          theta = problem.parameters_of(*lifted);
          if (restart > 0) {
            for (Eigen::Index i = 0; i < theta.size(); ++i)
              theta(i) += 0.05 * scale * std::normal_distribution<double>(0.0, 1.0)(rng);
          }
        } else {
          theta = problem.parameters_of(MatPoly::segment(a.matrix(), b.matrix()));
          if (restart > 0) {
            const double sigma = 0.1 * std::pow(2.0, restart % 5) * std::max(scale, 1e-3);
            std::normal_distribution<double> normal(0.0, sigma);
            for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) += normal(rng);
          }
        }
        ++used;
        double f = detail::lbfgs_minimize(theta, fg, options.inner_iterations, f_target).value;
        if (f > f_target && f < 1e-4)
          f = detail::levenberg_marquardt(theta, rj, 100, f_target).value;
        const MatPoly x = problem.assemble(theta);
        const double cert = max_coefficient_residual(p, x);
        best = std::min(best, cert);
        if (cert <= options.success_tol) found = x;
      }
    }
    result.best_residual_per_degree.push_back(best);
    result.restarts_used.push_back(used);
    if (found) {
      const double cert = max_coefficient_residual(p, *found);
      result.path = PolynomialPath{*found, a.roots(), cert};
      result.degree = d;
      return result;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Certification

namespace {

std::string describe(const std::string& what, double t) {
  std::ostringstream os;
  os << what << " t=" << t;
  return os.str();
}

void note(Certificate& c, double value, const std::string& where) {
  if (value > c.worst) {
    c.worst = value;
    c.where = where;
  }
}

Certificate inspect(const ExpSimilarityPath& path, const RootSystem& roots,
                    const ToleranceConfig& cfg) {
  Certificate c;
  const double tol = cfg.residual_tol;
  bool ok = true;
  c.endpoint_error = operator_norm((path.at(1.0) - path.target).eval());
  const double end_tol = endpoint_tolerance(cfg, path.target);
  if (c.endpoint_error > end_tol) {
    ok = false;
    note(c, c.endpoint_error, "endpoint");
  }
  if (path.self_adjoint_mode)
    for (std::size_t k = 0; k < path.generators.size(); ++k) {
      const double h = hermitian_defect(path.generators[k]);
      c.hermiticity = std::max(c.hermiticity, h);
      if (h > tol) {
        ok = false;
        note(c, h, "generator " + std::to_string(k));
      }
    }
  constexpr int kSamples = 100;
  for (int s = 0; s < kSamples; ++s) {
    const double t = static_cast<double>(s) / (kSamples - 1);
    const Matrix x = path.at(t);
    const double res = algebraic_residual(x, roots);
    c.membership = std::max(c.membership, res);
    if (res > tol) {
      ok = false;
      note(c, res, describe("membership", t));
    }
    if (path.self_adjoint_mode) {
      const double h = hermitian_defect(x);
      c.hermiticity = std::max(c.hermiticity, h);
      if (h > tol) {
        ok = false;
        note(c, h, describe("self-adjointness", t));
      }
    }
  }
  c.passed = ok;
  if (ok) c.worst = std::max({c.membership, c.hermiticity});
  return c;
}

Certificate inspect(const PolygonalPath& path, const RootSystem& roots, const ToleranceConfig& cfg) {
  Certificate c;
  bool ok = !path.breakpoints.empty();
  for (std::size_t k = 0; k < path.breakpoints.size(); ++k) {
    const double res = algebraic_residual(path.breakpoints[k].matrix(), roots);
    c.membership = std::max(c.membership, res);
    if (res > cfg.residual_tol) {
      ok = false;
      note(c, res, "breakpoint " + std::to_string(k));
    }
  }
  for (std::size_t k = 0; k < path.segments(); ++k) {
    const Matrix& x0 = path.breakpoints[k].matrix();
    const Matrix& x1 = path.breakpoints[k + 1].matrix();
    const ZeroTest zt =
        matpoly_is_zero(matpoly_compose_p(roots.coefficients(), MatPoly::segment(x0, x1)), cfg,
                        std::max(operator_norm(x0), operator_norm(x1)));
    c.membership = std::max(c.membership, zt.max_coeff_norm);
    if (!zt.is_zero) {
      ok = false;
      note(c, zt.max_coeff_norm, "segment " + std::to_string(k));
    }
  }
  c.passed = ok;
  if (ok) c.worst = c.membership;
  return c;
}

Certificate inspect(const PolynomialPath& path, const RootSystem& roots, const ToleranceConfig& cfg) {
  Certificate c;
  bool ok = true;
  const MatPoly q = matpoly_compose_p(roots.coefficients(), path.x);
  double scale = 0.0;
  for (const auto& coeff : path.x.coeffs()) scale = std::max(scale, operator_norm(coeff));
  for (int k = 0; k <= q.degree(); ++k) {
    const double v = operator_norm(q.coeff(k));
    c.membership = std::max(c.membership, v);
    if (v > cfg.residual_tol * (1.0 + scale)) {
      ok = false;
      note(c, v, "coefficient " + std::to_string(k));
    }
  }
  for (double t : {0.0, 1.0}) {
    const double res = algebraic_residual(path.x(Scalar(t)), roots);
    if (res > cfg.residual_tol) {
      ok = false;
      note(c, res, describe("endpoint", t));
    }
  }
  c.passed = ok;
  if (ok) c.worst = c.membership;
  return c;
}

}  // namespace

Certificate inspect_path(const Path& path, const RootSystem& roots, const ToleranceConfig& cfg) {
  return std::visit([&](const auto& p) { return inspect(p, roots, cfg); }, path);
}

Certificate verify_path(const Path& path, const RootSystem& roots, const ToleranceConfig& cfg) {
  Certificate c = inspect_path(path, roots, cfg);
  if (!c.passed)
    throw Error(ErrorKind::CertificationFailed, "worst offender " + c.where + " = " + format_residual(c.worst),
                c.worst);
  return c;
}

}  // namespace algpaths
