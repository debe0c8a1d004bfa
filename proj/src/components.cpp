#include "algpaths/components.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <thread>

#include "algpaths/matrix_polynomial.hpp"

namespace algpaths {

ComponentSignature signature(const PartitionOfUnity& part, const ToleranceConfig& cfg) {
  ComponentSignature sig;
  if (part.members.empty()) return sig;
  const Eigen::Index m = part.members.front().rows();
  sig.dim = m;
  int total = 0;
  for (std::size_t i = 0; i < part.members.size(); ++i) {
    const auto sv = singular_values(part.members[i]);
    // a nonzero idempotent has norm >= 1, so a vanishing member keeps the unit scale
    const double threshold = cfg.rank_rel_tol * std::max(1.0, sv(0)) * static_cast<double>(m);
    int r = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) > threshold / 10.0 && sv(k) < threshold * 10.0)
        throw Error(ErrorKind::RankAmbiguous,
                    "singular value " + format_residual(sv(k)) + " of e_" + std::to_string(i) +
                        " is too close to the rank threshold",
                    sv(k));
      if (sv(k) > threshold) ++r;
    }
    sig.ranks.push_back(r);
    total += r;
  }
  if (total != m)
    throw Error(ErrorKind::RankAmbiguous,
                "idempotent ranks add up to " + std::to_string(total) + ", not " + std::to_string(m));
  return sig;
}

ComponentSignature signature(const AlgebraicElement& el, const ToleranceConfig& cfg) {
  return signature(spectral_resolution(el, cfg), cfg);
}

bool same_component(const AlgebraicElement& x, const AlgebraicElement& y, const ToleranceConfig& cfg) {
  if (x.dim() != y.dim()) throw Error(ErrorKind::DimMismatch, "elements differ in dimension");
  if (!(x.roots() == y.roots())) throw Error(ErrorKind::RootMismatch, "elements use different roots");
  return signature(x, cfg) == signature(y, cfg);
}

bool is_isolated(const AlgebraicElement& el, const ToleranceConfig& cfg) {
  const auto sig = signature(el, cfg);
  return std::any_of(sig.ranks.begin(), sig.ranks.end(), [&](int r) { return r == sig.dim; });
}

bool commutes_with_matrix_units(const Matrix& a, double tol) {
  const Eigen::Index m = a.rows();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      // a E_ij has column j = a(:, i); E_ij a has row i = a(j, :)
      Matrix c = Matrix::Zero(m, m);
      c.col(j) += a.col(i);
      c.row(i) -= a.row(j);
      if (operator_norm(c) > tol) return false;
    }
  return true;
}

LineWitness line_direction(const AlgebraicElement& el, const ToleranceConfig& cfg) {
  if (is_isolated(el, cfg))
    throw Error(ErrorKind::CentralElement, "a central element lies on no line in its component");
  const PartitionOfUnity part = spectral_resolution(el, cfg);
  const auto& e = part.members;
  const int n = static_cast<int>(e.size());
  const Eigen::Index m = el.dim();

  const ComponentSignature sig = signature(part, cfg);
  std::vector<double> norms;
  for (const auto& ei : e) norms.push_back(operator_norm(ei));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || sig.ranks[i] == 0 || sig.ranks[j] == 0) continue;
      const double floor = kLineCandidateRelTol * norms[i] * norms[j];
      for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < m; ++l) {
          // e_i E_kl e_j is the outer product of column k of e_i and row l of e_j
          const double size = e[i].col(k).norm() * e[j].row(l).norm();
          if (!(size > floor)) continue;
          Matrix b = e[i].col(k) * e[j].row(l);
          b /= operator_norm(b);
          const MatPoly q =
              matpoly_compose_p(part.roots.coefficients(), MatPoly::line(el.matrix(), b));
          const ZeroTest zt = matpoly_is_zero(q, cfg, operator_norm(el.matrix()));
          if (!zt.is_zero)
            throw Error(ErrorKind::CertificationFailed,
                        "line candidate fails the polynomial identity by " +
                            format_residual(zt.max_coeff_norm),
                        zt.max_coeff_norm);
          return LineWitness{el, std::move(b), zt.max_coeff_norm, i, j, static_cast<int>(k),
                             static_cast<int>(l)};
        }
    }
  throw Error(ErrorKind::SearchExhausted, "every e_i E_kl e_j vanished for a non-central element");
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("ALGPATHS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

void check_scan_signature(const ComponentSignature& sig, const RootSystem& roots) {
  if (sig.ranks.size() != roots.size())
    throw Error(ErrorKind::BadSignature, "signature length differs from the number of roots");
  int total = 0;
  for (int r : sig.ranks) {
    if (r < 0) throw Error(ErrorKind::BadSignature, "negative rank");
    total += r;
  }
  if (total != sig.dim || total <= 0) throw Error(ErrorKind::BadSignature, "ranks must add up to dim");
}

struct RestartOutcome {
  double distance = std::numeric_limits<double>::infinity();
  int index = -1;
  Matrix x, y;
};

bool better(const RestartOutcome& lhs, const RestartOutcome& rhs) {
  if (lhs.index < 0) return false;
  if (rhs.index < 0) return true;
  if (lhs.distance != rhs.distance) return lhs.distance < rhs.distance;
  return lhs.index < rhs.index;
}

// p-residual in Frobenius norm, an upper bound for the operator norm
double cheap_residual(const Matrix& a, const RootSystem& roots) {
  return poly_eval_scalar_coeffs(roots.coefficients(), a).norm();
}

RestartOutcome run_restart(const ComponentSignature& sig1, const ComponentSignature& sig2,
                           const RootSystem& roots, std::uint64_t seed, int index, bool self_adjoint,
                           const DistanceScanOptions& opt, const ToleranceConfig& cfg) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  Matrix x = random_element(sig1, roots, rng, self_adjoint, opt.cond_bound, cfg).matrix();
  Matrix y = random_element(sig2, roots, rng, self_adjoint, opt.cond_bound, cfg).matrix();
  const Eigen::Index m = x.rows();
  double dist = operator_norm((x - y).eval());
  double step = opt.initial_step;

  for (int it = 0; it < opt.inner_iterations; ++it) {
    Matrix& moving = (it % 2 == 0) ? x : y;
    const Matrix& fixed = (it % 2 == 0) ? y : x;
    Matrix candidate;
    if (self_adjoint) {
      const Matrix h = random_hermitian(m, rng);
      const Matrix u = mat_exp((Scalar(0, step) * h).eval());
      candidate = u * moving * u.adjoint();
      candidate = (0.5 * (candidate + candidate.adjoint())).eval();
    } else {
      Matrix z = random_gaussian(m, rng);
      z /= z.norm();
      const Matrix g = Matrix::Identity(m, m) + step * z;
      candidate = g * moving * g.inverse();
    }
    const double d = operator_norm((candidate - fixed).eval());
    if (d < dist && cheap_residual(candidate, roots) <= cfg.residual_tol) {
      moving = std::move(candidate);
      dist = d;
    } else {
      step *= 0.5;
    }
  }
  return {dist, index, std::move(x), std::move(y)};
}

}  // namespace

DistanceScanReport distance_scan(const ComponentSignature& sig1, const ComponentSignature& sig2,
                                 const RootSystem& roots, int budget, std::uint64_t seed,
                                 bool self_adjoint, const DistanceScanOptions& options,
                                 const ToleranceConfig& cfg) {
  check_scan_signature(sig1, roots);
  check_scan_signature(sig2, roots);
  if (sig1.dim != sig2.dim) throw Error(ErrorKind::BadSignature, "signatures differ in dimension");
  if (sig1 == sig2) throw Error(ErrorKind::BadSignature, "signatures must name distinct components");
  if (budget < 1) throw Error(ErrorKind::InvalidArgument, "budget must be positive");
  if (self_adjoint && !roots.all_real())
    throw Error(ErrorKind::InvalidArgument, "self-adjoint scans need real roots");

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads ? options.threads : default_thread_count(),
                                      static_cast<unsigned>(budget)));
  std::vector<RestartOutcome> best(threads);
  std::vector<std::exception_ptr> failures(threads);
  auto worker = [&](unsigned t) {
    try {
      for (int k = static_cast<int>(t); k < budget; k += static_cast<int>(threads)) {
        RestartOutcome r = run_restart(sig1, sig2, roots, seed, k, self_adjoint, options, cfg);
        if (better(r, best[t])) best[t] = std::move(r);
      }
    } catch (...) {
      failures[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  RestartOutcome winner;
  for (auto& b : best)
    if (better(b, winner)) winner = std::move(b);

  return DistanceScanReport{
      sig1,
      sig2,
      winner.distance,
      {certify(winner.x, roots, cfg), certify(winner.y, roots, cfg)},
      budget,
      seed,
      roots.min_gap(),
      winner.index,
  };
}

}  // namespace algpaths
