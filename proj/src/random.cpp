#include "algpaths/random.hpp"

#include <cmath>

namespace algpaths {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a combination of both words
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix random_gaussian(Eigen::Index m, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Scalar(re, im) / std::sqrt(2.0);
    }
  return g;
}

Matrix random_unitary(Eigen::Index m, Rng& rng) {
  const Matrix g = random_gaussian(m, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

Matrix random_hermitian(Eigen::Index m, Rng& rng) {
  const Matrix g = random_gaussian(m, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  const double n = h.norm();
  if (n > 0) h /= n;
  return h;
}

Matrix random_invertible(Eigen::Index m, double cond_bound, Rng& rng) {
  const Matrix u = random_unitary(m, rng);
  const Matrix v = random_unitary(m, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_cond = std::log(std::max(cond_bound, 1.0));
  Eigen::VectorXd s(m);
  for (Eigen::Index i = 0; i < m; ++i) s(i) = std::exp(log_cond * unit(rng));
  return u * s.cast<Scalar>().asDiagonal() * v.adjoint();
}

}  // namespace algpaths
