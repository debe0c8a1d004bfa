#pragma once

#include <cstdint>
#include <random>

#include "algpaths/matkernel.hpp"

namespace algpaths {

using Rng = std::mt19937_64;

/// Seed for stream `index` under `seed`; restart k of a scan uses
/// derive_seed(seed, k) so parallel and serial runs see the same draws.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Entries i.i.d. standard complex Gaussian.
Matrix random_gaussian(Eigen::Index m, Rng& rng);

/// Haar-distributed unitary (QR of a Gaussian with phase correction).
Matrix random_unitary(Eigen::Index m, Rng& rng);

/// Random Hermitian matrix with unit Frobenius norm.
Matrix random_hermitian(Eigen::Index m, Rng& rng);

/// u diag(s) v* with singular values log-uniform in [1, cond_bound], so the
/// condition number never exceeds cond_bound.
Matrix random_invertible(Eigen::Index m, double cond_bound, Rng& rng);

}  // namespace algpaths
