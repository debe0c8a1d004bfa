#pragma once

// Connected components of the algebraic elements of B(C^m) with a fixed root
// system: classification by rank signature, centrality/isolation, complex
// lines through non-central elements, and randomized distance probes between
// two components.

#include <cstdint>
#include <utility>
#include <vector>

#include "algpaths/algebraic.hpp"
#include "algpaths/signature.hpp"

namespace algpaths {

/// Ranks of the spectral idempotents. Throws RankAmbiguous when a singular
/// value sits within a factor 10 of the rank threshold, or the ranks do not
/// add up to m.
ComponentSignature signature(const AlgebraicElement& el, const ToleranceConfig& cfg = {});
ComponentSignature signature(const PartitionOfUnity& part, const ToleranceConfig& cfg = {});

/// Equal signatures. Throws DimMismatch / RootMismatch.
bool same_component(const AlgebraicElement& x, const AlgebraicElement& y,
                    const ToleranceConfig& cfg = {});

/// The component is a single point iff the element is central, i.e. lambda * 1.
bool is_isolated(const AlgebraicElement& el, const ToleranceConfig& cfg = {});

/// Independent centrality test: ||[a, E_ij]|| <= tol for every matrix unit.
bool commutes_with_matrix_units(const Matrix& a, double tol);

struct LineWitness {
  AlgebraicElement base;
  Matrix direction;
  /// Largest coefficient norm of p(base + t direction).
  double certificate = 0.0;
  /// Which e_i E_kl e_j produced the direction.
  int i = 0, j = 0, k = 0, l = 0;
};

/// Relative size below which a candidate e_i E_kl e_j counts as zero.
inline constexpr double kLineCandidateRelTol = 1e-6;

/// Direction b (unit operator norm) with p(a0 + t b) == 0 identically.
/// Candidates b = e_i E_kl e_j, i != j, scanned lexicographically.
/// Throws CentralElement for isolated inputs, SearchExhausted if no
/// candidate is nonzero or the first one fails certification.
LineWitness line_direction(const AlgebraicElement& el, const ToleranceConfig& cfg = {});

struct DistanceScanReport {
  ComponentSignature sig1, sig2;
  double best_distance = 0.0;
  std::pair<AlgebraicElement, AlgebraicElement> witness;
  int restarts = 0;
  std::uint64_t seed = 0;
  /// min_{i != j} |lambda_i - lambda_j|, the conjectured lower bound.
  double conjecture_bound = 0.0;
  /// Index of the restart that produced the witness.
  int best_restart = 0;
};

struct DistanceScanOptions {
  int inner_iterations = 200;
  double initial_step = 0.5;
  double cond_bound = 20.0;
  /// 0 selects ALGPATHS_THREADS or 1.
  unsigned threads = 0;
};

/// Random-restart local search for the smallest ||x - y|| with x in the
/// component sig1 and y in sig2. Moves are conjugations, so iterates never
/// leave their components. This only ever finds upper bounds on the
/// distance. Throws BadSignature.
DistanceScanReport distance_scan(const ComponentSignature& sig1, const ComponentSignature& sig2,
                                 const RootSystem& roots, int budget, std::uint64_t seed,
                                 bool self_adjoint, const DistanceScanOptions& options = {},
                                 const ToleranceConfig& cfg = {});

/// Worker count from the ALGPATHS_THREADS environment variable (default 1).
unsigned default_thread_count();

}  // namespace algpaths
