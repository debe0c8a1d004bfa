#pragma once

namespace algpaths {

/// Every tolerance used by the certification chain.
struct ToleranceConfig {
  double residual_tol = 1e-9;
  double rank_rel_tol = 1e-10;
  double invertibility_margin = 0.99;

  /// Throws Error(InvalidArgument) if any field is out of range.
  void validate() const;
};

}  // namespace algpaths
