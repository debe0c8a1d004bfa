#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace algpaths {

/// Rank of each spectral idempotent, in root order. In B(C^m) two elements
/// with the same roots lie in the same connected component exactly when
/// their signatures agree.
struct ComponentSignature {
  std::vector<int> ranks;
  Eigen::Index dim = 0;

  friend bool operator==(const ComponentSignature&, const ComponentSignature&) = default;

  /// "1,2" style rendering used by the CLI and CSV output.
  std::string to_string() const;
  static ComponentSignature parse(const std::string& text);
  static ComponentSignature from_ranks(std::vector<int> ranks);
};

}  // namespace algpaths
