#pragma once

#include <cstdint>
#include <vector>

namespace sac {
namespace classify {

struct SmoteResult {
  std::vector<std::vector<double>> X;  // originals first, unchanged
  std::vector<int> y;                  // 0/1 class labels
  size_t synthetic_count = 0;
};

/// Oversamples the minority class with interpolated neighbors until the
/// class counts are equal: s = x + u * (nn - x), u in [0,1), nn one of the
/// k nearest minority neighbors of x. k shrinks to minority_count - 1 when
/// needed; a lone minority point is duplicated. Deterministic for a given
/// seed. Throws std::invalid_argument unless exactly two classes are
/// present and rows share one width.
SmoteResult smote(const std::vector<std::vector<double>>& X,
                  const std::vector<int>& y, int k, uint64_t seed);

}  // namespace classify
}  // namespace sac
