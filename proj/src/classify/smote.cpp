#include "sac/classify/smote.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sac/rng.hpp"

namespace sac {
namespace classify {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

SmoteResult smote(const std::vector<std::vector<double>>& X,
                  const std::vector<int>& y, int k, uint64_t seed) {
  if (X.size() != y.size())
    throw std::invalid_argument("smote: X and y sizes differ");
  if (X.empty()) throw std::invalid_argument("smote: empty input");
  const size_t width = X[0].size();
  for (const auto& row : X)
    if (row.size() != width)
      throw std::invalid_argument("smote: rows have differing widths");

  size_t count0 = 0, count1 = 0;
  for (int label : y) {
    if (label == 0) ++count0;
    else if (label == 1) ++count1;
    else throw std::invalid_argument("smote: labels must be 0 or 1");
  }
  if (count0 == 0 || count1 == 0)
    throw std::invalid_argument("smote: both classes must be present");

  SmoteResult result{X, y, 0};
  if (count0 == count1) return result;

  const int minority = count1 < count0 ? 1 : 0;
  const size_t need = (count1 < count0 ? count0 - count1 : count1 - count0);

  std::vector<size_t> minority_rows;
  for (size_t i = 0; i < y.size(); ++i)
    if (y[i] == minority) minority_rows.push_back(i);
  const size_t m = minority_rows.size();

  // Neighbor lists among minority points only, (distance, index) order.
  const size_t kk = std::min<size_t>(size_t(std::max(k, 1)), m > 0 ? m - 1 : 0);
  std::vector<std::vector<size_t>> neighbors(m);
  if (kk > 0) {
    for (size_t a = 0; a < m; ++a) {
      std::vector<std::pair<double, size_t>> dist;
      dist.reserve(m - 1);
      for (size_t b = 0; b < m; ++b) {
        if (b == a) continue;
        dist.push_back({squared_distance(X[minority_rows[a]], X[minority_rows[b]]), b});
      }
      std::sort(dist.begin(), dist.end());
      for (size_t j = 0; j < kk; ++j) neighbors[a].push_back(dist[j].second);
    }
  }

  SplitMix64 rng(seed);
  for (size_t s = 0; s < need; ++s) {
    const size_t base = s % m;
    const std::vector<double>& x = X[minority_rows[base]];
    std::vector<double> synth(width);
    if (kk == 0) {
      synth = x;  // lone minority point: duplicate it
    } else {
      const size_t nn_pos = neighbors[base][rng.next_index(kk)];
      const std::vector<double>& nn = X[minority_rows[nn_pos]];
      const double u = rng.next_double();
      for (size_t i = 0; i < width; ++i) synth[i] = x[i] + u * (nn[i] - x[i]);
    }
    result.X.push_back(std::move(synth));
    result.y.push_back(minority);
    ++result.synthetic_count;
  }
  return result;
}

}  // namespace classify
}  // namespace sac
