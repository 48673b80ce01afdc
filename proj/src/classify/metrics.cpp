#include "sac/classify/metrics.hpp"

#include <stdexcept>

namespace sac {
namespace classify {

double f_measure(double p, double r, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * p + r;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * p * r / denom;
}

EvalMetrics confusion_metrics(int64_t tp, int64_t fp, int64_t tn, int64_t fn) {
  if (tp < 0 || fp < 0 || tn < 0 || fn < 0)
    throw std::invalid_argument("confusion counts must be non-negative");
  const int64_t total = tp + fp + tn + fn;
  if (total == 0) throw std::invalid_argument("confusion matrix is empty");

  EvalMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.tn = tn;
  m.fn = fn;
  const double p = (tp + fp) == 0 ? 0.0 : double(tp) / double(tp + fp);
  const double r = (tp + fn) == 0 ? 0.0 : double(tp) / double(tp + fn);
  m.accuracy = 100.0 * double(tp + tn) / double(total);
  m.precision = 100.0 * p;
  m.recall = 100.0 * r;
  m.f1 = 100.0 * f_measure(p, r, 1.0);
  m.f_half = 100.0 * f_measure(p, r, 0.5);
  m.f2 = 100.0 * f_measure(p, r, 2.0);
  return m;
}

double macro_average(const double* values, size_t n) {
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) sum += values[i];
  return sum / double(n);
}

}  // namespace classify
}  // namespace sac
