#pragma once

#include <cstdint>
#include <string>

namespace sac {
namespace classify {

/// Confusion counts plus derived rates. Rates are stored as percentages in
/// [0, 100] and reported with one decimal, round half up.
struct EvalMetrics {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t tn = 0;
  int64_t fn = 0;
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double f_half = 0;
  double f2 = 0;
};

/// F-beta on proportions in [0, 1]; 0 when the denominator vanishes.
double f_measure(double p, double r, double beta);

/// Derives all rates from the counts. Precision/recall are 0 by convention
/// when their denominator is 0. Throws std::invalid_argument when every
/// count is 0.
EvalMetrics confusion_metrics(int64_t tp, int64_t fp, int64_t tn, int64_t fn);

/// Unweighted mean (macro average) of percentage values.
double macro_average(const double* values, size_t n);

}  // namespace classify
}  // namespace sac
