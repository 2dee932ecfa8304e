#include "swarm_svr/metrics.hpp"

#include <cmath>

namespace swarm_svr {
namespace {

void check_lengths(const TargetVector& y_true, const TargetVector& y_pred) {
  if (y_true.size() != y_pred.size()) throw DimensionError("metrics: length mismatch");
  if (y_true.empty()) throw InvalidArgument("metrics: empty input");
}

double sum_squared_error(const TargetVector& y_true, const TargetVector& y_pred) {
  double sse = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    double e = y_true[i] - y_pred[i];
    sse += e * e;
  }
  return sse;
}

}  // namespace

double rmse(const TargetVector& y_true, const TargetVector& y_pred) {
  check_lengths(y_true, y_pred);
  return std::sqrt(sum_squared_error(y_true, y_pred) / static_cast<double>(y_true.size()));
}

EvalReport evaluate(const TargetVector& y_true, const TargetVector& y_pred) {
  check_lengths(y_true, y_pred);
  const auto m = static_cast<double>(y_true.size());
  EvalReport report;
  report.n = y_true.size();

  const double sse = sum_squared_error(y_true, y_pred);
  double abs_sum = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    abs_sum += std::abs(y_true[i] - y_pred[i]);
    mean += y_true[i];
  }
  mean /= m;
  report.rmse = std::sqrt(sse / m);
  report.mae = abs_sum / m;

  double sst = 0.0;
  for (double v : y_true) sst += (v - mean) * (v - mean);
  bool constant = true;
  for (double v : y_true) constant = constant && v == y_true.front();
  if (constant || sst == 0.0) throw R2UndefinedError(report);
  report.r2 = 1.0 - sse / sst;
  return report;
}

}  // namespace swarm_svr
