#pragma once

#include <cstddef>
#include <optional>

#include "swarm_svr/errors.hpp"
#include "swarm_svr/matrix.hpp"

namespace swarm_svr {

struct EvalReport {
  std::optional<double> r2;  // empty when y_true is constant
  double rmse = 0.0;
  double mae = 0.0;
  std::size_t n = 0;
};

/// Raised for a constant y_true. RMSE and MAE are still available through
/// partial().
class R2UndefinedError : public Error {
 public:
  explicit R2UndefinedError(EvalReport partial)
      : Error("R2 is undefined for a constant target"), partial_(partial) {}
  const EvalReport& partial() const { return partial_; }

 private:
  EvalReport partial_;
};

/// R² = 1 - SSE/SST with the mean of y_true, RMSE = sqrt(SSE/M), MAE = Σ|e|/M.
EvalReport evaluate(const TargetVector& y_true, const TargetVector& y_pred);

/// RMSE alone; used as the tuning fitness. Identical arithmetic to evaluate().
double rmse(const TargetVector& y_true, const TargetVector& y_pred);

}  // namespace swarm_svr
