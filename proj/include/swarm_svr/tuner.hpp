#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "swarm_svr/dataio.hpp"
#include "swarm_svr/gwo.hpp"
#include "swarm_svr/pso.hpp"
#include "swarm_svr/search_space.hpp"
#include "swarm_svr/svr.hpp"

namespace swarm_svr::tuning {

enum class OptimizerKind { kNone, kPso, kGwo };

std::string_view optimizer_tag(OptimizerKind kind);  // "svr", "pso", "gwo"
OptimizerKind parse_optimizer(std::string_view name);  // "none", "pso", "gwo"

struct FitnessConfig {
  double inner_ratio = 0.8;
  std::uint64_t inner_seed = 0;
  std::size_t folds = 1;  // 1: single inner split; k >= 2: k-fold mean RMSE
  double epsilon = kDefaultEpsilon;
  double tol = kDefaultTolerance;
  std::size_t max_passes = kDefaultMaxPasses;
};

/// Validation RMSE of an RBF ε-SVR as a function of (C, gamma). The inner
/// partition of the training data is drawn once at construction, so every
/// candidate of a tuning run faces the same validation rows. Thread-safe.
class FitnessFunction {
 public:
  FitnessFunction(const Dataset& train, const FitnessConfig& config);

  /// +inf when the SVR fails to converge.
  double operator()(double c, double gamma) const;

  struct Fold {
    Dataset train;
    Dataset validation;
  };
  const std::vector<Fold>& folds() const { return folds_; }
  const FitnessConfig& config() const { return config_; }

 private:
  FitnessConfig config_;
  std::vector<Fold> folds_;
};

struct TuneConfig {
  OptimizerKind optimizer = OptimizerKind::kPso;
  pso::PsoParams pso;
  gwo::GwoParams gwo;
  SearchSpace space = SearchSpace::svr_default();
  FitnessConfig fitness;
  bool log_space = false;  // search log10(C), log10(gamma) instead of raw values
};

struct TuneResult {
  double best_c = 0.0;
  double best_gamma = 0.0;
  double best_fitness = 0.0;
  std::vector<double> history;
  OptimizeResult trace;  // positions in (C, gamma) units
  OptimizerKind optimizer = OptimizerKind::kPso;
  std::uint64_t seed = 0;
};

/// Runs PSO or GWO over `config.space` with FitnessFunction as the objective.
/// Throws TuningError when no candidate produced a finite fitness.
TuneResult tune(const Dataset& train, const TuneConfig& config);

/// Retrains on the whole training partition with the tuned (C, gamma).
SvrModel final_fit(const Dataset& train, const TuneResult& best, const FitnessConfig& config);

/// Untuned baseline: C = 1, gamma = 1 / n_features.
SvrParams default_svr_params(std::size_t n_features, const FitnessConfig& config);

}  // namespace swarm_svr::tuning
