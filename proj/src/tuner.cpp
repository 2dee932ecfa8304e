#include "swarm_svr/tuner.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "swarm_svr/errors.hpp"
#include "swarm_svr/metrics.hpp"

namespace swarm_svr::tuning {

std::string_view optimizer_tag(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kNone: return "svr";
    case OptimizerKind::kPso: return "pso";
    case OptimizerKind::kGwo: return "gwo";
  }
  return "?";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "none" || name == "svr") return OptimizerKind::kNone;
  if (name == "pso") return OptimizerKind::kPso;
  if (name == "gwo") return OptimizerKind::kGwo;
  throw InvalidArgument("unknown optimizer '" + std::string(name) + "'");
}

namespace {

Dataset rows_of(const Dataset& d, const std::vector<std::size_t>& idx) {
  Dataset out;
  out.x.feature_names = d.x.feature_names;
  out.x.values = d.x.values.select_rows(idx);
  for (auto i : idx) out.y.push_back(d.y[i]);
  return out;
}

}  // namespace

FitnessFunction::FitnessFunction(const Dataset& train, const FitnessConfig& config)
    : config_(config) {
  if (train.x.rows() == 0) throw InvalidArgument("fitness: empty training partition");
  if (config.folds <= 1) {
    auto s = split(train.x, train.y, config.inner_ratio, config.inner_seed);
    folds_.push_back({std::move(s.train.data), std::move(s.test.data)});
    return;
  }
  const std::size_t n = train.x.rows();
  if (config.folds > n) throw InvalidArgument("fitness: more folds than rows");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.inner_seed);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 0; k < config.folds; ++k) {
    std::vector<std::size_t> fit_idx, val_idx;
    for (std::size_t i = 0; i < n; ++i) (i % config.folds == k ? val_idx : fit_idx).push_back(order[i]);
    folds_.push_back({rows_of(train, fit_idx), rows_of(train, val_idx)});
  }
}

double FitnessFunction::operator()(double c, double gamma) const {
  try {
    SvrParams params(c, config_.epsilon, KernelSpec::rbf(gamma), config_.tol, config_.max_passes);
    double total = 0.0;
    for (const auto& fold : folds_) {
      auto model = train(fold.train.x, fold.train.y, params);
      total += rmse(fold.validation.y, predict_batch(model, fold.validation.x));
    }
    return total / static_cast<double>(folds_.size());
  } catch (const ConvergenceError&) {
    return std::numeric_limits<double>::infinity();
  } catch (const InvalidArgument&) {
    return std::numeric_limits<double>::infinity();
  }
}

TuneResult tune(const Dataset& train, const TuneConfig& config) {
  if (config.optimizer == OptimizerKind::kNone) throw InvalidArgument("tune: no optimizer chosen");
  if (config.space.dimension() != 2 || !config.space.strictly_positive()) {
    throw InvalidArgument("tune: search space must be 2-D (C, gamma) with positive bounds");
  }
  const FitnessFunction fitness(train, config.fitness);

  auto to_native = [&](std::span<const double> x) -> std::pair<double, double> {
    if (config.log_space) return {std::pow(10.0, x[0]), std::pow(10.0, x[1])};
    return {x[0], x[1]};
  };
  SearchSpace space = config.space;
  if (config.log_space) {
    space = SearchSpace({std::log10(config.space.lower(0)), std::log10(config.space.lower(1))},
                        {std::log10(config.space.upper(0)), std::log10(config.space.upper(1))},
                        {"log10_C", "log10_gamma"});
  }
  Objective objective = [&](std::span<const double> x) {
    auto [c, gamma] = to_native(x);
    return fitness(c, gamma);
  };

  TuneResult result;
  result.optimizer = config.optimizer;
  if (config.optimizer == OptimizerKind::kPso) {
    result.trace = pso::optimize(objective, space, config.pso);
    result.seed = config.pso.seed;
  } else {
    result.trace = gwo::optimize(objective, space, config.gwo);
    result.seed = config.gwo.seed;
  }
  if (!std::isfinite(result.trace.best_fitness)) {
    throw TuningError("every candidate failed to produce a finite fitness");
  }
  std::tie(result.best_c, result.best_gamma) = to_native(result.trace.best_position);
  result.best_fitness = result.trace.best_fitness;
  result.history = result.trace.history;
  if (config.log_space) {
    for (auto& row : result.trace.trace) {
      auto [c, g] = to_native(row.best_position);
      row.best_position = {c, g};
    }
    result.trace.best_position = {result.best_c, result.best_gamma};
  }
  return result;
}

SvrModel final_fit(const Dataset& train, const TuneResult& best, const FitnessConfig& config) {
  SvrParams params(best.best_c, config.epsilon, KernelSpec::rbf(best.best_gamma), config.tol,
                   config.max_passes);
  return swarm_svr::train(train.x, train.y, params);
}

SvrParams default_svr_params(std::size_t n_features, const FitnessConfig& config) {
  return SvrParams(1.0, config.epsilon, KernelSpec::rbf(1.0 / static_cast<double>(n_features)),
                   config.tol, config.max_passes);
}

}  // namespace swarm_svr::tuning
