#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace swarm_svr {

/// Fitness to minimize. Must be safe to call concurrently: populations are
/// evaluated under OpenMP.
using Objective = std::function<double(std::span<const double>)>;

using Rng = std::mt19937_64;

/// Uniform in [0, 1), built from the top 53 bits so sequences are identical
/// across standard libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform in the open interval (0, 1).
inline double uniform_open01(Rng& rng) {
  double u;
  do {
    u = uniform01(rng);
  } while (u == 0.0);
  return u;
}

inline double uniform_in(Rng& rng, double lo, double hi) { return lo + uniform01(rng) * (hi - lo); }

/// Objective value with non-finite results mapped to +inf.
double safe_fitness(const Objective& objective, std::span<const double> x);

/// fitness[i] = safe_fitness(objective, positions[i]). OpenMP over
/// individuals; the output does not depend on scheduling.
std::vector<double> evaluate_population(const Objective& objective,
                                        const std::vector<std::vector<double>>& positions,
                                        bool parallel = true);

/// Single-threaded reference for evaluate_population.
std::vector<double> evaluate_population_serial(const Objective& objective,
                                               const std::vector<std::vector<double>>& positions);

struct TraceRow {
  std::size_t iteration = 0;
  double best_fitness = std::numeric_limits<double>::infinity();
  std::vector<double> best_position;
};

struct OptimizeResult {
  std::vector<double> best_position;
  double best_fitness = std::numeric_limits<double>::infinity();
  std::vector<double> history;  // best-so-far fitness, length iterations + 1
  std::vector<TraceRow> trace;
};

/// CSV: iteration, <fitness_column>, then one column per position label.
void write_trace_csv(const std::filesystem::path& path, const OptimizeResult& result,
                     const std::vector<std::string>& labels,
                     const std::string& fitness_column = "best_fitness");

}  // namespace swarm_svr
