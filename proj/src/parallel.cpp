#include "swarm_svr/parallel.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>

#include "swarm_svr/errors.hpp"
#include "swarm_svr/population.hpp"

namespace swarm_svr {

int configure_threads(std::optional<int> requested) {
  int n = 0;
  if (requested) {
    n = *requested;
  } else if (const char* env = std::getenv("SWARM_SVR_THREADS")) {
    n = std::atoi(env);
  }
  if (n > 0) omp_set_num_threads(n);
  return n > 0 ? n : omp_get_max_threads();
}

double safe_fitness(const Objective& objective, std::span<const double> x) {
  double f = objective(x);
  return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
}

std::vector<double> evaluate_population_serial(const Objective& objective,
                                               const std::vector<std::vector<double>>& positions) {
  std::vector<double> fitness(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) fitness[i] = safe_fitness(objective, positions[i]);
  return fitness;
}

std::vector<double> evaluate_population(const Objective& objective,
                                        const std::vector<std::vector<double>>& positions,
                                        bool parallel) {
  std::vector<double> fitness(positions.size());
  const auto n = static_cast<std::ptrdiff_t>(positions.size());
  // Exceptions may not cross the OpenMP region boundary.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      fitness[static_cast<std::size_t>(i)] =
          safe_fitness(objective, positions[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(swarm_svr_population_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return fitness;
}

void write_trace_csv(const std::filesystem::path& path, const OptimizeResult& result,
                     const std::vector<std::string>& labels, const std::string& fitness_column) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "iteration," << fitness_column;
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  out.precision(17);
  for (const auto& row : result.trace) {
    out << row.iteration << ',' << row.best_fitness;
    for (double v : row.best_position) out << ',' << v;
    out << '\n';
  }
}

}  // namespace swarm_svr
