#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swarm_svr/population.hpp"
#include "swarm_svr/search_space.hpp"

namespace swarm_svr::pso {

enum class InertiaMode { kConstant, kLinearDecay };

struct PsoParams {
  std::size_t population = 150;
  std::size_t iterations = 50;
  double c1 = 1.0;
  double c2 = 2.0;
  InertiaMode inertia_mode = InertiaMode::kConstant;
  double omega = 0.5;      // constant mode
  double omega_max = 0.9;  // linear_decay mode
  double omega_min = 0.4;
  double v_max_fraction = 0.2;
  std::uint64_t seed = 0;
  bool parallel = true;

  /// Throws InvalidArgument on population < 2, iterations < 1 or a
  /// v_max_fraction outside (0, 1].
  void validate() const;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> pbest;
  double pbest_fitness = 0.0;
};

struct SwarmState {
  std::vector<Particle> particles;
  std::vector<double> gbest;
  double gbest_fitness = 0.0;
  std::size_t t = 0;
  Rng rng;
};

/// Uniform positions in the box, velocities uniform in ±v_max_fraction·range,
/// every particle evaluated once.
SwarmState init_swarm(const Objective& objective, const SearchSpace& space,
                      const PsoParams& params);

/// Constant mode: omega. Linear decay: omega_max - t (omega_max - omega_min) / T.
double inertia(const PsoParams& params, std::size_t t);

/// One velocity/position update for every particle followed by a single
/// deterministic pbest/gbest pass. Random factors are drawn per dimension in
/// particle-index order before any evaluation.
void step(SwarmState& state, const Objective& objective, const SearchSpace& space,
          const PsoParams& params);

/// init_swarm followed by params.iterations steps.
OptimizeResult optimize(const Objective& objective, const SearchSpace& space,
                        const PsoParams& params);

}  // namespace swarm_svr::pso
