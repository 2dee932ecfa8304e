#include "swarm_svr/pso.hpp"

#include <algorithm>

#include "swarm_svr/errors.hpp"

namespace swarm_svr::pso {

void PsoParams::validate() const {
  if (population < 2) throw InvalidArgument("PSO population must be >= 2");
  if (iterations < 1) throw InvalidArgument("PSO iterations must be >= 1");
  if (!(v_max_fraction > 0.0 && v_max_fraction <= 1.0)) {
    throw InvalidArgument("PSO v_max_fraction must be in (0, 1]");
  }
}

namespace {

void update_global_best(SwarmState& s) {
  for (const auto& p : s.particles) {
    if (p.pbest_fitness < s.gbest_fitness) {
      s.gbest_fitness = p.pbest_fitness;
      s.gbest = p.pbest;
    }
  }
}

std::vector<std::vector<double>> positions_of(const SwarmState& s) {
  std::vector<std::vector<double>> out;
  out.reserve(s.particles.size());
  for (const auto& p : s.particles) out.push_back(p.position);
  return out;
}

}  // namespace

SwarmState init_swarm(const Objective& objective, const SearchSpace& space,
                      const PsoParams& params) {
  params.validate();
  SwarmState s;
  s.rng.seed(params.seed);
  const std::size_t dim = space.dimension();
  s.particles.resize(params.population);
  for (auto& p : s.particles) {
    p.position.resize(dim);
    p.velocity.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      p.position[d] = uniform_in(s.rng, space.lower(d), space.upper(d));
      double vmax = params.v_max_fraction * space.range(d);
      p.velocity[d] = uniform_in(s.rng, -vmax, vmax);
    }
    p.pbest = p.position;
  }
  auto fitness = evaluate_population(objective, positions_of(s), params.parallel);
  s.gbest_fitness = std::numeric_limits<double>::infinity();
  s.gbest = s.particles.front().position;
  for (std::size_t i = 0; i < s.particles.size(); ++i) s.particles[i].pbest_fitness = fitness[i];
  update_global_best(s);
  return s;
}

double inertia(const PsoParams& params, std::size_t t) {
  if (params.inertia_mode == InertiaMode::kConstant) return params.omega;
  const double T = static_cast<double>(params.iterations);
  return params.omega_max - static_cast<double>(t) * (params.omega_max - params.omega_min) / T;
}

void step(SwarmState& state, const Objective& objective, const SearchSpace& space,
          const PsoParams& params) {
  const double w = inertia(params, state.t);
  const std::size_t dim = space.dimension();
  for (auto& p : state.particles) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double ra = uniform_open01(state.rng);
      const double rb = uniform_open01(state.rng);
      const double vmax = params.v_max_fraction * space.range(d);
      double v = w * p.velocity[d] + params.c1 * ra * (p.pbest[d] - p.position[d]) +
                 params.c2 * rb * (state.gbest[d] - p.position[d]);
      p.velocity[d] = std::clamp(v, -vmax, vmax);
      p.position[d] += p.velocity[d];
    }
    auto moved = space.clamp(p.position);
    for (std::size_t d = 0; d < dim; ++d) {
      if (moved[d]) p.velocity[d] = 0.0;
    }
  }

  auto fitness = evaluate_population(objective, positions_of(state), params.parallel);
  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    auto& p = state.particles[i];
    if (fitness[i] < p.pbest_fitness) {
      p.pbest_fitness = fitness[i];
      p.pbest = p.position;
    }
  }
  update_global_best(state);
  ++state.t;
}

OptimizeResult optimize(const Objective& objective, const SearchSpace& space,
                        const PsoParams& params) {
  auto state = init_swarm(objective, space, params);
  OptimizeResult result;
  auto record = [&] {
    result.history.push_back(state.gbest_fitness);
    result.trace.push_back({state.t, state.gbest_fitness, state.gbest});
  };
  record();
  for (std::size_t it = 0; it < params.iterations; ++it) {
    step(state, objective, space, params);
    record();
  }
  result.best_position = state.gbest;
  result.best_fitness = state.gbest_fitness;
  return result;
}

}  // namespace swarm_svr::pso
