#include "swarm_svr/gwo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "swarm_svr/errors.hpp"

namespace swarm_svr::gwo {

void GwoParams::validate() const {
  if (population < 3) throw InvalidArgument("GWO needs at least 3 wolves");
  if (iterations < 1) throw InvalidArgument("GWO iterations must be >= 1");
}

double coefficient_a(std::size_t t, std::size_t T) {
  return 2.0 - 2.0 * static_cast<double>(t) / static_cast<double>(T);
}

namespace {

// Candidates are ranked by fitness; the stable sort keeps earlier entries
// ahead on ties, so incumbents listed first are only displaced by strictly
// better wolves.
void rank_leaders(PackState& s, std::vector<Leader> candidates) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Leader& a, const Leader& b) { return a.fitness < b.fitness; });
  s.alpha = std::move(candidates[0]);
  s.beta = std::move(candidates[1]);
  s.delta = std::move(candidates[2]);
}

std::vector<Leader> pack_as_candidates(const PackState& s) {
  std::vector<Leader> out;
  out.reserve(s.wolves.size() + 3);
  for (std::size_t i = 0; i < s.wolves.size(); ++i) out.push_back({s.wolves[i], s.fitness[i]});
  return out;
}

}  // namespace

PackState init_pack(const Objective& objective, const SearchSpace& space,
                    const GwoParams& params) {
  params.validate();
  PackState s;
  s.rng.seed(params.seed);
  s.wolves.assign(params.population, std::vector<double>(space.dimension()));
  for (auto& w : s.wolves) {
    for (std::size_t d = 0; d < w.size(); ++d) w[d] = uniform_in(s.rng, space.lower(d), space.upper(d));
  }
  s.fitness = evaluate_population(objective, s.wolves, params.parallel);
  rank_leaders(s, pack_as_candidates(s));
  return s;
}

void step(PackState& state, const Objective& objective, const SearchSpace& space,
          const GwoParams& params) {
  const double a = coefficient_a(state.t, params.iterations);
  const std::array<const Leader*, 3> leaders = {&state.alpha, &state.beta, &state.delta};
  const std::size_t dim = space.dimension();
  std::array<std::vector<double>, 3> proposal;
  proposal.fill(std::vector<double>(dim));
  for (auto& wolf : state.wolves) {
    for (std::size_t k = 0; k < leaders.size(); ++k) {
      const auto& x_leader = leaders[k]->position;
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = uniform01(state.rng);
        const double r2 = uniform01(state.rng);
        const double A = 2.0 * a * r1 - a;
        const double C = 2.0 * r2;
        const double D = std::abs(C * x_leader[d] - wolf[d]);
        proposal[k][d] = x_leader[d] - A * D;
      }
    }
    // Mean written as an offset from the first proposal so that coincident
    // proposals reproduce that point exactly.
    for (std::size_t d = 0; d < dim; ++d) {
      const double base = proposal[0][d];
      wolf[d] = base + ((proposal[1][d] - base) + (proposal[2][d] - base)) / 3.0;
    }
    space.clamp(wolf);
  }

  state.fitness = evaluate_population(objective, state.wolves, params.parallel);
  std::vector<Leader> candidates = {state.alpha, state.beta, state.delta};
  auto pack = pack_as_candidates(state);
  candidates.insert(candidates.end(), std::make_move_iterator(pack.begin()),
                    std::make_move_iterator(pack.end()));
  rank_leaders(state, std::move(candidates));
  ++state.t;
}

OptimizeResult optimize(const Objective& objective, const SearchSpace& space,
                        const GwoParams& params) {
  auto state = init_pack(objective, space, params);
  OptimizeResult result;
  auto record = [&] {
    result.history.push_back(state.alpha.fitness);
    result.trace.push_back({state.t, state.alpha.fitness, state.alpha.position});
  };
  record();
  for (std::size_t it = 0; it < params.iterations; ++it) {
    step(state, objective, space, params);
    record();
  }
  result.best_position = state.alpha.position;
  result.best_fitness = state.alpha.fitness;
  return result;
}

}  // namespace swarm_svr::gwo
