#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swarm_svr/population.hpp"
#include "swarm_svr/search_space.hpp"

namespace swarm_svr::gwo {

struct GwoParams {
  std::size_t population = 150;
  std::size_t iterations = 50;
  std::uint64_t seed = 0;
  bool parallel = true;

  /// Throws InvalidArgument on population < 3 or iterations < 1.
  void validate() const;
};

struct Leader {
  std::vector<double> position;
  double fitness = 0.0;
};

struct PackState {
  std::vector<std::vector<double>> wolves;
  std::vector<double> fitness;
  Leader alpha, beta, delta;
  std::size_t t = 0;
  Rng rng;
};

/// a = 2 - 2t/T.
double coefficient_a(std::size_t t, std::size_t T);

PackState init_pack(const Objective& objective, const SearchSpace& space, const GwoParams& params);

/// Every wolf moves to the mean of its three leader-guided proposals
/// X_L - A·|C·X_L - X|, clamped to the box. Leaders are then re-ranked over
/// the old leaders and the new pack; an incumbent yields only to a strictly
/// better wolf.
void step(PackState& state, const Objective& objective, const SearchSpace& space,
          const GwoParams& params);

OptimizeResult optimize(const Objective& objective, const SearchSpace& space,
                        const GwoParams& params);

}  // namespace swarm_svr::gwo
