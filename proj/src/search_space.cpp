#include "swarm_svr/search_space.hpp"

#include <algorithm>
#include <cmath>

#include "swarm_svr/errors.hpp"

namespace swarm_svr {

SearchSpace::SearchSpace(std::vector<double> lower, std::vector<double> upper,
                         std::vector<std::string> labels)
    : lower_(std::move(lower)), upper_(std::move(upper)), labels_(std::move(labels)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw InvalidArgument("search space bounds must be non-empty and of equal length");
  }
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    if (!std::isfinite(lower_[d]) || !std::isfinite(upper_[d]) || !(lower_[d] < upper_[d])) {
      throw InvalidArgument("search space dimension " + std::to_string(d) +
                            " needs finite bounds with lower < upper");
    }
  }
  if (labels_.empty()) {
    for (std::size_t d = 0; d < lower_.size(); ++d) labels_.push_back("x" + std::to_string(d));
  }
  if (labels_.size() != lower_.size()) throw InvalidArgument("one label per dimension required");
}

SearchSpace SearchSpace::cube(std::size_t dim, double lo, double hi) {
  return SearchSpace(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

SearchSpace SearchSpace::svr_default() { return {{0.01, 0.01}, {100.0, 100.0}, {"C", "gamma"}}; }

SearchSpace SearchSpace::svr_table1_gwo() { return {{0.01, 0.01}, {50.0, 50.0}, {"C", "gamma"}}; }

SearchSpace SearchSpace::svr_preset(std::string_view name) {
  if (name == "default") return svr_default();
  if (name == "table1-gwo") return svr_table1_gwo();
  throw InvalidArgument("unknown search-space preset '" + std::string(name) + "'");
}

bool SearchSpace::contains(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (!(x[d] >= lower_[d] && x[d] <= upper_[d])) return false;
  }
  return true;
}

std::vector<bool> SearchSpace::clamp(std::span<double> x) const {
  std::vector<bool> moved(x.size(), false);
  for (std::size_t d = 0; d < x.size(); ++d) {
    double c = std::clamp(x[d], lower_[d], upper_[d]);
    if (std::isnan(x[d])) c = lower_[d];
    moved[d] = c != x[d];
    x[d] = c;
  }
  return moved;
}

bool SearchSpace::strictly_positive() const {
  return std::all_of(lower_.begin(), lower_.end(), [](double v) { return v > 0.0; });
}

}  // namespace swarm_svr
