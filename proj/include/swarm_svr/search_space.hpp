#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swarm_svr {

/// Axis-aligned box searched by both optimizers.
class SearchSpace {
 public:
  /// Throws InvalidArgument unless every bound is finite and lower < upper.
  SearchSpace(std::vector<double> lower, std::vector<double> upper,
              std::vector<std::string> labels = {});

  /// Symmetric box [lo, hi]^dim, handy for benchmark functions.
  static SearchSpace cube(std::size_t dim, double lo, double hi);

  /// (C, gamma) in [0.01, 100]^2.
  static SearchSpace svr_default();
  /// (C, gamma) in [0.01, 50]^2, the GWO bounds of the published parameter table.
  static SearchSpace svr_table1_gwo();
  /// "default" or "table1-gwo".
  static SearchSpace svr_preset(std::string_view name);

  std::size_t dimension() const { return lower_.size(); }
  double lower(std::size_t d) const { return lower_[d]; }
  double upper(std::size_t d) const { return upper_[d]; }
  double range(std::size_t d) const { return upper_[d] - lower_[d]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(std::span<const double> x) const;
  /// Clamps in place; returns a per-dimension flag of which entries moved.
  std::vector<bool> clamp(std::span<double> x) const;

  /// True when all lower bounds are > 0, as the SVR hyperparameters require.
  bool strictly_positive() const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::string> labels_;
};

}  // namespace swarm_svr
