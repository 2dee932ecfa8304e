#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarm_svr/dataio.hpp"
#include "swarm_svr/kernels.hpp"
#include "swarm_svr/matrix.hpp"

namespace swarm_svr {

inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr double kDefaultTolerance = 1e-3;
inline constexpr std::size_t kDefaultMaxPasses = 10'000;
inline constexpr std::size_t kMaxCachedKernelRows = 2'000;

/// Training parameters of an ε-SVR. The constructor rejects C <= 0,
/// ε < 0, tol <= 0 and max_passes == 0.
struct SvrParams {
  SvrParams(double c, double epsilon, KernelSpec kernel, double tol = kDefaultTolerance,
            std::size_t max_passes = kDefaultMaxPasses);

  double c;
  double epsilon;
  KernelSpec kernel;
  double tol;
  // One pass is n pair updates, so the solver stops after max_passes * n
  // working-pair steps.
  std::size_t max_passes;
};

struct TrainingInfo {
  std::size_t n_train = 0;
  std::size_t iterations = 0;
  double c = 0.0;
  double epsilon = 0.0;
  double tol = 0.0;
  std::optional<std::uint64_t> seed;
};

/// Trained ε-SVR: f(x) = Σ beta_i K(sv_i, x) + bias, beta_i = alpha_i - alpha_i*.
/// Only rows with nonzero beta are stored.
struct SvrModel {
  Matrix support_vectors;
  std::vector<double> beta;
  std::vector<std::size_t> sv_indices;  // row of each support vector in the training set
  double bias = 0.0;
  KernelSpec kernel = KernelSpec::rbf(1.0);
  std::optional<ScalerParams> scaler;
  TrainingInfo info;

  std::size_t num_support_vectors() const { return beta.size(); }
};

/// Solves the ε-SVR dual by sequential minimal optimization. Working pairs are
/// picked by maximal KKT violation (first index) and largest second-order
/// gain among violators (second index). Kernel rows live in an LRU cache of
/// min(n, 2000) rows and are filled under OpenMP.
///
/// Throws ConvergenceError when max_passes runs out, InvalidArgument on
/// non-finite data and DimensionError on misaligned inputs.
SvrModel train(const FeatureMatrix& x, const TargetVector& y, const SvrParams& params);

double predict(const SvrModel& model, std::span<const double> x);

/// Row-parallel; every entry equals predict() on that row exactly.
TargetVector predict_batch(const SvrModel& model, const FeatureMatrix& x);
TargetVector predict_batch_serial(const SvrModel& model, const FeatureMatrix& x);

/// Largest KKT violation of the ε-SVR dual over the training rows, together
/// with |Σ beta| and any excess |beta_i| - C. Zero means exactly optimal.
double kkt_violation(const SvrModel& model, const FeatureMatrix& x, const TargetVector& y,
                     const SvrParams& params);

/// Dual objective ½βᵀKβ + ε‖β‖₁ - yᵀβ (minimization form) of the model's
/// coefficients on its training targets.
double dual_objective(const SvrModel& model, const TargetVector& y, double epsilon);

/// Same objective for an explicit coefficient vector over all n rows.
double dual_objective(std::span<const double> beta, const Matrix& gram, const TargetVector& y,
                      double epsilon);

}  // namespace swarm_svr
