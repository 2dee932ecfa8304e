#include "swarm_svr/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>

#include "swarm_svr/errors.hpp"

namespace swarm_svr {

SvrParams::SvrParams(double c_, double epsilon_, KernelSpec kernel_, double tol_,
                     std::size_t max_passes_)
    : c(c_), epsilon(epsilon_), kernel(kernel_), tol(tol_), max_passes(max_passes_) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("SVR needs C > 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("SVR needs epsilon >= 0");
  if (!(tol > 0.0)) throw InvalidArgument("SVR needs tol > 0");
  if (max_passes == 0) throw InvalidArgument("SVR needs max_passes > 0");
}

namespace {

constexpr double kTau = 1e-12;

/// Kernel rows keyed by training-row index with least-recently-used eviction.
class KernelRowCache {
 public:
  KernelRowCache(const KernelSpec& spec, const Matrix& x, std::size_t capacity)
      : spec_(spec), x_(x), capacity_(std::max<std::size_t>(capacity, 1)),
        slot_of_(x.rows(), kNone) {}

  const double* row(std::size_t i) {
    if (slot_of_[i] != kNone) {
      lru_.splice(lru_.begin(), lru_, position_[slot_of_[i]]);
      return storage_[slot_of_[i]].data();
    }
    std::size_t slot;
    if (storage_.size() < capacity_) {
      slot = storage_.size();
      storage_.emplace_back(x_.rows());
      owner_.push_back(i);
      position_.push_back(lru_.end());
    } else {
      slot = lru_.back();
      lru_.pop_back();
      slot_of_[owner_[slot]] = kNone;
      owner_[slot] = i;
    }
    kernel_row(spec_, x_, i, storage_[slot]);
    lru_.push_front(slot);
    position_[slot] = lru_.begin();
    slot_of_[i] = slot;
    return storage_[slot].data();
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  const KernelSpec& spec_;
  const Matrix& x_;
  std::size_t capacity_;
  std::vector<std::size_t> slot_of_;
  std::vector<std::vector<double>> storage_;
  std::vector<std::size_t> owner_;
  std::vector<std::list<std::size_t>::iterator> position_;
  std::list<std::size_t> lru_;  // slots, most recent first
};

/// SMO over the 2n-variable form: variable t < n is alpha_t (sign +1),
/// t >= n is alpha*_{t-n} (sign -1).
class SmoSolver {
 public:
  SmoSolver(const Matrix& x, const TargetVector& y, const SvrParams& params)
      : x_(x), y_(y), params_(params), n_(x.rows()), l_(2 * n_),
        cache_(params.kernel, x, std::min(n_, kMaxCachedKernelRows)),
        alpha_(l_, 0.0), grad_(l_), diag_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      grad_[i] = params.epsilon - y[i];
      grad_[i + n_] = params.epsilon + y[i];
      diag_[i] = kernel_eval_unchecked(params.kernel, x.row(i).data(), x.row(i).data(), x.cols());
    }
  }

  void solve() {
    const std::size_t max_iter = n_ > std::numeric_limits<std::size_t>::max() / params_.max_passes
                                     ? std::numeric_limits<std::size_t>::max()
                                     : params_.max_passes * std::max<std::size_t>(n_, 1);
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
      double gap = select_working_set(i, j);
      if (gap < params_.tol) break;
      if (iterations_ >= max_iter) {
        throw ConvergenceError(gap, "SVR did not converge within " +
                                        std::to_string(params_.max_passes) +
                                        " passes; worst KKT violation " + std::to_string(gap));
      }
      update_pair(i, j);
      ++iterations_;
    }
  }

  SvrModel model() const {
    SvrModel m;
    m.kernel = params_.kernel;
    m.support_vectors = Matrix(0, x_.cols());
    for (std::size_t i = 0; i < n_; ++i) {
      double b = alpha_[i] - alpha_[i + n_];
      if (b != 0.0) {
        m.support_vectors.append_row(x_.row(i));
        m.beta.push_back(b);
        m.sv_indices.push_back(i);
      }
    }
    m.bias = m.beta.empty() ? flat_bias() : -rho();
    m.info.n_train = n_;
    m.info.iterations = iterations_;
    m.info.c = params_.c;
    m.info.epsilon = params_.epsilon;
    m.info.tol = params_.tol;
    return m;
  }

 private:
  double sign(std::size_t t) const { return t < n_ ? 1.0 : -1.0; }
  std::size_t point(std::size_t t) const { return t < n_ ? t : t - n_; }
  bool at_upper(std::size_t t) const { return alpha_[t] >= params_.c; }
  bool at_lower(std::size_t t) const { return alpha_[t] <= 0.0; }

  // Q_{s,t} = sign_s sign_t K(point s, point t), read from a cached row of s.
  double q(const double* row_s, std::size_t s, std::size_t t) const {
    return sign(s) * sign(t) * row_s[point(t)];
  }

  // Returns the maximal violation gap; i and j are valid when gap >= tol.
  double select_working_set(std::size_t& out_i, std::size_t& out_j) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double gmax = -kInf;
    double gmax2 = -kInf;
    std::size_t best_i = l_;
    for (std::size_t t = 0; t < l_; ++t) {
      if (sign(t) > 0) {
        if (!at_upper(t) && -grad_[t] >= gmax) {
          gmax = -grad_[t];
          best_i = t;
        }
      } else if (!at_lower(t) && grad_[t] >= gmax) {
        gmax = grad_[t];
        best_i = t;
      }
    }
    if (best_i == l_) return 0.0;

    const double* row_i = cache_.row(point(best_i));
    const double kii = diag_[point(best_i)];
    std::size_t best_j = l_;
    double best_gain = kInf;
    for (std::size_t t = 0; t < l_; ++t) {
      double grad_diff;
      if (sign(t) > 0) {
        if (at_lower(t)) continue;
        gmax2 = std::max(gmax2, grad_[t]);
        grad_diff = gmax + grad_[t];
      } else {
        if (at_upper(t)) continue;
        gmax2 = std::max(gmax2, -grad_[t]);
        grad_diff = gmax - grad_[t];
      }
      if (grad_diff > 0.0) {
        double quad = kii + diag_[point(t)] - 2.0 * row_i[point(t)];
        double gain = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
        if (gain <= best_gain) {
          best_gain = gain;
          best_j = t;
        }
      }
    }
    if (best_j == l_) return 0.0;
    out_i = best_i;
    out_j = best_j;
    return gmax + gmax2;
  }

  void update_pair(std::size_t i, std::size_t j) {
    const double c = params_.c;
    const double* row_i = cache_.row(point(i));
    const double* row_j = cache_.row(point(j));
    double quad = diag_[point(i)] + diag_[point(j)] - 2.0 * row_i[point(j)];
    if (quad <= 0.0) quad = kTau;
    const double old_i = alpha_[i];
    const double old_j = alpha_[j];
    double& ai = alpha_[i];
    double& aj = alpha_[j];

    if (sign(i) != sign(j)) {
      double delta = (-grad_[i] - grad_[j]) / quad;
      double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > c) {
          ai = c;
          aj = c - diff;
        }
      } else if (aj > c) {
        aj = c;
        ai = c + diff;
      }
    } else {
      double delta = (grad_[i] - grad_[j]) / quad;
      double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c) {
        if (ai > c) {
          ai = c;
          aj = sum - c;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > c) {
        if (aj > c) {
          aj = c;
          ai = sum - c;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }

    const double di = ai - old_i;
    const double dj = aj - old_j;
    // row_i survives the fetch of row_j: it is the most recent entry of a
    // cache holding >= 2 rows, or the same row when n == 1.
    for (std::size_t t = 0; t < l_; ++t) {
      grad_[t] += q(row_i, i, t) * di + q(row_j, j, t) * dj;
    }
  }

  // LIBSVM-style threshold: mean of sign*grad over free variables, else the
  // midpoint of the feasible interval.
  double rho() const {
    double ub = std::numeric_limits<double>::infinity();
    double lb = -ub;
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < l_; ++t) {
      double yg = sign(t) * grad_[t];
      if (at_upper(t)) {
        if (sign(t) < 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else if (at_lower(t)) {
        if (sign(t) > 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else {
        ++n_free;
        sum_free += yg;
      }
    }
    return n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  }

  // All coefficients zero: any b in [max y - ε, min y + ε] is optimal. Take
  // mean(y) clamped into that interval.
  double flat_bias() const {
    double mean = std::accumulate(y_.begin(), y_.end(), 0.0) / static_cast<double>(n_);
    auto [lo, hi] = std::minmax_element(y_.begin(), y_.end());
    double low = *hi - params_.epsilon;
    double high = *lo + params_.epsilon;
    if (low > high) return (low + high) / 2.0;
    return std::clamp(mean, low, high);
  }

  const Matrix& x_;
  const TargetVector& y_;
  const SvrParams& params_;
  std::size_t n_;
  std::size_t l_;
  KernelRowCache cache_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
  std::vector<double> diag_;
  std::size_t iterations_ = 0;
};

void require_finite(const FeatureMatrix& x, const TargetVector& y) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(x.values.data().begin(), x.values.data().end(), finite) ||
      !std::all_of(y.begin(), y.end(), finite)) {
    throw InvalidArgument("SVR training data contains non-finite values");
  }
}

}  // namespace

SvrModel train(const FeatureMatrix& x, const TargetVector& y, const SvrParams& params) {
  if (x.rows() != y.size()) throw DimensionError("train: X and y lengths differ");
  if (x.rows() == 0) throw InvalidArgument("train: empty training set");
  require_finite(x, y);
  SmoSolver solver(x.values, y, params);
  solver.solve();
  return solver.model();
}

double predict(const SvrModel& model, std::span<const double> x) {
  const std::size_t d = model.support_vectors.cols();
  if (model.num_support_vectors() > 0 && x.size() != d) {
    throw DimensionError("predict: input has " + std::to_string(x.size()) +
                         " features, model expects " + std::to_string(d));
  }
  double s = 0.0;
  for (std::size_t k = 0; k < model.beta.size(); ++k) {
    s += model.beta[k] *
         kernel_eval_unchecked(model.kernel, model.support_vectors.row(k).data(), x.data(), d);
  }
  return s + model.bias;
}

TargetVector predict_batch_serial(const SvrModel& model, const FeatureMatrix& x) {
  TargetVector out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = predict(model, x.row(r));
  return out;
}

TargetVector predict_batch(const SvrModel& model, const FeatureMatrix& x) {
  if (model.num_support_vectors() > 0 && x.rows() > 0 &&
      x.cols() != model.support_vectors.cols()) {
    throw DimensionError("predict_batch: feature count does not match the model");
  }
  TargetVector out(x.rows());
  const auto rows = static_cast<std::ptrdiff_t>(x.rows());
#pragma omp parallel for schedule(static) if (rows >= 256)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    out[static_cast<std::size_t>(r)] = predict(model, x.row(static_cast<std::size_t>(r)));
  }
  return out;
}

double kkt_violation(const SvrModel& model, const FeatureMatrix& x, const TargetVector& y,
                     const SvrParams& params) {
  std::vector<double> beta(x.rows(), 0.0);
  for (std::size_t k = 0; k < model.sv_indices.size(); ++k) beta[model.sv_indices[k]] = model.beta[k];

  const double c = params.c;
  const double eps = params.epsilon;
  double worst = std::abs(std::accumulate(beta.begin(), beta.end(), 0.0));
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double r = y[i] - predict(model, x.row(i));
    const double b = beta[i];
    double v;
    if (b == 0.0) {
      v = std::max(0.0, std::abs(r) - eps);
    } else if (b >= c) {
      v = std::max(b - c, std::max(0.0, eps - r));
    } else if (b <= -c) {
      v = std::max(-c - b, std::max(0.0, r + eps));
    } else if (b > 0.0) {
      v = std::abs(r - eps);
    } else {
      v = std::abs(r + eps);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

double dual_objective(const SvrModel& model, const TargetVector& y, double epsilon) {
  const std::size_t m = model.num_support_vectors();
  const std::size_t d = model.support_vectors.cols();
  double quad = 0.0;
  double linear = 0.0;
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      quad += model.beta[s] * model.beta[t] *
              kernel_eval_unchecked(model.kernel, model.support_vectors.row(s).data(),
                                    model.support_vectors.row(t).data(), d);
    }
    linear += epsilon * std::abs(model.beta[s]) - y[model.sv_indices[s]] * model.beta[s];
  }
  return 0.5 * quad + linear;
}

double dual_objective(std::span<const double> beta, const Matrix& gram, const TargetVector& y,
                      double epsilon) {
  const std::size_t n = beta.size();
  double quad = 0.0;
  double linear = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) quad += beta[s] * beta[t] * gram(s, t);
    linear += epsilon * std::abs(beta[s]) - y[s] * beta[s];
  }
  return 0.5 * quad + linear;
}

}  // namespace swarm_svr
