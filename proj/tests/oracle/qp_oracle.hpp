#pragma once

// Reference solvers for the ε-SVR dual
//   min_β ½βᵀKβ + ε‖β‖₁ − yᵀβ   s.t.  Σβ = 0,  |β_i| ≤ C.
// They share nothing with the SMO solver: one is a dense grid over the
// feasible set for n = 2 or 3, the other accelerated projected gradient on
// the split (α, α*) form with an exact projection onto box ∩ hyperplane.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace swarm_svr::oracle {

struct DualProblem {
  std::vector<std::vector<double>> gram;  // n x n
  std::vector<double> y;
  double c = 1.0;
  double epsilon = 0.1;

  std::size_t n() const { return y.size(); }

  double objective(const std::vector<double>& beta) const {
    double quad = 0.0, lin = 0.0;
    for (std::size_t s = 0; s < n(); ++s) {
      for (std::size_t t = 0; t < n(); ++t) quad += beta[s] * beta[t] * gram[s][t];
      lin += epsilon * std::abs(beta[s]) - y[s] * beta[s];
    }
    return 0.5 * quad + lin;
  }
};

struct OracleSolution {
  std::vector<double> beta;
  double objective = std::numeric_limits<double>::infinity();
};

/// Exhaustive grid for n == 2 (one free coordinate) or n == 3 (two), refined
/// by repeated zooming around the incumbent.
inline OracleSolution grid_oracle(const DualProblem& p, std::size_t points = 2001) {
  const double c = p.c;
  OracleSolution best;
  if (p.n() == 1) {
    best.beta = {0.0};
    best.objective = 0.0;
    return best;
  }
  if (p.n() == 2) {
    double lo = -c, hi = c;
    for (int zoom = 0; zoom < 6; ++zoom) {
      for (std::size_t k = 0; k < points; ++k) {
        double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        std::vector<double> b = {t, -t};
        double f = p.objective(b);
        if (f < best.objective) best = {b, f};
      }
      double w = (hi - lo) / 50.0;
      lo = std::max(-c, best.beta[0] - w);
      hi = std::min(c, best.beta[0] + w);
    }
    return best;
  }
  if (p.n() == 3) {
    double lo0 = -c, hi0 = c, lo1 = -c, hi1 = c;
    const std::size_t m = 401;
    for (int zoom = 0; zoom < 8; ++zoom) {
      for (std::size_t a = 0; a < m; ++a) {
        double s = lo0 + (hi0 - lo0) * static_cast<double>(a) / static_cast<double>(m - 1);
        for (std::size_t b = 0; b < m; ++b) {
          double t = lo1 + (hi1 - lo1) * static_cast<double>(b) / static_cast<double>(m - 1);
          if (std::abs(s + t) > c) continue;
          std::vector<double> beta = {s, t, -s - t};
          double f = p.objective(beta);
          if (f < best.objective) best = {beta, f};
        }
      }
      double w0 = (hi0 - lo0) / 40.0, w1 = (hi1 - lo1) / 40.0;
      lo0 = std::max(-c, best.beta[0] - w0);
      hi0 = std::min(c, best.beta[0] + w0);
      lo1 = std::max(-c, best.beta[1] - w1);
      hi1 = std::min(c, best.beta[1] + w1);
    }
    return best;
  }
  return best;
}

namespace detail {

// Projection of v onto {z in [0, C]^2n : Σ_{i<n} z_i − Σ_{i>=n} z_i = 0}.
inline std::vector<double> project(const std::vector<double>& v, std::size_t n, double c) {
  auto sign = [n](std::size_t i) { return i < n ? 1.0 : -1.0; };
  auto residual = [&](double lambda) {
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r += sign(i) * std::clamp(v[i] - lambda * sign(i), 0.0, c);
    return r;
  };
  double span = c;
  for (double x : v) span = std::max(span, std::abs(x) + c);
  double lo = -span, hi = span;  // residual(lo) >= 0 >= residual(hi)
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  std::vector<double> z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) z[i] = std::clamp(v[i] - lambda * sign(i), 0.0, c);
  return z;
}

}  // namespace detail

/// FISTA with gradient-based adaptive restart on the (α, α*) form.
inline OracleSolution projected_gradient_oracle(const DualProblem& p, std::size_t iterations = 60000) {
  const std::size_t n = p.n();
  const std::size_t l = 2 * n;
  // Lipschitz bound of the gradient: 2·‖K‖_F ≥ λ_max of [[K, −K], [−K, K]].
  double fro = 0.0;
  for (const auto& row : p.gram)
    for (double v : row) fro += v * v;
  const double lipschitz = std::max(2.0 * std::sqrt(fro), 1e-12);
  const double step = 1.0 / lipschitz;

  auto gradient = [&](const std::vector<double>& z) {
    std::vector<double> g(l);
    for (std::size_t i = 0; i < n; ++i) {
      double kb = 0.0;
      for (std::size_t j = 0; j < n; ++j) kb += p.gram[i][j] * (z[j] - z[j + n]);
      g[i] = kb + p.epsilon - p.y[i];
      g[i + n] = -kb + p.epsilon + p.y[i];
    }
    return g;
  };
  auto beta_of = [&](const std::vector<double>& z) {
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = z[i] - z[i + n];
    return b;
  };

  std::vector<double> z(l, 0.0), w = z;
  double momentum = 1.0;
  OracleSolution best{beta_of(z), p.objective(beta_of(z))};
  for (std::size_t it = 0; it < iterations; ++it) {
    auto g = gradient(w);
    std::vector<double> v(l);
    for (std::size_t i = 0; i < l; ++i) v[i] = w[i] - step * g[i];
    auto z_next = detail::project(v, n, p.c);
    double restart_test = 0.0;
    for (std::size_t i = 0; i < l; ++i) restart_test += g[i] * (z_next[i] - z[i]);
    double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    if (restart_test > 0.0) {
      next_momentum = 1.0;
      w = z_next;
    } else {
      for (std::size_t i = 0; i < l; ++i)
        w[i] = z_next[i] + (momentum - 1.0) / next_momentum * (z_next[i] - z[i]);
    }
    momentum = next_momentum;
    z = std::move(z_next);
    double f = p.objective(beta_of(z));
    if (f < best.objective) best = {beta_of(z), f};
  }
  return best;
}

}  // namespace swarm_svr::oracle
