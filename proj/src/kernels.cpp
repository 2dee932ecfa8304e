#include "swarm_svr/kernels.hpp"

#include <cmath>

#include "swarm_svr/errors.hpp"

namespace swarm_svr {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

// Below this many rows the OpenMP fork costs more than the row fill.
constexpr std::size_t kParallelRowThreshold = 512;

}  // namespace

std::string_view kernel_family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::kLinear: return "linear";
    case KernelFamily::kPolynomial: return "polynomial";
    case KernelFamily::kRbf: return "rbf";
    case KernelFamily::kSigmoid: return "sigmoid";
  }
  return "?";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "linear") return KernelFamily::kLinear;
  if (name == "polynomial") return KernelFamily::kPolynomial;
  if (name == "rbf") return KernelFamily::kRbf;
  if (name == "sigmoid") return KernelFamily::kSigmoid;
  throw InvalidArgument("unknown kernel family '" + std::string(name) + "'");
}

KernelSpec KernelSpec::linear() { return {KernelFamily::kLinear, 0.0, 0, 0.0}; }

KernelSpec KernelSpec::polynomial(double gamma, int degree) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("polynomial kernel needs gamma > 0");
  if (degree <= 0) throw InvalidArgument("polynomial kernel needs degree > 0");
  return {KernelFamily::kPolynomial, gamma, degree, 0.0};
}

KernelSpec KernelSpec::rbf(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("rbf kernel needs gamma > 0");
  return {KernelFamily::kRbf, gamma, 0, 0.0};
}

KernelSpec KernelSpec::sigmoid(double gamma, double offset) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("sigmoid kernel needs gamma > 0");
  if (!(offset > 0.0) || !std::isfinite(offset)) throw InvalidArgument("sigmoid kernel needs r > 0");
  return {KernelFamily::kSigmoid, gamma, 0, offset};
}

double kernel_eval_unchecked(const KernelSpec& spec, const double* x1, const double* x2,
                             std::size_t dim) {
  switch (spec.family()) {
    case KernelFamily::kLinear:
      return dot(x1, x2, dim);
    case KernelFamily::kPolynomial:
      return std::pow(dot(x1, x2, dim) + spec.gamma(), spec.degree());
    case KernelFamily::kRbf:
      return std::exp(-spec.gamma() * squared_distance(x1, x2, dim));
    case KernelFamily::kSigmoid:
      return std::tanh(spec.gamma() * dot(x1, x2, dim) + spec.offset());
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x1,
                   std::span<const double> x2) {
  if (x1.size() != x2.size()) {
    throw DimensionError("kernel_eval: dimensions " + std::to_string(x1.size()) + " and " +
                         std::to_string(x2.size()) + " differ");
  }
  return kernel_eval_unchecked(spec, x1.data(), x2.data(), x1.size());
}

Matrix gram_matrix_serial(const KernelSpec& spec, const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double v = kernel_eval_unchecked(spec, x.row(i).data(), x.row(j).data(), d);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Matrix gram_matrix(const KernelSpec& spec, const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  Matrix g(n, n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
  // Upper triangle rows shrink with i; dynamic scheduling balances them.
#pragma omp parallel for schedule(dynamic, 16) if (n >= 64)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = kernel_eval_unchecked(spec, x.row(i).data(), x.row(j).data(), d);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g(j, i) = g(i, j);
  }
  return g;
}

void kernel_row(const KernelSpec& spec, const Matrix& x, std::size_t i, std::span<double> out,
                bool parallel) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  const double* xi = x.row(i).data();
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (parallel && n >= kParallelRowThreshold)
  for (std::ptrdiff_t jj = 0; jj < rows; ++jj) {
    auto j = static_cast<std::size_t>(jj);
    out[j] = kernel_eval_unchecked(spec, xi, x.row(j).data(), d);
  }
}

}  // namespace swarm_svr
