#pragma once

#include <span>
#include <string>
#include <string_view>

#include "swarm_svr/matrix.hpp"

namespace swarm_svr {

enum class KernelFamily { kLinear, kPolynomial, kRbf, kSigmoid };

std::string_view kernel_family_name(KernelFamily f);
KernelFamily parse_kernel_family(std::string_view name);

/// Kernel family and its parameters. Construct through the named factories,
/// which validate the parameter domain of each family.
class KernelSpec {
 public:
  /// x1ᵀx2
  static KernelSpec linear();
  /// (x1ᵀx2 + gamma)^degree; gamma is the additive constant.
  static KernelSpec polynomial(double gamma, int degree);
  /// exp(-gamma ‖x1 - x2‖²)
  static KernelSpec rbf(double gamma);
  /// tanh(gamma x1ᵀx2 + offset)
  static KernelSpec sigmoid(double gamma, double offset);

  KernelFamily family() const { return family_; }
  double gamma() const { return gamma_; }
  int degree() const { return degree_; }
  double offset() const { return offset_; }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(KernelFamily f, double gamma, int degree, double offset)
      : family_(f), gamma_(gamma), degree_(degree), offset_(offset) {}

  KernelFamily family_ = KernelFamily::kRbf;
  double gamma_ = 1.0;
  int degree_ = 0;
  double offset_ = 0.0;
};

/// Throws DimensionError when the vectors differ in length.
double kernel_eval(const KernelSpec& spec, std::span<const double> x1, std::span<const double> x2);

/// Same as kernel_eval without the dimension check; for inner loops.
double kernel_eval_unchecked(const KernelSpec& spec, const double* x1, const double* x2,
                             std::size_t dim);

/// Full symmetric Gram matrix. Each unordered pair is evaluated once and
/// mirrored, so the result equals its transpose bit-exactly. Row blocks run
/// under OpenMP; the result does not depend on the thread count.
Matrix gram_matrix(const KernelSpec& spec, const Matrix& x);

/// Single-threaded reference for gram_matrix.
Matrix gram_matrix_serial(const KernelSpec& spec, const Matrix& x);

/// out[j] = K(x_i, x_j) for every row j. Parallel over j when `parallel`.
void kernel_row(const KernelSpec& spec, const Matrix& x, std::size_t i, std::span<double> out,
                bool parallel = true);

}  // namespace swarm_svr
