#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "swarm_svr/errors.hpp"
#include "swarm_svr/kernels.hpp"

namespace swarm_svr {
namespace {

Matrix random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(n, d);
  for (double& v : m.data()) v = g(rng);
  return m;
}

TEST(Kernel, HandValues) {
  std::vector<double> a = {1, 2}, b = {3, -1};
  EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::linear(), a, b), 1.0);
  EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::polynomial(1.0, 2), a, b), 4.0);
  EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::rbf(0.5), a, b), std::exp(-0.5 * 13.0));
  EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::sigmoid(0.5, 1.0), a, b), std::tanh(1.5));
}

TEST(Kernel, RbfExampleValues) {
  std::vector<double> zero = {0, 0}, e1 = {1, 0};
  EXPECT_NEAR(kernel_eval(KernelSpec::rbf(1.0), zero, e1), 0.367879441, 1e-9);
  EXPECT_EQ(kernel_eval(KernelSpec::rbf(1.0), e1, e1), 1.0);
}

TEST(Kernel, WorkedExamples) {
  std::vector<double> e1 = {1, 0}, e2 = {0, 1};
  EXPECT_NEAR(kernel_eval(KernelSpec::rbf(1.0), e1, e2), 0.135335, 1e-6);
  std::vector<double> a = {1, 2}, b = {3, 4};
  EXPECT_EQ(kernel_eval(KernelSpec::linear(), a, b), 11.0);
  std::vector<double> ones = {1, 1};
  EXPECT_EQ(kernel_eval(KernelSpec::polynomial(1.0, 2), ones, ones), 9.0);
}

TEST(Kernel, DimensionMismatch) {
  std::vector<double> a = {1, 2}, b = {1, 2, 3};
  EXPECT_THROW(kernel_eval(KernelSpec::rbf(1.0), a, b), DimensionError);
}

TEST(Kernel, ParameterDomains) {
  EXPECT_THROW(KernelSpec::rbf(0.0), InvalidArgument);
  EXPECT_THROW(KernelSpec::rbf(-1.0), InvalidArgument);
  EXPECT_THROW(KernelSpec::rbf(std::nan("")), InvalidArgument);
  EXPECT_THROW(KernelSpec::polynomial(1.0, 0), InvalidArgument);
  EXPECT_THROW(KernelSpec::polynomial(0.0, 2), InvalidArgument);
  EXPECT_THROW(KernelSpec::sigmoid(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(KernelSpec::sigmoid(0.0, 1.0), InvalidArgument);
}

TEST(Kernel, SymmetricForEveryFamily) {
  const KernelSpec specs[] = {KernelSpec::linear(), KernelSpec::polynomial(0.7, 3),
                              KernelSpec::rbf(0.3), KernelSpec::sigmoid(0.2, 0.5)};
  auto x = random_points(200, 5, 11);
  for (const auto& s : specs) {
    for (std::size_t i = 0; i + 1 < x.rows(); i += 2) {
      EXPECT_EQ(kernel_eval(s, x.row(i), x.row(i + 1)), kernel_eval(s, x.row(i + 1), x.row(i)));
    }
  }
}

TEST(Kernel, RbfDiagonalIsOneAndRangeIsUnitInterval) {
  auto x = random_points(100, 4, 12);
  auto spec = KernelSpec::rbf(2.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    EXPECT_EQ(kernel_eval(spec, x.row(i), x.row(i)), 1.0);
    double k = kernel_eval(spec, x.row(i), x.row((i + 1) % x.rows()));
    EXPECT_GT(k, 0.0);
    EXPECT_LE(k, 1.0);
  }
}

TEST(Kernel, RbfGramIsPositiveSemidefinite) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto x = random_points(10, 3, 100 + seed);
    auto g = gram_matrix(KernelSpec::rbf(0.1 + 0.3 * static_cast<double>(seed)), x);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        g.data().data(), 10, 10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8);
  }
}

TEST(GramMatrix, MatchesPairwiseEvaluation) {
  auto x = random_points(37, 6, 5);
  auto spec = KernelSpec::rbf(0.25);
  auto g = gram_matrix(spec, x);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.rows(); ++j) {
      EXPECT_EQ(g(i, j), g(j, i));
      if (i <= j) EXPECT_EQ(g(i, j), kernel_eval(spec, x.row(i), x.row(j)));
    }
  }
}

TEST(GramMatrix, ParallelEqualsSerial) {
  auto x = random_points(300, 12, 6);
  for (const auto& spec : {KernelSpec::rbf(0.08), KernelSpec::polynomial(1.0, 2)}) {
    EXPECT_EQ(gram_matrix(spec, x), gram_matrix_serial(spec, x));
  }
}

TEST(KernelRow, MatchesGramRow) {
  auto x = random_points(700, 4, 7);
  auto spec = KernelSpec::rbf(0.5);
  auto g = gram_matrix_serial(spec, x);
  std::vector<double> row(x.rows()), serial(x.rows());
  for (std::size_t i : {0u, 350u, 699u}) {
    kernel_row(spec, x, i, row, true);
    kernel_row(spec, x, i, serial, false);
    EXPECT_EQ(row, serial);
    for (std::size_t j = 0; j < x.rows(); ++j) EXPECT_EQ(row[j], g(i, j));
  }
}

TEST(KernelFamily, NamesRoundTrip) {
  for (auto f : {KernelFamily::kLinear, KernelFamily::kPolynomial, KernelFamily::kRbf, KernelFamily::kSigmoid}) {
    EXPECT_EQ(parse_kernel_family(kernel_family_name(f)), f);
  }
  EXPECT_THROW(parse_kernel_family("laplace"), InvalidArgument);
}

}  // namespace
}  // namespace swarm_svr
