// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cuntz/functions.hpp"
#include "cuntz/hermitian.hpp"
#include "test_util.hpp"

using namespace cuntz;

TEST_CASE("eig of a diagonal matrix sorts descending") {
  auto es = eig_decompose(HermitianMatrix::diagonal({0.3, 1.0}));
  CHECK(es.values(0) == doctest::Approx(1.0));
  CHECK(es.values(1) == doctest::Approx(0.3));
  CHECK(std::abs(es.frame(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(es.frame(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eig of zero gives identity frame") {
  auto es = eig_decompose(HermitianMatrix(Matrix::Zero(3, 3)));
  CHECK(es.values.isZero());
  CHECK((es.frame - Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("eig reconstruction residual and agreement with a reference solver") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 16; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      Matrix g = testutil::random_matrix(n, n, rng);
      Matrix h = (g + g.adjoint()) / 2.0;
      auto es = eig_decompose(h);
      const double scale = testutil::oracle_eigenvalues(h).cwiseAbs().maxCoeff();
      Matrix rec = es.frame * es.values.cast<std::complex<double>>().asDiagonal() * es.frame.adjoint();
      CHECK(operator_norm(Matrix(rec - h)) <= 1e-10 * scale);
      CHECK((es.frame.adjoint() * es.frame - Matrix::Identity(n, n)).norm() < 1e-12 * n);
      CHECK((es.values - testutil::oracle_eigenvalues(h)).cwiseAbs().maxCoeff() <= 1e-11 * scale);
      for (int i = 1; i < n; ++i) CHECK(es.values(i - 1) >= es.values(i));
    }
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  Matrix m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(eig_decompose(m), InvalidInput);
  CHECK_THROWS_AS(PositiveMatrix(HermitianMatrix::diagonal({1.0, -0.5})), InvalidInput);
}

TEST_CASE("tiny negative eigenvalues are clipped") {
  auto p = PositiveMatrix(HermitianMatrix::diagonal({1.0, -1e-12}));
  CHECK(p.eigenvalues()(1) == 0.0);
}

TEST_CASE("functional calculus examples") {
  auto a = PositiveMatrix::diagonal({1.0, 0.3});
  auto c = functional_calculus(a, CutFunction<double>{0.5});
  CHECK(std::abs(c.matrix()(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(c.matrix()(1, 1)) < 1e-15);
  auto id = functional_calculus(a, IdentityFunction<double>{});
  CHECK((id.matrix() - a.matrix()).norm() < 1e-15);

  auto b = PositiveMatrix::diagonal({1.0, 0.5, 0.1});
  auto g = functional_calculus(b, GEpsilon<double>{0.2});
  // 0.2/1, 0.2/0.5 and 0.1/0.2
  CHECK(std::abs(g.matrix()(0, 0) - 0.2) < 1e-15);
  CHECK(std::abs(g.matrix()(1, 1) - 0.4) < 1e-15);
  CHECK(std::abs(g.matrix()(2, 2) - 0.5) < 1e-15);
}

TEST_CASE("functional calculus commutes with a and checks the function") {
  std::mt19937_64 rng(11);
  auto a = testutil::random_psd(5, rng);
  auto f = functional_calculus(a, PiecewiseLinear<double>({0.0, 0.25, 0.6, 1.0}, {0.0, 0.7, 0.1, 0.9}));
  CHECK((f.matrix() * a.matrix() - a.matrix() * f.matrix()).norm() < 1e-9);
  PiecewiseLinear<double> neg({0.0, 0.5, 1.0}, {0.0, -0.1, 0.3});
  CHECK_THROWS_AS(functional_calculus(a, neg), InvalidInput);
  PiecewiseLinear<double> short_domain({0.0, 0.5}, {0.0, 1.0});
  CHECK_THROWS_AS(functional_calculus(a, short_domain), InvalidInput);
}

TEST_CASE("piecewise linear e_t agrees with the exact cut function") {
  std::mt19937_64 rng(13);
  auto a = testutil::random_psd(4, rng);
  auto x = functional_calculus(a, cut_function_pl(0.3));
  auto y = cut_down(a, 0.3);
  CHECK((x.matrix() - y.matrix()).norm() < 1e-14);
}

TEST_CASE("cut_down") {
  auto a = PositiveMatrix::diagonal({1.0, 0.3});
  auto c = cut_down(a, 0.5);
  CHECK(c.eigenvalues()(0) == doctest::Approx(0.5));
  CHECK(c.eigenvalues()(1) == 0.0);
  CHECK((cut_down(a, 0.0).matrix() - a.matrix()).norm() == 0.0);
  CHECK_THROWS_AS(cut_down(a, -0.1), InvalidInput);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    auto r = testutil::random_psd(1 + rep % 6, rng);
    auto lhs = cut_down(r, 0.2);
    auto rhs = functional_calculus(r, CutFunction<double>{0.2});
    CHECK((lhs.matrix() - rhs.matrix()).norm() == 0.0);
    std::uniform_real_distribution<double> u(0.0, 0.6);
    const double s = u(rng), t = u(rng);
    auto twice = cut_down(cut_down(r, s), t);
    auto once = cut_down(r, s + t);
    CHECK((twice.matrix() - once.matrix()).norm() <= 1e-9);
  }
}

TEST_CASE("rank_at") {
  auto a = PositiveMatrix::diagonal({1.0, 0.3});
  CHECK(rank_at(a, 0.5, 1e-9) == 1);
  CHECK(rank_at(PositiveMatrix::diagonal({1.0, 0.3, 0.0}), 0.0, 1e-9) == 2);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    auto r = testutil::random_psd(6, rng, 1.0, 1 + rep % 6);
    int prev = rank_at(r, 0.0);
    for (int k = 1; k <= 200; ++k) {
      const double t = k / 200.0;
      const int cur = rank_at(r, t);
      CHECK(cur <= prev);
      prev = cur;
    }
    CHECK(rank_at(r, 0.55) == rank_at(cut_down(r, 0.25), 0.30));
  }
}
