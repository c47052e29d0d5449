// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <map>
#include <set>

#include "cuntz/matrix_field.hpp"
#include "cuntz/random_fields.hpp"
#include "test_util.hpp"

using namespace cuntz;

TEST_CASE("point, interval and circle meshes") {
  const BaseSpace p = BaseSpace::point();
  CHECK(p.size() == 1);
  CHECK(p.dimension() == 0);
  CHECK(p.connected());

  const BaseSpace i = BaseSpace::interval(11);
  CHECK(i.size() == 11);
  CHECK(i.point(0).coords(0) == 0.0);
  CHECK(i.point(10).coords(0) == doctest::Approx(1.0));
  CHECK(i.step() == doctest::Approx(0.1));
  CHECK(i.neighbors(0).size() == 1);
  CHECK(i.neighbors(5).size() == 2);
  CHECK(i.edges().size() == 10);

  const BaseSpace c = BaseSpace::circle(8);
  CHECK(c.size() == 8);
  CHECK(c.edges().size() == 8);
  for (int k = 0; k < c.size(); ++k) {
    CHECK(c.neighbors(k).size() == 2);
    CHECK(c.point(k).coords.head<2>().norm() == doctest::Approx(1.0));
  }
  CHECK(c.h2_trivial());

  CHECK_THROWS_AS(BaseSpace::interval(1), InvalidInput);
  CHECK_THROWS_AS(BaseSpace::circle(2), InvalidInput);
  CHECK_THROWS_AS(space_kind_from_string("torus"), InvalidInput);
}

TEST_CASE("icosahedral sphere meshes are closed oriented surfaces") {
  for (int v : {12, 42, 162, 642}) {
    CAPTURE(v);
    const BaseSpace s = BaseSpace::sphere(v);
    CHECK(s.size() == v);
    CHECK(s.dimension() == 2);
    CHECK_FALSE(s.h2_trivial());
    // Euler characteristic of S².
    CHECK(s.size() - int(s.edges().size()) + int(s.faces().size()) == 2);
    for (const auto& p : s.points()) CHECK(p.coords.head<3>().norm() == doctest::Approx(1.0));
    for (const auto& f : s.faces()) {
      const Eigen::Vector3d a = s.point(f[0]).coords.head<3>(), b = s.point(f[1]).coords.head<3>(),
                            c = s.point(f[2]).coords.head<3>();
      CHECK((b - a).cross(c - a).dot(a + b + c) > 0);
    }
    // Every edge borders exactly two faces.
    std::map<std::pair<int, int>, int> count;
    for (const auto& f : s.faces())
      for (int e = 0; e < 3; ++e) {
        const int x = f[std::size_t(e)], y = f[std::size_t((e + 1) % 3)];
        ++count[{std::min(x, y), std::max(x, y)}];
      }
    for (const auto& [edge, k] : count) CHECK(k == 2);
    CHECK(s.connected());
  }
  CHECK_THROWS_AS(BaseSpace::sphere(100), InvalidInput);
}

TEST_CASE("products index base-major") {
  const BaseSpace base = BaseSpace::interval(5);
  const BaseSpace p = BaseSpace::product(base, {0.25, 0.5, 1.0});
  CHECK(p.kind() == SpaceKind::Product);
  CHECK(p.size() == 15);
  CHECK(p.dimension() == 2);
  for (int b = 0; b < 5; ++b)
    for (int t = 0; t < 3; ++t) {
      const MeshPoint& m = p.point(p.product_index(b, t));
      CHECK(m.base_index == b);
      CHECK(m.t == p.t_samples()[std::size_t(t)]);
    }
  CHECK(p.connected());
  CHECK_THROWS_AS(BaseSpace::product(base, {0.5, 0.25}), InvalidInput);
  CHECK_THROWS_AS(BaseSpace::product(base, {0.0, 0.5}), InvalidInput);
  CHECK_THROWS_AS(BaseSpace::product(p, {0.5}), InvalidInput);

  const auto t = BaseSpace::interval_samples(4, 0.2, 3);
  std::set<double> expected{0.25, 0.5, 0.75, 1.0, 0.2, 0.1, 0.05, 0.025};
  CHECK(t == std::vector<double>(expected.begin(), expected.end()));
}

TEST_CASE("rank fields and lsc flags") {
  const SpacePtr s = make_space(BaseSpace::interval(5));
  // diag(x, 1 − x)
  const MatrixField a = build_field(s, 2, [](const MeshPoint& p) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = p.coords(0);
    m(1, 1) = 1 - p.coords(0);
    return m;
  });
  CHECK(rank_field(a, 0.0).ranks == std::vector<int>{1, 2, 2, 2, 1});
  CHECK(rank_field(a, 0.6).ranks == std::vector<int>{1, 1, 0, 1, 1});
  CHECK(rank_field(a, 0.6).lsc_flags.empty());
  CHECK(lsc_violations(*s, {0, 0, 1, 0, 0}) == std::vector<int>{2});
  CHECK(lsc_violations(*s, {0, 1, 1, 0, 0}).empty());
  CHECK(a.sup_norm() == doctest::Approx(1.0));
  CHECK(a.flags().empty());
}

TEST_CASE("unitary conjugation preserves spectra") {
  std::mt19937_64 rng(11);
  for (const SpacePtr& s : {make_space(BaseSpace::circle(16)), make_space(BaseSpace::sphere(42))}) {
    RandomFieldOptions o;
    o.n = 3;
    o.rank = 2;
    const MatrixField a = random_field(s, rng, o);
    const auto u = random_unitary_field(*s, 3, 5);
    const MatrixField b = conjugate_by_unitary_field(a, u);
    for (int i = 0; i < s->size(); ++i) {
      const Matrix& ui = u[std::size_t(i)];
      CHECK((ui * ui.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-10);
      const auto ea = testutil::oracle_eigenvalues(a.sample(i).matrix());
      const auto eb = testutil::oracle_eigenvalues(b.sample(i).matrix());
      CHECK((ea - eb).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK(a.sup_norm() == doctest::Approx(o.norm).epsilon(1e-9));
  }
}

TEST_CASE("sup distance pads the smaller field") {
  const SpacePtr s = make_space(BaseSpace::point());
  const MatrixField a = build_field(s, 1, [](const MeshPoint&) { return Matrix::Constant(1, 1, 0.5); });
  const MatrixField b = build_field(s, 2, [](const MeshPoint&) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.25;
    m(1, 1) = 0.75;
    return m;
  });
  CHECK(sup_distance(a, b) == doctest::Approx(0.75));
}
