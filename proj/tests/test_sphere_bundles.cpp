// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cuntz/chern.hpp"
#include "cuntz/distances.hpp"
#include "cuntz/random_fields.hpp"
#include "cuntz/sphere_bundles.hpp"
#include "cuntz/suspension.hpp"

using namespace cuntz;

namespace {

// Bloch vector of a rank-one 2×2 projection: P = (1 + n·σ)/2.
Eigen::Vector3d bloch(const Matrix& p) {
  return {2 * p(0, 1).real(), -2 * p(0, 1).imag(), (p(0, 0) - p(1, 1)).real()};
}

// Signed solid angle of a spherical triangle (Van Oosterom and Strackee).
double solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2 * std::atan2(num, den);
}

// Degree of x ↦ n(x) from the image of each mesh face.
double bloch_degree(const ProjectionField& p) {
  const BaseSpace& s = p.space();
  double total = 0;
  for (const auto& f : s.faces())
    total += solid_angle(bloch(p.field().sample(f[0]).matrix()).normalized(),
                         bloch(p.field().sample(f[1]).matrix()).normalized(),
                         bloch(p.field().sample(f[2]).matrix()).normalized());
  return total / (4 * std::numbers::pi);
}

}  // namespace

TEST_CASE("Chern numbers of Bott projections match the Bloch-sphere degree") {
  for (int v : {162, 642}) {
    const SpacePtr s = make_space(BaseSpace::sphere(v));
    for (int k = -2; k <= 3; ++k) {
      CAPTURE(v);
      CAPTURE(k);
      const ProjectionField p = bott_projection(s, k);
      CHECK(p.rank() == 1);
      const double deg = bloch_degree(p);
      CHECK(std::abs(deg - std::round(deg)) < 1e-6);
      CHECK(chern_number(p) == int(std::lround(deg)));
      CHECK(chern_number(p) == k);
      CHECK(std::abs(p.chern().curvature - k) < 1e-9);
      if (p.chern().winding) CHECK(p.chern().cross_checked);
    }
  }
}

TEST_CASE("Chern numbers are additive and stable across meshes") {
  for (int v : {42, 162, 642}) {
    const SpacePtr s = make_space(BaseSpace::sphere(v));
    const ProjectionField p1 = bott_projection(s, 1), p2 = bott_projection(s, 2);
    CHECK(chern_number(direct_sum(p1, p2)) == 3);
    CHECK(chern_number(direct_sum(p1, bott_projection(s, -1))) == 0);
    CHECK(chern_number(complement(p2)) == -2);
    CHECK(chern_number(bott_projection(s, 0)) == 0);
    CHECK(direct_sum(p1, p2).rank() == 2);
  }
}

TEST_CASE("Chern number ignores the frame gauge") {
  const SpacePtr s = make_space(BaseSpace::sphere(162));
  const ProjectionField p = direct_sum(bott_projection(s, 1), bott_projection(s, 1));
  auto frames = p.frames();
  const auto u = random_unitary_field(*s, 2, 17);
  for (std::size_t i = 0; i < frames.size(); ++i) frames[i] = frames[i] * u[i];
  CHECK(chern_from_frames(*s, frames).value == 2);
}

TEST_CASE("projection fields are validated") {
  const SpacePtr s = make_space(BaseSpace::sphere(42));
  const MatrixField half = build_field(s, 1, [](const MeshPoint&) { return Matrix::Constant(1, 1, 0.5); });
  CHECK_THROWS_AS(ProjectionField{half}, InvalidInput);
  const MatrixField jump = build_field(s, 1, [](const MeshPoint& p) {
    return Matrix::Constant(1, 1, p.coords(2) > 0 ? 1.0 : 0.0);
  });
  CHECK_THROWS_AS(ProjectionField{jump}, InvalidInput);
}

TEST_CASE("sphere pair satisfies all three clauses") {
  const SpacePtr s = make_space(BaseSpace::sphere(162));
  const SpherePair pair = canonical_sphere_pair(s);
  const SphereReport r = verify_sphere_counterexample(pair);
  CHECK(r.clause1);
  CHECK(r.clause2);
  CHECK(r.clause3);
  CHECK(r.path_dw.lo == 0);
  CHECK(r.ratio_max == doctest::Approx(0.5));
  CHECK(r.bound >= 1 - r.ratio_max - 1.0 / 256);
  CHECK(r.witness.find("ChernObstruction") != std::string::npos);

  const SphereReport rc = verify_sphere_counterexample(conjugate_b(pair, random_unitary_field(*s, 2, 3)));
  CHECK(rc.passed());
  CHECK(rc.bound == r.bound);
}

TEST_CASE("constant-rank comparison is decided by the Chern number") {
  const SpacePtr s = make_space(BaseSpace::sphere(162));
  const SpherePair pair = canonical_sphere_pair(s);
  const auto [na, nb] = normalized_pair(pair);
  // (a − 3/4)_+ and (b − 3/4)_+ are multiples of P and E: rank 1 everywhere, c_1 = 1 and 0.
  const MatrixField ca = cut_down_field(na, 0.75), cb = cut_down_field(nb, 0.75);
  const auto v = cuntz_compare(ca, cb);
  CHECK(v.holds == Holds::No);
  CHECK(v.reason == VerdictReason::ChernObstruction);
  CHECK(cuntz_compare(ca, ca).holds == Holds::Yes);
  const SpectralField sa(na, 1.0 / 256, kRankTolerance);
  CHECK(sa.chern_top(1) == std::optional<int>(1));
}

TEST_CASE("sphere pair inputs are validated") {
  const SpacePtr s = make_space(BaseSpace::sphere(42));
  auto c = [](double v) { return [v](const MeshPoint&) { return v; }; };
  auto z = [](double a, double b) { return [a, b](const MeshPoint& p) { return a + b * p.coords(2); }; };
  CHECK_THROWS_AS(build_sphere_pair(s, z(0.75, 0.25), z(0.25, 0.25), 0), InvalidInput);
  CHECK_THROWS_AS(build_sphere_pair(s, z(0.25, 0.25), z(0.75, 0.25), 1), InvalidInput);
  CHECK_THROWS_AS(build_sphere_pair(s, z(0.75, 0.25), c(0.1), 1), InvalidInput);   // min λ2 ≠ 0
  CHECK_THROWS_AS(build_sphere_pair(s, c(1.5), z(0.25, 0.25), 1), InvalidInput);   // λ1 > 1
  CHECK_THROWS_AS(build_sphere_pair(s, c(0.9), z(0.25, 0.25), 1), InvalidInput);   // min λ1 > max λ2
  CHECK_NOTHROW(build_sphere_pair(s, z(0.75, 0.25), z(0.25, 0.25), -1));
}

TEST_CASE("tensor fields scale the spectrum by f(t)") {
  const SpacePtr s = make_space(BaseSpace::sphere(42));
  const SpherePair pair = canonical_sphere_pair(s);
  const SpacePtr prod = make_space(BaseSpace::product(*s, {0.25, 0.5, 1.0}));
  const GEpsilon g{0.5};
  const MatrixField t = tensor_field(pair.a, [g](double x) { return g(x); }, prod);
  for (int x = 0; x < s->size(); ++x)
    for (int j = 0; j < 3; ++j) {
      const double tj = prod->t_samples()[std::size_t(j)];
      const Matrix expected = pair.a.sample(x).matrix() * g(tj);
      CHECK((t.sample(prod->product_index(x, j)).matrix() - expected).norm() < 1e-12);
    }
  CHECK(g(0.25) == doctest::Approx(0.5));
  CHECK(g(0.5) == doctest::Approx(1.0));
  CHECK(g(1.0) == doctest::Approx(0.5));
}

TEST_CASE("suspension by g_eps separates the sphere pair") {
  const SpacePtr s = make_space(BaseSpace::sphere(162));
  const SpherePair pair = canonical_sphere_pair(s);
  const double eps = 0.2;
  const SuspensionResult r = suspension_dw(pair.a, pair.b, eps);
  CHECK(r.suspended.interval.lo >= eps * eps / 2);
  CHECK(r.baseline.interval.lo == 0);
  const SuspensionResult self = suspension_dw(pair.a, pair.a, eps);
  CHECK(self.suspended.interval.lo == 0);
  CHECK(self.suspended.interval.hi == doctest::Approx(1.0 / 256));
}
