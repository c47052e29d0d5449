// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "cuntz/distances.hpp"
#include "cuntz/random_fields.hpp"
#include "test_util.hpp"

using namespace cuntz;

namespace {

MatrixField constant_field(const SpacePtr& s, const Matrix& m) {
  return build_field(s, int(m.rows()), [m](const MeshPoint&) { return m; });
}

Eigen::VectorXd padded(const Eigen::VectorXd& v, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  out.head(v.size()) = v;
  return out;
}

// Grid search over (t, r): smallest r = m·h with #{λ_a > t + r} ≤ #{λ_b > t} and the reverse for all t = k·h.
double brute_force_dw(const Eigen::VectorXd& la, const Eigen::VectorXd& lb, double h) {
  auto count = [](const Eigen::VectorXd& l, double t) { return int((l.array() > t).count()); };
  const int K = int(std::ceil(1.0 / h)) + 2;
  for (int m = 0; m <= K; ++m) {
    bool ok = true;
    for (int k = 0; k <= K && ok; ++k) {
      const double t = k * h, r = m * h;
      ok = count(la, t + r) <= count(lb, t) && count(lb, t + r) <= count(la, t);
    }
    if (ok) return m * h;
  }
  return 2;
}

// Yes for m ≥ yes_from, No below no_until, Unknown in between.
struct ToyComparator : LevelComparator {
  int yes_from, no_until, L;
  ToyComparator(int y, int n, int l) : yes_from(y), no_until(n), L(l) {}
  int levels() const override { return L; }
  ComparisonVerdict compare(bool, int l_lhs, int l_rhs) const override {
    const int m = l_lhs - l_rhs;
    if (m >= yes_from) return ComparisonVerdict::yes(VerdictReason::RankCertified);
    if (m <= no_until) return ComparisonVerdict::no(VerdictReason::RankObstruction);
    return ComparisonVerdict::unknown();
  }
};

}  // namespace

TEST_CASE("point space agrees with a brute-force grid oracle and the eigenvalue gap") {
  std::mt19937_64 rng(2024);
  const SpacePtr pt = make_space(BaseSpace::point());
  const double h = 1.0 / 1024;
  for (int trial = 0; trial < 60; ++trial) {
    const int na = 1 + trial % 4, nb = 1 + (trial / 4) % 4;
    const auto ma = testutil::random_psd(na, rng, 0.1 + 0.9 * std::uniform_real_distribution<>()(rng), 1 + trial % na);
    const auto mb = testutil::random_psd(nb, rng, 0.1 + 0.9 * std::uniform_real_distribution<>()(rng));
    const MatrixField a = constant_field(pt, ma.matrix()), b = constant_field(pt, mb.matrix());
    const int n = std::max(na, nb);
    const Eigen::VectorXd la = padded(testutil::oracle_eigenvalues(ma.matrix()), n);
    const Eigen::VectorXd lb = padded(testutil::oracle_eigenvalues(mb.matrix()), n);
    const double gap = (la - lb).cwiseAbs().maxCoeff();

    const DwResult fast = dw_elements(a, b, {h, kRankTolerance, false});
    const DwResult slow = dw_elements(a, b, {h, kRankTolerance, true});
    CAPTURE(trial);
    CHECK(fast.interval.contains(gap));
    CHECK(fast.interval.contains(brute_force_dw(la, lb, h)));
    CHECK(fast.interval.hi - fast.interval.lo <= 2 * h + 1e-15);
    CHECK(slow.interval.lo == fast.interval.lo);
    CHECK(slow.interval.hi == fast.interval.hi);
    CHECK(du_thomsen(a, b).lo == doctest::Approx(gap).epsilon(1e-9));
    CHECK(std::abs(dw_point_exact(a, b) - gap) <= 1e-9);
  }
}

TEST_CASE("closed form and general search agree on interval and circle") {
  std::mt19937_64 rng(7);
  for (const SpacePtr& s : {make_space(BaseSpace::interval(24)), make_space(BaseSpace::circle(24))}) {
    for (int trial = 0; trial < 8; ++trial) {
      RandomFieldOptions o;
      o.n = 1 + trial % 3;
      o.rank = o.n;
      o.degree = 2;
      o.norm = 0.3 + 0.1 * trial;
      o.vanishing = trial % 2 == 0;
      const MatrixField a = random_field(s, rng, o), b = random_field(s, rng, o);
      const double h = 1.0 / 256;
      const DwResult fast = dw_elements(a, b, {h, kRankTolerance, false});
      const DwResult slow = dw_elements(a, b, {h, kRankTolerance, true});
      CHECK(fast.interval.lo == slow.interval.lo);
      CHECK(fast.interval.hi == slow.interval.hi);
      CHECK(slow.exact);
    }
  }
}

TEST_CASE("d_W is a pseudometric at grid resolution") {
  std::mt19937_64 rng(99);
  const SpacePtr s = make_space(BaseSpace::interval(32));
  RandomFieldOptions o;
  o.n = 2;
  const MatrixField a = random_field(s, rng, o), b = random_field(s, rng, o), c = random_field(s, rng, o);
  const DwOptions opt{1.0 / 512, kRankTolerance, false};
  const auto ab = dw_elements(a, b, opt).interval, ba = dw_elements(b, a, opt).interval;
  CHECK(ab.lo == ba.lo);
  CHECK(ab.hi == ba.hi);
  const auto aa = dw_elements(a, a, opt).interval;
  CHECK(aa.lo == 0);
  CHECK(aa.hi == doctest::Approx(opt.step));
  CHECK(dw_elements(a, c, opt).interval.lo <= ab.hi + dw_elements(b, c, opt).interval.hi);

  // Distance to zero is the sup norm.
  const MatrixField zero = constant_field(s, Matrix::Zero(2, 2));
  CHECK(dw_elements(a, zero, opt).interval.contains(a.sup_norm()));
}

TEST_CASE("sandwich holds on random pairs") {
  std::mt19937_64 rng(5);
  for (const SpacePtr& s : {make_space(BaseSpace::point()), make_space(BaseSpace::interval(32)),
                            make_space(BaseSpace::circle(32))}) {
    for (int trial = 0; trial < 10; ++trial) {
      RandomFieldOptions o;
      o.n = 1 + trial % 4;
      o.rank = 1 + trial % o.n;
      const MatrixField a = random_field(s, rng, o), b = random_field(s, rng, o);
      const SandwichReport r = verify_sandwich(a, b);
      CHECK(r.passed());
      CHECK(r.du <= r.norm + 1e-12);
    }
  }
}

TEST_CASE("rank comparison rules") {
  const BaseSpace i = BaseSpace::interval(4);
  CHECK(compare_rank_fields(i, {1, 1, 0, 0}, {1, 1, 1, 0}, 2, 2, nullptr, nullptr).holds == Holds::Yes);
  const auto no = compare_rank_fields(i, {1, 2, 0, 0}, {1, 1, 1, 0}, 2, 2, nullptr, nullptr);
  CHECK(no.holds == Holds::No);
  CHECK(no.reason == VerdictReason::RankObstruction);
  CHECK(compare_rank_fields(i, {0, 0, 0, 0}, {0, 0, 0, 0}, 2, 2, nullptr, nullptr).holds == Holds::Yes);
  CHECK_THROWS_AS(compare_rank_fields(i, {0, 0}, {0, 0, 0, 0}, 2, 2, nullptr, nullptr), InvalidInput);
}

TEST_CASE("dw_search brackets the threshold") {
  // m_yes = 5, largest certified No at 2: Unknown for m = 3, 4.
  const DwResult r = dw_search(ToyComparator(5, 2, 100), 0.01);
  CHECK(r.interval.lo == doctest::Approx(0.02));
  CHECK(r.interval.hi == doctest::Approx(0.06));
  CHECK_FALSE(r.exact);
  const DwResult e = dw_search(ToyComparator(5, 4, 100), 0.01);
  CHECK(e.interval.lo == doctest::Approx(0.04));
  CHECK(e.interval.hi == doctest::Approx(0.06));
  CHECK(e.exact);
  const DwResult z = dw_search(ToyComparator(0, -1, 100), 0.01);
  CHECK(z.interval.lo == 0);
  CHECK(z.interval.hi == doctest::Approx(0.01));
}

TEST_CASE("d_U formula is limited to low-dimensional spaces with trivial H^2") {
  const SpacePtr sph = make_space(BaseSpace::sphere(42));
  const MatrixField a = constant_field(sph, Matrix::Identity(1, 1) * 0.5);
  CHECK_THROWS_AS(du_thomsen(a, a), UnsupportedSpace);
  CHECK(default_step(BaseSpace::point()) == 1.0 / 1024);
  CHECK(default_step(*sph) == 1.0 / 256);
}
