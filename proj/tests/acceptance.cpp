// SPDX-License-Identifier: Apache-2.0
// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include "cuntz/chern_symbolic.hpp"
#include "cuntz/distances.hpp"
#include "cuntz/random_fields.hpp"
#include "cuntz/realization.hpp"
#include "cuntz/sphere_bundles.hpp"
#include "cuntz/suites.hpp"
#include "cuntz/suspension.hpp"
#include "cuntz/witness.hpp"
#include "test_util.hpp"

using namespace cuntz;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr std::uint64_t kSeed = 20240601;

void sandwich_and_isometry() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = sandwich_suite(1200, kSeed, 1.0 / 1024, kRankTolerance, true);
  const double secs = seconds_since(t0);
  for (const auto& f : r.failures) std::printf("  sandwich violation #%d %s\n", f.instance, f.message.c_str());
  report(1, r.violations == 0 && r.instances >= 1000 && secs <= 300, "sandwich",
         fmt("%.0f pairs, %.0f violations, %.1f s", r.instances, r.violations, secs));
  for (const auto& m : r.isometry_misses) std::printf("  isometry miss #%d %s\n", m.instance, m.message.c_str());
  report(2, r.isometric_fraction() >= 0.99, "isometry",
         fmt("%.4f within 2 res, worst |d_U - mid d_W| = %.3g", r.isometric_fraction(), r.worst_gap));
}

// Smallest grid r with #{λ > t + r} ≤ #{μ > t} and the reverse for all grid t.
double grid_oracle(const Eigen::VectorXd& la, const Eigen::VectorXd& lb, double h) {
  auto count = [](const Eigen::VectorXd& l, double t) { return int((l.array() > t).count()); };
  const int K = int(std::ceil(1 / h)) + 2;
  for (int m = 0; m <= K; ++m) {
    bool ok = true;
    for (int k = 0; k <= K && ok; ++k)
      ok = count(la, k * h + m * h) <= count(lb, k * h) && count(lb, k * h + m * h) <= count(la, k * h);
    if (ok) return m * h;
  }
  return 2;
}

// min over matchings σ of max |λ_i − μ_σ(i)|, by enumerating permutations.
double matching_oracle(Eigen::VectorXd la, Eigen::VectorXd lb) {
  const Eigen::Index n = std::max(la.size(), lb.size());
  la.conservativeResizeLike(Eigen::VectorXd::Zero(n));
  lb.conservativeResizeLike(Eigen::VectorXd::Zero(n));
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  double best = 1e300;
  do {
    double worst = 0;
    for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(la(i) - lb(p[std::size_t(i)])));
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

void point_oracle() {
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const SpacePtr pt = make_space(BaseSpace::point());
  const double h = 1.0 / 1024;
  int bad = 0;
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const int na = 1 + i % 4, nb = 1 + (i / 4) % 4;
    const auto ma = testutil::random_psd(na, rng, u(rng), 1 + int(rng() % unsigned(na)));
    const auto mb = testutil::random_psd(nb, rng, u(rng), 1 + int(rng() % unsigned(nb)));
    const MatrixField a(pt, na, {ma}), b(pt, nb, {mb});
    const Eigen::VectorXd la = testutil::oracle_eigenvalues(ma.matrix()).cwiseMax(0.0);
    const Eigen::VectorXd lb = testutil::oracle_eigenvalues(mb.matrix()).cwiseMax(0.0);
    const double gap = matching_oracle(la, lb);
    const double du = du_thomsen(a, b).lo, dw = dw_point_exact(a, b);
    const DistanceInterval grid = dw_elements(a, b, {h, kRankTolerance, false}).interval;
    const double g = grid_oracle(la, lb, h);
    const double err = std::max(std::abs(du - gap), std::abs(dw - gap));
    worst = std::max(worst, err);
    const bool ok = err <= 1e-9 && grid.contains(gap) && grid.contains(g);
    if (!ok) {
      ++bad;
      std::printf("  pair %d: gap %.12g d_U %.12g d_W %.12g grid [%g, %g] oracle %g\n", i, gap, du, dw, grid.lo, grid.hi, g);
    }
  }
  report(3, bad == 0, "point oracle", fmt("200 pairs, %.0f mismatches, worst |d - gap| = %.2g", bad, worst));
}

void sphere() {
  const SpacePtr s = make_space(BaseSpace::sphere(642));
  const SpherePair pair = canonical_sphere_pair(s);
  const SphereReport r = verify_sphere_counterexample(pair);
  const auto [na, nb] = normalized_pair(pair);
  const double lb = du_lower_bound(na, nb, {1.0 / 256, kRankTolerance, false});
  const double needed = 0.5 - 1.0 / 256;
  const bool ok = r.clause1 && r.clause2 && r.clause3 && lb >= needed;
  report(4, ok, "sphere pair",
         fmt("clauses %.0f%.0f%.0f, path d_W hi %.4g, ", r.clause1, r.clause2, r.clause3, r.path_dw.hi) +
             fmt("d_U lower bound %.6f >= %.6f; ", lb, needed) + r.witness);
}

void suspension() {
  const SpacePtr s = make_space(BaseSpace::sphere(642));
  const SpherePair pair = canonical_sphere_pair(s);
  const double eps = 0.2;
  const SuspensionResult r = suspension_dw(pair.a, pair.b, eps);
  const double best = std::max(r.baseline.interval.lo, r.suspended.interval.lo);
  const auto grid = uniform_grid(64);
  const DistanceInterval path = dw_morphisms(rank_path(pair.a, grid), rank_path(pair.b, grid));
  const bool ok = best >= eps * eps / 2 && path.lo == 0 && std::abs(path.hi - path.resolution) < 1e-12;
  report(5, ok, "suspension",
         fmt("suspended d_W >= %.6f, baseline >= %.6f, need %.3f; unsuspended path d_W [%g, ", r.suspended.interval.lo,
             r.baseline.interval.lo, eps * eps / 2, path.lo) +
             fmt("%g]", path.hi));
}

void villadsen() {
  const auto ledger = villadsen_stage_ledger(4);
  bool ok = ledger.size() == 4;
  std::string detail;
  for (const auto& st : ledger) {
    ok = ok && st.verdict == Obstruction::Obstructed && st.exponents_fit_loose && st.exponents_fit &&
         st.simulation_agrees && std::abs(st.du_bound - 0.25) < 1e-12;
    detail += "stage " + std::to_string(st.stage) + " " + to_string(st.verdict) + " e=" + st.euler.value.str() + "; ";
  }
  report(6, ok, "villadsen", detail + "d_U bound 0.25");
}

void metric() {
  const auto r = metric_suite(10000, 12, kSeed + 7, 162);
  for (const auto& f : r.failures) std::printf("  metric failure #%d %s\n", f.instance, f.message.c_str());
  const bool ok = r.weak_cancellation_samples >= 10000 && r.weak_cancellation_counterexamples == 0 &&
                  r.separated_pairs == r.distinct_pairs && r.sphere_paths_equal && !r.sphere_paths_separated &&
                  r.passed();
  report(7, ok, "weak cancellation and metric",
         fmt("%.0f triples (%.0f premise hits), %.0f counterexamples; ", r.weak_cancellation_samples,
             r.weak_cancellation_premises, r.weak_cancellation_counterexamples) +
             fmt("%.0f/%.0f distinct path pairs separated; sphere paths separated: %.0f", r.separated_pairs,
                 r.distinct_pairs, r.sphere_paths_separated));
}

void existence() {
  const double eps = 1.0 / 64;
  const auto r = existence_suite(100, kSeed + 11, eps, 1.0 / 1024);
  for (const auto& f : r.failures) std::printf("  existence failure #%d %s\n", f.instance, f.message.c_str());
  report(8, r.passed() && r.instances == 100, "existence round trip",
         fmt("100 fields, worst d_W hi %.6f (bound %.6f), worst d_U %.6f (bound %.6f)", r.worst_dw_hi,
             eps + 2.0 / 1024, r.worst_du, 4 * eps + 4.0 / 1024));
}

void witnesses() {
  std::mt19937_64 rng(kSeed + 13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_residual = 0, worst_ratio = 0, worst_dominance = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 5, m = n + i % 3;
    const auto a = testutil::random_psd(n, rng, 0.2 + 1.8 * u(rng), 1 + int(rng() % unsigned(n)));
    Matrix x = Matrix::Zero(m, n);
    x.topRows(n) = sqrt_psd(a).matrix();
    const Matrix noise = testutil::random_matrix(m, n, rng);
    x += noise * (0.05 * u(rng) / operator_norm(noise));
    const double gap = operator_norm(Matrix(a.matrix() - x.adjoint() * x));
    const double eps = gap * (1.01 + u(rng)) + 1e-6;
    const auto w = mvn_witness(a, x, eps);
    worst_residual = std::max(worst_residual, w.residual);
    worst_ratio = std::max(worst_ratio, w.ratio);
    worst_dominance = std::min(worst_dominance, w.dominance);
  }
  const bool mvn_ok = worst_residual <= 1e-8 && worst_dominance >= -1e-8 && std::isfinite(worst_ratio);

  int embed_bad = 0;
  double worst_block = 0;
  for (int i = 0; i < 200; ++i) {
    const int na = 1 + i % 4, nb = na + i % 3;
    const auto a = testutil::random_psd(na, rng, 0.2 + 0.8 * u(rng));
    const auto b = testutil::random_psd(nb, rng, 0.2 + 0.8 * u(rng));
    const double eps = 0.01 + 0.2 * u(rng);
    const auto w = cuntz_embed_witness(a, b, eps, 1.0);
    worst_block = std::max(worst_block, w.block_distance / eps);
    if (!(w.block_distance < eps && w.certified)) ++embed_bad;
  }

  bool chern_ok = true;
  for (int k = -2; k <= 3; ++k) {
    int first = 0;
    for (int v : {42, 162, 642}) {
      const auto est = bott_projection(make_space(BaseSpace::sphere(v)), k).chern();
      chern_ok = chern_ok && std::abs(est.curvature - std::round(est.curvature)) < 1e-6 && est.value == k;
      if (v == 42) first = est.value;
      chern_ok = chern_ok && est.value == first;
    }
  }
  report(9, mvn_ok && embed_bad == 0 && chern_ok, "witnesses and Chern",
         fmt("mvn: 500 instances, worst residual %.2g, C = %.4f; ", worst_residual, worst_ratio) +
             fmt("embed: 200 instances, %.0f uncertified, worst block/eps %.3f; ", embed_bad, worst_block) +
             std::string("Chern k=-2..3 stable on 42/162/642: ") + (chern_ok ? "yes" : "no"));
}

}  // namespace

int main() {
  sandwich_and_isometry();
  point_oracle();
  sphere();
  suspension();
  villadsen();
  metric();
  existence();
  witnesses();
  return failures;
}
