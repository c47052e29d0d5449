// SPDX-License-Identifier: Apache-2.0
#include "cuntz/suites.hpp"

#include <cmath>
#include <random>

#include "cuntz/chern_symbolic.hpp"
#include "cuntz/lsc.hpp"
#include "cuntz/realization.hpp"
#include "cuntz/sphere_bundles.hpp"

namespace cuntz {

namespace {

SpacePtr rotating_space(int i) {
  switch (i % 3) {
    case 0: return make_space(BaseSpace::point());
    case 1: return make_space(BaseSpace::interval(64));
    default: return make_space(BaseSpace::circle(64));
  }
}

RandomFieldOptions random_options(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> size(1, 4), deg(0, 3), coin(0, 3);
  std::uniform_real_distribution<double> norm(0.05, 1.0);
  RandomFieldOptions o;
  o.n = n > 0 ? n : size(rng);
  o.rank = std::uniform_int_distribution<int>(1, o.n)(rng);
  o.degree = deg(rng);
  o.norm = norm(rng);
  o.vanishing = coin(rng) == 0;
  return o;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

SandwichSuiteResult sandwich_suite(int count, std::uint64_t seed, double step, double tau, bool general) {
  SandwichSuiteResult res;
  std::mt19937_64 rng(seed);
  DwOptions o;
  o.step = step;
  o.tau = tau;
  o.force_general = general;
  for (int i = 0; i < count; ++i) {
    const SpacePtr s = rotating_space(i);
    const auto oa = random_options(rng, 0);
    const MatrixField a = random_field(s, rng, oa);
    const MatrixField b = random_field(s, rng, random_options(rng, i % 4 == 0 ? 0 : oa.n));
    const SandwichReport r = verify_sandwich(a, b, o);
    ++res.instances;
    if (!r.passed()) {
      ++res.violations;
      std::string m = to_string(s->kind()) + ":";
      for (const auto& f : r.failures) m += " " + f + ";";
      res.failures.push_back({i, m});
    }
    const double gap = std::abs(r.du - r.dw.mid());
    res.worst_gap = std::max(res.worst_gap, gap);
    if (gap <= 2 * r.resolution + 1e-12) ++res.isometric;
    else
      res.isometry_misses.push_back({i, to_string(s->kind()) + ": d_U " + fmt(r.du) + " vs d_W [" + fmt(r.dw.lo) +
                                            ", " + fmt(r.dw.hi) + "]"});
  }
  return res;
}

LawSuiteResult pseudometric_suite(int count, std::uint64_t seed, double step) {
  LawSuiteResult res;
  std::mt19937_64 rng(seed);
  DwOptions o;
  o.step = step;
  for (int i = 0; i < count; ++i) {
    const SpacePtr s = rotating_space(i);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const MatrixField a = random_field(s, rng, random_options(rng, n));
    const MatrixField b = random_field(s, rng, random_options(rng, n));
    const MatrixField c = random_field(s, rng, random_options(rng, n));
    const auto ab = dw_elements(a, b, o).interval, ba = dw_elements(b, a, o).interval;
    const auto bc = dw_elements(b, c, o).interval, ac = dw_elements(a, c, o).interval;
    const auto aa = dw_elements(a, a, o).interval;
    ++res.instances;
    if (ab.lo != ba.lo || ab.hi != ba.hi) res.failures.push_back({i, "symmetry"});
    if (aa.lo != 0 || aa.hi > step * (1 + 1e-12)) res.failures.push_back({i, "d_W(a, a) = [" + fmt(aa.lo) + ", " + fmt(aa.hi) + "]"});
    if (ac.lo > ab.hi + bc.hi + 2 * step) res.failures.push_back({i, "triangle: " + fmt(ac.lo) + " > " + fmt(ab.hi + bc.hi)});
  }
  return res;
}

LawSuiteResult ring_law_suite(int count, std::uint64_t seed) {
  LawSuiteResult res;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> gens(1, 3), order(1, 4), coeff(-5, 5), terms(0, 5);
  for (int i = 0; i < count; ++i) {
    TruncatedRing ring;
    for (int g = gens(rng); g > 0; --g) ring.orders.push_back(order(rng));
    auto random_class = [&] {
      CohomologyClass c(ring);
      for (int t = terms(rng); t > 0; --t) {
        Exponents e;
        for (int n : ring.orders) e.push_back(std::uniform_int_distribution<int>(0, n)(rng));
        c.add_term(e, coeff(rng));
      }
      return c;
    };
    const auto x = random_class(), y = random_class(), z = random_class();
    ++res.instances;
    if (!(ring_mul(ring_mul(x, y), z) == ring_mul(x, ring_mul(y, z)))) res.failures.push_back({i, "associativity"});
    if (!(ring_mul(x, y) == ring_mul(y, x))) res.failures.push_back({i, "commutativity"});
    if (!(ring_mul(x, ring_add(y, z)) == ring_add(ring_mul(x, y), ring_mul(x, z))))
      res.failures.push_back({i, "distributivity"});
  }
  return res;
}

ExistenceSuiteResult existence_suite(int count, std::uint64_t seed, double eps, double step) {
  ExistenceSuiteResult res;
  std::mt19937_64 rng(seed);
  const SpacePtr s = make_space(BaseSpace::interval(64));
  const int steps = int(std::lround(1 / step));
  const auto grid = uniform_grid(steps);
  DwOptions o;
  o.step = step;
  for (int i = 0; i < count; ++i) {
    const auto opt = random_options(rng, 0);
    const MatrixField b = random_field(s, rng, opt);
    const Realization r = realize_morphism(s, rank_path(b, grid), eps, opt.n);
    const double hi = dw_elements(r.a, b, o).interval.hi;
    const double du = du_thomsen(r.a, b).hi;
    ++res.instances;
    res.worst_dw_hi = std::max(res.worst_dw_hi, hi);
    res.worst_du = std::max(res.worst_du, du);
    if (hi > eps + 2 * step + 1e-12) res.failures.push_back({i, "d_W hi " + fmt(hi) + " > eps + 2 res"});
    if (du > 4 * eps + 4 * step + 1e-12) res.failures.push_back({i, "d_U " + fmt(du) + " > 4 eps + 4 res"});
    if (r.a.sup_norm() > 1 + 1e-12) res.failures.push_back({i, "norm above 1"});
  }
  return res;
}

MetricSuiteResult metric_suite(int weak_samples, int path_count, std::uint64_t seed, int sphere_mesh) {
  MetricSuiteResult res;
  const auto wc = weak_cancellation_search(weak_samples, seed);
  res.weak_cancellation_samples = wc.samples;
  res.weak_cancellation_premises = wc.premise_hits;
  res.weak_cancellation_counterexamples = int(wc.counterexamples.size());
  if (!wc.passed())
    res.failures.push_back({0, "weak cancellation counterexample: x = " + wc.counterexamples.front().x.str() +
                                   ", y = " + wc.counterexamples.front().y.str() +
                                   ", z = " + wc.counterexamples.front().z.str()});

  // Rank-field paths of random interval fields, pairwise.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const SpacePtr s = make_space(BaseSpace::interval(32));
  const auto grid = uniform_grid(64);
  std::vector<MorphismPath<std::vector<int>>> paths;
  for (int i = 0; i < path_count; ++i) paths.push_back(rank_path(random_field(s, rng, random_options(rng, 0)), grid));
  for (int i = 0; i < path_count; ++i)
    for (int j = i + 1; j < path_count; ++j) {
      auto pi = paths[std::size_t(i)], pj = paths[std::size_t(j)];
      // Sizes may differ; ranks live in ℕ either way.
      const auto r = metric_separation_test(pi, pj);
      if (r.paths_differ) ++res.distinct_pairs;
      if (r.separated) ++res.separated_pairs;
      if (!r.consistent) res.failures.push_back({i * path_count + j, "separation inconsistent with path equality"});
    }

  // The sphere pair's rank-level paths agree and must not separate.
  const SpherePair pair = canonical_sphere_pair(make_space(BaseSpace::sphere(sphere_mesh)));
  const auto pa = rank_path(pair.a, grid), pb = rank_path(pair.b, grid);
  const auto sr = metric_separation_test(pa, pb);
  res.sphere_paths_equal = !sr.paths_differ;
  res.sphere_paths_separated = sr.separated;
  if (sr.paths_differ || sr.separated) res.failures.push_back({-1, "sphere pair rank paths separate"});
  return res;
}

}  // namespace cuntz
