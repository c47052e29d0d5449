// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/error.hpp"
#include "cuntz/hermitian.hpp"
#include "cuntz/lsc.hpp"

namespace cuntz {

struct DistanceInterval {
  double lo = 0;
  double hi = std::numeric_limits<double>::infinity();
  double resolution = 0;
  bool contains(double r) const { return lo <= r && r <= hi; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Grid-indexed family t ↦ α([e_t]). Images beyond the last grid point are taken to be zero.
template <class E>
struct MorphismPath {
  std::vector<double> grid;
  std::vector<E> images;
};

inline bool element_leq(int a, int b) { return a <= b; }

inline bool element_leq(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw InvalidInput("rank fields over different meshes are not comparable");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool element_leq(const LscStepFunction& a, const LscStepFunction& b) { return lsc_leq(a, b); }

template <class E>
double path_step(const MorphismPath<E>& p) {
  if (p.grid.size() != p.images.size() || p.grid.empty()) throw InvalidInput("path: grid and images must match");
  if (p.grid.size() == 1) return 1.0;
  const double h = p.grid[1] - p.grid[0];
  for (std::size_t k = 1; k < p.grid.size(); ++k)
    if (!(std::abs(p.grid[k] - p.grid[k - 1] - h) <= 1e-9 * h) || !(h > 0))
      throw InvalidInput("path: grid must be uniform and increasing");
  return h;
}

template <class E>
void check_antitone(const MorphismPath<E>& p) {
  for (std::size_t k = 1; k < p.images.size(); ++k)
    if (!element_leq(p.images[k], p.images[k - 1]))
      throw InvalidInput("path: images must decrease along the grid (slot " + std::to_string(k) + ")");
}

/// Smallest grid offset m with α(t+mh) ≤ β(t) and β(t+mh) ≤ α(t) on the grid,
/// reported as [max(0, (m−1)h), (m+1)h].
template <class E>
DistanceInterval dw_morphisms(const MorphismPath<E>& a, const MorphismPath<E>& b) {
  const double h = path_step(a);
  path_step(b);
  if (a.grid != b.grid) throw InvalidInput("dw_morphisms: paths live on different grids");
  check_antitone(a);
  check_antitone(b);
  const int K = int(a.grid.size());
  auto ok = [&](int m) {
    for (int k = 0; k + m < K; ++k) {
      if (!element_leq(a.images[std::size_t(k + m)], b.images[std::size_t(k)])) return false;
      if (!element_leq(b.images[std::size_t(k + m)], a.images[std::size_t(k)])) return false;
    }
    return true;
  };
  int lo = 0, hi = K;  // ok(hi) holds vacuously
  if (ok(0)) hi = 0;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (ok(mid)) hi = mid; else lo = mid;
  }
  return {std::max(0, hi - 1) * h, (hi + 1) * h, h};
}

struct SeparationReport {
  bool skipped = false;
  bool paths_differ = false;
  std::optional<double> witness_s;  // first grid t where the images differ; evaluation on 1_{(s,1]}
  DistanceInterval dw;
  bool separated = false;  // r = 0 already fails on the grid
  bool consistent = true;  // separated exactly when the paths differ
};

template <class E>
SeparationReport metric_separation_test(const MorphismPath<E>& a, const MorphismPath<E>& b) {
  SeparationReport r;
  r.dw = dw_morphisms(a, b);
  for (std::size_t k = 0; k < a.images.size(); ++k) {
    if (!(a.images[k] == b.images[k])) {
      r.paths_differ = true;
      r.witness_s = a.grid[k];
      break;
    }
  }
  r.skipped = !r.paths_differ;
  r.separated = r.dw.hi > 1.5 * r.dw.resolution;
  r.consistent = r.paths_differ == r.separated;
  return r;
}

/// Rank function of an element of C_0((0,1]) ⊗ M_n sampled at increasing t in (0,1].
template <class Real>
LscStepFunction cu_class_of_interval_element(const std::vector<double>& t, const std::vector<Positive<Real>>& a,
                                             Real tau = Real(kRankTolerance)) {
  if (t.size() != a.size()) throw InvalidInput("cu class: samples and mesh differ in length");
  std::vector<int> ranks;
  for (const auto& s : a) ranks.push_back(rank_at(s, Real(0), tau));
  return cu_class_from_ranks(t, ranks);
}

}  // namespace cuntz
