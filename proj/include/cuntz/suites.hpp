// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuntz/distances.hpp"
#include "cuntz/random_fields.hpp"

namespace cuntz {

struct SuiteFailure {
  int instance = 0;
  std::string message;
};

struct SandwichSuiteResult {
  int instances = 0;
  int violations = 0;
  int isometric = 0;        // |d_U − mid d_W| ≤ 2·resolution
  double worst_gap = 0;     // max |d_U − mid d_W|
  std::vector<SuiteFailure> failures;          // sandwich violations
  std::vector<SuiteFailure> isometry_misses;   // instances outside the 2·resolution band
  double isometric_fraction() const { return instances ? double(isometric) / instances : 1.0; }
};

/// Random contraction pairs on Point, Interval and Circle in rotation, n ≤ 4.
/// `general` computes d_W by the rank-comparison search instead of the closed form.
SandwichSuiteResult sandwich_suite(int count, std::uint64_t seed, double step = 1.0 / 1024,
                                   double tau = kRankTolerance, bool general = false);

struct LawSuiteResult {
  int instances = 0;
  std::vector<SuiteFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Symmetry, d_W(a, a) = [0, step] and the triangle inequality within 2·resolution on random triples.
LawSuiteResult pseudometric_suite(int count, std::uint64_t seed, double step = 1.0 / 1024);

/// Associativity, commutativity and distributivity of ring_mul on random sparse classes.
LawSuiteResult ring_law_suite(int count, std::uint64_t seed);

struct ExistenceSuiteResult {
  int instances = 0;
  double worst_dw_hi = 0;
  double worst_du = 0;
  std::vector<SuiteFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Round trip b ↦ path(b) ↦ realize_morphism on Interval fields.
ExistenceSuiteResult existence_suite(int count, std::uint64_t seed, double eps = 1.0 / 64, double step = 1.0 / 1024);

struct MetricSuiteResult {
  int weak_cancellation_samples = 0;
  int weak_cancellation_premises = 0;
  int weak_cancellation_counterexamples = 0;
  int distinct_pairs = 0;
  int separated_pairs = 0;
  bool sphere_paths_equal = false;
  bool sphere_paths_separated = true;
  std::vector<SuiteFailure> failures;
  bool passed() const { return failures.empty(); }
};

MetricSuiteResult metric_suite(int weak_samples, int path_count, std::uint64_t seed, int sphere_mesh = 162);

}  // namespace cuntz
