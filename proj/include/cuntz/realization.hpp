// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cuntz/matrix_field.hpp"
#include "cuntz/morphism_path.hpp"

namespace cuntz {

using RankTarget = std::vector<int>;

/// min of f over the closed mesh neighbourhood of each point.
RankTarget mesh_erosion(const BaseSpace& space, const RankTarget& f);

/// f ≪ g at mesh resolution: the closure of every level set {f ≥ m} sits inside {g ≥ m}.
bool mesh_far_below(const BaseSpace& space, const RankTarget& f, const RankTarget& g);

/// Diagonal field a with ‖a‖ ≤ 1, [a] = x_0 and x_{k+1} ≤ rank (a − k/n)_+ ≤ x_k, n = targets.size() − 1.
/// Rejects unless each x_{k+1} ≪ x_k and every rank fits in `matrix_size` (0 takes max x_0).
MatrixField interpolate_chain(const SpacePtr& space, const std::vector<RankTarget>& targets, int matrix_size = 0);

/// t ↦ rank field of (b − t)_+ on the grid.
MorphismPath<RankTarget> rank_path(const MatrixField& b, const std::vector<double>& grid, double tau = kRankTolerance);

/// Uniform grid k/steps, k = 0..steps−1.
std::vector<double> uniform_grid(int steps);

struct Realization {
  MatrixField a;
  int dyadic_level = 0;  // 2^{1−level} < ε
  MorphismPath<RankTarget> path;
  DistanceInterval path_distance;  // d_W between the path of a and α
};

/// Positive contraction whose rank path is within 2^{1−n} < ε of α. Rejects ranks above n_max.
Realization realize_morphism(const SpacePtr& space, const MorphismPath<RankTarget>& alpha, double eps, int n_max);

}  // namespace cuntz
