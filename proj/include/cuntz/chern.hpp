// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "cuntz/base_space.hpp"
#include "cuntz/hermitian.hpp"

namespace cuntz {

struct ChernEstimate {
  double curvature = 0;            // (1/2π)·Σ face fluxes, signed
  int value = 0;                   // rounded curvature
  std::optional<double> winding;   // clutching estimate; absent when the sections degenerate
  bool cross_checked = false;      // winding present and equal to value
};

/// Chern number of the bundle spanned by orthonormal frames (n×k per vertex) on a sphere mesh.
/// Throws MeshTooCoarse when the curvature sum is not within 0.1 of an integer or the two
/// estimators disagree.
ChernEstimate chern_from_frames(const BaseSpace& sphere, const std::vector<Matrix>& frames);

/// Same, without the integrality and agreement checks.
ChernEstimate chern_estimate_raw(const BaseSpace& sphere, const std::vector<Matrix>& frames);

}  // namespace cuntz
