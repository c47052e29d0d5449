// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/chern.hpp"
#include "cuntz/matrix_field.hpp"
#include "cuntz/morphism_path.hpp"

namespace cuntz {

constexpr double kProjectionTolerance = 1e-8;

/// A field of orthogonal projections with constant rank. The Chern number is computed on first use.
class ProjectionField {
 public:
  explicit ProjectionField(MatrixField p, double tol = kProjectionTolerance);

  const MatrixField& field() const { return field_; }
  const BaseSpace& space() const { return field_.space(); }
  int rank() const { return rank_; }
  int n() const { return field_.n(); }
  /// Orthonormal n×rank frames spanning the range at each mesh point.
  std::vector<Matrix> frames() const;
  const ChernEstimate& chern() const;

 private:
  MatrixField field_;
  int rank_ = 0;
  std::shared_ptr<std::optional<ChernEstimate>> chern_ = std::make_shared<std::optional<ChernEstimate>>();
};

/// ½(1 + n_k·σ) with n_k(θ, φ) = (sin θ cos kφ, sin θ sin kφ, cos θ); k = 0 is diag(1, 0).
ProjectionField bott_projection(const SpacePtr& sphere, int k);

int chern_number(const ProjectionField& p);
ProjectionField direct_sum(const ProjectionField& p, const ProjectionField& q);
ProjectionField complement(const ProjectionField& p);

using ScalarField = std::function<double(const MeshPoint&)>;

struct SpherePair {
  MatrixField a;  // λ1 P + λ2 (1 − P)
  MatrixField b;  // λ1 E + λ2 (1 − E)
  std::vector<double> lambda1, lambda2;
  int k = 0;
};

/// Rejects with the violated constraint unless λ1 > λ2 ≥ 0 pointwise, min λ2 = 0,
/// min λ1 ≤ max λ2, λ1 ≤ 1 and k ≠ 0.
SpherePair build_sphere_pair(const SpacePtr& sphere, const ScalarField& lambda1, const ScalarField& lambda2, int k);

/// λ1 = (3 + z)/4, λ2 = (1 + z)/4.
SpherePair canonical_sphere_pair(const SpacePtr& sphere, int k = 1);

/// Pointwise division by λ1: spectra become {1, λ2/λ1}.
std::pair<MatrixField, MatrixField> normalized_pair(const SpherePair& pair);

/// Conjugates b by a smooth unitary field (used to check invariance of the report).
SpherePair conjugate_b(const SpherePair& pair, const std::vector<Matrix>& u);

struct SphereVerifyOptions {
  int t_grid = 64;
  std::vector<double> eps = {0.05, 0.1, 0.2, 0.4};
  double dw_step = 1.0 / 256;
};

struct SphereFunctionCheck {
  std::string function;
  bool ranks_equal = false;
  bool nonconstant = false;
  bool certified = false;  // Cuntz equivalence certified in both directions
};

struct SphereReport {
  std::vector<SphereFunctionCheck> functions;
  bool clause1 = false;
  DistanceInterval path_dw;
  bool clause2 = false;
  double ratio_max = 0;  // max λ2/λ1
  DistanceInterval normalized_dw;
  double bound = 0;      // lower bound on d_U of the normalized pair
  double required = 0;   // 1 − ratio_max − resolution
  bool clause3 = false;
  std::string witness;
  bool passed() const { return clause1 && clause2 && clause3; }
};

SphereReport verify_sphere_counterexample(const SpherePair& pair, const SphereVerifyOptions& options = {});

}  // namespace cuntz
