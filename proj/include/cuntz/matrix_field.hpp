// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "cuntz/base_space.hpp"
#include "cuntz/functions.hpp"
#include "cuntz/hermitian.hpp"

namespace cuntz {

using SpacePtr = std::shared_ptr<const BaseSpace>;

inline SpacePtr make_space(BaseSpace s) { return std::make_shared<const BaseSpace>(std::move(s)); }

/// An edge whose jump exceeds ten times the typical Lipschitz ratio times the mesh step.
struct ContinuityFlag {
  int p = 0;
  int q = 0;
  double jump = 0;
};

class MatrixField {
 public:
  MatrixField() = default;
  MatrixField(SpacePtr space, int n, std::vector<PositiveMatrix> samples);

  const BaseSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  int n() const { return n_; }
  int size() const { return int(samples_.size()); }
  const PositiveMatrix& sample(int i) const { return samples_[std::size_t(i)]; }
  const std::vector<PositiveMatrix>& samples() const { return samples_; }

  double lipschitz() const { return lipschitz_; }
  double typical_lipschitz() const { return typical_lipschitz_; }
  const std::vector<ContinuityFlag>& flags() const { return flags_; }
  double sup_norm() const;

 private:
  SpacePtr space_;
  int n_ = 0;
  std::vector<PositiveMatrix> samples_;
  double lipschitz_ = 0;
  double typical_lipschitz_ = 0;
  std::vector<ContinuityFlag> flags_;
};

using FieldGenerator = std::function<Matrix(const MeshPoint&)>;

MatrixField build_field(SpacePtr space, int n, const FieldGenerator& generator);

struct EigenvalueField {
  SpacePtr space;
  int n = 0;
  std::vector<Eigen::VectorXd> branches;  // descending per mesh point
  double sup_norm() const;
};

EigenvalueField eigen_field(const MatrixField& a);

struct RankField {
  std::vector<int> ranks;
  /// Points whose rank exceeds every neighbor's rank (a mesh-scale lower semicontinuity failure).
  std::vector<int> lsc_flags;
};

RankField rank_field(const MatrixField& a, double t, double tau = kRankTolerance);
std::vector<int> lsc_violations(const BaseSpace& space, const std::vector<int>& ranks);

MatrixField conjugate_by_unitary_field(const MatrixField& a, const std::vector<Matrix>& u);
MatrixField map_samples(const MatrixField& a, const std::function<PositiveMatrix(const PositiveMatrix&, int)>& f);
MatrixField scale_field(const MatrixField& a, double c);
MatrixField cut_down_field(const MatrixField& a, double t);

template <class F>
MatrixField functional_calculus_field(const MatrixField& a, F f) {
  return map_samples(a, [&](const PositiveMatrix& m, int) { return functional_calculus(m, f); });
}

/// Pointwise operator norm of a(x) − b(x) maximized over the mesh; smaller sizes are zero-padded.
double sup_distance(const MatrixField& a, const MatrixField& b);

/// Zero-pads a to size n.
Matrix pad(const Matrix& a, int n);

}  // namespace cuntz
