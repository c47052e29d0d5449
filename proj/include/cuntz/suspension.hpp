// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "cuntz/distances.hpp"
#include "cuntz/matrix_field.hpp"

namespace cuntz {

using ScalarFunction = std::function<double(double)>;

/// The field (x, t) ↦ a(x)·f(t) on base × (0,1] sampled at the product mesh.
MatrixField tensor_field(const MatrixField& a, const ScalarFunction& f, const SpacePtr& product);

/// Compares a⊗f with b⊗f on base × (0,1]. Over a sphere base the product mesh only yields rank
/// obstructions, so graphs {(x, s(x))} of continuous slices are tested as well.
class SuspensionComparator : public LevelComparator {
 public:
  SuspensionComparator(const MatrixField& a, const MatrixField& b, ScalarFunction f, std::vector<double> t_samples,
                       double h, double tau);

  int levels() const override { return levels_; }
  ComparisonVerdict compare(bool forward, int l_lhs, int l_rhs) const override;
  int slice_count() const { return int(slices_.size()); }

 private:
  struct Side {
    std::vector<std::vector<int>> mesh;    // [x·T + j] quantized levels
    std::vector<std::vector<std::vector<int>>> slice;  // [s][x] quantized levels
    std::unique_ptr<SpectralField> spectral;
  };
  std::vector<int> mesh_ranks(const Side& s, int level) const;
  static std::vector<int> slice_ranks(const Side& s, int slice, int level);

  const BaseSpace* base_;
  ScalarFunction f_;
  std::vector<double> t_;
  double h_;
  double tau_;
  std::vector<std::vector<double>> slices_;
  Side a_, b_;
  int levels_ = 0;
  bool same_ = false;  // a = b sample by sample
};

struct SuspensionOptions {
  double step = 1.0 / 256;
  double tau = kRankTolerance;
  int uniform_samples = 32;
  int geometric_depth = 6;
};

struct SuspensionResult {
  SpacePtr product;
  DwResult baseline;   // a⊗id vs b⊗id
  DwResult suspended;  // a⊗g_ε vs b⊗g_ε
};

SuspensionResult suspension_dw(const MatrixField& a, const MatrixField& b, double eps,
                               const SuspensionOptions& options = {});

}  // namespace cuntz
