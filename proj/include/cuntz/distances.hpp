// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/matrix_field.hpp"
#include "cuntz/morphism_path.hpp"

namespace cuntz {

enum class Holds { Yes, No, Unknown };

enum class VerdictReason {
  None,
  RankObstruction,
  ChernObstruction,
  RankCertified,
  RankAndChernCertified,
  SliceObstruction,
};

std::string to_string(Holds h);
std::string to_string(VerdictReason r);

/// No always carries an obstruction, Yes always a certification.
struct ComparisonVerdict {
  Holds holds = Holds::Unknown;
  VerdictReason reason = VerdictReason::None;
  std::string detail;

  static ComparisonVerdict yes(VerdictReason r, std::string d = {}) { return {Holds::Yes, r, std::move(d)}; }
  static ComparisonVerdict no(VerdictReason r, std::string d = {}) { return {Holds::No, r, std::move(d)}; }
  static ComparisonVerdict unknown(std::string d = {}) { return {Holds::Unknown, VerdictReason::None, std::move(d)}; }
};

/// Eigenvalues of a field quantized to levels of a step h: Q(λ) = max(0, ⌈(λ − τ)/h⌉),
/// so that rank((a − Lh)_+) = #{i : Q_i > L}.
class SpectralField {
 public:
  SpectralField(const MatrixField& a, double h, double tau);

  const MatrixField& field() const { return *field_; }
  int n() const { return n_; }
  int size() const { return int(levels_.size()); }
  double step() const { return h_; }
  int max_level() const { return max_level_; }
  /// Descending quantized levels at mesh point x.
  const std::vector<int>& levels(int x) const { return levels_[std::size_t(x)]; }
  int rank(int x, int level) const;
  std::vector<int> ranks(int level) const;
  /// Chern number of the span of the top k eigenvectors; nullopt when the mesh is too coarse.
  std::optional<int> chern_top(int k) const;

 private:
  const MatrixField* field_;
  int n_;
  double h_;
  std::vector<std::vector<int>> levels_;
  int max_level_ = 0;
  mutable std::mutex mutex_;
  mutable std::map<int, std::optional<int>> chern_;
};

/// Decides lhs ≼ rhs from rank fields on the mesh; chern callbacks are consulted on spheres.
ComparisonVerdict compare_rank_fields(const BaseSpace& space, const std::vector<int>& lhs, const std::vector<int>& rhs,
                                      int n_lhs, int n_rhs, const SpectralField* chern_lhs,
                                      const SpectralField* chern_rhs);

ComparisonVerdict cuntz_compare(const MatrixField& a, const MatrixField& b, double tau = kRankTolerance);

/// Answers e_{L_lhs·h}(x) ≼ e_{L_rhs·h}(y) with (x, y) = (a, b) when forward, else (b, a).
class LevelComparator {
 public:
  virtual ~LevelComparator() = default;
  /// Both sides vanish at levels ≥ levels().
  virtual int levels() const = 0;
  virtual ComparisonVerdict compare(bool forward, int l_lhs, int l_rhs) const = 0;
};

struct DwWitness {
  double t = 0;
  double r = 0;
  bool forward = true;
  VerdictReason reason = VerdictReason::None;
  std::string detail;
};

struct DwResult {
  DistanceInterval interval;
  bool exact = false;  // hi − lo ≤ 2·resolution
  std::vector<DwWitness> witnesses;
  int evaluations = 0;
};

DwResult dw_search(const LevelComparator& c, double h);

struct DwOptions {
  double step = 0;  // 0 picks 2^-10 on point, interval and circle, 2^-8 otherwise
  double tau = kRankTolerance;
  bool force_general = false;  // skip the closed form on h2-trivial spaces
};

double default_step(const BaseSpace& s);

DwResult dw_elements(const MatrixField& a, const MatrixField& b, const DwOptions& options = {});

/// Sup over the mesh of the largest eigenvalue-branch difference. Dimension ≤ 2 and h2-trivial only.
DistanceInterval du_thomsen(const MatrixField& a, const MatrixField& b);

double du_lower_bound(const MatrixField& a, const MatrixField& b, const DwOptions& options = {});

/// d_W on a one-point space without a grid: the rank conditions only change at eigenvalues,
/// so the smallest admissible r is found among the differences λ_i − μ_j.
double dw_point_exact(const MatrixField& a, const MatrixField& b, double tau = kRankTolerance);

struct SandwichReport {
  DistanceInterval dw;
  double du = 0;
  double norm = 0;
  double resolution = 0;
  bool dw_below_du = false;
  bool du_below_4dw = false;
  bool du_below_norm = false;
  double du_dw_gap = 0;  // distance from d_U to the d_W interval
  std::vector<std::string> failures;
  bool passed() const { return dw_below_du && du_below_4dw && du_below_norm; }
};

SandwichReport verify_sandwich(const MatrixField& a, const MatrixField& b, const DwOptions& options = {});

struct VerdictRow {
  double t = 0;
  double r = 0;
  Holds holds = Holds::Unknown;
  VerdictReason reason = VerdictReason::None;
};

/// (t, r) grid of the two-sided comparison, every `stride` levels.
std::vector<VerdictRow> verdict_table(const LevelComparator& c, double h, int stride);
std::vector<VerdictRow> verdict_table(const MatrixField& a, const MatrixField& b, const DwOptions& options, int stride);

/// Comparator over two fields on a common non-product mesh.
class FieldComparator : public LevelComparator {
 public:
  FieldComparator(const MatrixField& a, const MatrixField& b, double h, double tau);
  int levels() const override;
  ComparisonVerdict compare(bool forward, int l_lhs, int l_rhs) const override;
  const SpectralField& a() const { return a_; }
  const SpectralField& b() const { return b_; }

 private:
  SpectralField a_, b_;
};

}  // namespace cuntz
