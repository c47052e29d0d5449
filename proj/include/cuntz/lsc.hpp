// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace cuntz {

/// ℕ ∪ {∞} with saturating addition.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : v_(v) {}  // NOLINT: implicit on purpose
  static constexpr ExtNat inf() { return ExtNat(kInf); }

  constexpr bool is_inf() const { return v_ == kInf; }
  constexpr std::uint64_t value() const { return v_; }

  friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_inf() || b.is_inf() || a.v_ > kInf - 1 - b.v_) return inf();
    return ExtNat(a.v_ + b.v_);
  }
  /// Truncated subtraction; ∞ − finite = ∞.
  friend constexpr ExtNat monus(ExtNat a, ExtNat b) {
    if (a.is_inf()) return inf();
    if (b.is_inf() || b.v_ >= a.v_) return ExtNat(0);
    return ExtNat(a.v_ - b.v_);
  }
  friend constexpr auto operator<=>(ExtNat, ExtNat) = default;

  std::string str() const { return is_inf() ? "inf" : std::to_string(v_); }

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v_ = 0;
};

/// Lower semicontinuous step function (0,1] → ℕ ∪ {∞}.
///
/// Breaks b_1 < … < b_k lie in (0,1]. pieces[j] is the value on the open piece
/// (b_j, b_{j+1}) with b_0 = 0 and the last piece (b_k, 1]; at[j] is the value at
/// b_{j+1}, never above its neighbours. A break at 1 leaves the last piece empty.
class LscStepFunction {
 public:
  LscStepFunction() : pieces_{ExtNat(0)} {}
  /// `at` defaults to the minimum of the adjacent pieces. Canonicalizes.
  LscStepFunction(std::vector<double> breaks, std::vector<ExtNat> pieces, std::vector<ExtNat> at = {});

  static LscStepFunction zero() { return {}; }
  static LscStepFunction constant(ExtNat v) { return LscStepFunction({}, {v}); }
  /// 1_{(t,1]} for t in [0,1).
  static LscStepFunction indicator(double t);
  /// 1_{(s,t)} for 0 ≤ s < t ≤ 1.
  static LscStepFunction indicator_open(double s, double t);

  ExtNat operator()(double t) const;
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<ExtNat>& pieces() const { return pieces_; }
  const std::vector<ExtNat>& at() const { return at_; }
  bool bounded() const;
  ExtNat sup() const;
  bool last_piece_empty() const { return !breaks_.empty() && breaks_.back() == 1.0; }

  bool operator==(const LscStepFunction&) const = default;
  std::string str() const;

 private:
  void canonicalize();

  std::vector<double> breaks_;
  std::vector<ExtNat> pieces_;
  std::vector<ExtNat> at_;
};

/// Pointwise op on the common refinement, then point values lowered to restore lower semicontinuity.
LscStepFunction lsc_combine(const LscStepFunction& f, const LscStepFunction& g,
                            const std::function<ExtNat(ExtNat, ExtNat)>& op);

LscStepFunction lsc_add(const LscStepFunction& f, const LscStepFunction& g);
LscStepFunction lsc_max(const LscStepFunction& f, const LscStepFunction& g);
bool lsc_leq(const LscStepFunction& f, const LscStepFunction& g);
bool lsc_far_below(const LscStepFunction& f, const LscStepFunction& g);
/// Supremum of an increasing finite chain; throws InvalidInput if the chain is not increasing.
LscStepFunction lsc_sup_chain(const std::vector<LscStepFunction>& chain);

/// k-th member of the canonical approximating sequence: level sets {f ≥ i}, i ≤ k,
/// shrunk by 1/k at every boundary inside [0,1].
LscStepFunction lsc_approximant(const LscStepFunction& f, int k);
/// Level sets grown by delta (clamped to (0,1]); f must be bounded.
LscStepFunction lsc_dilate(const LscStepFunction& f, double delta);

struct WeakCancellationTriple {
  LscStepFunction x, y, z;
};

struct WeakCancellationReport {
  int samples = 0;
  int premise_hits = 0;
  std::vector<WeakCancellationTriple> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

/// Randomized search for x + z ≪ y + z with x ≰ y.
WeakCancellationReport weak_cancellation_search(int sample_size, std::uint64_t seed);
/// One triple: true when the premise holds (and then `*counterexample` tells whether x ≤ y fails).
bool weak_cancellation_check(const LscStepFunction& x, const LscStepFunction& y, const LscStepFunction& z,
                             bool* counterexample);

/// Step approximation of t ↦ rank a(t) from ranks at increasing samples in (0,1].
LscStepFunction cu_class_from_ranks(const std::vector<double>& t, const std::vector<int>& ranks);

}  // namespace cuntz
