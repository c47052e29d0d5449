// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cuntz {

using BigInt = boost::multiprecision::cpp_int;

/// Z[t_1, ..., t_m] / (t_i^{n_i + 1}).
struct TruncatedRing {
  std::vector<int> orders;

  int generators() const { return int(orders.size()); }
  bool operator==(const TruncatedRing&) const = default;
  std::string str() const;
};

using Exponents = std::vector<int>;

class CohomologyClass {
 public:
  explicit CohomologyClass(TruncatedRing ring);

  static CohomologyClass zero(const TruncatedRing& ring) { return CohomologyClass(ring); }
  static CohomologyClass one(const TruncatedRing& ring);
  /// t_j (0-based j).
  static CohomologyClass generator(const TruncatedRing& ring, int j);
  static CohomologyClass monomial(const TruncatedRing& ring, const Exponents& e, BigInt c = 1);

  const TruncatedRing& ring() const { return ring_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(const Exponents& e) const;
  /// Adds c·t^e, dropping it when e exceeds the truncation.
  void add_term(const Exponents& e, const BigInt& c);

  bool operator==(const CohomologyClass& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
  std::string str() const;

 private:
  TruncatedRing ring_;
  std::map<Exponents, BigInt> terms_;
};

CohomologyClass ring_add(const CohomologyClass& x, const CohomologyClass& y);
CohomologyClass ring_mul(const CohomologyClass& x, const CohomologyClass& y);
CohomologyClass ring_pow(const CohomologyClass& x, std::uint64_t k);

/// Trivial summands plus pulled-back line bundles η̃_j with c_1 = t_j (0-based j).
struct FormalBundle {
  std::uint64_t trivial_rank = 0;
  std::map<int, std::uint64_t> line_summands;

  std::uint64_t rank() const;
  FormalBundle operator+(const FormalBundle& o) const;
  std::string str() const;
};

CohomologyClass total_chern(const TruncatedRing& ring, const FormalBundle& e);

struct EulerClass {
  CohomologyClass value;
  bool trivial_summand = false;  // value is 0 by convention
  bool nonzero() const { return !value.is_zero(); }
};

EulerClass euler_class(const TruncatedRing& ring, const FormalBundle& e);

enum class Obstruction { Obstructed, Inconclusive };
std::string to_string(Obstruction o);

/// Obstructed when the Euler class is nonzero: a trivial rank-1 subbundle would force it to vanish.
Obstruction trivial_subbundle_obstruction(const TruncatedRing& ring, const FormalBundle& e);

/// n_i = 2·(i+1)!, i ≥ 1.
std::uint64_t villadsen_dimension(int i);

/// Ring of X_i = CP(1) × CP(n_1) × ... × CP(n_{i-1}).
TruncatedRing villadsen_ring(int stage);

/// Image under the stage-i diagonal map with data (1, π_i) ∪ (η_{n_i}^j, δ_{y_i^j})_{j=1..i}.
FormalBundle diagonal_map(const FormalBundle& e, int i);

/// Multiplicities (k_1, ..., k_i) of η̃_j beyond p itself in the image of p = η̃_1,
/// by composing diagonal_map one stage at a time.
std::vector<std::uint64_t> simulate_diagonal_multiplicities(int stage);

/// Closed form k_1 = 0, k_j = (j−1)·(j−1)! for j ≥ 2.
std::uint64_t villadsen_multiplicity(int j);

struct VilladsenStage {
  int stage = 1;
  TruncatedRing ring;
  std::vector<std::uint64_t> k;
  FormalBundle target;               // η̃_1 ⊕ Σ_{j≥2} 2k_j η̃_j
  Exponents euler_exponents;
  EulerClass euler{CohomologyClass(TruncatedRing{})};
  bool exponents_fit = false;         // 2k_j ≤ truncation order of t_j
  bool exponents_fit_loose = false;   // 2k_j ≤ n_j
  bool simulation_agrees = false;
  std::optional<std::size_t> total_chern_terms;  // computed for small rings only
  Obstruction verdict = Obstruction::Inconclusive;
  double du_bound = 0;                // (min λ1)(1 − max λ2/λ1)
};

constexpr int kMaxVilladsenStages = 6;

std::vector<VilladsenStage> villadsen_stage_ledger(int stages, double min_lambda1 = 0.5, double max_ratio = 0.5);

}  // namespace cuntz
