// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "cuntz/chern_symbolic.hpp"
#include "cuntz/error.hpp"

using namespace cuntz;

namespace {

using Dense = std::map<Exponents, long long>;

Dense to_dense(const CohomologyClass& c) {
  Dense d;
  for (const auto& [e, v] : c.terms()) d[e] = static_cast<long long>(v);
  return d;
}

// Schoolbook product with truncation t_j^{n_j + 1} = 0.
Dense naive_mul(const Dense& x, const Dense& y, const TruncatedRing& ring) {
  Dense out;
  for (const auto& [ex, cx] : x)
    for (const auto& [ey, cy] : y) {
      Exponents e(ex.size());
      bool keep = true;
      for (std::size_t j = 0; j < e.size(); ++j) {
        e[j] = ex[j] + ey[j];
        keep = keep && e[j] <= ring.orders[j];
      }
      if (keep) out[e] += cx * cy;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("ring multiplication matches a schoolbook product") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    TruncatedRing ring;
    for (int g = 1 + trial % 3; g > 0; --g) ring.orders.push_back(1 + int(rng() % 4));
    auto random_class = [&] {
      CohomologyClass c(ring);
      for (int t = 0; t < 4; ++t) {
        Exponents e;
        for (int n : ring.orders) e.push_back(int(rng() % unsigned(n + 1)));
        c.add_term(e, coeff(rng));
      }
      return c;
    };
    const auto x = random_class(), y = random_class();
    CHECK(to_dense(ring_mul(x, y)) == naive_mul(to_dense(x), to_dense(y), ring));
  }
}

TEST_CASE("truncation and powers") {
  const TruncatedRing ring{{2, 1}};
  const auto t0 = CohomologyClass::generator(ring, 0), t1 = CohomologyClass::generator(ring, 1);
  CHECK(ring_pow(t0, 2).coefficient({2, 0}) == 1);
  CHECK(ring_pow(t0, 3).is_zero());
  CHECK(ring_mul(t1, t1).is_zero());
  const auto one_plus = ring_add(CohomologyClass::one(ring), t0);
  // (1 + t)^5 = 1 + 5t + 10t^2 in Z[t]/t^3
  const auto p = ring_pow(one_plus, 5);
  CHECK(p.coefficient({0, 0}) == 1);
  CHECK(p.coefficient({1, 0}) == 5);
  CHECK(p.coefficient({2, 0}) == 10);
  CHECK(p.terms().size() == 3);
}

TEST_CASE("total Chern class of line sums uses binomial coefficients") {
  const TruncatedRing ring{{6, 3}};
  FormalBundle e;
  e.trivial_rank = 2;
  e.line_summands = {{0, 9}, {1, 4}};
  const auto c = total_chern(ring, e);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 3; ++b) CHECK(c.coefficient({a, b}) == binomial(9, a) * binomial(4, b));
  CHECK(e.rank() == 15);
}

TEST_CASE("Euler class of a line sum is the product of first Chern classes") {
  const TruncatedRing ring{{3, 4}};
  FormalBundle e;
  e.line_summands = {{0, 2}, {1, 3}};
  const EulerClass eu = euler_class(ring, e);
  CHECK(eu.value.terms().size() == 1);
  CHECK(eu.value.coefficient({2, 3}) == 1);
  CHECK(trivial_subbundle_obstruction(ring, e) == Obstruction::Obstructed);

  FormalBundle too_big;
  too_big.line_summands = {{0, 4}};
  CHECK_FALSE(euler_class(ring, too_big).nonzero());
  CHECK(trivial_subbundle_obstruction(ring, too_big) == Obstruction::Inconclusive);

  FormalBundle with_trivial = e;
  with_trivial.trivial_rank = 1;
  CHECK(euler_class(ring, with_trivial).trivial_summand);
  CHECK(trivial_subbundle_obstruction(ring, with_trivial) == Obstruction::Inconclusive);
}

TEST_CASE("Villadsen dimensions, rings and multiplicities") {
  CHECK(villadsen_dimension(1) == 4);
  CHECK(villadsen_dimension(2) == 12);
  CHECK(villadsen_dimension(3) == 48);
  CHECK(villadsen_dimension(4) == 240);
  CHECK(villadsen_ring(3).orders == std::vector<int>{1, 4, 12});
  CHECK(villadsen_multiplicity(1) == 0);
  CHECK(villadsen_multiplicity(2) == 1);
  CHECK(villadsen_multiplicity(3) == 4);
  CHECK(villadsen_multiplicity(4) == 18);
  for (int stage = 1; stage <= 5; ++stage) {
    const auto sim = simulate_diagonal_multiplicities(stage);
    REQUIRE(sim.size() == std::size_t(stage));
    for (int j = 1; j <= stage; ++j) CHECK(sim[std::size_t(j - 1)] == villadsen_multiplicity(j));
  }
}

TEST_CASE("Villadsen ledger is obstructed at every stage") {
  const auto ledger = villadsen_stage_ledger(4);
  REQUIRE(ledger.size() == 4);
  for (const auto& s : ledger) {
    CAPTURE(s.stage);
    CHECK(s.verdict == Obstruction::Obstructed);
    CHECK(s.exponents_fit);
    CHECK(s.simulation_agrees);
    CHECK(s.euler.value.terms().size() == 1);
    CHECK(s.du_bound == doctest::Approx(0.25));
    CHECK(s.total_chern_terms.has_value());
  }
  // Stage 3: η̃_1 ⊕ 2η̃_2 ⊕ 8η̃_3, Euler class t_1 t_2^2 t_3^8.
  CHECK(ledger[2].euler.value.coefficient({1, 2, 8}) == 1);
  CHECK_THROWS_AS(villadsen_stage_ledger(kMaxVilladsenStages + 1), InvalidInput);
}
