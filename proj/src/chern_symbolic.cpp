// SPDX-License-Identifier: Apache-2.0
#include "cuntz/chern_symbolic.hpp"

#include <sstream>

#include "cuntz/error.hpp"

namespace cuntz {

std::string TruncatedRing::str() const {
  std::ostringstream os;
  os << "Z[";
  for (int j = 0; j < generators(); ++j) os << (j ? "," : "") << "t" << j + 1;
  os << "]/(";
  for (int j = 0; j < generators(); ++j) os << (j ? "," : "") << "t" << j + 1 << "^" << orders[std::size_t(j)] + 1;
  os << ")";
  return os.str();
}

CohomologyClass::CohomologyClass(TruncatedRing ring) : ring_(std::move(ring)) {
  for (int n : ring_.orders)
    if (n < 1) throw InvalidInput("truncated ring: orders must be >= 1");
}

CohomologyClass CohomologyClass::one(const TruncatedRing& ring) {
  return monomial(ring, Exponents(std::size_t(ring.generators()), 0));
}

CohomologyClass CohomologyClass::generator(const TruncatedRing& ring, int j) {
  if (j < 0 || j >= ring.generators()) throw InvalidInput("generator index out of range");
  Exponents e(std::size_t(ring.generators()), 0);
  e[std::size_t(j)] = 1;
  return monomial(ring, e);
}

CohomologyClass CohomologyClass::monomial(const TruncatedRing& ring, const Exponents& e, BigInt c) {
  CohomologyClass x(ring);
  x.add_term(e, c);
  return x;
}

BigInt CohomologyClass::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void CohomologyClass::add_term(const Exponents& e, const BigInt& c) {
  if (int(e.size()) != ring_.generators()) throw InvalidInput("exponent vector has the wrong length");
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] < 0) throw InvalidInput("negative exponent");
    if (e[j] > ring_.orders[j]) return;
  }
  if (c == 0) return;
  BigInt& slot = terms_[e];
  slot += c;
  if (slot == 0) terms_.erase(e);
}

std::string CohomologyClass::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const BigInt a = c < 0 ? BigInt(-c) : c;
    bool constant = true;
    for (int v : e) constant = constant && v == 0;
    if (a != 1 || constant) os << a;
    bool need_dot = a != 1;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!e[j]) continue;
      if (need_dot) os << "*";
      os << "t" << j + 1;
      if (e[j] > 1) os << "^" << e[j];
      need_dot = true;
    }
  }
  return os.str();
}

CohomologyClass ring_add(const CohomologyClass& x, const CohomologyClass& y) {
  if (!(x.ring() == y.ring())) throw InvalidInput("ring_add: classes live in different rings");
  CohomologyClass out = x;
  for (const auto& [e, c] : y.terms()) out.add_term(e, c);
  return out;
}

CohomologyClass ring_mul(const CohomologyClass& x, const CohomologyClass& y) {
  if (!(x.ring() == y.ring())) throw InvalidInput("ring_mul: classes live in different rings");
  CohomologyClass out(x.ring());
  Exponents e(std::size_t(x.ring().generators()));
  for (const auto& [ex, cx] : x.terms())
    for (const auto& [ey, cy] : y.terms()) {
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = ex[j] + ey[j];
      out.add_term(e, cx * cy);
    }
  return out;
}

CohomologyClass ring_pow(const CohomologyClass& x, std::uint64_t k) {
  CohomologyClass result = CohomologyClass::one(x.ring());
  CohomologyClass base = x;
  while (k) {
    if (k & 1) result = ring_mul(result, base);
    k >>= 1;
    if (k) base = ring_mul(base, base);
  }
  return result;
}

std::uint64_t FormalBundle::rank() const {
  std::uint64_t r = trivial_rank;
  for (const auto& [j, m] : line_summands) r += m;
  return r;
}

FormalBundle FormalBundle::operator+(const FormalBundle& o) const {
  FormalBundle out = *this;
  out.trivial_rank += o.trivial_rank;
  for (const auto& [j, m] : o.line_summands) out.line_summands[j] += m;
  return out;
}

std::string FormalBundle::str() const {
  std::ostringstream os;
  bool first = true;
  if (trivial_rank) {
    os << trivial_rank << "*1";
    first = false;
  }
  for (const auto& [j, m] : line_summands) {
    if (!first) os << " + ";
    first = false;
    if (m != 1) os << m << "*";
    os << "eta" << j + 1;
  }
  return first ? "0" : os.str();
}

namespace {

void check_bundle(const TruncatedRing& ring, const FormalBundle& e) {
  for (const auto& [j, m] : e.line_summands) {
    if (j < 0 || j >= ring.generators()) throw InvalidInput("bundle: line summand index outside the ring");
    if (m < 1) throw InvalidInput("bundle: multiplicities must be >= 1");
  }
}

}  // namespace

CohomologyClass total_chern(const TruncatedRing& ring, const FormalBundle& e) {
  check_bundle(ring, e);
  CohomologyClass c = CohomologyClass::one(ring);
  for (const auto& [j, m] : e.line_summands) {
    // (1 + t)^m in one variable has coefficients C(m, p), p ≤ n_j.
    CohomologyClass f(ring);
    Exponents ex(std::size_t(ring.generators()), 0);
    BigInt binom = 1;
    for (int p = 0; p <= ring.orders[std::size_t(j)] && std::uint64_t(p) <= m; ++p) {
      ex[std::size_t(j)] = p;
      f.add_term(ex, binom);
      binom = binom * BigInt(m - std::uint64_t(p)) / BigInt(p + 1);
    }
    c = ring_mul(c, f);
  }
  return c;
}

EulerClass euler_class(const TruncatedRing& ring, const FormalBundle& e) {
  check_bundle(ring, e);
  EulerClass out{CohomologyClass(ring)};
  if (e.trivial_rank > 0) {
    out.trivial_summand = true;
    return out;
  }
  Exponents ex(std::size_t(ring.generators()), 0);
  for (const auto& [j, m] : e.line_summands) {
    if (m > std::uint64_t(ring.orders[std::size_t(j)])) return out;
    ex[std::size_t(j)] = int(m);
  }
  out.value = CohomologyClass::monomial(ring, ex);
  return out;
}

std::string to_string(Obstruction o) { return o == Obstruction::Obstructed ? "Obstructed" : "Inconclusive"; }

Obstruction trivial_subbundle_obstruction(const TruncatedRing& ring, const FormalBundle& e) {
  return euler_class(ring, e).nonzero() ? Obstruction::Obstructed : Obstruction::Inconclusive;
}

std::uint64_t villadsen_dimension(int i) {
  if (i < 1) throw InvalidInput("n_i needs i >= 1");
  std::uint64_t f = 1;
  for (int j = 2; j <= i + 1; ++j) f *= std::uint64_t(j);
  return 2 * f;
}

TruncatedRing villadsen_ring(int stage) {
  if (stage < 1) throw InvalidInput("stage must be >= 1");
  TruncatedRing r;
  r.orders.push_back(1);
  for (int i = 1; i < stage; ++i) r.orders.push_back(int(villadsen_dimension(i)));
  return r;
}

FormalBundle diagonal_map(const FormalBundle& e, int i) {
  if (i < 1) throw InvalidInput("diagonal map index must be >= 1");
  // f ↦ f∘π_i ⊕ ⊕_{j=1}^{i} f(y_i^j)·η_{n_i}: the pullback keeps every summand, and each point
  // evaluation is a constant projection of the fibre rank tensored with one copy of η_{n_i}.
  FormalBundle out = e;
  out.line_summands[i] += std::uint64_t(i) * e.rank();
  return out;
}

std::vector<std::uint64_t> simulate_diagonal_multiplicities(int stage) {
  if (stage < 1) throw InvalidInput("stage must be >= 1");
  FormalBundle p;
  p.line_summands[0] = 1;
  for (int i = 1; i < stage; ++i) p = diagonal_map(p, i);
  std::vector<std::uint64_t> k{p.line_summands[0] - 1};
  for (int j = 1; j < stage; ++j) k.push_back(p.line_summands[j]);
  return k;
}

std::uint64_t villadsen_multiplicity(int j) {
  if (j < 1) throw InvalidInput("multiplicity index must be >= 1");
  if (j == 1) return 0;
  std::uint64_t f = 1;
  for (int q = 2; q <= j - 1; ++q) f *= std::uint64_t(q);
  return std::uint64_t(j - 1) * f;
}

std::vector<VilladsenStage> villadsen_stage_ledger(int stages, double min_lambda1, double max_ratio) {
  if (stages < 1 || stages > kMaxVilladsenStages)
    throw InvalidInput("villadsen: stages must lie in [1, " + std::to_string(kMaxVilladsenStages) + "]");
  std::vector<VilladsenStage> out;
  for (int i = 1; i <= stages; ++i) {
    VilladsenStage s;
    s.stage = i;
    s.ring = villadsen_ring(i);
    s.k = simulate_diagonal_multiplicities(i);
    s.simulation_agrees = true;
    for (int j = 1; j <= i; ++j) s.simulation_agrees = s.simulation_agrees && s.k[std::size_t(j - 1)] == villadsen_multiplicity(j);
    s.target.line_summands[0] = 1;
    s.exponents_fit = s.exponents_fit_loose = true;
    for (int j = 2; j <= i; ++j) {
      const std::uint64_t m = 2 * s.k[std::size_t(j - 1)];
      s.target.line_summands[j - 1] = m;
      s.exponents_fit = s.exponents_fit && m <= std::uint64_t(s.ring.orders[std::size_t(j - 1)]);
      s.exponents_fit_loose = s.exponents_fit_loose && m <= villadsen_dimension(j);
    }
    s.euler = euler_class(s.ring, s.target);
    s.euler_exponents.assign(std::size_t(i), 0);
    for (const auto& [j, m] : s.target.line_summands) s.euler_exponents[std::size_t(j)] = int(m);
    s.verdict = s.euler.nonzero() ? Obstruction::Obstructed : Obstruction::Inconclusive;
    if (i <= 4) s.total_chern_terms = total_chern(s.ring, s.target).terms().size();
    s.du_bound = min_lambda1 * (1 - max_ratio);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace cuntz
