// SPDX-License-Identifier: Apache-2.0
#include "cuntz/lsc.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cuntz/error.hpp"

namespace cuntz {

LscStepFunction::LscStepFunction(std::vector<double> breaks, std::vector<ExtNat> pieces, std::vector<ExtNat> at)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)), at_(std::move(at)) {
  const std::size_t k = breaks_.size();
  for (std::size_t j = 0; j < k; ++j) {
    if (!(breaks_[j] > 0 && breaks_[j] <= 1)) throw InvalidInput("step function: breaks must lie in (0,1]");
    if (j > 0 && !(breaks_[j] > breaks_[j - 1])) throw InvalidInput("step function: breaks must increase strictly");
  }
  if (pieces_.size() != k + 1) throw InvalidInput("step function: need one more value than breaks");
  const bool empty_tail = k > 0 && breaks_.back() == 1.0;
  if (at_.empty()) {
    at_.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      at_[j] = pieces_[j];
      if (!(empty_tail && j + 1 == k)) at_[j] = std::min(at_[j], pieces_[j + 1]);
    }
  }
  if (at_.size() != k) throw InvalidInput("step function: need one point value per break");
  if (empty_tail) pieces_[k] = at_[k - 1];
  for (std::size_t j = 0; j < k; ++j) {
    if (at_[j] > pieces_[j] || at_[j] > pieces_[j + 1])
      throw InvalidInput("step function: value at a break exceeds an adjacent piece (not lower semicontinuous)");
  }
  canonicalize();
}

void LscStepFunction::canonicalize() {
  std::vector<double> b;
  std::vector<ExtNat> p{pieces_.front()}, a;
  for (std::size_t j = 0; j < breaks_.size(); ++j) {
    if (p.back() == pieces_[j + 1] && at_[j] == pieces_[j + 1]) continue;
    b.push_back(breaks_[j]);
    a.push_back(at_[j]);
    p.push_back(pieces_[j + 1]);
  }
  breaks_ = std::move(b);
  pieces_ = std::move(p);
  at_ = std::move(a);
}

LscStepFunction LscStepFunction::indicator(double t) {
  if (!(t >= 0 && t < 1)) throw InvalidInput("indicator: t must lie in [0,1)");
  if (t == 0) return constant(1);
  return LscStepFunction({t}, {0, 1}, {0});
}

LscStepFunction LscStepFunction::indicator_open(double s, double t) {
  if (!(s >= 0 && s < t && t <= 1)) throw InvalidInput("indicator_open: need 0 <= s < t <= 1");
  if (s == 0) return LscStepFunction({t}, {1, 0}, {0});
  return LscStepFunction({s, t}, {0, 1, 0}, {0, 0});
}

ExtNat LscStepFunction::operator()(double t) const {
  if (!(t > 0 && t <= 1)) throw InvalidInput("step function evaluated outside (0,1]");
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
  const std::size_t j = std::size_t(it - breaks_.begin());
  if (it != breaks_.end() && *it == t) return at_[j];
  return pieces_[j];
}

bool LscStepFunction::bounded() const { return !sup().is_inf(); }

ExtNat LscStepFunction::sup() const { return *std::max_element(pieces_.begin(), pieces_.end()); }

std::string LscStepFunction::str() const {
  std::ostringstream os;
  os << "{breaks:[";
  for (std::size_t j = 0; j < breaks_.size(); ++j) os << (j ? "," : "") << breaks_[j];
  os << "], pieces:[";
  for (std::size_t j = 0; j < pieces_.size(); ++j) os << (j ? "," : "") << pieces_[j].str();
  os << "], at:[";
  for (std::size_t j = 0; j < at_.size(); ++j) os << (j ? "," : "") << at_[j].str();
  os << "]}";
  return os.str();
}

namespace {

std::vector<double> merged_breaks(const LscStepFunction& f, const LscStepFunction& g) {
  std::vector<double> p;
  std::merge(f.breaks().begin(), f.breaks().end(), g.breaks().begin(), g.breaks().end(), std::back_inserter(p));
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

// Open atoms of the partition p: (0,p_1), (p_1,p_2), ..., (p_m,1]; the last may be empty.
struct Atom {
  double lo, hi;
  bool empty() const { return !(lo < hi); }
  double mid() const { return 0.5 * (lo + hi); }
};

Atom open_atom(const std::vector<double>& p, std::size_t j) {
  return {j == 0 ? 0.0 : p[j - 1], j == p.size() ? 1.0 : p[j]};
}

struct Run {
  double start, end;
  bool includes_one;
};

std::vector<Run> level_runs(const LscStepFunction& f, ExtNat level) {
  std::vector<Run> runs;
  const auto& b = f.breaks();
  bool in = false;
  double start = 0;
  for (std::size_t j = 0; j <= b.size(); ++j) {
    const Atom a = open_atom(b, j);
    if (!a.empty()) {
      if (f.pieces()[j] >= level) {
        if (!in) {
          in = true;
          start = a.lo;
        }
      } else if (in) {
        runs.push_back({start, a.lo, false});
        in = false;
      }
    }
    if (j < b.size()) {
      if (f.at()[j] >= level) {
        if (!in) {
          in = true;
          start = b[j];
        }
      } else if (in) {
        runs.push_back({start, b[j], false});
        in = false;
      }
    }
  }
  if (in) runs.push_back({start, 1.0, true});
  return runs;
}

}  // namespace

LscStepFunction lsc_combine(const LscStepFunction& f, const LscStepFunction& g,
                            const std::function<ExtNat(ExtNat, ExtNat)>& op) {
  const std::vector<double> p = merged_breaks(f, g);
  std::vector<ExtNat> pieces(p.size() + 1), at(p.size());
  for (std::size_t j = 0; j <= p.size(); ++j) {
    const Atom a = open_atom(p, j);
    if (!a.empty()) pieces[j] = op(f(a.mid()), g(a.mid()));
  }
  const bool empty_tail = !p.empty() && p.back() == 1.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    at[j] = std::min(op(f(p[j]), g(p[j])), pieces[j]);
    if (!(empty_tail && j + 1 == p.size())) at[j] = std::min(at[j], pieces[j + 1]);
  }
  return LscStepFunction(p, pieces, at);
}

LscStepFunction lsc_add(const LscStepFunction& f, const LscStepFunction& g) {
  return lsc_combine(f, g, [](ExtNat a, ExtNat b) { return a + b; });
}

LscStepFunction lsc_max(const LscStepFunction& f, const LscStepFunction& g) {
  return lsc_combine(f, g, [](ExtNat a, ExtNat b) { return std::max(a, b); });
}

bool lsc_leq(const LscStepFunction& f, const LscStepFunction& g) {
  const std::vector<double> p = merged_breaks(f, g);
  for (std::size_t j = 0; j <= p.size(); ++j) {
    const Atom a = open_atom(p, j);
    if (!a.empty() && f(a.mid()) > g(a.mid())) return false;
    if (j < p.size() && f(p[j]) > g(p[j])) return false;
  }
  return true;
}

bool lsc_far_below(const LscStepFunction& f, const LscStepFunction& g) {
  if (!f.bounded()) return false;
  const std::vector<double> p = merged_breaks(f, g);
  for (std::size_t j = 0; j <= p.size(); ++j) {
    const Atom a = open_atom(p, j);
    if (!a.empty()) {
      const ExtNat v = f(a.mid());
      if (v > ExtNat(0)) {
        // The closure of this atom within [0,1] adds its endpoints.
        if (j == 0) return false;
        if (v > g(a.mid()) || v > g(a.lo)) return false;
        if (j < p.size() && v > g(a.hi)) return false;
      }
    }
    if (j < p.size() && f(p[j]) > g(p[j])) return false;
  }
  return true;
}

LscStepFunction lsc_sup_chain(const std::vector<LscStepFunction>& chain) {
  if (chain.empty()) return LscStepFunction::zero();
  LscStepFunction s = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!lsc_leq(chain[i - 1], chain[i]))
      throw InvalidInput("sup_chain: element " + std::to_string(i) + " is not above its predecessor");
    s = lsc_max(s, chain[i]);
  }
  return s;
}

LscStepFunction lsc_approximant(const LscStepFunction& f, int k) {
  if (k < 1) throw InvalidInput("approximant index must be >= 1");
  const double delta = 1.0 / k;
  const ExtNat s = f.sup();
  const std::uint64_t top = s.is_inf() ? std::uint64_t(k) : std::min<std::uint64_t>(s.value(), std::uint64_t(k));
  LscStepFunction out;
  for (std::uint64_t i = 1; i <= top; ++i) {
    for (const Run& r : level_runs(f, ExtNat(i))) {
      const double lo = r.start + delta;
      if (r.includes_one) {
        if (lo < 1) out = lsc_add(out, LscStepFunction::indicator(lo));
      } else {
        const double hi = r.end - delta;
        if (lo < hi) out = lsc_add(out, LscStepFunction::indicator_open(lo, hi));
      }
    }
  }
  return out;
}

LscStepFunction lsc_dilate(const LscStepFunction& f, double delta) {
  if (!f.bounded()) throw InvalidInput("dilate: function must be bounded");
  LscStepFunction out;
  for (std::uint64_t i = 1; i <= f.sup().value(); ++i) {
    for (const Run& r : level_runs(f, ExtNat(i))) {
      const double lo = std::max(0.0, r.start - delta);
      const double hi = r.end + delta;
      if (r.includes_one || hi >= 1)
        out = lsc_add(out, LscStepFunction::indicator(lo));
      else
        out = lsc_add(out, LscStepFunction::indicator_open(lo, hi));
    }
  }
  return out;
}

bool weak_cancellation_check(const LscStepFunction& x, const LscStepFunction& y, const LscStepFunction& z,
                             bool* counterexample) {
  const bool premise = lsc_far_below(lsc_add(x, z), lsc_add(y, z));
  if (counterexample) *counterexample = premise && !lsc_leq(x, y);
  return premise;
}

namespace {

LscStepFunction random_step(std::mt19937_64& rng, int max_value, bool allow_inf, bool vanish_near_zero = false) {
  std::uniform_int_distribution<int> nb(0, 4), grid(1, 19), val(0, max_value), coin(0, 9);
  std::vector<int> idx;
  const int k = nb(rng);
  for (int i = 0; i < k; ++i) idx.push_back(grid(rng));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::vector<double> breaks;
  for (int i : idx) breaks.push_back(i / 20.0);
  std::vector<ExtNat> pieces(breaks.size() + 1), at(breaks.size());
  for (auto& p : pieces) p = (allow_inf && coin(rng) == 0) ? ExtNat::inf() : ExtNat(std::uint64_t(val(rng)));
  if (vanish_near_zero) pieces[0] = 0;
  for (std::size_t j = 0; j < at.size(); ++j) {
    at[j] = std::min(pieces[j], pieces[j + 1]);
    if (coin(rng) < 2 && at[j] > ExtNat(0)) at[j] = ExtNat(at[j].is_inf() ? 0 : at[j].value() - 1);
  }
  return LscStepFunction(breaks, pieces, at);
}

}  // namespace

WeakCancellationReport weak_cancellation_search(int sample_size, std::uint64_t seed) {
  WeakCancellationReport report;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> mode(0, 2), grid(0, 19);
  for (int s = 0; s < sample_size; ++s) {
    LscStepFunction x = random_step(rng, 2, false, s % 4 != 0);
    LscStepFunction z = random_step(rng, 2, false, s % 4 != 0);
    LscStepFunction y;
    switch (mode(rng)) {
      case 0:
        y = random_step(rng, 3, true);
        break;
      case 1: {
        // A y built to satisfy the premise, then possibly notched.
        y = lsc_dilate(lsc_add(x, z), 0.05);
        int c = grid(rng), d = grid(rng);
        if (c > d) std::swap(c, d);
        if (c < d && grid(rng) % 2 == 0)
          y = lsc_combine(y, LscStepFunction::indicator_open(c / 20.0, d / 20.0),
                          [](ExtNat a, ExtNat b) { return monus(a, b); });
        break;
      }
      default:
        y = lsc_approximant(lsc_add(x, random_step(rng, 1, false)), 1 + grid(rng));
        break;
    }
    bool ce = false;
    if (weak_cancellation_check(x, y, z, &ce)) ++report.premise_hits;
    if (ce) report.counterexamples.push_back({x, y, z});
    ++report.samples;
  }
  return report;
}

LscStepFunction cu_class_from_ranks(const std::vector<double>& t, const std::vector<int>& ranks) {
  if (t.size() != ranks.size() || t.empty()) throw InvalidInput("cu class: need matching non-empty samples");
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (!(t[j] > 0 && t[j] <= 1)) throw InvalidInput("cu class: samples must lie in (0,1]");
    if (j > 0 && !(t[j] > t[j - 1])) throw InvalidInput("cu class: samples must increase");
    if (ranks[j] < 0) throw InvalidInput("cu class: negative rank");
  }
  // Sample points keep their own rank; each open gap takes the larger neighbour.
  std::vector<double> breaks;
  std::vector<ExtNat> pieces{ExtNat(std::uint64_t(ranks[0]))}, at;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] == 1.0 && j + 1 == t.size()) {
      breaks.push_back(1.0);
      at.push_back(ExtNat(std::uint64_t(ranks[j])));
      pieces.push_back(at.back());
      break;
    }
    breaks.push_back(t[j]);
    at.push_back(ExtNat(std::uint64_t(ranks[j])));
    const int next = j + 1 < t.size() ? std::max(ranks[j], ranks[j + 1]) : ranks[j];
    pieces.push_back(ExtNat(std::uint64_t(next)));
  }
  return LscStepFunction(breaks, pieces, at);
}

}  // namespace cuntz
