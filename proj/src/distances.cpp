// SPDX-License-Identifier: Apache-2.0
#include "cuntz/distances.hpp"

#include <algorithm>
#include <cmath>

#include "cuntz/chern.hpp"
#include "cuntz/error.hpp"
#include "cuntz/parallel.hpp"

namespace cuntz {

std::string to_string(Holds h) {
  switch (h) {
    case Holds::Yes: return "Yes";
    case Holds::No: return "No";
    case Holds::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::None: return "None";
    case VerdictReason::RankObstruction: return "RankObstruction";
    case VerdictReason::ChernObstruction: return "ChernObstruction";
    case VerdictReason::RankCertified: return "RankCertified";
    case VerdictReason::RankAndChernCertified: return "RankAndChernCertified";
    case VerdictReason::SliceObstruction: return "SliceObstruction";
  }
  return "?";
}

SpectralField::SpectralField(const MatrixField& a, double h, double tau)
    : field_(&a), n_(a.n()), h_(h), levels_(std::size_t(a.size())) {
  if (!(h > 0)) throw InvalidInput("grid step must be positive");
  for (int x = 0; x < a.size(); ++x) {
    const auto& ev = a.sample(x).eigenvalues();
    auto& q = levels_[std::size_t(x)];
    q.resize(std::size_t(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      q[std::size_t(i)] = std::max(0, int(std::ceil((ev(i) - tau) / h)));
      max_level_ = std::max(max_level_, q[std::size_t(i)]);
    }
  }
}

int SpectralField::rank(int x, int level) const {
  int r = 0;
  for (int q : levels_[std::size_t(x)]) r += q > level;
  return r;
}

std::vector<int> SpectralField::ranks(int level) const {
  std::vector<int> r(levels_.size());
  for (int x = 0; x < size(); ++x) r[std::size_t(x)] = rank(x, level);
  return r;
}

std::optional<int> SpectralField::chern_top(int k) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto it = chern_.find(k); it != chern_.end()) return it->second;
  std::vector<Matrix> frames;
  frames.reserve(levels_.size());
  for (const auto& s : field_->samples()) frames.push_back(s.frame().leftCols(k));
  std::optional<int> c;
  try {
    c = chern_from_frames(field_->space(), frames).value;
  } catch (const MeshTooCoarse&) {
  }
  chern_.emplace(k, c);
  return c;
}

namespace {

bool constant(const std::vector<int>& r) {
  return std::all_of(r.begin(), r.end(), [&](int v) { return v == r.front(); });
}

}  // namespace

ComparisonVerdict compare_rank_fields(const BaseSpace& space, const std::vector<int>& lhs, const std::vector<int>& rhs,
                                      int n_lhs, int n_rhs, const SpectralField* chern_lhs,
                                      const SpectralField* chern_rhs) {
  if (lhs.size() != rhs.size()) throw InvalidInput("rank fields over different meshes");
  for (std::size_t x = 0; x < lhs.size(); ++x)
    if (lhs[x] > rhs[x])
      return ComparisonVerdict::no(VerdictReason::RankObstruction,
                                   "rank " + std::to_string(lhs[x]) + " > " + std::to_string(rhs[x]) + " at point " +
                                       std::to_string(x));
  const bool lhs_zero = std::all_of(lhs.begin(), lhs.end(), [](int v) { return v == 0; });
  if (lhs_zero) return ComparisonVerdict::yes(VerdictReason::RankCertified, "left side vanishes");

  switch (space.kind()) {
    case SpaceKind::Point:
    case SpaceKind::Interval:
    case SpaceKind::Circle:
      return ComparisonVerdict::yes(VerdictReason::RankCertified);
    case SpaceKind::Product:
      if (space.base()->h2_trivial() && space.base()->dimension() <= 1)
        return ComparisonVerdict::yes(VerdictReason::RankCertified);
      return ComparisonVerdict::unknown("product over a base with nontrivial H^2");
    case SpaceKind::Sphere: break;
  }

  if (lhs == rhs && !constant(lhs)) return ComparisonVerdict::yes(VerdictReason::RankCertified, "equal non-constant ranks");
  const bool rhs_full = std::all_of(rhs.begin(), rhs.end(), [&](int v) { return v == n_rhs; });
  if (rhs_full && n_lhs <= n_rhs) return ComparisonVerdict::yes(VerdictReason::RankCertified, "right side invertible");
  if (constant(lhs) && constant(rhs) && lhs.front() == rhs.front() && chern_lhs && chern_rhs) {
    const int k = lhs.front();
    const auto cl = chern_lhs->chern_top(k);
    const auto cr = chern_rhs->chern_top(k);
    if (!cl || !cr) return ComparisonVerdict::unknown("Chern number not resolved on this mesh");
    const std::string d = "rank " + std::to_string(k) + ", chern " + std::to_string(*cl) + " vs " + std::to_string(*cr);
    if (*cl == *cr) return ComparisonVerdict::yes(VerdictReason::RankAndChernCertified, d);
    return ComparisonVerdict::no(VerdictReason::ChernObstruction, d);
  }
  return ComparisonVerdict::unknown("sphere case outside the rank and Chern rules");
}

ComparisonVerdict cuntz_compare(const MatrixField& a, const MatrixField& b, double tau) {
  if (!a.space().same_as(b.space())) throw InvalidInput("cuntz_compare: fields live on different spaces");
  const SpectralField sa(a, 1.0, tau), sb(b, 1.0, tau);
  return compare_rank_fields(a.space(), sa.ranks(0), sb.ranks(0), a.n(), b.n(), &sa, &sb);
}

FieldComparator::FieldComparator(const MatrixField& a, const MatrixField& b, double h, double tau)
    : a_(a, h, tau), b_(b, h, tau) {
  if (!a.space().same_as(b.space())) throw InvalidInput("fields live on different spaces");
}

int FieldComparator::levels() const { return std::max(a_.max_level(), b_.max_level()); }

ComparisonVerdict FieldComparator::compare(bool forward, int l_lhs, int l_rhs) const {
  const SpectralField& x = forward ? a_ : b_;
  const SpectralField& y = forward ? b_ : a_;
  return compare_rank_fields(x.field().space(), x.ranks(l_lhs), y.ranks(l_rhs), x.n(), y.n(), &x, &y);
}

namespace {

struct ShiftVerdict {
  Holds holds = Holds::Yes;
  std::optional<DwWitness> witness;
};

ShiftVerdict check_shift(const LevelComparator& c, double h, int m) {
  const int K = c.levels();
  const int count = std::max(0, K - m);
  std::vector<ComparisonVerdict> fwd(static_cast<std::size_t>(count)), bwd(static_cast<std::size_t>(count));
  parallel_for(count, [&](int L) {
    fwd[std::size_t(L)] = c.compare(true, L + m, L);
    bwd[std::size_t(L)] = c.compare(false, L + m, L);
  });
  ShiftVerdict out;
  for (int L = 0; L < count; ++L) {
    for (int dir = 0; dir < 2; ++dir) {
      const auto& v = dir == 0 ? fwd[std::size_t(L)] : bwd[std::size_t(L)];
      if (v.holds == Holds::No) {
        out.holds = Holds::No;
        out.witness = DwWitness{L * h, m * h, dir == 0, v.reason, v.detail};
        return out;
      }
      if (v.holds == Holds::Unknown) out.holds = Holds::Unknown;
    }
  }
  return out;
}

}  // namespace

DwResult dw_search(const LevelComparator& c, double h) {
  DwResult res;
  std::map<int, ShiftVerdict> cache;
  auto eval = [&](int m) -> const ShiftVerdict& {
    auto it = cache.find(m);
    if (it == cache.end()) {
      ++res.evaluations;
      it = cache.emplace(m, check_shift(c, h, m)).first;
    }
    return it->second;
  };
  const int K = c.levels();
  int lo = -1, hi = K;  // shift K is vacuous
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (eval(mid).holds == Holds::Yes) hi = mid; else lo = mid;
  }
  const int m_yes = hi;
  int m_no = -1;
  if (m_yes > 0) {
    if (eval(m_yes - 1).holds == Holds::No) {
      m_no = m_yes - 1;
    } else {
      int a = -1, b = m_yes - 1;
      while (b - a > 1) {
        const int mid = (a + b) / 2;
        if (eval(mid).holds == Holds::No) a = mid; else b = mid;
      }
      m_no = a;
    }
  }
  if (m_no >= 0 && eval(m_no).witness) res.witnesses.push_back(*eval(m_no).witness);
  res.interval = {std::max(0, m_no) * h, (m_yes + 1) * h, h};
  res.exact = m_yes == 0 || m_no == m_yes - 1;
  return res;
}

double default_step(const BaseSpace& s) {
  switch (s.kind()) {
    case SpaceKind::Point:
    case SpaceKind::Interval:
    case SpaceKind::Circle: return 1.0 / 1024;
    default: return 1.0 / 256;
  }
}

namespace {

bool thomsen_space(const BaseSpace& s) {
  return s.kind() != SpaceKind::Product && s.h2_trivial() && s.dimension() <= 2;
}

}  // namespace

DwResult dw_elements(const MatrixField& a, const MatrixField& b, const DwOptions& options) {
  if (!a.space().same_as(b.space())) throw InvalidInput("dw: fields live on different spaces");
  const double h = options.step > 0 ? options.step : default_step(a.space());
  if (thomsen_space(a.space()) && !options.force_general) {
    const SpectralField sa(a, h, options.tau), sb(b, h, options.tau);
    int m = 0, arg = 0;
    for (int x = 0; x < sa.size(); ++x) {
      const auto& qa = sa.levels(x);
      const auto& qb = sb.levels(x);
      for (std::size_t i = 0; i < std::max(qa.size(), qb.size()); ++i) {
        const int d = std::abs((i < qa.size() ? qa[i] : 0) - (i < qb.size() ? qb[i] : 0));
        if (d > m) m = d, arg = x;
      }
    }
    DwResult res;
    res.interval = {std::max(0, m - 1) * h, (m + 1) * h, h};
    res.exact = true;
    res.evaluations = 1;
    if (m > 0)
      res.witnesses.push_back({0, (m - 1) * h, true, VerdictReason::RankObstruction,
                               "largest level gap at point " + std::to_string(arg)});
    return res;
  }
  if (a.space().kind() == SpaceKind::Product)
    throw UnsupportedSpace("dw: product spaces need the suspension comparator");
  return dw_search(FieldComparator(a, b, h, options.tau), h);
}

DistanceInterval du_thomsen(const MatrixField& a, const MatrixField& b) {
  if (!a.space().same_as(b.space())) throw InvalidInput("du: fields live on different spaces");
  if (!thomsen_space(a.space()))
    throw UnsupportedSpace("du: eigenvalue-function formula needs dimension <= 2 and trivial H^2; use du_lower_bound");
  double d = 0;
  for (int x = 0; x < a.size(); ++x) {
    const auto& la = a.sample(x).eigenvalues();
    const auto& lb = b.sample(x).eigenvalues();
    for (Eigen::Index i = 0; i < std::max(la.size(), lb.size()); ++i)
      d = std::max(d, std::abs((i < la.size() ? la(i) : 0.0) - (i < lb.size() ? lb(i) : 0.0)));
  }
  return {d, d, a.space().step()};
}

double du_lower_bound(const MatrixField& a, const MatrixField& b, const DwOptions& options) {
  return dw_elements(a, b, options).interval.lo;
}

double dw_point_exact(const MatrixField& a, const MatrixField& b, double tau) {
  if (a.space().kind() != SpaceKind::Point || b.space().kind() != SpaceKind::Point)
    throw UnsupportedSpace("dw_point_exact: one-point space only");
  auto spectrum = [tau](const MatrixField& f) {
    std::vector<double> v;
    for (Eigen::Index i = 0; i < f.sample(0).eigenvalues().size(); ++i)
      if (f.sample(0).eigenvalues()(i) > tau) v.push_back(f.sample(0).eigenvalues()(i));
    return v;
  };
  const std::vector<double> la = spectrum(a), lb = spectrum(b);
  auto count = [](const std::vector<double>& l, double t) {
    return int(std::count_if(l.begin(), l.end(), [t](double v) { return v > t; }));
  };
  // x(t + r) ≤ y(t) for all t ≥ 0; both sides are right-continuous steps, so the
  // left end 0 and every jump of either side suffice.
  auto below = [&](const std::vector<double>& x, const std::vector<double>& y, double r) {
    std::vector<double> ts{0.0};
    for (double v : y) ts.push_back(v);
    for (double v : x)
      if (v - r >= 0) ts.push_back(v - r);
    return std::all_of(ts.begin(), ts.end(), [&](double t) { return count(x, t + r + 1e-12) <= count(y, t); });
  };
  std::vector<double> candidates{0.0};
  for (double u : la) candidates.push_back(u);
  for (double v : lb) candidates.push_back(v);
  for (double u : la)
    for (double v : lb) candidates.push_back(std::abs(u - v));
  std::sort(candidates.begin(), candidates.end());
  for (double r : candidates)
    if (below(la, lb, r) && below(lb, la, r)) return r;
  return candidates.back();
}

SandwichReport verify_sandwich(const MatrixField& a, const MatrixField& b, const DwOptions& options) {
  SandwichReport r;
  r.dw = dw_elements(a, b, options).interval;
  r.du = du_thomsen(a, b).lo;
  r.norm = sup_distance(a, b);
  r.resolution = r.dw.resolution;
  const double res = r.resolution + 1e-12;
  r.dw_below_du = r.dw.lo <= r.du + res;
  r.du_below_4dw = r.du <= 4 * r.dw.hi + res;
  r.du_below_norm = r.du <= r.norm + res;
  r.du_dw_gap = r.du < r.dw.lo ? r.dw.lo - r.du : (r.du > r.dw.hi ? r.du - r.dw.hi : 0.0);
  if (!r.dw_below_du) r.failures.push_back("d_W lower end " + std::to_string(r.dw.lo) + " exceeds d_U " + std::to_string(r.du));
  if (!r.du_below_4dw) r.failures.push_back("d_U " + std::to_string(r.du) + " exceeds 4 d_W " + std::to_string(4 * r.dw.hi));
  if (!r.du_below_norm) r.failures.push_back("d_U " + std::to_string(r.du) + " exceeds the sup norm " + std::to_string(r.norm));
  return r;
}

std::vector<VerdictRow> verdict_table(const LevelComparator& c, double h, int stride) {
  if (stride < 1) throw InvalidInput("verdict table: stride must be >= 1");
  std::vector<VerdictRow> rows;
  const int K = c.levels();
  for (int L = 0; L <= K; L += stride) {
    for (int m = 0; m <= K; m += stride) {
      const auto f = c.compare(true, L + m, L);
      const auto g = c.compare(false, L + m, L);
      VerdictRow row{L * h, m * h, Holds::Yes, VerdictReason::RankCertified};
      for (const auto* v : {&f, &g}) {
        if (v->holds == Holds::No) {
          row.holds = Holds::No;
          row.reason = v->reason;
          break;
        }
        if (v->holds == Holds::Unknown) row.holds = Holds::Unknown, row.reason = VerdictReason::None;
        else if (row.holds == Holds::Yes) row.reason = std::max(row.reason, v->reason);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<VerdictRow> verdict_table(const MatrixField& a, const MatrixField& b, const DwOptions& options, int stride) {
  const double h = options.step > 0 ? options.step : default_step(a.space());
  return verdict_table(FieldComparator(a, b, h, options.tau), h, stride);
}

}  // namespace cuntz
