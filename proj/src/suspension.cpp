// SPDX-License-Identifier: Apache-2.0
#include "cuntz/suspension.hpp"

#include <algorithm>
#include <cmath>

#include "cuntz/error.hpp"
#include "cuntz/functions.hpp"
#include "cuntz/parallel.hpp"

namespace cuntz {

MatrixField tensor_field(const MatrixField& a, const ScalarFunction& f, const SpacePtr& product) {
  if (product->kind() != SpaceKind::Product || !product->base()->same_as(a.space()))
    throw InvalidInput("tensor_field: product space does not sit over the field's space");
  std::vector<PositiveMatrix> s;
  s.reserve(std::size_t(product->size()));
  for (const auto& p : product->points()) {
    const double c = f(p.t);
    if (!(c >= 0)) throw InvalidInput("tensor_field: f must be non-negative");
    s.push_back(apply_spectral(a.sample(p.base_index), [c](double v) { return v * c; }));
  }
  return MatrixField(product, a.n(), std::move(s));
}

namespace {

int quantize(double v, double h, double tau) { return std::max(0, int(std::ceil((v - tau) / h))); }

int count_above(const std::vector<int>& q, int level) {
  int r = 0;
  for (int v : q) r += v > level;
  return r;
}

bool constant(const std::vector<int>& r) {
  return std::all_of(r.begin(), r.end(), [&](int v) { return v == r.front(); });
}

}  // namespace

SuspensionComparator::SuspensionComparator(const MatrixField& a, const MatrixField& b, ScalarFunction f,
                                           std::vector<double> t_samples, double h, double tau)
    : base_(&a.space()), f_(std::move(f)), t_(std::move(t_samples)), h_(h), tau_(tau) {
  if (!a.space().same_as(b.space())) throw InvalidInput("suspension: fields live on different spaces");
  if (a.space().kind() == SpaceKind::Product) throw InvalidInput("suspension: base must not be a product");
  if (t_.empty()) throw InvalidInput("suspension: no t samples");
  const double t_min = *std::min_element(t_.begin(), t_.end());

  if (base_->kind() == SpaceKind::Sphere) {
    for (const MatrixField* m : {&a, &b})
      for (int i = 0; i < m->n(); ++i) {
        std::vector<double> s;
        for (int x = 0; x < m->size(); ++x) s.push_back(std::clamp(m->sample(x).eigenvalues()(i), t_min, 1.0));
        slices_.push_back(std::move(s));
      }
    for (double c : {1.0, 0.5, 0.25, 0.125, t_min}) slices_.emplace_back(std::size_t(a.size()), c);
  }

  auto fill = [&](const MatrixField& m, Side& side) {
    const int T = int(t_.size());
    side.mesh.resize(std::size_t(m.size() * T));
    for (int x = 0; x < m.size(); ++x) {
      const auto& ev = m.sample(x).eigenvalues();
      for (int j = 0; j < T; ++j) {
        auto& q = side.mesh[std::size_t(x * T + j)];
        const double c = f_(t_[std::size_t(j)]);
        for (Eigen::Index i = 0; i < ev.size(); ++i) q.push_back(quantize(ev(i) * c, h_, tau_));
        for (int v : q) levels_ = std::max(levels_, v);
      }
    }
    for (const auto& s : slices_) {
      std::vector<std::vector<int>> per_point(std::size_t(m.size()));
      for (int x = 0; x < m.size(); ++x) {
        const auto& ev = m.sample(x).eigenvalues();
        const double c = f_(s[std::size_t(x)]);
        for (Eigen::Index i = 0; i < ev.size(); ++i) per_point[std::size_t(x)].push_back(quantize(ev(i) * c, h_, tau_));
        for (int v : per_point[std::size_t(x)]) levels_ = std::max(levels_, v);
      }
      side.slice.push_back(std::move(per_point));
    }
    side.spectral = std::make_unique<SpectralField>(m, h_, tau_);
  };
  fill(a, a_);
  fill(b, b_);
  same_ = a.space().same_as(b.space()) && sup_distance(a, b) <= tau_;
}

std::vector<int> SuspensionComparator::mesh_ranks(const Side& s, int level) const {
  std::vector<int> r(s.mesh.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = count_above(s.mesh[k], level);
  return r;
}

std::vector<int> SuspensionComparator::slice_ranks(const Side& s, int slice, int level) {
  const auto& q = s.slice[std::size_t(slice)];
  std::vector<int> r(q.size());
  for (std::size_t x = 0; x < r.size(); ++x) r[x] = count_above(q[x], level);
  return r;
}

ComparisonVerdict SuspensionComparator::compare(bool forward, int l_lhs, int l_rhs) const {
  const Side& x = forward ? a_ : b_;
  const Side& y = forward ? b_ : a_;
  const auto rl = mesh_ranks(x, l_lhs), rr = mesh_ranks(y, l_rhs);
  const int T = int(t_.size());
  for (std::size_t k = 0; k < rl.size(); ++k)
    if (rl[k] > rr[k])
      return ComparisonVerdict::no(VerdictReason::RankObstruction,
                                   "rank " + std::to_string(rl[k]) + " > " + std::to_string(rr[k]) + " at (x" +
                                       std::to_string(int(k) / T) + ", t = " + std::to_string(t_[k % std::size_t(T)]) +
                                       ")");
  if (std::all_of(rl.begin(), rl.end(), [](int v) { return v == 0; }))
    return ComparisonVerdict::yes(VerdictReason::RankCertified, "left side vanishes");
  if (base_->h2_trivial() && base_->dimension() <= 1) return ComparisonVerdict::yes(VerdictReason::RankCertified);
  if (same_ && l_lhs >= l_rhs) return ComparisonVerdict::yes(VerdictReason::RankCertified, "same element, higher cut");

  for (int s = 0; s < int(slices_.size()); ++s) {
    const auto sl = slice_ranks(x, s, l_lhs), sr = slice_ranks(y, s, l_rhs);
    for (std::size_t p = 0; p < sl.size(); ++p)
      if (sl[p] > sr[p])
        return ComparisonVerdict::no(VerdictReason::SliceObstruction,
                                     "slice " + std::to_string(s) + ": rank " + std::to_string(sl[p]) + " > " +
                                         std::to_string(sr[p]) + " at x" + std::to_string(p));
    if (base_->kind() == SpaceKind::Sphere && constant(sl) && constant(sr) && sl.front() == sr.front() &&
        sl.front() >= 1) {
      const int k = sl.front();
      const auto cl = x.spectral->chern_top(k), cr = y.spectral->chern_top(k);
      if (cl && cr && *cl != *cr)
        return ComparisonVerdict::no(VerdictReason::SliceObstruction,
                                     "slice " + std::to_string(s) + ": rank " + std::to_string(k) + ", chern " +
                                         std::to_string(*cl) + " vs " + std::to_string(*cr));
    }
  }
  return ComparisonVerdict::unknown("no slice obstruction found");
}

SuspensionResult suspension_dw(const MatrixField& a, const MatrixField& b, double eps, const SuspensionOptions& o) {
  if (!(eps > 0 && eps <= 1)) throw InvalidInput("suspension: eps must lie in (0, 1]");
  if (!a.space().same_as(b.space())) throw InvalidInput("suspension: fields live on different spaces");
  SuspensionResult r;
  auto t = BaseSpace::interval_samples(o.uniform_samples, eps, o.geometric_depth);
  r.product = make_space(BaseSpace::product(a.space(), t));
  const SuspensionComparator base(a, b, IdentityFunction{}, t, o.step, o.tau);
  const SuspensionComparator susp(a, b, GEpsilon{eps}, t, o.step, o.tau);
  r.baseline = dw_search(base, o.step);
  r.suspended = dw_search(susp, o.step);
  return r;
}

}  // namespace cuntz
