// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "cuntz/hermitian.hpp"

namespace cuntz {

/// e_t(x) = max(x − t, 0).
template <class Real = double>
struct CutFunction {
  Real t;
  Real operator()(Real x) const { return std::max(x - t, Real(0)); }
};

template <class Real = double>
struct IdentityFunction {
  Real operator()(Real x) const { return x; }
};

/// g_ε(t) = ε/t on [ε, ∞) and t/ε on [0, ε].
template <class Real = double>
struct GEpsilon {
  Real eps;
  Real operator()(Real x) const {
    if (x <= 0) return Real(0);
    return x >= eps ? eps / x : x / eps;
  }
};

inline const char* kGEpsilonConvention = "g_eps(t) = eps/t on [eps,1], t/eps on [0,eps]";

template <class Real = double>
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<Real> breaks, std::vector<Real> vals)
      : breaks_(std::move(breaks)), vals_(std::move(vals)) {
    if (breaks_.size() != vals_.size() || breaks_.empty())
      throw InvalidInput("piecewise linear: breaks and vals must be non-empty and of equal length");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
      if (!(breaks_[i] > breaks_[i - 1])) throw InvalidInput("piecewise linear: breaks must increase strictly");
  }

  Real domain_min() const { return breaks_.front(); }
  Real domain_max() const { return breaks_.back(); }
  const std::vector<Real>& breaks() const { return breaks_; }
  const std::vector<Real>& vals() const { return vals_; }

  Real operator()(Real x) const {
    if (x <= breaks_.front()) return vals_.front();
    if (x >= breaks_.back()) return vals_.back();
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    const std::size_t j = std::size_t(it - breaks_.begin());
    const Real x0 = breaks_[j - 1], x1 = breaks_[j];
    const Real w = (x - x0) / (x1 - x0);
    return vals_[j - 1] * (1 - w) + vals_[j] * w;
  }

  /// Minimum over [lo, hi] ∩ domain; attained at a breakpoint or an endpoint.
  Real min_on(Real lo, Real hi) const {
    Real m = std::min((*this)(lo), (*this)(hi));
    for (std::size_t i = 0; i < breaks_.size(); ++i)
      if (breaks_[i] >= lo && breaks_[i] <= hi) m = std::min(m, vals_[i]);
    return m;
  }

 private:
  std::vector<Real> breaks_;
  std::vector<Real> vals_;
};

template <class T>
struct is_piecewise_linear : std::false_type {};
template <class Real>
struct is_piecewise_linear<PiecewiseLinear<Real>> : std::true_type {};

template <class Real, class F>
  requires(!is_piecewise_linear<std::remove_cvref_t<F>>::value)
Positive<Real> functional_calculus(const Positive<Real>& a, F&& f) {
  return apply_spectral(a, std::forward<F>(f));
}

/// Piecewise-linear overload: checks the domain and non-negativity on all of [0, ‖a‖].
template <class Real>
Positive<Real> functional_calculus(const Positive<Real>& a, const PiecewiseLinear<Real>& f) {
  const Real na = a.norm();
  if (na > f.domain_max() * (1 + Real(1e-12)) || f.domain_min() > 0)
    throw InvalidInput("functional calculus: spectrum not inside the function's domain");
  if (f.min_on(Real(0), na) < 0) throw InvalidInput("functional calculus: function negative on [0, ||a||]");
  return apply_spectral(a, f);
}

template <class Real = double>
PiecewiseLinear<Real> cut_function_pl(Real t, Real top = Real(1)) {
  if (t <= 0) return PiecewiseLinear<Real>({Real(0), top}, {Real(0), top});
  if (t >= top) return PiecewiseLinear<Real>({Real(0), top}, {Real(0), Real(0)});
  return PiecewiseLinear<Real>({Real(0), t, top}, {Real(0), Real(0), top - t});
}

}  // namespace cuntz
