// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

#include "cuntz/hermitian.hpp"

namespace cuntz {

namespace detail {

template <class Real>
RealVector<Real> hermitian_spectrum(const ComplexMatrix<Real>& m) {
  if (m.size() == 0) return RealVector<Real>();
  return jacobi<Real>(ComplexMatrix<Real>((m + m.adjoint()) / Real(2))).values;
}

template <class Real>
Real hermitian_norm(const ComplexMatrix<Real>& m) {
  RealVector<Real> v = hermitian_spectrum(m);
  return v.size() ? v.cwiseAbs().maxCoeff() : Real(0);
}

template <class Real>
Real min_eigenvalue(const ComplexMatrix<Real>& m) {
  RealVector<Real> v = hermitian_spectrum(m);
  return v.size() ? v.minCoeff() : Real(0);
}

}  // namespace detail

template <class Real>
struct MvnWitness {
  ComplexMatrix<Real> y;
  Real precondition_gap = 0;  // ‖a − x*x‖
  Real residual = 0;          // ‖(a−ε)₊ − y*y‖
  Real dominance = 0;         // λ_min(xx* − yy*)
  Real distance = 0;          // ‖y − x‖
  Real ratio = 0;             // ‖y − x‖ / (√ε ‖a‖)
};

/// Given ‖a − x*x‖ < ε, returns y with (a−ε)₊ = y*y and yy* ≤ xx*.
template <class Real>
MvnWitness<Real> mvn_witness(const Positive<Real>& a, const ComplexMatrix<Real>& x, Real eps) {
  using C = std::complex<Real>;
  if (!(eps > 0)) throw InvalidInput("mvn_witness: eps must be > 0");
  if (x.cols() != a.dim()) throw InvalidInput("mvn_witness: x must have as many columns as a");
  MvnWitness<Real> out;
  const ComplexMatrix<Real> xx = x.adjoint() * x;
  out.precondition_gap = detail::hermitian_norm<Real>(a.matrix() - xx);
  if (!(out.precondition_gap < eps))
    throw PreconditionFailed("mvn_witness: ||a - x*x|| = " + std::to_string(double(out.precondition_gap)) +
                                 " is not below eps",
                             double(out.precondition_gap));
  const Real eps1 = (out.precondition_gap + eps) / 2;
  // (a−ε)₊ = e(a−ε₁)e ≤ e x*x e, with e ≤ 1.
  const Positive<Real> e = apply_spectral(a, [&](Real l) {
    return l > eps ? std::sqrt((l - eps) / (l - eps1)) : Real(0);
  });
  const ComplexMatrix<Real> xt = x * e.matrix();
  const EigenSystem<Real> polar = detail::jacobi<Real>(ComplexMatrix<Real>(xt.adjoint() * xt));
  const Real top = polar.values.size() ? std::max(polar.values(0), Real(0)) : Real(0);
  const Real cutoff = Real(kPsdRelativeTolerance) * top;
  ComplexMatrix<Real> inv_abs = ComplexMatrix<Real>::Zero(a.dim(), a.dim());
  for (Eigen::Index i = 0; i < polar.values.size(); ++i) {
    if (polar.values(i) > cutoff && polar.values(i) > 0) {
      const Real s = std::sqrt(polar.values(i));
      inv_abs += (polar.frame.col(i) * polar.frame.col(i).adjoint()) * C(1 / s);
    }
  }
  const ComplexMatrix<Real> v = xt * inv_abs;
  const Positive<Real> cut = cut_down(a, eps);
  const Positive<Real> root = sqrt_psd(cut);
  out.y = v * root.matrix();
  out.residual = detail::hermitian_norm<Real>(cut.matrix() - out.y.adjoint() * out.y);
  out.dominance = detail::min_eigenvalue<Real>(x * x.adjoint() - out.y * out.y.adjoint());
  out.distance = operator_norm(out.y - x);
  out.ratio = a.norm() > 0 ? out.distance / (std::sqrt(eps) * a.norm()) : Real(0);
  return out;
}

template <class Real>
struct EmbedWitness {
  ComplexMatrix<Real> c;  // n_b × (n_a + n_b)
  ComplexMatrix<Real> d;  // n_b × n_a, with d*bd = (a − ε/2)₊
  Real delta = 0;
  Real block_distance = 0;  // ‖c*c − diag(a, 0)‖
  Real lower_gap = 0;       // λ_min(cc* − δ²b)
  Real upper_gap = 0;       // λ_min((δ² + ‖d‖²)b − cc*)
  bool certified = false;
};

/// Witness that a is Cuntz below b: c*c is ε-close to a ⊕ 0 while cc* ~ b.
template <class Real>
EmbedWitness<Real> cuntz_embed_witness(const Positive<Real>& a, const Positive<Real>& b, Real eps, Real delta,
                                       Real tau = Real(kRankTolerance)) {
  using C = std::complex<Real>;
  if (!(eps > 0) || !(delta > 0)) throw InvalidInput("cuntz_embed_witness: eps and delta must be > 0");
  const int k = rank_at(a, eps / 2, tau);
  const int rb = rank_at(b, Real(0), tau);
  if (k > rb)
    throw NotSubequivalent("cuntz_embed_witness: rank of (a - eps/2)_+ is " + std::to_string(k) +
                           " but rank of b is " + std::to_string(rb));
  const Eigen::Index na = a.dim(), nb = b.dim();
  ComplexMatrix<Real> d = ComplexMatrix<Real>::Zero(nb, na);
  for (int i = 0; i < k; ++i) {
    const Real alpha = a.eigenvalues()(i) - eps / 2;
    const Real beta = b.eigenvalues()(i);
    d += b.frame().col(i) * a.frame().col(i).adjoint() * C(std::sqrt(alpha / beta));
  }
  const ComplexMatrix<Real> bh = sqrt_psd(b).matrix();
  const ComplexMatrix<Real> bd = bh * d;
  ComplexMatrix<Real> target = ComplexMatrix<Real>::Zero(na + nb, na + nb);
  target.topLeftCorner(na, na) = a.matrix();
  const Real scale = std::max(a.norm(), b.norm());
  EmbedWitness<Real> out;
  out.d = d;
  out.delta = delta;
  for (int iter = 0; iter < 200; ++iter) {
    out.c.resize(nb, na + nb);
    out.c.leftCols(na) = bd;
    out.c.rightCols(nb) = bh * C(out.delta);
    out.block_distance = detail::hermitian_norm<Real>(ComplexMatrix<Real>(out.c.adjoint() * out.c) - target);
    if (out.block_distance < eps) break;
    out.delta /= 2;
  }
  const ComplexMatrix<Real> cc = out.c * out.c.adjoint();
  const Real dn = operator_norm(d);
  out.lower_gap = detail::min_eigenvalue<Real>(ComplexMatrix<Real>(cc - b.matrix() * C(out.delta * out.delta)));
  out.upper_gap =
      detail::min_eigenvalue<Real>(ComplexMatrix<Real>(b.matrix() * C(out.delta * out.delta + dn * dn) - cc));
  const Real tol = Real(1e-9) * (1 + scale) * (1 + dn * dn);
  out.certified = out.block_distance < eps && out.lower_gap >= -tol && out.upper_gap >= -tol;
  return out;
}

}  // namespace cuntz
