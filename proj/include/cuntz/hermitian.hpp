// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cuntz/error.hpp"

namespace cuntz {

template <class Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline constexpr double kRankTolerance = 1e-7;
inline constexpr double kPsdRelativeTolerance = 1e-9;

template <class Real>
struct EigenSystem {
  RealVector<Real> values;  // descending
  ComplexMatrix<Real> frame;
};

/// Largest singular value.
template <class Derived>
auto operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  if (m.size() == 0) return Real(0);
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m);
  return svd.singularValues()(0);
}

namespace detail {

template <class Real>
void sort_descending(RealVector<Real>& values, ComplexMatrix<Real>& frame) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return values(i) > values(j); });
  RealVector<Real> v(n);
  ComplexMatrix<Real> f(frame.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k) = values(order[static_cast<std::size_t>(k)]);
    f.col(k) = frame.col(order[static_cast<std::size_t>(k)]);
  }
  values = std::move(v);
  frame = std::move(f);
}

// Cyclic complex Jacobi. Each pair (p,q) is first rotated by a phase so the
// off-diagonal entry is real, then annihilated by a real plane rotation.
template <class Real>
EigenSystem<Real> jacobi(ComplexMatrix<Real> a) {
  using C = std::complex<Real>;
  const Eigen::Index n = a.rows();
  ComplexMatrix<Real> v = ComplexMatrix<Real>::Identity(n, n);
  const Real frob2 = a.squaredNorm();
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= eps * eps * frob2 * Real(1e-2) || off == Real(0)) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const C g = a(p, q);
        const Real ag = std::abs(g);
        if (ag == Real(0)) continue;
        const C phase = g / ag;
        const Real app = std::real(a(p, p));
        const Real aqq = std::real(a(q, q));
        const Real zeta = (aqq - app) / (2 * ag);
        const Real t = (zeta >= 0 ? Real(1) : Real(-1)) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const Real c = 1 / std::sqrt(1 + t * t);
        const Real s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const C j00 = c, j01 = s;
        const C j10 = -s * std::conj(phase), j11 = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const C akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * j00 + akq * j10;
          a(k, q) = akp * j01 + akq * j11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const C apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
          a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
        }
        a(p, q) = a(q, p) = C(0);
        a(p, p) = C(std::real(a(p, p)));
        a(q, q) = C(std::real(a(q, q)));
        for (Eigen::Index k = 0; k < n; ++k) {
          const C vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * j00 + vkq * j10;
          v(k, q) = vkp * j01 + vkq * j11;
        }
      }
    }
  }
  EigenSystem<Real> out;
  out.values = a.diagonal().real();
  out.frame = std::move(v);
  sort_descending(out.values, out.frame);
  return out;
}

template <class Real>
ComplexMatrix<Real> reconstruct(const RealVector<Real>& values, const ComplexMatrix<Real>& frame) {
  ComplexMatrix<Real> m = frame * values.template cast<std::complex<Real>>().asDiagonal() * frame.adjoint();
  ComplexMatrix<Real> h = (m + m.adjoint()) / Real(2);
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = std::real(h(i, i));
  return h;
}

}  // namespace detail

template <class Real>
class Hermitian {
 public:
  Hermitian() = default;

  /// Accepts m when ‖m − m*‖ ≤ 1e-12·(1 + ‖m‖_F); stores the exact symmetrization.
  explicit Hermitian(const ComplexMatrix<Real>& m) {
    if (m.rows() != m.cols()) throw InvalidInput("Hermitian: matrix is not square");
    const Real asym = (m - m.adjoint()).norm();
    if (!(asym <= Real(1e-12) * (1 + m.norm())))
      throw InvalidInput("Hermitian: matrix is not Hermitian (asymmetry " + std::to_string(double(asym)) + ")");
    m_ = (m + m.adjoint()) / Real(2);
    for (Eigen::Index i = 0; i < m_.rows(); ++i) m_(i, i) = std::real(m_(i, i));
  }

  static Hermitian diagonal(const std::vector<Real>& d) {
    ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(Eigen::Index(d.size()), Eigen::Index(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(Eigen::Index(i), Eigen::Index(i)) = d[i];
    return Hermitian(m);
  }

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix<Real>& matrix() const { return m_; }

 private:
  ComplexMatrix<Real> m_;
};

template <class Real>
EigenSystem<Real> eig_decompose(const Hermitian<Real>& a) {
  return detail::jacobi<Real>(a.matrix());
}

/// Validating overload: rejects non-Hermitian input.
template <class Real>
EigenSystem<Real> eig_decompose(const ComplexMatrix<Real>& m) {
  return eig_decompose(Hermitian<Real>(m));
}

/// Positive semidefinite matrix with its cached spectral data.
template <class Real>
class Positive {
 public:
  Positive() = default;

  explicit Positive(const Hermitian<Real>& h) : h_(h) {
    EigenSystem<Real> es = eig_decompose(h);
    const Real scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : Real(0);
    const Real tol = Real(kPsdRelativeTolerance) * scale;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      if (es.values(i) < -tol)
        throw InvalidInput("matrix is not positive semidefinite (eigenvalue " +
                           std::to_string(double(es.values(i))) + ")");
      if (es.values(i) < 0) es.values(i) = 0;
    }
    values_ = std::move(es.values);
    frame_ = std::move(es.frame);
  }

  explicit Positive(const ComplexMatrix<Real>& m) : Positive(Hermitian<Real>(m)) {}

  /// Builds frame·diag(values)·frame*; values must be ≥ 0.
  static Positive from_spectrum(RealVector<Real> values, ComplexMatrix<Real> frame) {
    for (Eigen::Index i = 0; i < values.size(); ++i)
      if (!(values(i) >= 0)) throw InvalidInput("from_spectrum: negative or NaN eigenvalue");
    detail::sort_descending(values, frame);
    Positive p;
    p.h_ = Hermitian<Real>(detail::reconstruct(values, frame));
    p.values_ = std::move(values);
    p.frame_ = std::move(frame);
    return p;
  }

  static Positive zero(Eigen::Index n) {
    return from_spectrum(RealVector<Real>::Zero(n), ComplexMatrix<Real>::Identity(n, n));
  }

  static Positive diagonal(const std::vector<Real>& d) { return Positive(Hermitian<Real>::diagonal(d)); }

  Eigen::Index dim() const { return h_.dim(); }
  const ComplexMatrix<Real>& matrix() const { return h_.matrix(); }
  const Hermitian<Real>& hermitian() const { return h_; }
  const RealVector<Real>& eigenvalues() const { return values_; }
  const ComplexMatrix<Real>& frame() const { return frame_; }
  Real norm() const { return values_.size() ? values_(0) : Real(0); }

 private:
  Hermitian<Real> h_;
  RealVector<Real> values_;
  ComplexMatrix<Real> frame_;
};

using HermitianMatrix = Hermitian<double>;
using PositiveMatrix = Positive<double>;
using Matrix = ComplexMatrix<double>;

/// Applies f to the spectrum. The only check is f(λ_i) ≥ 0 on the eigenvalues.
template <class Real, class F>
Positive<Real> apply_spectral(const Positive<Real>& a, F&& f) {
  RealVector<Real> v(a.eigenvalues().size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = Real(f(a.eigenvalues()(i)));
    if (!(v(i) >= 0))
      throw InvalidInput("functional calculus: function is negative on the spectrum");
  }
  return Positive<Real>::from_spectrum(std::move(v), a.frame());
}

template <class Real>
Positive<Real> cut_down(const Positive<Real>& a, Real t) {
  if (!(t >= 0)) throw InvalidInput("cut_down: t must be >= 0");
  if (t == 0) return a;
  return apply_spectral(a, [t](Real x) { return std::max(x - t, Real(0)); });
}

/// Number of eigenvalues strictly above t + tau.
template <class Real>
int rank_at(const Positive<Real>& a, Real t, Real tau = Real(kRankTolerance)) {
  int r = 0;
  for (Eigen::Index i = 0; i < a.eigenvalues().size(); ++i)
    if (a.eigenvalues()(i) > t + tau) ++r;
  return r;
}

/// Positive square root, via the cached spectrum.
template <class Real>
Positive<Real> sqrt_psd(const Positive<Real>& a) {
  return apply_spectral(a, [](Real x) { return std::sqrt(x); });
}

}  // namespace cuntz
