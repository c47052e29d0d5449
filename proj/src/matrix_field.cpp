// SPDX-License-Identifier: Apache-2.0
#include "cuntz/matrix_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cuntz/error.hpp"
#include "cuntz/parallel.hpp"

namespace cuntz {

Matrix pad(const Matrix& a, int n) {
  if (a.rows() == n) return a;
  Matrix out = Matrix::Zero(n, n);
  out.topLeftCorner(a.rows(), a.cols()) = a;
  return out;
}

MatrixField::MatrixField(SpacePtr space, int n, std::vector<PositiveMatrix> samples)
    : space_(std::move(space)), n_(n), samples_(std::move(samples)) {
  if (!space_) throw InvalidInput("field: missing space");
  if (int(samples_.size()) != space_->size())
    throw InvalidInput("field: " + std::to_string(samples_.size()) + " samples for a mesh of " +
                       std::to_string(space_->size()) + " points");
  for (std::size_t i = 0; i < samples_.size(); ++i)
    if (samples_[i].dim() != n_) throw InvalidInput("field: sample " + std::to_string(i) + " has the wrong size");

  const auto& edges = space_->edges();
  std::vector<double> jumps(edges.size()), ratios(edges.size());
  parallel_for(int(edges.size()), [&](int k) {
    const auto& e = edges[std::size_t(k)];
    jumps[std::size_t(k)] =
        operator_norm(Matrix(samples_[std::size_t(e[0])].matrix() - samples_[std::size_t(e[1])].matrix()));
    const double d = space_->distance(e[0], e[1]);
    ratios[std::size_t(k)] = d > 0 ? jumps[std::size_t(k)] / d : 0.0;
  });
  if (!ratios.empty()) {
    lipschitz_ = *std::max_element(ratios.begin(), ratios.end());
    std::vector<double> sorted = ratios;
    std::nth_element(sorted.begin(), sorted.begin() + std::ptrdiff_t(sorted.size() / 2), sorted.end());
    typical_lipschitz_ = sorted[sorted.size() / 2];
    const double limit = 10 * typical_lipschitz_ * space_->step();
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (jumps[k] > limit && jumps[k] > 1e-12) flags_.push_back({edges[k][0], edges[k][1], jumps[k]});
  }
}

double MatrixField::sup_norm() const {
  double m = 0;
  for (const auto& s : samples_) m = std::max(m, s.norm());
  return m;
}

MatrixField build_field(SpacePtr space, int n, const FieldGenerator& generator) {
  if (n < 1) throw InvalidInput("field: matrix size must be >= 1");
  std::vector<PositiveMatrix> samples(std::size_t(space->size()));
  parallel_for(space->size(), [&](int i) {
    Matrix m = generator(space->point(i));
    if (m.rows() != n || m.cols() != n)
      throw InvalidInput("field: generator returned the wrong size at point " + std::to_string(i));
    try {
      samples[std::size_t(i)] = PositiveMatrix(m);
    } catch (const InvalidInput& e) {
      throw InvalidInput("field: sample at point " + std::to_string(i) + " rejected: " + e.what());
    }
  });
  return MatrixField(std::move(space), n, std::move(samples));
}

double EigenvalueField::sup_norm() const {
  double m = 0;
  for (const auto& b : branches)
    if (b.size()) m = std::max(m, b(0));
  return m;
}

EigenvalueField eigen_field(const MatrixField& a) {
  EigenvalueField out;
  out.space = a.space_ptr();
  out.n = a.n();
  out.branches.reserve(std::size_t(a.size()));
  for (const auto& s : a.samples()) out.branches.push_back(s.eigenvalues());
  return out;
}

std::vector<int> lsc_violations(const BaseSpace& space, const std::vector<int>& ranks) {
  std::vector<int> flags;
  for (int i = 0; i < space.size(); ++i) {
    const auto& nb = space.neighbors(i);
    if (nb.empty()) continue;
    int mx = 0;
    for (int j : nb) mx = std::max(mx, ranks[std::size_t(j)]);
    if (ranks[std::size_t(i)] > mx) flags.push_back(i);
  }
  return flags;
}

RankField rank_field(const MatrixField& a, double t, double tau) {
  if (!(t >= 0)) throw InvalidInput("rank_field: t must be >= 0");
  RankField out;
  out.ranks.resize(std::size_t(a.size()));
  for (int i = 0; i < a.size(); ++i) out.ranks[std::size_t(i)] = rank_at(a.sample(i), t, tau);
  out.lsc_flags = lsc_violations(a.space(), out.ranks);
  return out;
}

MatrixField map_samples(const MatrixField& a, const std::function<PositiveMatrix(const PositiveMatrix&, int)>& f) {
  std::vector<PositiveMatrix> samples(std::size_t(a.size()));
  parallel_for(a.size(), [&](int i) { samples[std::size_t(i)] = f(a.sample(i), i); });
  const int n = samples.empty() ? a.n() : int(samples.front().dim());
  return MatrixField(a.space_ptr(), n, std::move(samples));
}

MatrixField conjugate_by_unitary_field(const MatrixField& a, const std::vector<Matrix>& u) {
  if (int(u.size()) != a.size()) throw InvalidInput("conjugate: unitary field has the wrong number of samples");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].rows() != a.n() || u[i].cols() != a.n())
      throw InvalidInput("conjugate: unitary sample " + std::to_string(i) + " has the wrong size");
    if ((u[i].adjoint() * u[i] - Matrix::Identity(a.n(), a.n())).cwiseAbs().maxCoeff() > 1e-9)
      throw InvalidInput("conjugate: sample " + std::to_string(i) + " is not unitary");
  }
  return map_samples(a, [&](const PositiveMatrix& m, int i) {
    const Matrix& w = u[std::size_t(i)];
    return PositiveMatrix::from_spectrum(m.eigenvalues(), w * m.frame());
  });
}

MatrixField scale_field(const MatrixField& a, double c) {
  if (!(c >= 0)) throw InvalidInput("scale_field: factor must be >= 0");
  return map_samples(a, [c](const PositiveMatrix& m, int) {
    return apply_spectral(m, [c](double x) { return c * x; });
  });
}

MatrixField cut_down_field(const MatrixField& a, double t) {
  return map_samples(a, [t](const PositiveMatrix& m, int) { return cut_down(m, t); });
}

double sup_distance(const MatrixField& a, const MatrixField& b) {
  if (!a.space().same_as(b.space())) throw InvalidInput("fields live on different spaces");
  const int n = std::max(a.n(), b.n());
  double m = 0;
  for (int i = 0; i < a.size(); ++i)
    m = std::max(m, operator_norm(Matrix(pad(a.sample(i).matrix(), n) - pad(b.sample(i).matrix(), n))));
  return m;
}

}  // namespace cuntz
