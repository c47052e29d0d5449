// SPDX-License-Identifier: Apache-2.0
#include "cuntz/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "cuntz/error.hpp"

namespace cuntz {

namespace {

Matrix gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

// Basis functions in the coordinates of a mesh point.
std::vector<double> basis(const BaseSpace& s, const MeshPoint& p, int degree) {
  std::vector<double> b{1.0};
  switch (s.kind()) {
    case SpaceKind::Point: break;
    case SpaceKind::Circle: {
      const double phi = std::atan2(p.coords(1), p.coords(0));
      for (int k = 1; k <= degree; ++k) {
        b.push_back(std::cos(k * phi));
        b.push_back(std::sin(k * phi));
      }
      break;
    }
    case SpaceKind::Interval: {
      const double x = 2 * p.coords(0) - 1;
      double v = 1;
      for (int k = 1; k <= degree; ++k) b.push_back(v *= x);
      break;
    }
    default:
      for (int d = 0; d < 4; ++d) {
        double v = 1;
        for (int k = 1; k <= degree; ++k) b.push_back(v *= p.coords(d));
      }
  }
  return b;
}

}  // namespace

MatrixField random_field(const SpacePtr& space, std::mt19937_64& rng, const RandomFieldOptions& o) {
  if (o.n < 1) throw InvalidInput("random field: n must be >= 1");
  if (!(o.norm >= 0)) throw InvalidInput("random field: norm must be >= 0");
  const int r = o.rank > 0 ? std::min(o.rank, o.n) : o.n;
  const std::size_t terms = basis(*space, space->point(0), o.degree).size();
  std::vector<Matrix> coeff;
  for (std::size_t k = 0; k < terms; ++k) coeff.push_back(gaussian(rng, r, o.n) / double(k + 1));
  std::uniform_real_distribution<double> u(0.2, 0.8);
  const double centre = u(rng), width = 0.15 + 0.2 * u(rng);

  std::vector<Matrix> raw;
  double top = 0;
  for (const auto& p : space->points()) {
    const auto b = basis(*space, p, o.degree);
    Matrix m = Matrix::Zero(r, o.n);
    for (std::size_t k = 0; k < terms; ++k) m += b[k] * coeff[k];
    if (o.vanishing) {
      // Smooth bump in the first coordinate; zero outside |x − centre| < width.
      const double d = std::abs(p.coords(0) - centre) / width;
      m *= d < 1 ? std::pow(1 - d * d, 2) : 0.0;
    }
    raw.push_back(m.adjoint() * m);
    top = std::max(top, operator_norm(raw.back()));
  }
  const double scale = top > 0 ? o.norm / top : 0.0;
  std::vector<PositiveMatrix> s;
  s.reserve(raw.size());
  for (const auto& m : raw) s.emplace_back(Matrix(m * scale));
  return MatrixField(space, o.n, std::move(s));
}

std::vector<Matrix> random_unitary_field(const BaseSpace& space, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> c;
  for (int k = 0; k < 5; ++k) {
    Matrix m = gaussian(rng, n, n);
    c.push_back((m + m.adjoint()) / 2.0);
  }
  std::vector<Matrix> out;
  for (const auto& p : space.points()) {
    Matrix h = c[0];
    for (int d = 0; d < 4; ++d) h += p.coords(d) * c[std::size_t(d + 1)];
    const auto es = eig_decompose(h);
    Eigen::VectorXcd ph(n);
    for (int i = 0; i < n; ++i) ph(i) = std::polar(1.0, es.values(i));
    out.push_back(es.frame * ph.asDiagonal() * es.frame.adjoint());
  }
  return out;
}

}  // namespace cuntz
