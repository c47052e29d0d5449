// SPDX-License-Identifier: Apache-2.0
#include "cuntz/realization.hpp"

#include <algorithm>
#include <cmath>

#include "cuntz/error.hpp"

namespace cuntz {

RankTarget mesh_erosion(const BaseSpace& space, const RankTarget& f) {
  if (int(f.size()) != space.size()) throw InvalidInput("rank target does not match the mesh");
  RankTarget out = f;
  for (int x = 0; x < space.size(); ++x)
    for (int y : space.neighbors(x)) out[std::size_t(x)] = std::min(out[std::size_t(x)], f[std::size_t(y)]);
  return out;
}

bool mesh_far_below(const BaseSpace& space, const RankTarget& f, const RankTarget& g) {
  const RankTarget e = mesh_erosion(space, g);
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f[x] > e[x]) return false;
  return true;
}

namespace {

void require_realizable_space(const BaseSpace& s) {
  if (s.kind() == SpaceKind::Product || !s.h2_trivial() || s.dimension() > 2)
    throw UnsupportedSpace("realization needs a space of dimension <= 2 with trivial H^2");
}

MatrixField diagonal_field(const SpacePtr& space, int n, const std::vector<std::vector<double>>& values) {
  std::vector<PositiveMatrix> s;
  s.reserve(values.size());
  for (const auto& v : values) {
    std::vector<double> d = v;
    d.resize(std::size_t(n), 0.0);
    s.push_back(PositiveMatrix::diagonal(d));
  }
  return MatrixField(space, n, std::move(s));
}

}  // namespace

MatrixField interpolate_chain(const SpacePtr& space, const std::vector<RankTarget>& targets, int matrix_size) {
  require_realizable_space(*space);
  if (targets.size() < 2) throw InvalidInput("interpolate_chain: need targets x_0, ..., x_n with n >= 1");
  for (const auto& t : targets) {
    if (int(t.size()) != space->size()) throw InvalidInput("interpolate_chain: target does not match the mesh");
    for (int v : t)
      if (v < 0) throw InvalidInput("interpolate_chain: negative rank");
  }
  const int n = int(targets.size()) - 1;
  for (int k = 0; k < n; ++k)
    if (!mesh_far_below(*space, targets[std::size_t(k + 1)], targets[std::size_t(k)]))
      throw InvalidInput("interpolate_chain: x_" + std::to_string(k + 1) + " is not far below x_" + std::to_string(k));
  const int top = *std::max_element(targets[0].begin(), targets[0].end());
  const int size = matrix_size > 0 ? matrix_size : std::max(top, 1);
  if (top > size)
    throw InvalidInput("interpolate_chain: rank " + std::to_string(top) + " does not fit in size " +
                       std::to_string(size));

  // y_0 = x_0 keeps [a] = x_0; later levels are eroded once so the level sets of a are
  // separated from those of x_k by a mesh step.
  std::vector<RankTarget> y(targets.size());
  y[0] = targets[0];
  for (int k = 1; k <= n; ++k) y[std::size_t(k)] = mesh_erosion(*space, targets[std::size_t(k)]);

  std::vector<std::vector<double>> values(std::size_t(space->size()));
  for (int x = 0; x < space->size(); ++x) {
    auto& v = values[std::size_t(x)];
    for (int i = 1; i <= size; ++i) {
      int K = -1;
      for (int k = 0; k <= n; ++k)
        if (y[std::size_t(k)][std::size_t(x)] >= i) K = k;
      v.push_back(double(K + 1) / (n + 1));
    }
  }
  return diagonal_field(space, size, values);
}

std::vector<double> uniform_grid(int steps) {
  if (steps < 1) throw InvalidInput("grid needs at least one step");
  std::vector<double> g;
  for (int k = 0; k < steps; ++k) g.push_back(double(k) / steps);
  return g;
}

MorphismPath<RankTarget> rank_path(const MatrixField& b, const std::vector<double>& grid, double tau) {
  MorphismPath<RankTarget> p;
  p.grid = grid;
  for (double t : grid) p.images.push_back(rank_field(b, t, tau).ranks);
  return p;
}

Realization realize_morphism(const SpacePtr& space, const MorphismPath<RankTarget>& alpha, double eps, int n_max) {
  if (!(eps > 0)) throw InvalidInput("realize: eps must be positive");
  if (n_max < 1) throw InvalidInput("realize: matrix size must be >= 1");
  const double h = path_step(alpha);
  check_antitone(alpha);
  for (const auto& im : alpha.images) {
    if (int(im.size()) != space->size()) throw InvalidInput("realize: path images do not match the mesh");
    for (int v : im)
      if (v > n_max)
        throw InvalidInput("realize: rank " + std::to_string(v) + " exceeds the matrix size " + std::to_string(n_max));
  }
  if (space->kind() == SpaceKind::Sphere) {
    for (const auto& im : alpha.images) {
      const bool constant = std::all_of(im.begin(), im.end(), [&](int v) { return v == im.front(); });
      if (constant && im.front() != 0 && im.front() != n_max)
        throw UnsupportedSpace("realize: constant non-full rank on the sphere leaves the bundle undetermined");
    }
  } else {
    require_realizable_space(*space);
  }

  Realization r;
  r.dyadic_level = 1;
  while (std::ldexp(1.0, 1 - r.dyadic_level) >= eps) ++r.dyadic_level;
  const int N = 1 << r.dyadic_level;

  // α at the largest grid point ≤ s; zero past the end of the grid.
  auto alpha_at = [&](double s, int x) {
    const double t0 = alpha.grid.front();
    if (s < t0) return alpha.images.front()[std::size_t(x)];
    const auto k = std::size_t(std::floor((s - t0) / h + 1e-9));
    if (k >= alpha.images.size()) return 0;
    return alpha.images[k][std::size_t(x)];
  };

  std::vector<std::vector<double>> values(std::size_t(space->size()));
  for (int x = 0; x < space->size(); ++x) {
    for (int i = 1; i <= n_max; ++i) {
      double lambda = 0;
      for (int k = N; k >= 1; --k)
        if (alpha_at(double(k) / N, x) >= i) {
          lambda = double(k) / N;
          break;
        }
      values[std::size_t(x)].push_back(lambda);
    }
  }
  r.a = diagonal_field(space, n_max, values);
  r.path = rank_path(r.a, alpha.grid);
  r.path_distance = dw_morphisms(r.path, alpha);
  return r;
}

}  // namespace cuntz
