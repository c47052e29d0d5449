// SPDX-License-Identifier: Apache-2.0
#include "cuntz/chern.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "cuntz/error.hpp"

namespace cuntz {

namespace {

// Small irrational tilt keeps every vertex off the cutting plane.
double height(const MeshPoint& p) { return p.coords(2) + 0.0137 * p.coords(0) + 0.0071 * p.coords(1); }

std::complex<double> overlap(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).determinant(); }

std::optional<double> winding(const BaseSpace& s, const std::vector<Matrix>& frames) {
  std::vector<char> north(std::size_t(s.size()));
  int top = 0, bottom = 0;
  for (int i = 0; i < s.size(); ++i) {
    north[std::size_t(i)] = height(s.point(i)) > 0;
    if (height(s.point(i)) > height(s.point(top))) top = i;
    if (height(s.point(i)) < height(s.point(bottom))) bottom = i;
  }
  std::set<std::pair<int, int>> directed;
  std::vector<char> in_north_face(std::size_t(s.size()), 0), in_south_face(std::size_t(s.size()), 0);
  for (const auto& f : s.faces()) {
    const bool n = north[std::size_t(f[0])] && north[std::size_t(f[1])] && north[std::size_t(f[2])];
    for (int e = 0; e < 3; ++e) {
      (n ? in_north_face : in_south_face)[std::size_t(f[std::size_t(e)])] = 1;
      if (n) directed.insert({f[std::size_t(e)], f[std::size_t((e + 1) % 3)]});
    }
  }
  std::map<int, int> next;
  for (const auto& [u, v] : directed) {
    if (directed.count({v, u})) continue;
    if (!next.emplace(u, v).second) return std::nullopt;
  }
  if (next.empty()) return std::nullopt;

  const Matrix& vn = frames[std::size_t(top)];
  const Matrix& vs = frames[std::size_t(bottom)];
  for (int i = 0; i < s.size(); ++i) {
    const Matrix& f = frames[std::size_t(i)];
    if (in_north_face[std::size_t(i)] && std::abs(overlap(f, vn)) < 0.2) return std::nullopt;
    if (in_south_face[std::size_t(i)] && std::abs(overlap(f, vs)) < 0.2) return std::nullopt;
  }
  auto g = [&](int v) {
    const Matrix& f = frames[std::size_t(v)];
    return overlap(vs, f) * overlap(f, vn);
  };
  const int start = next.begin()->first;
  int u = start;
  double total = 0;
  std::size_t steps = 0;
  do {
    const auto it = next.find(u);
    if (it == next.end()) return std::nullopt;
    total += std::arg(g(it->second) / g(u));
    u = it->second;
    ++steps;
  } while (u != start && steps <= next.size());
  if (u != start || steps != next.size()) return std::nullopt;
  return total / (2 * std::numbers::pi);
}

}  // namespace

ChernEstimate chern_estimate_raw(const BaseSpace& s, const std::vector<Matrix>& frames) {
  if (s.kind() != SpaceKind::Sphere) throw InvalidInput("chern: base space must be the sphere");
  if (int(frames.size()) != s.size()) throw InvalidInput("chern: one frame per vertex required");
  for (const auto& f : frames)
    if (f.rows() != frames.front().rows() || f.cols() != frames.front().cols() || f.cols() < 1)
      throw InvalidInput("chern: frames must share a non-empty shape");
  double flux = 0;
  for (const auto& f : s.faces()) {
    const Matrix& p = frames[std::size_t(f[0])];
    const Matrix& q = frames[std::size_t(f[1])];
    const Matrix& r = frames[std::size_t(f[2])];
    flux += std::arg(overlap(p, q) * overlap(q, r) * overlap(r, p));
  }
  ChernEstimate e;
  e.curvature = flux / (2 * std::numbers::pi);
  e.value = int(std::lround(e.curvature));
  e.winding = winding(s, frames);
  e.cross_checked = e.winding && std::abs(*e.winding - e.value) < 0.1;
  return e;
}

ChernEstimate chern_from_frames(const BaseSpace& s, const std::vector<Matrix>& frames) {
  ChernEstimate e = chern_estimate_raw(s, frames);
  if (std::abs(e.curvature - e.value) > 0.1)
    throw MeshTooCoarse("chern: curvature sum " + std::to_string(e.curvature) + " is not near an integer");
  if (e.winding && !e.cross_checked)
    throw MeshTooCoarse("chern: curvature gives " + std::to_string(e.value) + " but clutching winding gives " +
                        std::to_string(*e.winding));
  return e;
}

}  // namespace cuntz
