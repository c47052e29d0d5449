// SPDX-License-Identifier: Apache-2.0
#include "cuntz/base_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <set>

#include "cuntz/error.hpp"

namespace cuntz {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Point: return "point";
    case SpaceKind::Interval: return "interval";
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Sphere: return "sphere";
    case SpaceKind::Product: return "product";
  }
  return "unknown";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "point") return SpaceKind::Point;
  if (s == "interval") return SpaceKind::Interval;
  if (s == "circle") return SpaceKind::Circle;
  if (s == "sphere") return SpaceKind::Sphere;
  if (s == "product") return SpaceKind::Product;
  throw InvalidInput("unknown space kind '" + s + "'");
}

void BaseSpace::finish_edges() {
  neighbors_.assign(points_.size(), {});
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  double longest = 0;
  for (const auto& e : edges_) {
    neighbors_[std::size_t(e[0])].push_back(e[1]);
    neighbors_[std::size_t(e[1])].push_back(e[0]);
    longest = std::max(longest, distance(e[0], e[1]));
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
  step_ = longest;
}

BaseSpace BaseSpace::point() {
  BaseSpace s;
  s.kind_ = SpaceKind::Point;
  s.points_.resize(1);
  s.finish_edges();
  return s;
}

BaseSpace BaseSpace::interval(int points) {
  if (points < 2) throw InvalidInput("interval mesh needs at least 2 points");
  BaseSpace s;
  s.kind_ = SpaceKind::Interval;
  s.dimension_ = 1;
  s.resolution_ = points;
  s.points_.resize(std::size_t(points));
  for (int j = 0; j < points; ++j) {
    s.points_[std::size_t(j)].index = j;
    s.points_[std::size_t(j)].coords(0) = double(j) / (points - 1);
    if (j > 0) s.edges_.push_back({j - 1, j});
  }
  s.finish_edges();
  return s;
}

BaseSpace BaseSpace::circle(int points) {
  if (points < 3) throw InvalidInput("circle mesh needs at least 3 points");
  BaseSpace s;
  s.kind_ = SpaceKind::Circle;
  s.dimension_ = 1;
  s.resolution_ = points;
  s.points_.resize(std::size_t(points));
  for (int j = 0; j < points; ++j) {
    const double phi = 2 * std::numbers::pi * j / points;
    s.points_[std::size_t(j)].index = j;
    s.points_[std::size_t(j)].coords(0) = std::cos(phi);
    s.points_[std::size_t(j)].coords(1) = std::sin(phi);
    s.edges_.push_back({std::min(j, (j + 1) % points), std::max(j, (j + 1) % points)});
  }
  s.finish_edges();
  return s;
}

BaseSpace BaseSpace::sphere(int vertices) {
  int levels = -1;
  for (int l = 0; l <= 6; ++l)
    if (10 * (1 << (2 * l)) + 2 == vertices) levels = l;
  if (levels < 0) throw InvalidInput("sphere mesh size must be 10*4^L + 2 (12, 42, 162, 642, 2562, ...)");

  std::vector<Eigen::Vector3d> v;
  v.emplace_back(0, 0, 1);
  v.emplace_back(0, 0, -1);
  const double z = 1 / std::sqrt(5.0), r = 2 / std::sqrt(5.0);
  for (int k = 0; k < 5; ++k) {
    const double phi = 2 * std::numbers::pi * k / 5;
    v.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  for (int k = 0; k < 5; ++k) {
    const double phi = 2 * std::numbers::pi * k / 5 + std::numbers::pi / 5;
    v.emplace_back(r * std::cos(phi), r * std::sin(phi), -z);
  }
  std::vector<std::array<int, 3>> f;
  for (int k = 0; k < 5; ++k) {
    const int u0 = 2 + k, u1 = 2 + (k + 1) % 5, l0 = 7 + k, l1 = 7 + (k + 1) % 5;
    f.push_back({0, u0, u1});
    f.push_back({u0, l0, u1});
    f.push_back({u1, l0, l1});
    f.push_back({1, l1, l0});
  }
  for (int l = 0; l < levels; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[std::size_t(a)] + v[std::size_t(b)]).normalized());
      const int id = int(v.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& t : f) {
      const int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }

  BaseSpace s;
  s.kind_ = SpaceKind::Sphere;
  s.dimension_ = 2;
  s.h2_trivial_ = false;
  s.resolution_ = vertices;
  s.points_.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.points_[i].index = int(i);
    s.points_[i].coords.head<3>() = v[i];
  }
  for (auto& t : f) {
    const Eigen::Vector3d& a = v[std::size_t(t[0])];
    const Eigen::Vector3d& b = v[std::size_t(t[1])];
    const Eigen::Vector3d& c = v[std::size_t(t[2])];
    if ((b - a).cross(c - a).dot(a + b + c) < 0) std::swap(t[1], t[2]);
    for (int e = 0; e < 3; ++e) {
      const int p = t[std::size_t(e)], q = t[std::size_t((e + 1) % 3)];
      s.edges_.push_back({std::min(p, q), std::max(p, q)});
    }
  }
  s.faces_ = std::move(f);
  s.finish_edges();
  return s;
}

std::vector<double> BaseSpace::interval_samples(int uniform, double eps, int depth) {
  if (uniform < 1) throw InvalidInput("interval samples: need at least one uniform sample");
  std::set<double> t;
  for (int k = 1; k <= uniform; ++k) t.insert(double(k) / uniform);
  if (eps > 0 && eps <= 1)
    for (int j = 0; j <= depth; ++j) t.insert(eps * std::ldexp(1.0, -j));
  return {t.begin(), t.end()};
}

BaseSpace BaseSpace::product(const BaseSpace& base, std::vector<double> t_samples) {
  if (base.kind() == SpaceKind::Product) throw InvalidInput("nested products are not supported");
  if (t_samples.empty()) throw InvalidInput("product: no t samples");
  for (std::size_t j = 0; j < t_samples.size(); ++j) {
    if (!(t_samples[j] > 0 && t_samples[j] <= 1)) throw InvalidInput("product: t samples must lie in (0,1]");
    if (j > 0 && !(t_samples[j] > t_samples[j - 1])) throw InvalidInput("product: t samples must increase");
  }
  BaseSpace s;
  s.kind_ = SpaceKind::Product;
  s.dimension_ = base.dimension() + 1;
  s.h2_trivial_ = base.h2_trivial();
  s.resolution_ = base.resolution();
  s.base_ = std::make_shared<const BaseSpace>(base);
  s.t_samples_ = std::move(t_samples);
  const int nt = int(s.t_samples_.size());
  s.points_.resize(std::size_t(base.size() * nt));
  for (int b = 0; b < base.size(); ++b) {
    for (int j = 0; j < nt; ++j) {
      MeshPoint& p = s.points_[std::size_t(b * nt + j)];
      p.index = b * nt + j;
      p.coords.head<3>() = base.point(b).coords.head<3>();
      p.coords(3) = s.t_samples_[std::size_t(j)];
      p.base_index = b;
      p.t = s.t_samples_[std::size_t(j)];
      if (j > 0) s.edges_.push_back({b * nt + j - 1, b * nt + j});
    }
  }
  for (const auto& e : base.edges())
    for (int j = 0; j < nt; ++j) s.edges_.push_back({e[0] * nt + j, e[1] * nt + j});
  s.finish_edges();
  return s;
}

bool BaseSpace::connected() const {
  if (points_.empty()) return true;
  std::vector<char> seen(points_.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const int i = q.front();
    q.pop();
    for (int j : neighbors_[std::size_t(i)]) {
      if (!seen[std::size_t(j)]) {
        seen[std::size_t(j)] = 1;
        ++count;
        q.push(j);
      }
    }
  }
  return count == points_.size();
}

bool BaseSpace::same_as(const BaseSpace& other) const {
  if (kind_ != other.kind_ || points_.size() != other.points_.size() || t_samples_ != other.t_samples_) return false;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if ((points_[i].coords - other.points_[i].coords).cwiseAbs().maxCoeff() > 1e-12) return false;
  return true;
}

}  // namespace cuntz
