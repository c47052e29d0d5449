// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace cuntz {

enum class SpaceKind { Point, Interval, Circle, Sphere, Product };

std::string to_string(SpaceKind k);
SpaceKind space_kind_from_string(const std::string& s);

struct MeshPoint {
  int index = 0;
  Eigen::Vector4d coords = Eigen::Vector4d::Zero();  // embedding coordinates, unused slots zero
  int base_index = -1;                               // products only
  double t = 0;                                      // products only
};

/// A meshed compact space. Immutable after construction; copies share nothing mutable.
class BaseSpace {
 public:
  static BaseSpace point();
  static BaseSpace interval(int points);
  static BaseSpace circle(int points);
  /// Icosahedral subdivision; vertices must be 10·4^L + 2 (12, 42, 162, 642, 2562).
  static BaseSpace sphere(int vertices);
  /// base × (0,1], sampled at t samples (strictly increasing in (0,1]).
  static BaseSpace product(const BaseSpace& base, std::vector<double> t_samples);
  /// Uniform k/n (k = 1..n) merged with geometric samples eps·2^{-j} (j = 0..depth).
  static std::vector<double> interval_samples(int uniform, double eps, int depth);

  SpaceKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  bool h2_trivial() const { return h2_trivial_; }
  int size() const { return int(points_.size()); }
  /// Parameter used to regenerate the mesh (points or vertices; 1 for Point).
  int resolution() const { return resolution_; }
  double step() const { return step_; }

  const MeshPoint& point(int i) const { return points_[std::size_t(i)]; }
  const std::vector<MeshPoint>& points() const { return points_; }
  const std::vector<int>& neighbors(int i) const { return neighbors_[std::size_t(i)]; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  /// Outward-oriented triangles (sphere only).
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }

  const BaseSpace* base() const { return base_.get(); }
  const std::vector<double>& t_samples() const { return t_samples_; }
  int product_index(int base_index, int t_index) const { return base_index * int(t_samples_.size()) + t_index; }

  double distance(int i, int j) const { return (points_[std::size_t(i)].coords - points_[std::size_t(j)].coords).norm(); }
  bool connected() const;
  bool same_as(const BaseSpace& other) const;

 private:
  void finish_edges();

  SpaceKind kind_ = SpaceKind::Point;
  int dimension_ = 0;
  bool h2_trivial_ = true;
  int resolution_ = 1;
  double step_ = 0;
  std::vector<MeshPoint> points_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> faces_;
  std::shared_ptr<const BaseSpace> base_;
  std::vector<double> t_samples_;
};

}  // namespace cuntz
