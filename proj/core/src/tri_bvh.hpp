#pragma once

#include <array>
#include <vector>

#include "coherent/geometry.hpp"

namespace coherent {

// Axis-aligned BVH over triangles; supports exact nearest-distance queries and
// axis-parallel line stabbing. Build and traversal orders are deterministic.
class TriBvh {
 public:
  TriBvh(std::vector<Vec3> vertices, const std::vector<std::array<int, 3>>& faces);

  // Exact unsigned distance from p to the triangle set.
  double distance(const Vec3& p) const;

  // All crossings of the infinite line parallel to `axis` through the point
  // with perpendicular coordinates (u, v) — u on axis (axis+1)%3, v on
  // (axis+2)%3. Returns false (and clears `out`) when the line hits an
  // edge/vertex exactly or a parity-breaking configuration, in which case the
  // caller re-tries with a jittered line. On success `out` is sorted.
  bool line_crossings(int axis, double u, double v, std::vector<double>& out) const;

  const Aabb& bounds() const { return root_bounds_; }

 private:
  struct Node {
    Aabb box;
    int left = -1;       // internal: child indices; leaf: left == -1
    int right = -1;
    int first = 0, count = 0;  // leaf triangle range in order_
  };

  int build(int begin, int end, std::vector<Aabb>& boxes, std::vector<Vec3>& centers);

  std::vector<Vec3> verts_;
  std::vector<std::array<int, 3>> tris_;  // reordered at build time
  std::vector<Node> nodes_;
  Aabb root_bounds_;
};

// Exact squared point-triangle distance (closest-point region walk).
double point_triangle_distance2(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace coherent
