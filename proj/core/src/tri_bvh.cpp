#include "tri_bvh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coherent {

double point_triangle_distance2(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Region classification via barycentric signs (Ericson, Real-Time Collision
  // Detection 5.1.5). Exact for all degenerate-free triangles.
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return squared_norm(p - a);

  Vec3 bp = p - b;
  double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return squared_norm(p - b);

  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    double v = d1 / (d1 - d3);
    return squared_norm(p - (a + v * ab));
  }

  Vec3 cp = p - c;
  double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return squared_norm(p - c);

  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    double w = d2 / (d2 - d6);
    return squared_norm(p - (a + w * ac));
  }

  double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return squared_norm(p - (b + w * (c - b)));
  }

  double denom = 1.0 / (va + vb + vc);
  double v = vb * denom, w = vc * denom;
  return squared_norm(p - (a + v * ab + w * ac));
}

TriBvh::TriBvh(std::vector<Vec3> vertices, const std::vector<std::array<int, 3>>& faces)
    : verts_(std::move(vertices)), tris_(faces) {
  const int n = static_cast<int>(tris_.size());
  std::vector<Aabb> boxes(static_cast<size_t>(n));
  std::vector<Vec3> centers(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) {
    Aabb box;
    for (int k = 0; k < 3; ++k) box.expand(verts_[static_cast<size_t>(tris_[static_cast<size_t>(t)][static_cast<size_t>(k)])]);
    boxes[static_cast<size_t>(t)] = box;
    centers[static_cast<size_t>(t)] = box.center();
    root_bounds_.expand(box);
  }
  if (n > 0) {
    nodes_.reserve(static_cast<size_t>(2 * n));
    build(0, n, boxes, centers);
  }
}

int TriBvh::build(int begin, int end, std::vector<Aabb>& boxes, std::vector<Vec3>& centers) {
  int node_index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Aabb box;
  for (int t = begin; t < end; ++t) box.expand(boxes[static_cast<size_t>(t)]);
  nodes_[static_cast<size_t>(node_index)].box = box;

  const int count = end - begin;
  if (count <= 4) {
    nodes_[static_cast<size_t>(node_index)].first = begin;
    nodes_[static_cast<size_t>(node_index)].count = count;
    return node_index;
  }

  Aabb cbox;
  for (int t = begin; t < end; ++t) cbox.expand(centers[static_cast<size_t>(t)]);
  Vec3 extent = cbox.diagonal();
  int axis = 0;
  if (extent.y > extent.x) axis = 1;
  if (extent.z > extent[axis]) axis = 2;

  // Median split on the longest centroid axis. The permutation is applied to
  // tris_/boxes/centers in lockstep; ties resolved by original order via
  // stable comparison on (coordinate, index) — keeps builds deterministic.
  std::vector<int> order(static_cast<size_t>(count));
  std::iota(order.begin(), order.end(), begin);
  int mid = count / 2;
  std::nth_element(order.begin(), order.begin() + mid, order.end(), [&](int lhs, int rhs) {
    double cl = centers[static_cast<size_t>(lhs)][axis];
    double cr = centers[static_cast<size_t>(rhs)][axis];
    return cl != cr ? cl < cr : lhs < rhs;
  });
  std::sort(order.begin(), order.begin() + mid);
  std::sort(order.begin() + mid, order.end());
  std::vector<std::array<int, 3>> tmp_tris(static_cast<size_t>(count));
  std::vector<Aabb> tmp_boxes(static_cast<size_t>(count));
  std::vector<Vec3> tmp_centers(static_cast<size_t>(count));
  for (int t = 0; t < count; ++t) {
    int src = order[static_cast<size_t>(t)];
    tmp_tris[static_cast<size_t>(t)] = tris_[static_cast<size_t>(src)];
    tmp_boxes[static_cast<size_t>(t)] = boxes[static_cast<size_t>(src)];
    tmp_centers[static_cast<size_t>(t)] = centers[static_cast<size_t>(src)];
  }
  std::copy(tmp_tris.begin(), tmp_tris.end(), tris_.begin() + begin);
  std::copy(tmp_boxes.begin(), tmp_boxes.end(), boxes.begin() + begin);
  std::copy(tmp_centers.begin(), tmp_centers.end(), centers.begin() + begin);

  int left = build(begin, begin + mid, boxes, centers);
  int right = build(begin + mid, end, boxes, centers);
  nodes_[static_cast<size_t>(node_index)].left = left;
  nodes_[static_cast<size_t>(node_index)].right = right;
  return node_index;
}

double TriBvh::distance(const Vec3& p) const {
  if (nodes_.empty()) return std::numeric_limits<double>::infinity();
  double best2 = std::numeric_limits<double>::infinity();
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[static_cast<size_t>(stack[--top])];
    if (node.box.squared_exterior_distance(p) >= best2) continue;
    if (node.left < 0) {
      for (int t = node.first; t < node.first + node.count; ++t) {
        const auto& f = tris_[static_cast<size_t>(t)];
        double d2 = point_triangle_distance2(p, verts_[static_cast<size_t>(f[0])],
                                             verts_[static_cast<size_t>(f[1])],
                                             verts_[static_cast<size_t>(f[2])]);
        if (d2 < best2) best2 = d2;
      }
      continue;
    }
    // Visit the nearer child first for tighter pruning.
    double dl = nodes_[static_cast<size_t>(node.left)].box.squared_exterior_distance(p);
    double dr = nodes_[static_cast<size_t>(node.right)].box.squared_exterior_distance(p);
    int near = node.left, far = node.right;
    double dn = dl, df = dr;
    if (dr < dl) { near = node.right; far = node.left; dn = dr; df = dl; }
    if (df < best2) stack[top++] = far;
    if (dn < best2) stack[top++] = near;
  }
  return std::sqrt(best2);
}

namespace {

// Strictly-signed 2D orientation of point q against segment (s, e); zero means
// exactly collinear in double arithmetic.
inline double orient2d(double sx, double sy, double ex, double ey, double qx, double qy) {
  return (ex - qx) * (sy - qy) - (sx - qx) * (ey - qy);
}

}  // namespace

bool TriBvh::line_crossings(int axis, double u, double v, std::vector<double>& out) const {
  out.clear();
  if (nodes_.empty()) return true;
  const int au = (axis + 1) % 3, av = (axis + 2) % 3;
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[static_cast<size_t>(stack[--top])];
    if (u < node.box.min[au] || u > node.box.max[au] ||
        v < node.box.min[av] || v > node.box.max[av])
      continue;
    if (node.left < 0) {
      for (int t = node.first; t < node.first + node.count; ++t) {
        const auto& f = tris_[static_cast<size_t>(t)];
        const Vec3& a = verts_[static_cast<size_t>(f[0])];
        const Vec3& b = verts_[static_cast<size_t>(f[1])];
        const Vec3& c = verts_[static_cast<size_t>(f[2])];
        // 2D orientation of the line's footprint against the projected
        // triangle; oa/ob/oc double as barycentric weights of a/b/c.
        double oa = orient2d(b[au], b[av], c[au], c[av], u, v);
        double ob = orient2d(c[au], c[av], a[au], a[av], u, v);
        double oc = orient2d(a[au], a[av], b[au], b[av], u, v);
        bool has_pos = oa > 0.0 || ob > 0.0 || oc > 0.0;
        bool has_neg = oa < 0.0 || ob < 0.0 || oc < 0.0;
        if (has_pos && has_neg) continue;  // strictly outside
        if (oa == 0.0 || ob == 0.0 || oc == 0.0) {
          out.clear();
          return false;  // exact edge/vertex hit (or degenerate footprint)
        }
        double inv = 1.0 / (oa + ob + oc);
        out.push_back((oa * a[axis] + ob * b[axis] + oc * c[axis]) * inv);
      }
      continue;
    }
    stack[top++] = node.right;
    stack[top++] = node.left;
  }
  if (out.size() % 2 != 0) {  // closed surfaces cross an infinite line evenly
    out.clear();
    return false;
  }
  std::sort(out.begin(), out.end());
  return true;
}

}  // namespace coherent
