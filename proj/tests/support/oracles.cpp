#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

using coherent::Vec3;

PosedMesh pose(const coherent::TriMesh& mesh, const coherent::Transform& transform) {
  PosedMesh out;
  out.verts.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) out.verts.push_back(transform.apply(v));
  out.faces = &mesh.faces;
  return out;
}

namespace {

double point_segment_dist2(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double t = dot(p - a, ab) / dot(ab, ab);
  t = std::clamp(t, 0.0, 1.0);
  return squared_norm(p - (a + t * ab));
}

double point_triangle_dist2(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 n = cross(b - a, c - a);
  double nn = squared_norm(n);
  if (nn > 0.0) {
    double d = dot(p - a, n);
    Vec3 foot = p - (d / nn) * n;
    // signed-area barycentrics of the foot; all non-negative => interior
    double wa = dot(cross(b - foot, c - foot), n);
    double wb = dot(cross(c - foot, a - foot), n);
    double wc = dot(cross(a - foot, b - foot), n);
    if (wa >= 0.0 && wb >= 0.0 && wc >= 0.0) return d * d / nn;
  }
  return std::min({point_segment_dist2(p, a, b), point_segment_dist2(p, b, c),
                   point_segment_dist2(p, c, a)});
}

enum class Crossing { kMiss, kHit, kGraze };

// One Moller-Trumbore test of ray p + t*dir, t > 0, against triangle abc.
// Anything within `margin` of an edge, the ray origin, or a parallel plane
// is a graze: the whole ray gets thrown away rather than risking a parity
// error.
Crossing classify(const Vec3& p, const Vec3& dir, const Vec3& a, const Vec3& b, const Vec3& c) {
  constexpr double kMargin = 1e-10;
  Vec3 e1 = b - a;
  Vec3 e2 = c - a;
  Vec3 pv = cross(dir, e2);
  double det = dot(e1, pv);
  double scale = norm(e1) * norm(e2);
  if (std::abs(det) <= kMargin * scale) return Crossing::kGraze;
  double inv = 1.0 / det;
  Vec3 tv = p - a;
  double u = dot(tv, pv) * inv;
  if (u < -kMargin || u > 1.0 + kMargin) return Crossing::kMiss;
  Vec3 qv = cross(tv, e1);
  double v = dot(dir, qv) * inv;
  if (v < -kMargin || u + v > 1.0 + kMargin) return Crossing::kMiss;
  double t = dot(e2, qv) * inv;
  if (t < -kMargin) return Crossing::kMiss;
  bool strict = u > kMargin && v > kMargin && u + v < 1.0 - kMargin && t > kMargin;
  return strict ? Crossing::kHit : Crossing::kGraze;
}

}  // namespace

double distance_to_surface(const PosedMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : *mesh.faces)
    best = std::min(best,
                    point_triangle_dist2(p, mesh.verts[f[0]], mesh.verts[f[1]], mesh.verts[f[2]]));
  return std::sqrt(best);
}

bool inside(const PosedMesh& mesh, const Vec3& p) {
  // Skewed unit directions; the exact values only matter in that no mesh
  // face or lattice plane in the fixtures is parallel or perpendicular to
  // them. Normalized odd-prime triples do fine.
  static const double kRaw[][3] = {
      {3, 5, 7},   {-7, 3, 11}, {11, -5, 13}, {13, 7, -3}, {-5, 11, 7},
      {7, 13, 5},  {17, 3, -7}, {-3, 13, 11}, {19, 5, 7},  {5, -17, 11},
      {23, 7, 13}, {-11, 19, 3}};
  int votes = 0, clean = 0;
  for (const auto& raw : kRaw) {
    Vec3 dir{raw[0], raw[1], raw[2]};
    dir = (1.0 / norm(dir)) * dir;
    int crossings = 0;
    bool grazed = false;
    for (const auto& f : *mesh.faces) {
      Crossing c = classify(p, dir, mesh.verts[f[0]], mesh.verts[f[1]], mesh.verts[f[2]]);
      if (c == Crossing::kGraze) {
        grazed = true;
        break;
      }
      if (c == Crossing::kHit) ++crossings;
    }
    if (grazed) continue;
    votes += crossings & 1;
    if (++clean == 3) break;
  }
  if (clean < 3) throw std::runtime_error("oracle: no three clean parity rays");
  return votes >= 2;
}

double phi(const PosedMesh& mesh, const Vec3& p) {
  return inside(mesh, p) ? distance_to_surface(mesh, p) : 0.0;
}

}  // namespace oracle
