#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace coherent {

// Conventions:
//   - lengths are meters, doubles throughout
//   - camera frame: x right, y down, z forward (depth)
//   - Vec3 is a plain value type; no SIMD, keeps arithmetic order explicit
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 v) { return v *= s; }
inline Vec3 operator*(Vec3 v, double s) { return v *= s; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
inline bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double squared_norm(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

struct Aabb {
  Vec3 min{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()};
  Vec3 max{-std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};

  void expand(const Vec3& p) {
    min.x = std::min(min.x, p.x); min.y = std::min(min.y, p.y); min.z = std::min(min.z, p.z);
    max.x = std::max(max.x, p.x); max.y = std::max(max.y, p.y); max.z = std::max(max.z, p.z);
  }
  void expand(const Aabb& b) { expand(b.min); expand(b.max); }

  bool empty() const { return min.x > max.x; }
  Vec3 diagonal() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }

  bool overlaps(const Aabb& o) const {
    return min.x <= o.max.x && o.min.x <= max.x &&
           min.y <= o.max.y && o.min.y <= max.y &&
           min.z <= o.max.z && o.min.z <= max.z;
  }

  // Squared distance from p to the box (0 inside).
  double squared_exterior_distance(const Vec3& p) const {
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      double lo = min[a] - p[a];
      double hi = p[a] - max[a];
      double d = std::max({lo, hi, 0.0});
      d2 += d * d;
    }
    return d2;
  }
};

// Body pose: uniform scale followed by translation, v' = scale*v + translation.
struct Transform {
  double scale = 1.0;
  Vec3 translation{};

  Vec3 apply(const Vec3& v) const { return scale * v + translation; }
};

}  // namespace coherent
