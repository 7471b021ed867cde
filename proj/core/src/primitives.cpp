#include "coherent/primitives.hpp"

#include <cmath>
#include <cstdint>
#include <map>

#include "coherent/errors.hpp"

namespace coherent {

TriMesh make_cube(double size, const Vec3& center) {
  double h = 0.5 * size;
  TriMesh m;
  m.vertices = {
      {center.x - h, center.y - h, center.z - h}, {center.x + h, center.y - h, center.z - h},
      {center.x + h, center.y + h, center.z - h}, {center.x - h, center.y + h, center.z - h},
      {center.x - h, center.y - h, center.z + h}, {center.x + h, center.y - h, center.z + h},
      {center.x + h, center.y + h, center.z + h}, {center.x - h, center.y + h, center.z + h},
  };
  // With y down / z forward this winding is CCW seen from outside.
  m.faces = {
      {0, 2, 1}, {0, 3, 2},  // z- face
      {4, 5, 6}, {4, 6, 7},  // z+ face
      {0, 1, 5}, {0, 5, 4},  // y- face
      {3, 7, 6}, {3, 6, 2},  // y+ face
      {0, 4, 7}, {0, 7, 3},  // x- face
      {1, 2, 6}, {1, 6, 5},  // x+ face
  };
  return m;
}

namespace {

Vec3 normalized_to(const Vec3& v, double radius) {
  double n = norm(v);
  return (radius / n) * v;
}

}  // namespace

TriMesh make_icosphere(int subdivisions, double radius) {
  if (subdivisions < 0 || radius <= 0.0)
    throw ValidationError("make_icosphere: subdivisions must be >= 0 and radius > 0");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriMesh m;
  m.vertices = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
  };
  for (Vec3& v : m.vertices) v = normalized_to(v, radius);
  m.faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::uint64_t, int> midpoint;  // undirected edge -> new vertex
    auto mid = [&](int a, int b) {
      std::uint64_t key = a < b
          ? (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b)
          : (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint64_t>(a);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 p = normalized_to(0.5 * (m.vertices[static_cast<size_t>(a)] +
                                    m.vertices[static_cast<size_t>(b)]),
                             radius);
      int idx = static_cast<int>(m.vertices.size());
      m.vertices.push_back(p);
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(m.faces.size() * 4);
    for (const auto& f : m.faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.faces = std::move(next);
  }
  return m;
}

TriMesh make_capsule(double radius, double half_length, int segments, int rings) {
  if (radius <= 0.0 || half_length < 0.0 || segments < 3 || rings < 1)
    throw ValidationError("make_capsule: need radius > 0, half_length >= 0, segments >= 3, rings >= 1");
  TriMesh m;
  const double pi = std::acos(-1.0);
  // Stacked latitude rows: south pole, south hemisphere rows, cylinder seam
  // rows, north hemisphere rows, north pole. Rows share vertices, so the
  // result is watertight by construction.
  std::vector<std::vector<int>> rows;
  auto add_ring = [&](double r, double z) {
    std::vector<int> ring(static_cast<size_t>(segments));
    for (int s = 0; s < segments; ++s) {
      double a = 2.0 * pi * s / segments;
      ring[static_cast<size_t>(s)] = static_cast<int>(m.vertices.size());
      m.vertices.push_back({r * std::cos(a), r * std::sin(a), z});
    }
    return ring;
  };

  int south_pole = static_cast<int>(m.vertices.size());
  m.vertices.push_back({0, 0, -half_length - radius});
  for (int i = 1; i <= rings; ++i) {
    double lat = pi / 2.0 * i / rings;  // 0 at pole axis, pi/2 at equator
    rows.push_back(add_ring(radius * std::sin(lat), -half_length - radius * std::cos(lat)));
  }
  if (half_length > 0.0) rows.push_back(add_ring(radius, half_length));
  for (int i = rings - 1; i >= 1; --i) {
    double lat = pi / 2.0 * i / rings;
    rows.push_back(add_ring(radius * std::sin(lat), half_length + radius * std::cos(lat)));
  }
  int north_pole = static_cast<int>(m.vertices.size());
  m.vertices.push_back({0, 0, half_length + radius});

  auto& first = rows.front();
  for (int s = 0; s < segments; ++s) {
    int sn = (s + 1) % segments;
    m.faces.push_back({south_pole, first[static_cast<size_t>(sn)], first[static_cast<size_t>(s)]});
  }
  for (size_t r = 0; r + 1 < rows.size(); ++r) {
    for (int s = 0; s < segments; ++s) {
      int sn = (s + 1) % segments;
      int a = rows[r][static_cast<size_t>(s)], b = rows[r][static_cast<size_t>(sn)];
      int c = rows[r + 1][static_cast<size_t>(sn)], d = rows[r + 1][static_cast<size_t>(s)];
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  }
  auto& last = rows.back();
  for (int s = 0; s < segments; ++s) {
    int sn = (s + 1) % segments;
    m.faces.push_back({north_pole, last[static_cast<size_t>(s)], last[static_cast<size_t>(sn)]});
  }
  return m;
}

TriMesh make_uv_sphere(int rings, int segments, const Vec3& radii) {
  if (rings < 1 || segments < 3)
    throw ValidationError("make_uv_sphere: need rings >= 1 and segments >= 3");
  TriMesh m;
  const double pi = std::acos(-1.0);
  int south = 0;
  m.vertices.push_back({0, 0, -radii.z});
  std::vector<int> prev;
  for (int r = 1; r <= rings; ++r) {
    double lat = pi * r / (rings + 1) - pi / 2.0;  // (-pi/2, pi/2)
    std::vector<int> row(static_cast<size_t>(segments));
    for (int s = 0; s < segments; ++s) {
      double lon = 2.0 * pi * s / segments;
      row[static_cast<size_t>(s)] = static_cast<int>(m.vertices.size());
      m.vertices.push_back({radii.x * std::cos(lat) * std::cos(lon),
                            radii.y * std::cos(lat) * std::sin(lon),
                            radii.z * std::sin(lat)});
    }
    if (r == 1) {
      for (int s = 0; s < segments; ++s)
        m.faces.push_back({south, row[static_cast<size_t>((s + 1) % segments)],
                           row[static_cast<size_t>(s)]});
    } else {
      for (int s = 0; s < segments; ++s) {
        int sn = (s + 1) % segments;
        int a = prev[static_cast<size_t>(s)], b = prev[static_cast<size_t>(sn)];
        int c = row[static_cast<size_t>(sn)], d = row[static_cast<size_t>(s)];
        m.faces.push_back({a, b, c});
        m.faces.push_back({a, c, d});
      }
    }
    prev = std::move(row);
  }
  int north = static_cast<int>(m.vertices.size());
  m.vertices.push_back({0, 0, radii.z});
  for (int s = 0; s < segments; ++s)
    m.faces.push_back({north, prev[static_cast<size_t>(s)],
                       prev[static_cast<size_t>((s + 1) % segments)]});
  return m;
}

TriMesh make_quad(double width, double height) {
  double hw = 0.5 * width, hh = 0.5 * height;
  TriMesh m;
  m.vertices = {{-hw, -hh, 0}, {hw, -hh, 0}, {hw, hh, 0}, {-hw, hh, 0}};
  m.faces = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

}  // namespace coherent
