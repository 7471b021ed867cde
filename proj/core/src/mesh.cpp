#include "coherent/mesh.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>

#include "coherent/errors.hpp"

namespace coherent {

double face_area(const TriMesh& mesh, int face) {
  const auto& f = mesh.faces[static_cast<size_t>(face)];
  const Vec3& a = mesh.vertices[static_cast<size_t>(f[0])];
  const Vec3& b = mesh.vertices[static_cast<size_t>(f[1])];
  const Vec3& c = mesh.vertices[static_cast<size_t>(f[2])];
  return 0.5 * norm(cross(b - a, c - a));
}

void validate_mesh(const TriMesh& mesh) {
  if (mesh.vertices.size() < 3 || mesh.faces.empty())
    throw ValidationError("mesh needs at least 3 vertices and 1 face");
  const int vertex_count = static_cast<int>(mesh.vertices.size());
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!is_finite(mesh.vertices[i]))
      throw ValidationError("vertex " + std::to_string(i) + " has non-finite coordinates");
  }
  for (size_t i = 0; i < mesh.faces.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      int idx = mesh.faces[i][static_cast<size_t>(k)];
      if (idx < 0 || idx >= vertex_count)
        throw ValidationError("face " + std::to_string(i) + " references vertex " +
                              std::to_string(idx) + " out of range [0, " +
                              std::to_string(vertex_count) + ")");
    }
    if (face_area(mesh, static_cast<int>(i)) <= kMinFaceArea)
      throw ValidationError("face " + std::to_string(i) + " is degenerate (area <= 1e-12 m^2)");
  }
}

bool validate_watertight(const TriMesh& mesh) {
  // Count incidences per undirected edge; every edge must land on exactly 2.
  std::unordered_map<std::uint64_t, int> edge_count;
  edge_count.reserve(mesh.faces.size() * 3);
  for (const auto& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      std::uint64_t a = static_cast<std::uint64_t>(f[static_cast<size_t>(k)]);
      std::uint64_t b = static_cast<std::uint64_t>(f[static_cast<size_t>((k + 1) % 3)]);
      if (a == b) return false;
      std::uint64_t key = a < b ? (a << 32) | b : (b << 32) | a;
      if (++edge_count[key] > 2) return false;
    }
  }
  if (edge_count.empty()) return false;
  for (const auto& [key, count] : edge_count)
    if (count != 2) return false;
  return true;
}

Vec3 mesh_centroid(const TriMesh& mesh) {
  Vec3 sum{};
  for (const Vec3& v : mesh.vertices) sum += v;
  double n = mesh.vertices.empty() ? 1.0 : static_cast<double>(mesh.vertices.size());
  return (1.0 / n) * sum;
}

Aabb compute_aabb(const TriMesh& mesh, const Transform& transform) {
  if (mesh.vertices.empty()) throw ValidationError("cannot compute bounds of an empty mesh");
  // Bounds of the scaled mesh first, translation added per corner afterwards:
  // keeps the box consistent with distance-field grids, which are anchored to
  // the scaled local frame and carry the translation in their origin only.
  Aabb local;
  for (const Vec3& v : mesh.vertices) local.expand(transform.scale * v);
  Aabb world;
  world.min = local.min + transform.translation;
  world.max = local.max + transform.translation;
  return world;
}

}  // namespace coherent
