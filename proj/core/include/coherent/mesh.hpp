#pragma once

#include <array>
#include <vector>

#include "coherent/geometry.hpp"

namespace coherent {

// Indexed triangle mesh. Faces index into vertices; winding is assumed
// counter-clockwise seen from outside for closed surfaces, but nothing here
// depends on it (the inside test used for distance fields is parity-based).
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

// Degenerate-face cutoff: faces with area <= this are rejected.
inline constexpr double kMinFaceArea = 1e-12;  // m^2

double face_area(const TriMesh& mesh, int face);

// Checks index bounds, finiteness and the degenerate-face cutoff.
// Throws ValidationError naming the offending vertex/face.
void validate_mesh(const TriMesh& mesh);

// True iff every undirected edge is incident to exactly two faces.
// Disjoint closed components are fine; boundary or fin edges are not.
bool validate_watertight(const TriMesh& mesh);

// Mean of vertex positions (used as the representative point for depth order).
Vec3 mesh_centroid(const TriMesh& mesh);

Aabb compute_aabb(const TriMesh& mesh, const Transform& transform);

}  // namespace coherent
