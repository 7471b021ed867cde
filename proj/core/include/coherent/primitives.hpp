#pragma once

#include "coherent/mesh.hpp"

namespace coherent {

// Procedural closed meshes. All are watertight with outward CCW winding and
// are used by tests, benchmarks and as quick CLI inputs.

// Axis-aligned box, 8 vertices / 12 faces.
TriMesh make_cube(double size = 1.0, const Vec3& center = {});

// Icosahedron subdivided `subdivisions` times, vertices projected to radius.
// Counts: 0 -> 12/20, 1 -> 42/80, 2 -> 162/320, 3 -> 642/1280.
TriMesh make_icosphere(int subdivisions, double radius = 1.0);

// Capsule along +z: cylinder of half-length `half_length`, hemispherical caps.
TriMesh make_capsule(double radius, double half_length, int segments = 16, int rings = 8);

// Latitude/longitude ellipsoid: 2 + rings*segments vertices, 2*rings*segments
// faces. make_uv_sphere(82, 84, ...) gives 6890 vertices / 13776 faces.
TriMesh make_uv_sphere(int rings, int segments, const Vec3& radii = {1.0, 1.0, 1.0});

// Rectangle in the z=0 plane split into two triangles (not watertight; used
// by rendering fixtures).
TriMesh make_quad(double width, double height);

}  // namespace coherent
