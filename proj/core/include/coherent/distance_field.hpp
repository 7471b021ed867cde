#pragma once

#include <filesystem>
#include <vector>

#include "coherent/geometry.hpp"

namespace coherent {

// Inside-distance field phi = -min(SDF, 0): positive inside the surface and
// growing with depth, exactly 0 outside. Values live on a resolution^3 lattice
// of nodes spanning the padded AABB (boundary nodes sit on its faces), stored
// x-fastest, then y, then z. spacing = extent / (resolution - 1) per axis.
struct DistanceField {
  Vec3 origin{};   // world position of node (0,0,0) = padded AABB min corner
  Vec3 spacing{};  // meters per node step, per axis (anisotropic)
  int resolution = 0;
  std::vector<double> values;

  size_t index(int i, int j, int k) const {
    return (static_cast<size_t>(k) * resolution + static_cast<size_t>(j)) * resolution +
           static_cast<size_t>(i);
  }
  double value_at(int i, int j, int k) const { return values[index(i, j, k)]; }
  Vec3 node_position(int i, int j, int k) const {
    return {origin.x + i * spacing.x, origin.y + j * spacing.y, origin.z + k * spacing.z};
  }
};

// Structural checks: resolution >= 2, positive spacing, finite non-negative
// values of the right count. Throws ValidationError.
void validate_field(const DistanceField& field);

// Trilinear interpolation of the field; 0 anywhere outside the node lattice.
// Sampling exactly at a node returns the stored value bit-exactly.
double sample_phi(const DistanceField& field, const Vec3& point);

// Analytic gradient of the trilinear interpolant, in phi-units per meter.
// Piecewise per cell; on a cell boundary the owning cell is [x_k, x_{k+1}),
// and outside the lattice (including its far faces) the gradient is zero.
Vec3 sample_phi_grad(const DistanceField& field, const Vec3& point);

// Binary field format: magic "PHIF", u32 version (=1), u32 resolution,
// 3 f64 origin, 3 f64 spacing, resolution^3 f32 values x-fastest,
// little-endian throughout.
void save_field(const DistanceField& field, const std::filesystem::path& path);
DistanceField load_field(const std::filesystem::path& path);

}  // namespace coherent
