#pragma once

#include "coherent/distance_field.hpp"
#include "coherent/mesh.hpp"

namespace coherent {

inline constexpr int kDefaultResolution = 32;
inline constexpr double kDefaultPaddingFraction = 0.1;
// Floor on the padding so boundary nodes never touch the surface even for
// tiny or flat-ish bodies.
inline constexpr double kMinPadding = 1e-4;  // meters

// Grows the box by max(fraction * |diagonal|, kMinPadding) on every side.
Aabb pad_aabb(const Aabb& box, double fraction);

// Builds the inside-distance field of a posed body on a resolution^3 node
// lattice over its padded AABB. The mesh must be watertight. The lattice is
// computed in the scale-only local frame and the translation goes into the
// field origin, so translating a body translates its field bit-exactly.
//
// Inside/outside is decided by ray-crossing parity along the three lattice
// axis directions with a majority vote; lines that hit an edge or vertex
// exactly are retried with a tiny deterministic offset. phi is the exact
// (up to the BVH's double arithmetic) distance to the surface for inside
// nodes and 0 elsewhere.
DistanceField voxelize_phi(const TriMesh& mesh, const Transform& transform,
                           int resolution = kDefaultResolution,
                           double padding_fraction = kDefaultPaddingFraction);

}  // namespace coherent
