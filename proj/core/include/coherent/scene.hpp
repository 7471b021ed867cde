#pragma once

#include <memory>
#include <string>
#include <vector>

#include "coherent/mesh.hpp"

namespace coherent {

// Pinhole camera, CV convention: u = f*x/z + cx, v = f*y/z + cy,
// x right, y down, z forward. Pixels are unit squares; (cx, cy) is in pixels.
struct Camera {
  double f = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;
};

struct BodyInstance {
  int id = 0;                              // unique, >= 1
  std::shared_ptr<const TriMesh> mesh;     // shared when bodies reuse a file
  std::string mesh_path;                   // as resolved on load (absolute)
  Vec3 translation{};
  double scale = 1.0;

  Transform transform() const { return Transform{scale, translation}; }
};

struct Scene {
  Camera camera;
  std::vector<BodyInstance> bodies;  // file order preserved; ids unique

  const BodyInstance* find(int id) const {
    for (const auto& b : bodies)
      if (b.id == id) return &b;
    return nullptr;
  }
};

// Invariant checks; all throw ValidationError. Geometry-only entry points
// (penetration) check just the bodies, rendering needs the camera too.
void validate_camera(const Camera& camera);
// ids unique and >= 1, scales > 0, finite numbers, meshes present and valid.
void validate_bodies(const Scene& scene);
void validate_scene(const Scene& scene);  // both of the above

// Representative depth used for ordinal comparisons: z of the transformed
// vertex centroid.
double body_centroid_depth(const BodyInstance& body);

}  // namespace coherent
