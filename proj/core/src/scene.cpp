#include "coherent/scene.hpp"

#include <cmath>
#include <set>
#include <string>

#include "coherent/errors.hpp"

namespace coherent {

void validate_camera(const Camera& c) {
  if (!(c.width > 0) || !(c.height > 0))
    throw ValidationError("camera: width and height must be positive");
  if (!std::isfinite(c.f) || c.f <= 0.0)
    throw ValidationError("camera: focal length must be finite and positive");
  if (!std::isfinite(c.cx) || !std::isfinite(c.cy) ||
      c.cx < 0.0 || c.cx >= c.width || c.cy < 0.0 || c.cy >= c.height)
    throw ValidationError("camera: principal point must lie inside the image");
}

void validate_bodies(const Scene& scene) {
  std::set<int> ids;
  for (const auto& b : scene.bodies) {
    if (b.id < 1)
      throw ValidationError("body id " + std::to_string(b.id) + " must be >= 1");
    if (!ids.insert(b.id).second)
      throw ValidationError("duplicate body id " + std::to_string(b.id));
    if (!std::isfinite(b.scale) || b.scale <= 0.0)
      throw ValidationError("body " + std::to_string(b.id) + ": scale must be finite and > 0");
    if (!is_finite(b.translation))
      throw ValidationError("body " + std::to_string(b.id) + ": translation must be finite");
    if (!b.mesh)
      throw ValidationError("body " + std::to_string(b.id) + ": mesh missing");
    validate_mesh(*b.mesh);
  }
}

void validate_scene(const Scene& scene) {
  validate_camera(scene.camera);
  validate_bodies(scene);
}

double body_centroid_depth(const BodyInstance& body) {
  return body.transform().apply(mesh_centroid(*body.mesh)).z;
}

}  // namespace coherent
