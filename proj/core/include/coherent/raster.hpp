#pragma once

#include <map>

#include "coherent/image.hpp"
#include "coherent/scene.hpp"

namespace coherent {

// Any vertex closer than this to the camera plane is rejected: the renderer
// interpolates 1/z and does no clipping.
inline constexpr double kZNear = 1e-4;  // meters

struct RenderOutput {
  InstanceMap instance;                 // winning body id per pixel, 0 = background
  std::map<int, DepthMap> body_depths;  // each body rasterized on its own
  DepthMap scene_depth;                 // per-pixel minimum over bodies
};

// Rasterizes every body with the scene camera (pinhole, u = f*x/z + cx,
// v = f*y/z + cy, y down, samples at pixel centers). Depth is
// perspective-correct; both triangle windings are kept (no culling); pixels
// exactly on shared edges are covered by exactly one triangle (top-left
// rule). Where bodies tie in depth the smaller id wins.
RenderOutput render(const Scene& scene);

}  // namespace coherent
