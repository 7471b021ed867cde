#pragma once

#include <cstdint>
#include <map>

#include "coherent/raster.hpp"

namespace coherent {

// Render-and-compare ordinal depth loss. A pixel contributes when the mask
// and the rendered instance map name different bodies (both nonzero): the
// mask's body should be in front there, so the penalty is
// softplus(D_mask(p) - D_rendered(p)) using each body's own depth map.
// Pixels whose mask body has no rendered depth at p are counted in
// skipped_pixels instead; pixels where either id is 0 are ignored.
//
// Gradients are with respect to each body's z-translation under frozen
// coverage (the surface point seen at p stays fixed, so dD/dt_z = 1):
// the mask's body is pulled forward, the rendered winner pushed back.
struct OrdinalDepthReport {
  double loss = 0.0;
  std::int64_t disagreement_pixels = 0;  // pixels that contributed to the loss
  std::int64_t skipped_pixels = 0;       // disagreeing, but no depth for the mask's body
  std::map<int, double> tz_gradients;    // every rendered body id, zero when untouched
};

OrdinalDepthReport ordinal_depth_loss(const RenderOutput& rendered, const InstanceMap& mask);

}  // namespace coherent
