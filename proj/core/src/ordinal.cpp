#include "coherent/ordinal.hpp"

#include <cmath>
#include <string>

#include "coherent/errors.hpp"

namespace coherent {

namespace {

double softplus(double d) { return std::max(d, 0.0) + std::log1p(std::exp(-std::abs(d))); }

double logistic(double d) {
  if (d >= 0.0) return 1.0 / (1.0 + std::exp(-d));
  double e = std::exp(d);
  return e / (1.0 + e);
}

}  // namespace

OrdinalDepthReport ordinal_depth_loss(const RenderOutput& rendered, const InstanceMap& mask) {
  const int w = rendered.instance.width, h = rendered.instance.height;
  if (mask.width != w || mask.height != h)
    throw ValidationError("ordinal: mask is " + std::to_string(mask.width) + "x" +
                          std::to_string(mask.height) + " but the render is " +
                          std::to_string(w) + "x" + std::to_string(h));

  OrdinalDepthReport report;
  for (const auto& [id, dm] : rendered.body_depths) report.tz_gradients[id] = 0.0;

  // Row-major pixel walk; accumulation order is fixed so results do not
  // depend on threading.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int truth = mask.at(x, y);
      if (truth == 0) continue;
      if (report.tz_gradients.find(truth) == report.tz_gradients.end())
        throw ValidationError("ordinal: mask names body " + std::to_string(truth) +
                              " which was not rendered");
      int predicted = rendered.instance.at(x, y);
      if (predicted == 0 || predicted == truth) continue;
      const DepthMap& truth_depth = rendered.body_depths.at(truth);
      if (!truth_depth.is_covered(x, y)) {
        ++report.skipped_pixels;
        continue;
      }
      double d = truth_depth.at(x, y) - rendered.body_depths.at(predicted).at(x, y);
      report.loss += softplus(d);
      double s = logistic(d);
      report.tz_gradients[truth] += s;
      report.tz_gradients[predicted] -= s;
      ++report.disagreement_pixels;
    }
  }
  return report;
}

}  // namespace coherent
