#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace coherent {

// Per-pixel body id, 0 = background. Row-major, index = y*width + x.
struct InstanceMap {
  int width = 0, height = 0;
  std::vector<std::uint16_t> data;

  std::uint16_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
  std::uint16_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }

  static InstanceMap zeros(int width, int height) {
    InstanceMap m;
    m.width = width;
    m.height = height;
    m.data.assign(static_cast<size_t>(width) * height, 0);
    return m;
  }
};

// Per-pixel depth in meters; uncovered pixels hold +inf and covered=0.
struct DepthMap {
  int width = 0, height = 0;
  std::vector<double> depth;
  std::vector<std::uint8_t> covered;

  double at(int x, int y) const { return depth[static_cast<size_t>(y) * width + x]; }
  bool is_covered(int x, int y) const { return covered[static_cast<size_t>(y) * width + x] != 0; }

  static DepthMap uncovered(int width, int height) {
    DepthMap m;
    m.width = width;
    m.height = height;
    m.depth.assign(static_cast<size_t>(width) * height,
                   std::numeric_limits<double>::infinity());
    m.covered.assign(static_cast<size_t>(width) * height, 0);
    return m;
  }
};

}  // namespace coherent
