#include "coherent/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coherent/errors.hpp"
#include "coherent/parallel.hpp"

namespace coherent {

namespace {

struct ScreenVertex {
  double x, y;   // pixel coordinates
  double invz;   // 1/depth, interpolates linearly in screen space
};

inline double edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

// Top-left fill rule for positively oriented triangles in y-down pixel
// coordinates: a pixel center exactly on an edge belongs to the triangle iff
// the edge is top (horizontal, interior below) or left (pointing up).
inline bool top_left(const ScreenVertex& a, const ScreenVertex& b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  return (dy == 0.0 && dx > 0.0) || dy < 0.0;
}

// Rasterizes one body into `out`, but only rows in [row_begin, row_end).
// Triangles are visited in face order and replace a pixel only on strictly
// smaller depth, so the result is independent of how rows are banded.
void raster_rows(const TriMesh& mesh, const std::vector<ScreenVertex>& sv, int row_begin,
                 int row_end, DepthMap& out) {
  const int w = out.width;
  for (const auto& f : mesh.faces) {
    ScreenVertex a = sv[static_cast<size_t>(f[0])];
    ScreenVertex b = sv[static_cast<size_t>(f[1])];
    ScreenVertex c = sv[static_cast<size_t>(f[2])];
    double area2 = edge(a, b, c.x, c.y);
    if (area2 == 0.0) continue;           // edge-on in projection
    if (area2 < 0.0) {                    // orient positively, keep both windings
      std::swap(b, c);
      area2 = -area2;
    }
    int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, c.x}) - 0.5)));
    int x1 = std::min(w - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, c.x}))));
    int y0 = std::max(row_begin, static_cast<int>(std::floor(std::min({a.y, b.y, c.y}) - 0.5)));
    int y1 = std::min(row_end - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, c.y}))));
    bool tl_ab = top_left(a, b), tl_bc = top_left(b, c), tl_ca = top_left(c, a);
    for (int y = y0; y <= y1; ++y) {
      double py = y + 0.5;
      for (int x = x0; x <= x1; ++x) {
        double px = x + 0.5;
        double wa = edge(b, c, px, py);
        double wb = edge(c, a, px, py);
        double wc = edge(a, b, px, py);
        bool in = (wa > 0.0 || (wa == 0.0 && tl_bc)) &&
                  (wb > 0.0 || (wb == 0.0 && tl_ca)) &&
                  (wc > 0.0 || (wc == 0.0 && tl_ab));
        if (!in) continue;
        double invz = (wa * a.invz + wb * b.invz + wc * c.invz) / area2;
        double depth = 1.0 / invz;
        size_t px_index = static_cast<size_t>(y) * w + x;
        if (depth < out.depth[px_index]) {
          out.depth[px_index] = depth;
          out.covered[px_index] = 1;
        }
      }
    }
  }
}

}  // namespace

RenderOutput render(const Scene& scene) {
  validate_scene(scene);
  const Camera& cam = scene.camera;
  const int w = cam.width, h = cam.height;

  RenderOutput out;
  out.instance = InstanceMap::zeros(w, h);
  out.scene_depth = DepthMap::uncovered(w, h);

  for (const auto& body : scene.bodies) {
    if (body.id > 65535)
      throw ValidationError("render: body id " + std::to_string(body.id) +
                            " does not fit the instance map (max 65535)");
    Transform tf = body.transform();
    const TriMesh& mesh = *body.mesh;
    std::vector<ScreenVertex> sv(mesh.vertices.size());
    for (size_t v = 0; v < mesh.vertices.size(); ++v) {
      Vec3 p = tf.apply(mesh.vertices[v]);
      if (p.z <= kZNear)
        throw ValidationError("render: body " + std::to_string(body.id) + " vertex " +
                              std::to_string(v) + " is at or behind the near plane (z = " +
                              std::to_string(p.z) + ")");
      double invz = 1.0 / p.z;
      sv[v] = {cam.f * p.x * invz + cam.cx, cam.f * p.y * invz + cam.cy, invz};
    }
    DepthMap dm = DepthMap::uncovered(w, h);
    parallel_chunks(h, [&](std::int64_t lo, std::int64_t hi) {
      raster_rows(mesh, sv, static_cast<int>(lo), static_cast<int>(hi), dm);
    });
    out.body_depths.emplace(body.id, std::move(dm));
  }

  // Combine in ascending id order with strict <, so depth ties go to the
  // smaller id.
  parallel_chunks(static_cast<std::int64_t>(w) * h, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t s = lo; s < hi; ++s) {
      size_t px = static_cast<size_t>(s);
      for (const auto& [id, dm] : out.body_depths) {
        if (!dm.covered[px]) continue;
        if (dm.depth[px] < out.scene_depth.depth[px]) {
          out.scene_depth.depth[px] = dm.depth[px];
          out.scene_depth.covered[px] = 1;
          out.instance.data[px] = static_cast<std::uint16_t>(id);
        }
      }
    }
  });
  return out;
}

}  // namespace coherent
