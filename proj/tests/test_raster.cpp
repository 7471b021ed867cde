#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <queue>
#include <random>

#include <coherent/errors.hpp>
#include <coherent/primitives.hpp>
#include <coherent/raster.hpp>

#include "support/fixtures.hpp"

using namespace coherent;

namespace {

TriMesh triangle(Vec3 a, Vec3 b, Vec3 c) {
  TriMesh m;
  m.vertices = {a, b, c};
  m.faces = {{0, 1, 2}};
  return m;
}

// identity-projection camera: f = 1, principal point at the corner, so a
// vertex at (x, y, 1) lands on screen coordinate (x, y) exactly
Camera unit_camera(int w, int h) {
  Camera c;
  c.f = 1.0;
  c.cx = 0.0;
  c.cy = 0.0;
  c.width = w;
  c.height = h;
  return c;
}

}  // namespace

TEST_CASE("empty scene renders to background everywhere") {
  Scene s;
  s.camera = fixtures::camera(16, 16);
  RenderOutput r = render(s);
  for (auto v : r.instance.data) CHECK(v == 0);
  for (auto c : r.scene_depth.covered) CHECK(c == 0);
  for (double d : r.scene_depth.depth) CHECK(std::isinf(d));
  CHECK(r.body_depths.empty());
}

TEST_CASE("constant-z triangle: coverage at centers, depth exact") {
  // screen-space right triangle (1,1)-(9,1)-(1,9) at z = 2
  Scene s;
  s.camera = unit_camera(12, 12);
  TriMesh tri = triangle({2, 2, 2}, {18, 2, 2}, {2, 18, 2});  // /2 on projection
  s.bodies.push_back(fixtures::body(1, tri));
  RenderOutput r = render(s);

  int covered = 0;
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 12; ++x) {
      double px = x + 0.5, py = y + 0.5;
      bool strictly_in = px > 1.0 && py > 1.0 && px + py < 10.0;
      bool strictly_out = px < 1.0 || py < 1.0 || px + py > 10.0;
      if (strictly_in) {
        CHECK(r.instance.at(x, y) == 1);
        CHECK(r.scene_depth.at(x, y) == 2.0);  // constant z interpolates exactly
        ++covered;
      } else if (strictly_out) {
        CHECK(r.instance.at(x, y) == 0);
      }
    }
  CHECK(covered > 0);
}

TEST_CASE("pixels on a shared edge are covered exactly once") {
  // two bodies, one triangle each, sharing the diagonal (0,0)-(4,4) at z = 1
  Scene s;
  s.camera = unit_camera(5, 5);
  s.bodies.push_back(fixtures::body(1, triangle({0, 0, 1}, {4, 0, 1}, {4, 4, 1})));
  s.bodies.push_back(fixtures::body(2, triangle({0, 0, 1}, {4, 4, 1}, {0, 4, 1})));
  RenderOutput r = render(s);

  const DepthMap& d1 = r.body_depths.at(1);
  const DepthMap& d2 = r.body_depths.at(2);
  for (int k = 0; k < 4; ++k) {
    // centers (k+.5, k+.5) lie exactly on the diagonal
    int a = d1.is_covered(k, k) ? 1 : 0;
    int b = d2.is_covered(k, k) ? 1 : 0;
    CHECK(a + b == 1);
  }
  // the union tiles the square: every center in (0,4)^2 covered exactly once
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      int n = (d1.is_covered(x, y) ? 1 : 0) + (d2.is_covered(x, y) ? 1 : 0);
      CHECK(n == 1);
      CHECK(r.instance.at(x, y) != 0);
    }
}

TEST_CASE("perspective-correct depth on a slanted plane") {
  // plane z = 4 + 0.5 * x_world through a triangle; compare against the
  // closed-form ray/plane intersection at every covered pixel
  Scene s;
  s.camera = fixtures::camera(32, 32, 40.0);
  TriMesh tri = triangle({-1.2, -1.2, 0}, {1.2, -1.2, 0}, {0, 1.2, 0});
  for (auto& v : tri.vertices) v.z = 4.0 + 0.5 * v.x;
  s.bodies.push_back(fixtures::body(1, tri));
  RenderOutput r = render(s);

  // ray through pixel: p(t) = t * ((px-cx)/f, (py-cy)/f, 1); plane z = 4 + x/2
  int checked = 0;
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      if (!r.scene_depth.is_covered(x, y)) continue;
      double dx = (x + 0.5 - s.camera.cx) / s.camera.f;
      double t = 4.0 / (1.0 - 0.5 * dx);  // z = t, x = t*dx, t = 4 + t*dx/2
      CHECK(r.scene_depth.at(x, y) == doctest::Approx(t).epsilon(1e-10));
      ++checked;
    }
  CHECK(checked > 50);
}

TEST_CASE("occlusion: nearer body wins, ties go to the lower id") {
  SUBCASE("different depths") {
    Scene s = fixtures::two_quads(2.0, 3.0);
    // overlap region: quad 1 in front of quad 2
    RenderOutput r = render(s);
    bool saw_overlap = false;
    for (int y = 0; y < r.instance.height; ++y)
      for (int x = 0; x < r.instance.width; ++x) {
        bool c1 = r.body_depths.at(1).is_covered(x, y);
        bool c2 = r.body_depths.at(2).is_covered(x, y);
        if (c1 && c2) {
          CHECK(r.instance.at(x, y) == 1);
          CHECK(r.scene_depth.at(x, y) == r.body_depths.at(1).at(x, y));
          saw_overlap = true;
        }
      }
    CHECK(saw_overlap);
  }
  SUBCASE("exact tie") {
    Scene s;
    s.camera = unit_camera(5, 5);
    s.bodies.push_back(fixtures::body(7, triangle({0, 0, 2}, {8, 0, 2}, {0, 8, 2})));
    s.bodies.push_back(fixtures::body(3, triangle({0, 0, 2}, {8, 0, 2}, {0, 8, 2})));
    RenderOutput r = render(s);
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 5; ++x)
        if (r.scene_depth.is_covered(x, y)) CHECK(r.instance.at(x, y) == 3);
  }
}

TEST_CASE("instance/depth consistency invariants") {
  std::mt19937 rng(77);
  Scene s;
  s.camera = fixtures::camera(48, 48, 60.0);
  for (int i = 1; i <= 4; ++i) {
    Vec3 t = fixtures::dyadic_vec(rng, 1.0);
    t.z = 4.0 + i * 0.5 + t.z * 0.25;
    s.bodies.push_back(fixtures::body(i, make_icosphere(1, 0.8), 1.0, t));
  }
  RenderOutput r = render(s);
  for (int y = 0; y < 48; ++y)
    for (int x = 0; x < 48; ++x) {
      size_t px = static_cast<size_t>(y) * 48 + x;
      int winner = 0;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [id, dm] : r.body_depths)
        if (dm.covered[px] && dm.depth[px] < best) {
          best = dm.depth[px];
          winner = id;
        }
      CHECK(r.instance.data[px] == winner);
      if (winner != 0) {
        CHECK(r.scene_depth.covered[px] == 1);
        CHECK(r.scene_depth.depth[px] == best);
      } else {
        CHECK(r.scene_depth.covered[px] == 0);
      }
    }
}

TEST_CASE("a convex body renders as one 4-connected blob") {
  Scene s;
  s.camera = fixtures::camera(64, 64);
  s.bodies.push_back(fixtures::body(1, make_icosphere(2, 0.9), 1.0, {0, 0, 4}));
  RenderOutput r = render(s);

  int foreground = 0;
  int sx = -1, sy = -1;
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      if (r.instance.at(x, y) == 1) {
        ++foreground;
        sx = x;
        sy = y;
      }
  REQUIRE(foreground > 100);

  // BFS over 4-neighbours reaches every foreground pixel
  std::vector<char> seen(64 * 64, 0);
  std::queue<std::pair<int, int>> q;
  q.push({sx, sy});
  seen[static_cast<size_t>(sy) * 64 + sx] = 1;
  int reached = 0;
  while (!q.empty()) {
    auto [x, y] = q.front();
    q.pop();
    ++reached;
    const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      int nx = x + dx[k], ny = y + dy[k];
      if (nx < 0 || ny < 0 || nx >= 64 || ny >= 64) continue;
      size_t idx = static_cast<size_t>(ny) * 64 + nx;
      if (!seen[idx] && r.instance.data[idx] == 1) {
        seen[idx] = 1;
        q.push({nx, ny});
      }
    }
  }
  CHECK(reached == foreground);
}

TEST_CASE("renders are identical for any worker count") {
  Scene s;
  std::mt19937 rng(5);
  s.camera = fixtures::camera(40, 40, 50.0);
  for (int i = 1; i <= 3; ++i) {
    Vec3 t = fixtures::dyadic_vec(rng, 1.5);
    t.z = 5.0 + 0.5 * i;
    s.bodies.push_back(fixtures::body(i, make_icosphere(1, 0.9), 1.0, t));
  }
  setenv("COHERENT_THREADS", "1", 1);
  RenderOutput a = render(s);
  setenv("COHERENT_THREADS", "5", 1);
  RenderOutput b = render(s);
  unsetenv("COHERENT_THREADS");
  CHECK(a.instance.data == b.instance.data);
  for (const auto& [id, dm] : a.body_depths) {
    CHECK(dm.covered == b.body_depths.at(id).covered);
    CHECK(dm.depth == b.body_depths.at(id).depth);  // doubles compare bitwise-equal here
  }
  CHECK(a.scene_depth.depth == b.scene_depth.depth);
}

TEST_CASE("render input validation") {
  SUBCASE("vertex at the near plane") {
    Scene s;
    s.camera = unit_camera(8, 8);
    s.bodies.push_back(fixtures::body(1, triangle({0, 0, kZNear}, {4, 0, 2}, {0, 4, 2})));
    CHECK_THROWS_AS(render(s), ValidationError);
  }
  SUBCASE("vertex behind the camera") {
    Scene s;
    s.camera = unit_camera(8, 8);
    s.bodies.push_back(fixtures::body(1, triangle({0, 0, -1}, {4, 0, 2}, {0, 4, 2})));
    CHECK_THROWS_AS(render(s), ValidationError);
  }
  SUBCASE("body id too large for the 16-bit instance map") {
    Scene s;
    s.camera = unit_camera(8, 8);
    s.bodies.push_back(fixtures::body(65536, triangle({0, 0, 2}, {4, 0, 2}, {0, 4, 2})));
    CHECK_THROWS_AS(render(s), ValidationError);
  }
  SUBCASE("invalid camera") {
    Scene s;
    s.camera = unit_camera(8, 8);
    s.camera.f = -1.0;
    CHECK_THROWS_AS(render(s), ValidationError);
  }
}
