#include <doctest.h>

#include <cmath>

#include <coherent/errors.hpp>
#include <coherent/metrics.hpp>
#include <coherent/ordinal.hpp>
#include <coherent/penetration.hpp>
#include <coherent/primitives.hpp>
#include <coherent/raster.hpp>
#include <coherent/refine.hpp>

#include "support/fixtures.hpp"

using namespace coherent;

namespace {

bool same_translations(const Scene& a, const Scene& b) {
  if (a.bodies.size() != b.bodies.size()) return false;
  for (size_t i = 0; i < a.bodies.size(); ++i) {
    const Vec3& ta = a.bodies[i].translation;
    const Vec3& tb = b.bodies[i].translation;
    if (ta.x != tb.x || ta.y != tb.y || ta.z != tb.z) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("a loss-free scene is a bit-identical fixed point") {
  Scene s = fixtures::two_spheres(3.0);  // widely separated, no collisions
  RefineConfig cfg;
  cfg.lambda_p = 1.0;
  cfg.lambda_d = 0.0;
  cfg.lambda_anchor = 0.01;  // anchor gradient is zero at the start point
  RefineResult res = refine(s, nullptr, cfg);
  CHECK(res.converged);
  CHECK(res.iterations == 0);
  CHECK(same_translations(res.scene, s));
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].total == 0.0);
  CHECK(res.trace[0].penetration == 0.0);
  CHECK(res.trace[0].collisions == 0);
  CHECK(!res.trace[0].ordinal.has_value());
  CHECK(!res.trace[0].accuracy.has_value());
}

TEST_CASE("all-zero weights leave any scene untouched") {
  Scene s = fixtures::two_spheres(1.0);  // colliding, but nothing is penalized
  RefineConfig cfg;
  cfg.lambda_p = 0.0;
  cfg.lambda_d = 0.0;
  cfg.lambda_anchor = 0.0;
  RefineResult res = refine(s, nullptr, cfg);
  CHECK(res.converged);
  CHECK(res.iterations == 0);
  CHECK(same_translations(res.scene, s));
}

TEST_CASE("overlapping unit spheres separate within 150 iterations") {
  // centers 1 m apart, radii 1: deep overlap. The robustifier is quadratic
  // near zero, so against an anchor the strict optimum keeps a millimetric
  // residual overlap; the coarse step + dead-band tolerance stop the descent
  // right after it jumps into the penetration-free region instead.
  Scene s = fixtures::two_spheres(1.0);
  RefineConfig cfg;
  cfg.lambda_p = 1.0;
  cfg.lambda_d = 0.0;
  cfg.lambda_anchor = 0.01;
  cfg.step_size = 0.25;
  cfg.convergence_tol = 1e-4;
  cfg.max_iters = 150;
  RefineResult res = refine(s, nullptr, cfg);

  PenetrationReport after = scene_penetration(res.scene, cfg.voxel_resolution,
                                              cfg.padding_fraction, cfg.robustifier);
  CHECK(after.collision_count() == 0);
  CHECK(res.iterations <= 150);
  // symmetric dynamics: the pair stays centered on its original midpoint
  double mid_x = 0.5 * (res.scene.bodies[0].translation.x + res.scene.bodies[1].translation.x);
  CHECK(std::abs(mid_x) < 0.2);
}

TEST_CASE("totals along the trace never increase") {
  Scene s = fixtures::two_spheres(1.2);
  RefineConfig cfg;
  cfg.lambda_p = 1.0;
  cfg.lambda_d = 0.0;
  cfg.lambda_anchor = 0.01;
  cfg.max_iters = 40;
  cfg.convergence_tol = 0.0;
  RefineResult res = refine(s, nullptr, cfg);
  REQUIRE(res.trace.size() >= 2);
  for (size_t i = 1; i < res.trace.size(); ++i)
    CHECK(res.trace[i].total <= res.trace[i - 1].total);
  for (size_t i = 1; i < res.trace.size(); ++i) CHECK(res.trace[i].step > 0.0);
  CHECK(res.trace[0].step == 0.0);
}

TEST_CASE("trace entries match fresh evaluations of the recorded scenes") {
  // rerunning with max_iters = k must land exactly on trace[k]
  Scene s = fixtures::two_spheres(1.3);
  RefineConfig cfg;
  cfg.lambda_p = 1.0;
  cfg.lambda_d = 0.0;
  cfg.lambda_anchor = 0.05;
  cfg.max_iters = 12;
  cfg.convergence_tol = 0.0;
  RefineResult full = refine(s, nullptr, cfg);
  REQUIRE(full.iterations >= 3);

  RefineConfig prefix = cfg;
  prefix.max_iters = 3;
  RefineResult part = refine(s, nullptr, prefix);
  REQUIRE(part.iterations == 3);
  CHECK(part.trace[3].total == full.trace[3].total);
  RefineResult again = refine(s, nullptr, prefix);
  CHECK(same_translations(part.scene, again.scene));

  // and the recorded penetration number is a real loss of the final scene
  PenetrationReport rep = scene_penetration(part.scene, cfg.voxel_resolution,
                                            cfg.padding_fraction, cfg.robustifier);
  CHECK(rep.loss == doctest::Approx(*part.trace.back().penetration).epsilon(1e-12));
}

TEST_CASE("ordinal-only refinement fixes an inverted depth order") {
  // body 1 should be in front per the mask, but starts behind
  Scene gt = fixtures::two_quads(2.2, 3.2);
  InstanceMap mask = render(gt).instance;
  Scene start = fixtures::two_quads(3.2, 2.2);

  RefineConfig cfg;
  cfg.lambda_p = 0.0;
  cfg.lambda_d = 1.0;
  cfg.lambda_anchor = 0.01;
  cfg.optimize_xy = false;  // depth cues only constrain z
  cfg.max_iters = 200;
  cfg.convergence_tol = 1e-7;
  RefineResult res = refine(start, &mask, cfg);

  auto acc = depth_order_accuracy(res.scene, mask_implied_ordering(render(res.scene), mask));
  CHECK(acc.accuracy == 1.0);
  // x and y must not have moved at all
  for (size_t i = 0; i < res.scene.bodies.size(); ++i) {
    CHECK(res.scene.bodies[i].translation.x == start.bodies[i].translation.x);
    CHECK(res.scene.bodies[i].translation.y == start.bodies[i].translation.y);
  }
  // every record carries the mask-implied accuracy
  for (const auto& r : res.trace) CHECK(r.accuracy.has_value());
  CHECK(*res.trace.front().accuracy < 1.0);
  CHECK(*res.trace.back().accuracy == 1.0);
}

TEST_CASE("refine validates its inputs") {
  Scene s = fixtures::two_spheres(1.0);

  SUBCASE("ordinal term without a mask") {
    RefineConfig cfg;
    cfg.lambda_d = 0.5;
    CHECK_THROWS_AS(refine(s, nullptr, cfg), ValidationError);
  }
  SUBCASE("max_iters must be positive") {
    RefineConfig cfg;
    cfg.lambda_d = 0.0;
    cfg.max_iters = 0;
    CHECK_THROWS_AS(refine(s, nullptr, cfg), ValidationError);
  }
  SUBCASE("negative weights are rejected") {
    RefineConfig cfg;
    cfg.lambda_d = 0.0;
    cfg.lambda_p = -1.0;
    CHECK_THROWS_AS(refine(s, nullptr, cfg), ValidationError);
  }
  SUBCASE("step size must be positive") {
    RefineConfig cfg;
    cfg.lambda_d = 0.0;
    cfg.step_size = 0.0;
    CHECK_THROWS_AS(refine(s, nullptr, cfg), ValidationError);
  }
  SUBCASE("penetration on open meshes is rejected even when separated") {
    Scene quads = fixtures::two_quads(2.0, 4.0);
    RefineConfig cfg;
    cfg.lambda_p = 1.0;
    cfg.lambda_d = 0.0;
    CHECK_THROWS_AS(refine(quads, nullptr, cfg), ValidationError);
  }
}

TEST_CASE("the input scene is never mutated") {
  Scene s = fixtures::two_spheres(1.0);
  Scene copy = s;
  RefineConfig cfg;
  cfg.lambda_p = 1.0;
  cfg.lambda_d = 0.0;
  cfg.max_iters = 5;
  cfg.convergence_tol = 0.0;
  RefineResult res = refine(s, nullptr, cfg);
  CHECK(same_translations(s, copy));
  CHECK(!same_translations(res.scene, s));  // it did move the refined copy
}
