#include "coherent/refine.hpp"

#include <cmath>
#include <map>

#include "coherent/errors.hpp"
#include "coherent/metrics.hpp"
#include "coherent/ordinal.hpp"
#include "coherent/raster.hpp"

namespace coherent {

namespace {

struct Evaluation {
  std::optional<double> lp, ld;
  std::optional<int> collisions;
  std::optional<double> accuracy;
  double anchor = 0.0;
  double total = 0.0;
  std::map<int, Vec3> grads;
};

RefineRecord to_record(const Evaluation& e, int iter, double step) {
  RefineRecord r;
  r.iter = iter;
  r.penetration = e.lp;
  r.ordinal = e.ld;
  r.collisions = e.collisions;
  r.accuracy = e.accuracy;
  r.anchor = e.anchor;
  r.total = e.total;
  r.step = step;
  return r;
}

}  // namespace

RefineResult refine(const Scene& scene, const InstanceMap* mask, const RefineConfig& config) {
  if (!std::isfinite(config.lambda_p) || config.lambda_p < 0.0 ||
      !std::isfinite(config.lambda_d) || config.lambda_d < 0.0 ||
      !std::isfinite(config.lambda_anchor) || config.lambda_anchor < 0.0)
    throw ValidationError("refine: loss weights must be finite and non-negative");
  if (!std::isfinite(config.step_size) || config.step_size <= 0.0)
    throw ValidationError("refine: step size must be finite and positive");
  if (config.max_iters < 1) throw ValidationError("refine: max_iters must be positive");
  if (!std::isfinite(config.convergence_tol) || config.convergence_tol < 0.0)
    throw ValidationError("refine: convergence tolerance must be finite and non-negative");
  if (config.max_halvings < 0) throw ValidationError("refine: max_halvings must be non-negative");
  if (config.lambda_d > 0.0 && mask == nullptr)
    throw ValidationError("refine: the ordinal depth term needs an instance mask");

  const bool use_pen = config.lambda_p > 0.0;
  const bool use_ord = config.lambda_d > 0.0;
  if (use_ord || mask != nullptr)
    validate_scene(scene);  // rendering needs the camera even when only accuracy is tracked
  else
    validate_bodies(scene);

  std::map<int, Vec3> anchors;
  for (const auto& b : scene.bodies) anchors[b.id] = b.translation;

  FieldCache cache;
  auto evaluate = [&](const Scene& s) {
    Evaluation e;
    for (const auto& b : s.bodies) e.grads[b.id] = Vec3{};
    if (use_pen) {
      PenetrationReport rep = scene_penetration(s, config.voxel_resolution,
                                                config.padding_fraction, config.robustifier,
                                                &cache);
      e.lp = rep.loss;
      e.collisions = rep.collision_count();
      for (const auto& [id, g] : rep.gradients) e.grads[id] += config.lambda_p * g;
    }
    if (mask != nullptr) {
      RenderOutput rendered = render(s);
      if (use_ord) {
        OrdinalDepthReport rep = ordinal_depth_loss(rendered, *mask);
        e.ld = rep.loss;
        for (const auto& [id, g] : rep.tz_gradients) e.grads[id].z += config.lambda_d * g;
      }
      e.accuracy = depth_order_accuracy(s, mask_implied_ordering(rendered, *mask)).accuracy;
    }
    for (const auto& b : s.bodies) {
      Vec3 d = b.translation - anchors[b.id];
      e.anchor += squared_norm(d);
      e.grads[b.id] += (2.0 * config.lambda_anchor) * d;
    }
    if (!config.optimize_xy) {
      for (auto& [id, g] : e.grads) {
        g.x = 0.0;
        g.y = 0.0;
      }
    }
    e.total = (e.lp ? config.lambda_p * *e.lp : 0.0) + (e.ld ? config.lambda_d * *e.ld : 0.0) +
              config.lambda_anchor * e.anchor;
    return e;
  };

  RefineResult result;
  result.scene = scene;
  Evaluation current = evaluate(result.scene);
  result.trace.push_back(to_record(current, 0, 0.0));

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    double grad2 = 0.0;
    for (const auto& [id, g] : current.grads) grad2 += squared_norm(g);
    if (grad2 == 0.0) {
      result.converged = true;  // exact fixed point; the scene is untouched
      break;
    }

    double step = config.step_size;
    bool accepted = false;
    Scene candidate;
    Evaluation cand_eval;
    for (int halving = 0; halving <= config.max_halvings; ++halving) {
      candidate = result.scene;
      for (auto& b : candidate.bodies) b.translation -= step * current.grads[b.id];
      // a candidate that leaves the feasible region (say, a body pushed to
      // the near plane) is just an overshoot: halve and retry
      bool feasible = true;
      try {
        cand_eval = evaluate(candidate);
      } catch (const ValidationError&) {
        feasible = false;
      }
      if (feasible && cand_eval.total <= current.total) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no decrease along -grad at any tried scale

    double improvement = current.total - cand_eval.total;
    result.scene = std::move(candidate);
    current = std::move(cand_eval);
    result.trace.push_back(to_record(current, iter, step));
    ++result.iterations;
    if (improvement <= config.convergence_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace coherent
