#include "coherent/penetration.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coherent/errors.hpp"
#include "coherent/parallel.hpp"

namespace coherent {

double geman_mclure(double x, double sigma) {
  double s2 = sigma * sigma;
  double x2 = x * x;
  return s2 * x2 / (x2 + s2);
}

double geman_mclure_grad(double x, double sigma) {
  double s2 = sigma * sigma;
  double d = x * x + s2;
  return 2.0 * s2 * s2 * x / (d * d);
}

PairPenalty pair_penalty(const DistanceField& field, const TriMesh& intruder,
                         const Transform& intruder_transform, std::vector<Vec3>* per_vertex) {
  const size_t n = intruder.vertices.size();
  std::vector<double> vals(n);
  std::vector<Vec3> grads(n);
  parallel_chunks(static_cast<std::int64_t>(n), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t v = lo; v < hi; ++v) {
      Vec3 p = intruder_transform.apply(intruder.vertices[static_cast<size_t>(v)]);
      vals[static_cast<size_t>(v)] = sample_phi(field, p);
      grads[static_cast<size_t>(v)] = sample_phi_grad(field, p);
    }
  });
  // Reduce in vertex order, off the parallel path, so totals never depend on
  // the worker count.
  PairPenalty out;
  for (size_t v = 0; v < n; ++v) {
    out.value += vals[v];
    out.grad += grads[v];
  }
  if (per_vertex) *per_vertex = std::move(grads);
  return out;
}

const DistanceField& FieldCache::get(const BodyInstance& body, int resolution,
                                     double padding_fraction) {
  Entry& e = entries_[body.id];
  if (e.mesh != body.mesh.get() || e.scale != body.scale || e.resolution != resolution ||
      e.padding_fraction != padding_fraction) {
    e.field = voxelize_phi(*body.mesh, Transform{body.scale, Vec3{}}, resolution,
                           padding_fraction);
    e.mesh = body.mesh.get();
    e.scale = body.scale;
    e.resolution = resolution;
    e.padding_fraction = padding_fraction;
    ++built_;
  }
  return e.field;
}

PenetrationReport scene_penetration(const Scene& scene, int resolution, double padding_fraction,
                                    const RobustifierConfig& robust, FieldCache* cache) {
  if (!std::isfinite(robust.sigma) || robust.sigma <= 0.0)
    throw ValidationError("penetration: robustifier sigma must be finite and positive");
  if (resolution < 2)
    throw ValidationError("penetration: resolution must be at least 2");
  if (!std::isfinite(padding_fraction) || padding_fraction < 0.0)
    throw ValidationError("penetration: padding fraction must be finite and non-negative");
  validate_bodies(scene);
  // Watertightness is checked up front for every body (not just the ones the
  // broad phase keeps) so a bad mesh fails the same way in any pose.
  for (const auto& b : scene.bodies)
    if (!validate_watertight(*b.mesh))
      throw ValidationError("penetration: body " + std::to_string(b.id) +
                            ": mesh is not watertight");

  const int nb = static_cast<int>(scene.bodies.size());
  PenetrationReport report;
  for (const auto& b : scene.bodies) report.gradients[b.id] = Vec3{};
  if (nb < 2) return report;

  std::vector<Aabb> padded(static_cast<size_t>(nb));
  for (int b = 0; b < nb; ++b)
    padded[static_cast<size_t>(b)] =
        pad_aabb(compute_aabb(*scene.bodies[static_cast<size_t>(b)].mesh,
                              scene.bodies[static_cast<size_t>(b)].transform()),
                 padding_fraction);

  // Fields are built lazily (only for bodies that survive the broad phase),
  // in the body's scale-only local frame. Pairs are then sampled through the
  // relative transform {scale_j, t_j - t_i}, which cancels any joint
  // translation of the scene before a single double is rounded.
  std::vector<DistanceField> local_fields(static_cast<size_t>(nb));
  auto field_for = [&](int b) -> const DistanceField& {
    const BodyInstance& body = scene.bodies[static_cast<size_t>(b)];
    if (cache) {
      int before = cache->built();
      const DistanceField& f = cache->get(body, resolution, padding_fraction);
      report.fields_built += cache->built() - before;
      return f;
    }
    DistanceField& f = local_fields[static_cast<size_t>(b)];
    if (f.resolution == 0) {
      f = voxelize_phi(*body.mesh, Transform{body.scale, Vec3{}}, resolution, padding_fraction);
      ++report.fields_built;
    }
    return f;
  };

  struct PairResult {
    int owner, intruder;  // body indices
    PairPenalty p;
  };
  std::vector<PairResult> pairs;
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      if (i == j) continue;
      if (!padded[static_cast<size_t>(i)].overlaps(padded[static_cast<size_t>(j)])) continue;
      const BodyInstance& owner = scene.bodies[static_cast<size_t>(i)];
      const BodyInstance& intr = scene.bodies[static_cast<size_t>(j)];
      Transform rel{intr.scale, intr.translation - owner.translation};
      PairResult r{i, j, pair_penalty(field_for(i), *intr.mesh, rel)};
      report.pair_penalties[{owner.id, intr.id}] = r.p.value;
      pairs.push_back(r);
    }
  }

  std::vector<double> intrusion(static_cast<size_t>(nb), 0.0);  // S_j
  for (const PairResult& r : pairs) intrusion[static_cast<size_t>(r.intruder)] += r.p.value;
  for (int j = 0; j < nb; ++j)
    report.loss += geman_mclure(intrusion[static_cast<size_t>(j)], robust.sigma);

  for (const PairResult& r : pairs) {
    double w = geman_mclure_grad(intrusion[static_cast<size_t>(r.intruder)], robust.sigma);
    // Moving the intruder along g increases phi; moving the field owner the
    // same way is equivalent to moving the samples by -g.
    report.gradients[scene.bodies[static_cast<size_t>(r.intruder)].id] += w * r.p.grad;
    report.gradients[scene.bodies[static_cast<size_t>(r.owner)].id] -= w * r.p.grad;
  }

  for (const auto& [key, value] : report.pair_penalties) {
    if (value <= 0.0) continue;
    std::pair<int, int> unordered = std::minmax(key.first, key.second);
    if (report.colliding_pairs.empty() || report.colliding_pairs.back() != unordered)
      report.colliding_pairs.push_back(unordered);
  }
  std::sort(report.colliding_pairs.begin(), report.colliding_pairs.end());
  report.colliding_pairs.erase(
      std::unique(report.colliding_pairs.begin(), report.colliding_pairs.end()),
      report.colliding_pairs.end());
  return report;
}

}  // namespace coherent
