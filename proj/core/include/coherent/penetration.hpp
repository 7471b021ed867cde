#pragma once

#include <map>
#include <utility>
#include <vector>

#include "coherent/distance_field.hpp"
#include "coherent/scene.hpp"
#include "coherent/voxelize.hpp"

namespace coherent {

// Geman-McClure robustifier rho(x) = sigma^2 x^2 / (x^2 + sigma^2): quadratic
// near 0, saturating at sigma^2, so one deeply interpenetrating body cannot
// drown out every other term of the scene loss.
double geman_mclure(double x, double sigma);
double geman_mclure_grad(double x, double sigma);

struct RobustifierConfig {
  double sigma = 0.5;
};

// One body's vertices pushed through another body's inside-distance field:
// value = sum of phi over the intruder's posed vertices, grad = d value /
// d (intruder translation). Vertices are accumulated in index order. The
// field itself is treated as a constant (it is never differentiated).
struct PairPenalty {
  double value = 0.0;
  Vec3 grad{};
};

// per_vertex, when given, receives d phi / d v' for each posed vertex v'
// (grad is their sum, since translation moves every vertex identically).
PairPenalty pair_penalty(const DistanceField& field, const TriMesh& intruder,
                         const Transform& intruder_transform,
                         std::vector<Vec3>* per_vertex = nullptr);

struct PenetrationReport {
  double loss = 0.0;
  // (field owner id, intruder id) -> penalty, for every ordered pair whose
  // padded boxes overlap. Pairs skipped by the broad phase are absent and
  // contribute exactly 0.
  std::map<std::pair<int, int>, double> pair_penalties;
  // Unordered pairs {a, b} (a < b) with a positive penalty in either
  // direction, ascending.
  std::vector<std::pair<int, int>> colliding_pairs;
  std::map<int, Vec3> gradients;  // d loss / d body translation, every body id
  int fields_built = 0;           // distance fields actually voxelized

  int collision_count() const { return static_cast<int>(colliding_pairs.size()); }
};

// Reusable per-body field store. Fields depend on the mesh, scale, resolution
// and padding but not on translation, so a caller stepping translations (the
// refiner) can keep one cache across iterations. Entries rebuild themselves
// if any of those inputs change.
class FieldCache {
 public:
  const DistanceField& get(const BodyInstance& body, int resolution, double padding_fraction);
  int built() const { return built_; }

 private:
  struct Entry {
    const TriMesh* mesh = nullptr;
    double scale = 0.0;
    int resolution = 0;
    double padding_fraction = -1.0;
    DistanceField field;
  };
  std::map<int, Entry> entries_;
  int built_ = 0;
};

// Scene interpenetration loss: for each body j, S_j = sum over other bodies i
// of P(i owns field, j intrudes), and loss = sum_j rho(S_j). Fields are built
// lazily in the body's scale-only local frame and sampled through relative
// transforms, so the loss and gradients are invariant (bit-exactly) under a
// joint translation of all bodies. With a cache, fields built by earlier
// calls are reused; fields_built still counts only this call's builds.
PenetrationReport scene_penetration(const Scene& scene, int resolution = kDefaultResolution,
                                    double padding_fraction = kDefaultPaddingFraction,
                                    const RobustifierConfig& robust = {},
                                    FieldCache* cache = nullptr);

}  // namespace coherent
