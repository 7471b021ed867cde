#pragma once

#include <optional>
#include <vector>

#include "coherent/image.hpp"
#include "coherent/penetration.hpp"
#include "coherent/scene.hpp"

namespace coherent {

struct RefineConfig {
  double lambda_p = 1.0;        // interpenetration weight
  double lambda_d = 0.1;        // ordinal depth weight (needs a mask)
  double lambda_anchor = 0.01;  // pull toward the initial translations
  double step_size = 0.02;      // base gradient step, halved on overshoot
  int max_iters = 200;
  double convergence_tol = 1e-8;  // done when an accepted step improves by less
  int voxel_resolution = 32;
  double padding_fraction = kDefaultPaddingFraction;
  RobustifierConfig robustifier{};
  bool optimize_xy = true;  // false: bodies move along z only
  int max_halvings = 40;    // line-search budget per iteration
};

struct RefineRecord {
  int iter = 0;
  std::optional<double> penetration;  // raw losses; absent when the term is off
  std::optional<double> ordinal;
  std::optional<int> collisions;     // colliding pair count, from the penetration pass
  std::optional<double> accuracy;    // depth-order accuracy vs the mask-implied
                                     // ordering; present whenever a mask is given
  double anchor = 0.0;
  double total = 0.0;  // lambda-weighted objective
  double step = 0.0;   // accepted step length (0 on the initial record)
};

struct RefineResult {
  Scene scene;                      // refined copy; the input scene is untouched
  std::vector<RefineRecord> trace;  // record 0 describes the input
  bool converged = false;
  int iterations = 0;  // accepted steps
};

// Gradient descent over the body translations of
//   lambda_p * L_penetration + lambda_d * L_ordinal
//     + lambda_anchor * sum_b |t_b - t0_b|^2.
// Each iteration backtracks: restart from step_size, halve until the freshly
// evaluated total stops increasing, so a step can overshoot into (and stay
// in) the penetration-free region instead of creeping toward it. Terms with
// zero weight are skipped entirely (their requirements included: quad scenes
// refine fine with lambda_p = 0, and mask may be null iff lambda_d == 0).
// A zero gradient returns the input translations bit-identically.
RefineResult refine(const Scene& scene, const InstanceMap* mask, const RefineConfig& config = {});

}  // namespace coherent
