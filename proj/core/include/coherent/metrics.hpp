#pragma once

#include <vector>

#include "coherent/raster.hpp"
#include "coherent/scene.hpp"

namespace coherent {

// "front_id renders nearer than back_id" — one comparable body pair.
struct PairRelation {
  int front_id = 0;
  int back_id = 0;
};

// All (front, back) pairs of a full nearest-to-farthest ordering.
std::vector<PairRelation> relations_from_order(const std::vector<int>& near_to_far);

// Occlusion order implied by an instance mask: bodies a and b are related iff
// their own rendered silhouettes overlap somewhere and the mask gives one of
// them a strict majority of those overlap pixels. Ties (including overlap
// assigned entirely to other bodies) yield no relation.
std::vector<PairRelation> mask_implied_ordering(const RenderOutput& rendered,
                                                const InstanceMap& mask);

struct DepthOrderAccuracy {
  double accuracy = 1.0;  // agreeing / comparable; 1.0 when nothing is comparable
  int comparable_pairs = 0;
  int agreeing_pairs = 0;
};

// Fraction of relations the scene satisfies, comparing representative body
// depths (z of the transformed vertex centroid) strictly.
DepthOrderAccuracy depth_order_accuracy(const Scene& scene,
                                        const std::vector<PairRelation>& relations);

// Same, against a reference scene with the same body ids. Pairs whose
// reference depths differ by less than 1e-6 m have no meaningful order and
// are not comparable.
DepthOrderAccuracy depth_order_accuracy(const Scene& scene, const Scene& reference);

}  // namespace coherent
