#include "coherent/metrics.hpp"

#include <cmath>
#include <string>

#include "coherent/errors.hpp"

namespace coherent {

std::vector<PairRelation> relations_from_order(const std::vector<int>& near_to_far) {
  std::vector<PairRelation> out;
  for (size_t i = 0; i < near_to_far.size(); ++i)
    for (size_t j = i + 1; j < near_to_far.size(); ++j)
      out.push_back({near_to_far[i], near_to_far[j]});
  return out;
}

std::vector<PairRelation> mask_implied_ordering(const RenderOutput& rendered,
                                                const InstanceMap& mask) {
  if (mask.width != rendered.instance.width || mask.height != rendered.instance.height)
    throw ValidationError("metrics: mask size does not match the render");
  for (std::uint16_t m : mask.data)
    if (m != 0 && rendered.body_depths.find(m) == rendered.body_depths.end())
      throw ValidationError("metrics: mask references body " + std::to_string(m) +
                            " which was not rendered");

  std::vector<PairRelation> out;
  for (auto ia = rendered.body_depths.begin(); ia != rendered.body_depths.end(); ++ia) {
    for (auto ib = std::next(ia); ib != rendered.body_depths.end(); ++ib) {
      int a = ia->first, b = ib->first;
      std::int64_t votes_a = 0, votes_b = 0;
      bool overlap = false;
      for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
          if (!ia->second.is_covered(x, y) || !ib->second.is_covered(x, y)) continue;
          overlap = true;
          int m = mask.at(x, y);
          if (m == a) ++votes_a;
          else if (m == b) ++votes_b;
        }
      }
      if (!overlap || votes_a == votes_b) continue;
      out.push_back(votes_a > votes_b ? PairRelation{a, b} : PairRelation{b, a});
    }
  }
  return out;
}

DepthOrderAccuracy depth_order_accuracy(const Scene& scene,
                                        const std::vector<PairRelation>& relations) {
  DepthOrderAccuracy out;
  for (const PairRelation& r : relations) {
    const BodyInstance* front = scene.find(r.front_id);
    const BodyInstance* back = scene.find(r.back_id);
    if (!front || !back)
      throw ValidationError("metrics: relation names body " +
                            std::to_string(front ? r.back_id : r.front_id) +
                            " which is not in the scene");
    ++out.comparable_pairs;
    if (body_centroid_depth(*front) < body_centroid_depth(*back)) ++out.agreeing_pairs;
  }
  out.accuracy = out.comparable_pairs == 0
                     ? 1.0
                     : static_cast<double>(out.agreeing_pairs) / out.comparable_pairs;
  return out;
}

DepthOrderAccuracy depth_order_accuracy(const Scene& scene, const Scene& reference) {
  std::vector<PairRelation> relations;
  for (size_t i = 0; i < reference.bodies.size(); ++i) {
    for (size_t j = i + 1; j < reference.bodies.size(); ++j) {
      const BodyInstance& a = reference.bodies[i];
      const BodyInstance& b = reference.bodies[j];
      if (!scene.find(a.id) || !scene.find(b.id))
        throw ValidationError("metrics: reference body " +
                              std::to_string(scene.find(a.id) ? b.id : a.id) +
                              " is not in the scene");
      double da = body_centroid_depth(a), db = body_centroid_depth(b);
      if (std::abs(da - db) < 1e-6) continue;  // no meaningful reference order
      relations.push_back(da < db ? PairRelation{a.id, b.id} : PairRelation{b.id, a.id});
    }
  }
  return depth_order_accuracy(scene, relations);
}

}  // namespace coherent
