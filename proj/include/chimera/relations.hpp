#pragma once

#include <vector>

#include "chimera/scene.hpp"

namespace chimera {

struct RelationScore {
    SceneRelation relation;
    double value = 0.0;
};

inline constexpr std::size_t kInsideSampleCount = 200;
inline constexpr std::uint64_t kInsideSampleSeed = 0x5eed5eedULL;

/// Satisfaction of one relation in [0, 1]. The directional relations are
/// binary bounding-box tests (y grows downward, so "above" means smaller y);
/// `inside` is the fraction of the subject's sample points that land in the
/// object's region; `overlaps` is bounding-box intersection.
double eval_relation(const Scene& scene, const SceneRelation& rel);

std::vector<RelationScore> relation_scores(const Scene& scene);

/// Order-independent arithmetic mean (summed over sorted values).
double mean_satisfaction(std::vector<double> values);

/// Mean relation satisfaction; 0 for the degenerate zero-relation scene.
double fitness(const Scene& scene);

inline bool is_degenerate(const Scene& scene) { return scene.relations.empty(); }

}  // namespace chimera
