#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polytree/models.hpp"
#include "polytree/orient.hpp"
#include "polytree/skeleton.hpp"

namespace polytree {

// |est ∩ truth| / (p - 1). 1 when p == 1.
double skeleton_accuracy(const SkeletonForest& est, const SkeletonForest& truth);

// Edges matching truth in both endpoints and direction, over (p - 1).
double directed_accuracy(const DirectedPolytree& est, const DirectedPolytree& truth);

struct AccuracyReport {
    ModelKind kind = ModelKind::Linear;
    std::size_t p = 0;
    std::size_t n = 0;
    std::size_t replications = 0;
    std::vector<double> skeleton;
    std::vector<double> directed;
    double skeleton_mean = 0.0;
    double directed_mean = 0.0;
    // sample standard deviation / sqrt(reps); 0 for a single replication
    double skeleton_se = 0.0;
    double directed_se = 0.0;
    // replications whose skeleton equals the truth exactly
    std::size_t skeleton_exact = 0;
};

/// Replication r samples the model, estimates the skeleton and orients it,
/// all under seed.child("rep", {r}). Replications run on `threads` workers;
/// the report does not depend on the thread count.
AccuracyReport run_benchmark(const TreeModel& model, std::size_t n, std::size_t reps, const SeedPolicy& seed,
                             unsigned threads = 1);

}  // namespace polytree
