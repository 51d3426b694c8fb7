#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "polytree/orient.hpp"
#include "polytree/sample_matrix.hpp"
#include "polytree/seed.hpp"
#include "polytree/skeleton.hpp"

namespace polytree {

enum class ModelKind { Linear, Binary, Star, ReverseBinary };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

/// Synthetic polytree. Vertices are 0-based internally; binary kinds use heap
/// numbering (children of vertex v are 2v+1 and 2v+2).
struct TreeModel {
    ModelKind kind = ModelKind::Linear;
    std::size_t p = 1;

    // Throws polytree::Error(InvalidModel): p == 0, or p != 2^k - 1 for the binary kinds.
    void validate() const;
};

struct GroundTruth {
    SkeletonForest skeleton;
    DirectedPolytree directed;
};

GroundTruth ground_truth(const TreeModel& model);

/// n i.i.d. draws from the model with standard normal noise. Every variable
/// has unit variance:
///   Linear, Binary, Star: root = e, child = (parent + e) / sqrt(2)
///   ReverseBinary: leaf = e, internal = (left + right + e) / sqrt(3)
SampleMatrix sample(const TreeModel& model, std::size_t n, const SeedPolicy& seed);

}  // namespace polytree
