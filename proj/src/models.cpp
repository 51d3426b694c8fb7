#include "polytree/models.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "polytree/error.hpp"

namespace polytree {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Linear: return "linear";
        case ModelKind::Binary: return "binary";
        case ModelKind::Star: return "star";
        case ModelKind::ReverseBinary: return "reverse-binary";
    }
    return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
    if (name == "linear") return ModelKind::Linear;
    if (name == "binary") return ModelKind::Binary;
    if (name == "star") return ModelKind::Star;
    if (name == "reverse-binary" || name == "reverse_binary" || name == "reversebinary") return ModelKind::ReverseBinary;
    return std::nullopt;
}

void TreeModel::validate() const {
    if (p == 0) throw Error(ErrorKind::InvalidModel, "model: p must be at least 1");
    if (kind == ModelKind::Binary || kind == ModelKind::ReverseBinary) {
        // p + 1 must be a power of two
        if (((p + 1) & p) != 0) {
            throw Error(ErrorKind::InvalidModel,
                        std::string(to_string(kind)) + " model: p must be 2^k - 1, got " + std::to_string(p));
        }
    }
}

namespace {

// Parent of vertex v (0-based) in the generative tree; v > 0.
std::size_t parent_of(ModelKind kind, std::size_t v) {
    switch (kind) {
        case ModelKind::Linear: return v - 1;
        case ModelKind::Star: return 0;
        case ModelKind::Binary:
        case ModelKind::ReverseBinary: return (v - 1) / 2;
    }
    return 0;
}

}  // namespace

GroundTruth ground_truth(const TreeModel& model) {
    model.validate();
    std::vector<DirectedEdge> edges;
    std::vector<Edge> undirected;
    for (std::size_t v = 1; v < model.p; ++v) {
        const std::size_t parent = parent_of(model.kind, v);
        if (model.kind == ModelKind::ReverseBinary) {
            edges.push_back({v, parent, Provenance::Supplied});
        } else {
            edges.push_back({parent, v, Provenance::Supplied});
        }
        undirected.emplace_back(parent, v);
    }
    return {SkeletonForest(model.p, std::move(undirected)), DirectedPolytree(model.p, std::move(edges))};
}

SampleMatrix sample(const TreeModel& model, std::size_t n, const SeedPolicy& seed) {
    model.validate();
    if (n < 2) throw Error(ErrorKind::TooFewSamples, "sample: n must be at least 2");
    const std::size_t p = model.p;
    SampleMatrix data(n, p);
    auto stream = seed.stream("sample");
    std::normal_distribution<double> normal(0.0, 1.0);
    const double root2 = std::sqrt(2.0);
    const double root3 = std::sqrt(3.0);
    std::vector<double> eps(p);
    std::vector<double> row(p);
    for (std::size_t m = 0; m < n; ++m) {
        for (auto& e : eps) e = normal(stream);
        if (model.kind == ModelKind::ReverseBinary) {
            for (std::size_t v = p; v-- > 0;) {
                const std::size_t left = 2 * v + 1;
                row[v] = left < p ? (row[left] + row[left + 1] + eps[v]) / root3 : eps[v];
            }
        } else {
            row[0] = eps[0];
            for (std::size_t v = 1; v < p; ++v) row[v] = (row[parent_of(model.kind, v)] + eps[v]) / root2;
        }
        for (std::size_t v = 0; v < p; ++v) data(m, v) = row[v];
    }
    return data;
}

}  // namespace polytree
