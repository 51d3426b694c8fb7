#pragma once

#include <cstddef>
#include <vector>

#include "polytree/graph.hpp"
#include "polytree/sample_matrix.hpp"
#include "polytree/seed.hpp"
#include "polytree/xi.hpp"

namespace polytree {

struct WeightedEdge {
    Edge edge;
    double weight = 0.0;

    bool operator==(const WeightedEdge&) const = default;
};

/// Pairs that survive pruning, with weight min(xi_ij, xi_ji). Edges are
/// sorted lexicographically.
struct PrunedGraph {
    std::size_t p = 0;
    std::vector<WeightedEdge> edges;

    double weight_of(const Edge& e) const;
    bool contains(const Edge& e) const;
};

/// Undirected forest estimate of the skeleton.
class SkeletonForest {
public:
    SkeletonForest() = default;
    // Throws polytree::Error if an edge is out of range, repeated, or closes a cycle.
    SkeletonForest(std::size_t p, std::vector<Edge> edges);

    std::size_t p() const noexcept { return p_; }
    // Sorted lexicographically.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
    // Component label of each vertex: the smallest vertex index in its tree.
    const std::vector<std::size_t>& components() const noexcept { return component_; }
    bool contains(const Edge& e) const;

    bool operator==(const SkeletonForest& other) const { return p_ == other.p_ && edges_ == other.edges_; }

private:
    std::size_t p_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::size_t> component_;
};

// Keeps {i, j} unless some k outside {i, j} has xi_ki >= xi_ji and xi_kj >= xi_ij.
PrunedGraph prune(const XiMatrix& xi, unsigned threads = 1);

// Kruskal on (weight descending, (u, v) ascending). Any edge joining two
// components is taken, whatever its sign.
SkeletonForest mwsf(const PrunedGraph& g);

struct SkeletonEstimate {
    XiMatrix xi;
    PrunedGraph pruned;
    SkeletonForest forest;
};

SkeletonEstimate estimate_skeleton(const SampleMatrix& data, const SeedPolicy& seed, unsigned threads = 1);

}  // namespace polytree
