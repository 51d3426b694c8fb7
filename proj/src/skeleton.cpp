#include "polytree/skeleton.hpp"

#include <algorithm>
#include <numeric>

#include "polytree/error.hpp"
#include "polytree/parallel.hpp"

namespace polytree {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

std::vector<std::vector<std::size_t>> adjacency(std::size_t p, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::size_t>> adj(p);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

double PrunedGraph::weight_of(const Edge& e) const {
    const auto it = std::lower_bound(edges.begin(), edges.end(), e,
                                     [](const WeightedEdge& a, const Edge& b) { return a.edge < b; });
    if (it == edges.end() || it->edge != e) throw Error(ErrorKind::DimensionMismatch, "pruned graph: no such edge");
    return it->weight;
}

bool PrunedGraph::contains(const Edge& e) const {
    return std::binary_search(edges.begin(), edges.end(), WeightedEdge{e, 0.0},
                              [](const WeightedEdge& a, const WeightedEdge& b) { return a.edge < b.edge; });
}

SkeletonForest::SkeletonForest(std::size_t p, std::vector<Edge> edges) : p_(p), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    DisjointSets sets(p);
    for (std::size_t t = 0; t < edges_.size(); ++t) {
        const auto& e = edges_[t];
        if (e.v >= p || e.u == e.v) throw Error(ErrorKind::DimensionMismatch, "skeleton: edge out of range");
        if (t > 0 && edges_[t - 1] == e) throw Error(ErrorKind::DimensionMismatch, "skeleton: repeated edge");
        if (!sets.unite(e.u, e.v)) throw Error(ErrorKind::DimensionMismatch, "skeleton: edges contain a cycle");
    }
    adjacency_ = adjacency(p, edges_);
    component_.resize(p);
    std::vector<std::size_t> smallest(p, p);
    for (std::size_t v = 0; v < p; ++v) {
        const auto root = sets.find(v);
        if (smallest[root] == p) smallest[root] = v;
        component_[v] = smallest[root];
    }
}

bool SkeletonForest::contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

PrunedGraph prune(const XiMatrix& xi, unsigned threads) {
    const std::size_t p = xi.p();
    // column-major copy: by_target[i * p + k] = xi(k, i)
    std::vector<double> by_target(p * p);
    for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t i = 0; i < p; ++i) by_target[i * p + k] = xi(k, i);
    }

    std::vector<std::vector<WeightedEdge>> kept(p);
    // O(p^3) in the worst case; each pair stops at its first witness.
    parallel_for(p, threads, [&](std::size_t i) {
        const double* into_i = by_target.data() + i * p;
        for (std::size_t j = i + 1; j < p; ++j) {
            const double* into_j = by_target.data() + j * p;
            const double ji = xi(j, i);
            const double ij = xi(i, j);
            bool witnessed = false;
            for (std::size_t k = 0; k < p && !witnessed; ++k) {
                if (k == i || k == j) continue;
                witnessed = into_i[k] >= ji && into_j[k] >= ij;
            }
            if (!witnessed) kept[i].push_back({Edge(i, j), std::min(ij, ji)});
        }
    });

    PrunedGraph g;
    g.p = p;
    for (auto& row : kept) g.edges.insert(g.edges.end(), row.begin(), row.end());
    return g;
}

SkeletonForest mwsf(const PrunedGraph& g) {
    std::vector<WeightedEdge> sorted = g.edges;
    std::stable_sort(sorted.begin(), sorted.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.edge < b.edge;
    });
    DisjointSets sets(g.p);
    std::vector<Edge> chosen;
    for (const auto& we : sorted) {
        if (sets.unite(we.edge.u, we.edge.v)) chosen.push_back(we.edge);
    }
    return SkeletonForest(g.p, std::move(chosen));
}

SkeletonEstimate estimate_skeleton(const SampleMatrix& data, const SeedPolicy& seed, unsigned threads) {
    SkeletonEstimate est;
    est.xi = xi_matrix(data, seed, threads);
    est.pruned = prune(est.xi, threads);
    est.forest = mwsf(est.pruned);
    return est;
}

}  // namespace polytree
