#pragma once

// Brute-force references shared by the unit and acceptance suites.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "polytree/skeleton.hpp"

namespace polytree::testing {

// Condition (witness) check over all triples, written independently of prune().
inline PrunedGraph prune_reference(const XiMatrix& xi) {
    PrunedGraph g;
    g.p = xi.p();
    for (std::size_t i = 0; i < xi.p(); ++i) {
        for (std::size_t j = i + 1; j < xi.p(); ++j) {
            bool keep = true;
            for (std::size_t k = 0; k < xi.p(); ++k) {
                if (k != i && k != j && xi(k, i) >= xi(j, i) && xi(k, j) >= xi(i, j)) keep = false;
            }
            if (keep) g.edges.push_back({Edge(i, j), std::min(xi(i, j), xi(j, i))});
        }
    }
    return g;
}

inline std::size_t component_count(std::size_t p, const std::vector<Edge>& edges) {
    std::vector<std::size_t> parent(p);
    for (std::size_t v = 0; v < p; ++v) parent[v] = v;
    std::function<std::size_t(std::size_t)> root = [&](std::size_t v) { return parent[v] == v ? v : root(parent[v]); };
    std::size_t count = p;
    for (const auto& e : edges) {
        const auto a = root(e.u);
        const auto b = root(e.v);
        if (a != b) {
            parent[a] = b;
            --count;
        }
    }
    return count;
}

// Largest total weight over all spanning forests of g, by enumerating every
// acyclic edge subset of the right size.
inline double max_spanning_forest_weight(const PrunedGraph& g) {
    std::vector<Edge> plain;
    for (const auto& we : g.edges) plain.push_back(we.edge);
    const std::size_t target = g.p - component_count(g.p, plain);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> label(g.p);
    for (std::size_t v = 0; v < g.p; ++v) label[v] = v;

    std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t at, std::size_t taken, double weight) {
        if (taken == target) {
            best = std::max(best, weight);
            return;
        }
        if (at == g.edges.size() || g.edges.size() - at < target - taken) return;
        const auto& we = g.edges[at];
        const auto a = label[we.edge.u];
        const auto b = label[we.edge.v];
        if (a != b) {
            const auto saved = label;
            for (auto& l : label) {
                if (l == b) l = a;
            }
            walk(at + 1, taken + 1, weight + we.weight);
            label = saved;
        }
        walk(at + 1, taken, weight);
    };
    walk(0, 0, 0.0);
    return best;
}

// Edges on the forest path between a and b, if connected.
inline std::optional<std::vector<Edge>> forest_path(const SkeletonForest& f, std::size_t a, std::size_t b) {
    std::vector<std::size_t> prev(f.p(), f.p());
    std::vector<std::size_t> stack{a};
    prev[a] = a;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (const auto w : f.neighbors(v)) {
            if (prev[w] == f.p()) {
                prev[w] = v;
                stack.push_back(w);
            }
        }
    }
    if (prev[b] == f.p()) return std::nullopt;
    std::vector<Edge> path;
    for (auto v = b; v != a; v = prev[v]) path.emplace_back(v, prev[v]);
    return path;
}

// Every non-forest edge e of g has a forest path whose edges all weigh >= w(e).
inline bool exchange_property_holds(const PrunedGraph& g, const SkeletonForest& f) {
    for (const auto& we : g.edges) {
        if (f.contains(we.edge)) continue;
        const auto path = forest_path(f, we.edge.u, we.edge.v);
        if (!path) return false;
        for (const auto& e : *path) {
            if (g.weight_of(e) < we.weight) return false;
        }
    }
    return true;
}

inline double forest_weight(const PrunedGraph& g, const SkeletonForest& f) {
    double w = 0.0;
    for (const auto& e : f.edges()) w += g.weight_of(e);
    return w;
}

}  // namespace polytree::testing
