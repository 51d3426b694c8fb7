#pragma once

#include <compare>
#include <cstddef>
#include <utility>
#include <vector>

namespace polytree {

/// Undirected edge, stored with u < v.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;

    Edge() = default;
    Edge(std::size_t a, std::size_t b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);

    std::size_t find(std::size_t x);
    // Returns false if a and b were already joined.
    bool unite(std::size_t a, std::size_t b);

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

// Adjacency lists (ascending) of the undirected graph on p vertices.
std::vector<std::vector<std::size_t>> adjacency(std::size_t p, const std::vector<Edge>& edges);

}  // namespace polytree
