#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace polytree {

// Static 2-d tree answering "all nearest neighbours" queries: every point at
// the minimal squared distance from a stored point, excluding the point
// itself. Distances are computed exactly as (x_j - x_i)^2 + (z_j - z_i)^2 so
// tie sets agree bit-for-bit with a brute-force scan.
class PlanarTree {
public:
    PlanarTree(std::span<const double> x, std::span<const double> z);

    // Indices (ascending) of the nearest other points to point i.
    void nearest_excluding_self(std::size_t i, std::vector<std::size_t>& out) const;

private:
    struct Node {
        std::size_t begin = 0;
        std::size_t end = 0;
        double split = 0.0;
        int axis = -1;  // -1 for a leaf
        std::size_t left = 0;
        std::size_t right = 0;
    };

    std::size_t build(std::size_t begin, std::size_t end, int depth);
    void search(std::size_t node, std::size_t i, double& best, std::vector<std::size_t>& out) const;

    std::span<const double> x_;
    std::span<const double> z_;
    std::vector<std::size_t> index_;
    std::vector<Node> nodes_;
};

}  // namespace polytree
