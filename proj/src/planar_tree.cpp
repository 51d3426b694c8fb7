#include "polytree/planar_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace polytree {

namespace {
constexpr std::size_t kLeafSize = 8;
}

PlanarTree::PlanarTree(std::span<const double> x, std::span<const double> z) : x_(x), z_(z), index_(x.size()) {
    std::iota(index_.begin(), index_.end(), std::size_t{0});
    nodes_.reserve(2 * (x.size() / kLeafSize + 1));
    if (!index_.empty()) build(0, index_.size(), 0);
}

std::size_t PlanarTree::build(std::size_t begin, std::size_t end, int depth) {
    const std::size_t id = nodes_.size();
    nodes_.push_back(Node{begin, end});
    if (end - begin <= kLeafSize) return id;

    const int axis = depth % 2;
    const auto coord = axis == 0 ? x_ : z_;
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(begin), index_.begin() + static_cast<std::ptrdiff_t>(mid),
                     index_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t a, std::size_t b) {
                         return coord[a] < coord[b] || (coord[a] == coord[b] && a < b);
                     });
    const double split = coord[index_[mid]];
    const std::size_t left = build(begin, mid, depth + 1);
    const std::size_t right = build(mid, end, depth + 1);
    Node& node = nodes_[id];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
}

void PlanarTree::search(std::size_t id, std::size_t i, double& best, std::vector<std::size_t>& out) const {
    const Node& node = nodes_[id];
    if (node.axis < 0) {
        for (std::size_t t = node.begin; t < node.end; ++t) {
            const std::size_t j = index_[t];
            if (j == i) continue;
            const double dx = x_[j] - x_[i];
            const double dz = z_[j] - z_[i];
            const double d = dx * dx + dz * dz;
            if (d < best) {
                best = d;
                out.clear();
                out.push_back(j);
            } else if (d == best) {
                out.push_back(j);
            }
        }
        return;
    }
    const double diff = (node.axis == 0 ? x_[i] : z_[i]) - node.split;
    const std::size_t near = diff < 0 ? node.left : node.right;
    const std::size_t far = diff < 0 ? node.right : node.left;
    search(near, i, best, out);
    // keep equality: a point on the far side can tie the current best
    if (diff * diff <= best) search(far, i, best, out);
}

void PlanarTree::nearest_excluding_self(std::size_t i, std::vector<std::size_t>& out) const {
    out.clear();
    double best = std::numeric_limits<double>::infinity();
    if (!nodes_.empty()) search(0, i, best, out);
    std::sort(out.begin(), out.end());
}

}  // namespace polytree
