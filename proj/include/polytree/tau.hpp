#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "polytree/seed.hpp"

namespace polytree {

/// One evaluation of the nearest-neighbour conditional dependence statistic
/// tau(Y, Z | X). `numerator` and `denominator` are the two 1/n^2-scaled sums;
/// `value` is their ratio, or 0 when the denominator vanishes.
struct TauResult {
    double value = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
};

enum class NeighborKind { X, XZ };

/// Picks one of several equidistant nearest neighbours of point `i`.
/// `candidates` are sorted ascending and have size >= 2.
using TieChooser = std::function<std::size_t(NeighborKind kind, std::size_t i, std::span<const std::size_t> candidates)>;

// Uniform choice driven by `stream`. The stream must outlive the chooser.
TieChooser uniform_tie_chooser(SplitMix64& stream);

/// nearest_x[i]: nearest neighbour of x_i among j != i.
/// nearest_xz[i]: nearest neighbour of (x_i, z_i) among j != i, Euclidean.
/// rank[i]: number of j with y_j <= y_i.
///
/// The chooser is consulted only for tie sets of size >= 2, first for every
/// nearest_x in index order, then for every nearest_xz in index order.
struct NeighborAssignment {
    std::vector<std::size_t> nearest_x;
    std::vector<std::size_t> nearest_xz;
    std::vector<std::size_t> rank;
};

enum class PlanarSearch {
    Auto,        // brute force for small n, k-d tree above
    BruteForce,  // all-pairs scan
    KdTree,
};

NeighborAssignment assign_neighbors(std::span<const double> y, std::span<const double> z, std::span<const double> x,
                                    const TieChooser& choose, PlanarSearch search = PlanarSearch::Auto);

TauResult tau_from_assignment(const NeighborAssignment& a);

/// tau_n(Y, Z | X), nearest-neighbour conditional dependence. Ties among nearest
/// neighbours are broken uniformly with draws from `stream`.
TauResult tau(std::span<const double> y, std::span<const double> z, std::span<const double> x, SplitMix64& stream,
              PlanarSearch search = PlanarSearch::Auto);

/// Literal all-pairs transcription of the statistic with injected tie
/// choices. Test oracle only.
TauResult tau_oracle(std::span<const double> y, std::span<const double> z, std::span<const double> x,
                     const TieChooser& choose);

}  // namespace polytree
