#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <tuple>
#include <vector>

#include "polytree/sample_matrix.hpp"
#include "polytree/seed.hpp"
#include "polytree/skeleton.hpp"
#include "polytree/tau.hpp"
#include "polytree/xi.hpp"

namespace polytree {

enum class Provenance {
    ColliderDetected,  // both edges of a detected collider j -> i <- k
    Propagated,        // inferred from an already known incoming edge
    ArbitraryRoot,     // undecided subtree oriented away from its root
    Supplied,          // given by the caller before orientation started
};

std::string_view to_string(Provenance p);

struct DirectedEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    Provenance provenance = Provenance::Supplied;

    Edge undirected() const { return {source, target}; }
};

/// Oriented forest. Edges are sorted by their undirected form.
class DirectedPolytree {
public:
    DirectedPolytree() = default;
    // Throws polytree::Error if the undirected edges do not form a forest.
    DirectedPolytree(std::size_t p, std::vector<DirectedEdge> edges, std::size_t conflict_count = 0);

    std::size_t p() const noexcept { return p_; }
    const std::vector<DirectedEdge>& edges() const noexcept { return edges_; }
    std::size_t conflict_count() const noexcept { return conflicts_; }
    SkeletonForest skeleton() const;
    // Direction of the edge {a, b}, if present.
    std::optional<DirectedEdge> find(std::size_t a, std::size_t b) const;

private:
    std::size_t p_ = 0;
    std::vector<DirectedEdge> edges_;
    std::size_t conflicts_ = 0;
};

/// Source of the two statistics the orientation rules compare.
class OrientationStatistics {
public:
    virtual ~OrientationStatistics() = default;
    // tau(X_k, X_j | X_i)
    virtual double tau(std::size_t k, std::size_t j, std::size_t i) = 0;
    // xi coefficient of X_k on X_j
    virtual double xi(std::size_t j, std::size_t k) = 0;
};

/// Statistics estimated from a sample, memoised per (k, j, i) and (j, k).
/// tau uses seed.stream("tau", {k, j, i}); xi matches xi_matrix() entries,
/// and is read from `xi` when one is supplied.
class SampleStatistics final : public OrientationStatistics {
public:
    SampleStatistics(const SampleMatrix& data, SeedPolicy seed, const XiMatrix* xi = nullptr,
                     PlanarSearch search = PlanarSearch::Auto);

    double tau(std::size_t k, std::size_t j, std::size_t i) override;
    double xi(std::size_t j, std::size_t k) override;

    std::size_t tau_evaluations() const noexcept { return tau_cache_.size(); }

private:
    const SampleMatrix& data_;
    SeedPolicy seed_;
    const XiMatrix* xi_;
    PlanarSearch search_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> tau_cache_;
    std::map<std::pair<std::size_t, std::size_t>, double> xi_cache_;
};

enum class Justification {
    ColliderPair,      // tau_kji >= xi_jk for a pair of neighbours of a vertex with no known incoming edge
    ConditionalInto,   // known j -> i and tau_kji >= xi_jk: k -> i
    ConditionalOut,    // known j -> i and tau_kji < xi_jk: i -> k
    OutgoingFromInto,  // vertex with an incoming edge: remaining edges point away
    SubtreeRoot,       // undecided subtree oriented from its smallest vertex
    Conflict,          // an indication disagreed with an earlier decision; nothing changed
};

std::string_view to_string(Justification j);

struct TraceEvent {
    int step = 0;          // 1, 3 or 5
    std::size_t pass = 0;  // pass number within the repeated step (0 for step 5)
    std::size_t vertex = 0;
    std::size_t source = 0;
    std::size_t target = 0;
    Justification justification = Justification::ColliderPair;

    bool directs() const noexcept { return justification != Justification::Conflict; }
    bool operator==(const TraceEvent&) const = default;
};

// Neighbour pairs examined when looking for a collider at vertex i.
enum class PairScan {
    Unordered,  // j < k, testing tau_kji >= xi_jk
    Ordered,    // every (j, k) with j != k, lexicographic
};

struct OrientResult {
    DirectedPolytree tree;
    std::vector<TraceEvent> trace;
    std::size_t step1_passes = 0;
    std::size_t step3_passes = 0;
};

/// Orients every skeleton edge:
///   1. each vertex i (ascending): with no known incoming edge, the first
///      neighbour pair (j, k) with tau_kji >= xi_jk makes j -> i <- k;
///      with a known j -> i (smallest such j), every other neighbour k gets
///      k -> i if tau_kji >= xi_jk and i -> k otherwise;
///   2. step 1 repeats until a pass directs nothing new;
///   3./4. vertices with an incoming edge send all undecided edges outward,
///      repeated to a fixpoint;
///   5. undecided subtrees are oriented away from their smallest vertex.
/// An edge is never re-directed; disagreeing indications only raise
/// conflict_count (once per vertex and edge).
OrientResult orient_fixpoint_trace(const SkeletonForest& skeleton, OrientationStatistics& stats,
                                   std::span<const DirectedEdge> supplied = {}, PairScan pairs = PairScan::Unordered);

DirectedPolytree orient(const SkeletonForest& skeleton, OrientationStatistics& stats,
                        std::span<const DirectedEdge> supplied = {}, PairScan pairs = PairScan::Unordered);

// Estimates the statistics from `data`. Throws polytree::Error when the
// skeleton and data disagree on p.
DirectedPolytree orient(const SkeletonForest& skeleton, const SampleMatrix& data, const SeedPolicy& seed,
                        const XiMatrix* xi = nullptr, PairScan pairs = PairScan::Unordered);

}  // namespace polytree
