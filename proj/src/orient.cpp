#include "polytree/orient.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "polytree/error.hpp"

namespace polytree {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::ColliderDetected: return "collider";
        case Provenance::Propagated: return "propagated";
        case Provenance::ArbitraryRoot: return "root";
        case Provenance::Supplied: return "supplied";
    }
    return "unknown";
}

std::string_view to_string(Justification j) {
    switch (j) {
        case Justification::ColliderPair: return "collider-pair";
        case Justification::ConditionalInto: return "conditional-into";
        case Justification::ConditionalOut: return "conditional-out";
        case Justification::OutgoingFromInto: return "outgoing-from-into";
        case Justification::SubtreeRoot: return "subtree-root";
        case Justification::Conflict: return "conflict";
    }
    return "unknown";
}

DirectedPolytree::DirectedPolytree(std::size_t p, std::vector<DirectedEdge> edges, std::size_t conflict_count)
    : p_(p), edges_(std::move(edges)), conflicts_(conflict_count) {
    std::sort(edges_.begin(), edges_.end(),
              [](const DirectedEdge& a, const DirectedEdge& b) { return a.undirected() < b.undirected(); });
    skeleton();  // validates
}

SkeletonForest DirectedPolytree::skeleton() const {
    std::vector<Edge> undirected;
    undirected.reserve(edges_.size());
    for (const auto& e : edges_) undirected.push_back(e.undirected());
    return SkeletonForest(p_, std::move(undirected));
}

std::optional<DirectedEdge> DirectedPolytree::find(std::size_t a, std::size_t b) const {
    const Edge key(a, b);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                                     [](const DirectedEdge& e, const Edge& k) { return e.undirected() < k; });
    if (it == edges_.end() || it->undirected() != key) return std::nullopt;
    return *it;
}

SampleStatistics::SampleStatistics(const SampleMatrix& data, SeedPolicy seed, const XiMatrix* xi, PlanarSearch search)
    : data_(data), seed_(seed), xi_(xi), search_(search) {
    if (xi_ != nullptr && xi_->p() != data_.p()) {
        throw Error(ErrorKind::DimensionMismatch, "orientation statistics: xi matrix and data disagree on p");
    }
}

double SampleStatistics::tau(std::size_t k, std::size_t j, std::size_t i) {
    const auto key = std::make_tuple(k, j, i);
    if (const auto it = tau_cache_.find(key); it != tau_cache_.end()) return it->second;
    auto stream = seed_.stream("tau", {k, j, i});
    const double value = polytree::tau(data_.column(k), data_.column(j), data_.column(i), stream, search_).value;
    tau_cache_.emplace(key, value);
    return value;
}

double SampleStatistics::xi(std::size_t j, std::size_t k) {
    if (xi_ != nullptr) return (*xi_)(j, k);
    const auto key = std::make_pair(j, k);
    if (const auto it = xi_cache_.find(key); it != xi_cache_.end()) return it->second;
    auto stream = seed_.stream("xi", {j, k});
    const double value = xi_coefficient(data_.column(j), data_.column(k), stream);
    xi_cache_.emplace(key, value);
    return value;
}

namespace {

constexpr std::size_t kUndecided = std::numeric_limits<std::size_t>::max();

struct Incident {
    std::size_t neighbor;
    std::size_t edge;
};

class Orienter {
public:
    Orienter(const SkeletonForest& skeleton, OrientationStatistics& stats, PairScan pairs)
        : skeleton_(skeleton), stats_(stats), pairs_(pairs), source_(skeleton.edges().size(), kUndecided),
          provenance_(skeleton.edges().size(), Provenance::Supplied), incident_(skeleton.p()) {
        const auto& edges = skeleton.edges();
        for (std::size_t t = 0; t < edges.size(); ++t) {
            incident_[edges[t].u].push_back({edges[t].v, t});
            incident_[edges[t].v].push_back({edges[t].u, t});
        }
        for (auto& list : incident_) {
            std::sort(list.begin(), list.end(), [](const Incident& a, const Incident& b) { return a.neighbor < b.neighbor; });
        }
    }

    void supply(const DirectedEdge& e) {
        if (e.source == e.target) throw Error(ErrorKind::DimensionMismatch, "orient: supplied edge is a loop");
        const auto& edges = skeleton_.edges();
        const auto it = std::lower_bound(edges.begin(), edges.end(), e.undirected());
        if (it == edges.end() || *it != e.undirected()) {
            throw Error(ErrorKind::DimensionMismatch, "orient: supplied edge is not in the skeleton");
        }
        const auto t = static_cast<std::size_t>(it - edges.begin());
        source_[t] = e.source;
        provenance_[t] = Provenance::Supplied;
    }

    OrientResult run() {
        OrientResult result;
        do {
            ++result.step1_passes;
        } while (step1_pass(result.step1_passes) > 0);
        do {
            ++result.step3_passes;
        } while (step3_pass(result.step3_passes) > 0);
        orient_remaining_subtrees();

        std::vector<DirectedEdge> directed;
        const auto& edges = skeleton_.edges();
        directed.reserve(edges.size());
        for (std::size_t t = 0; t < edges.size(); ++t) {
            const auto src = source_[t];
            const auto dst = src == edges[t].u ? edges[t].v : edges[t].u;
            directed.push_back({src, dst, provenance_[t]});
        }
        result.tree = DirectedPolytree(skeleton_.p(), std::move(directed), conflicts_.size());
        result.trace = std::move(trace_);
        return result;
    }

private:
    bool points_into(std::size_t edge, std::size_t v) const {
        return source_[edge] != kUndecided && source_[edge] != v;
    }

    // Returns true if the edge was undecided and is now directed.
    bool direct(std::size_t edge, std::size_t source, std::size_t target, Provenance provenance, int step,
                std::size_t pass, std::size_t vertex, Justification why) {
        if (source_[edge] == kUndecided) {
            source_[edge] = source;
            provenance_[edge] = provenance;
            trace_.push_back({step, pass, vertex, source, target, why});
            return true;
        }
        if (source_[edge] != source && conflicts_.insert({vertex, edge}).second) {
            trace_.push_back({step, pass, vertex, source, target, Justification::Conflict});
        }
        return false;
    }

    std::size_t step1_pass(std::size_t pass) {
        std::size_t added = 0;
        for (std::size_t i = 0; i < incident_.size(); ++i) {
            const auto& around = incident_[i];
            const auto known = std::find_if(around.begin(), around.end(),
                                            [&](const Incident& a) { return points_into(a.edge, i); });
            if (known == around.end()) {
                added += collider_search(i, pass);
                continue;
            }
            const std::size_t j = known->neighbor;
            for (const auto& other : around) {
                const std::size_t k = other.neighbor;
                if (k == j) continue;
                if (stats_.tau(k, j, i) >= stats_.xi(j, k)) {
                    added += direct(other.edge, k, i, Provenance::Propagated, 1, pass, i, Justification::ConditionalInto);
                } else {
                    added += direct(other.edge, i, k, Provenance::Propagated, 1, pass, i, Justification::ConditionalOut);
                }
            }
        }
        return added;
    }

    std::size_t collider_search(std::size_t i, std::size_t pass) {
        const auto& around = incident_[i];
        for (const auto& a : around) {
            for (const auto& b : around) {
                if (a.neighbor == b.neighbor) continue;
                if (pairs_ == PairScan::Unordered && b.neighbor < a.neighbor) continue;
                const std::size_t j = a.neighbor;
                const std::size_t k = b.neighbor;
                if (stats_.tau(k, j, i) >= stats_.xi(j, k)) {
                    std::size_t added = 0;
                    added += direct(a.edge, j, i, Provenance::ColliderDetected, 1, pass, i, Justification::ColliderPair);
                    added += direct(b.edge, k, i, Provenance::ColliderDetected, 1, pass, i, Justification::ColliderPair);
                    return added;
                }
            }
        }
        return 0;
    }

    std::size_t step3_pass(std::size_t pass) {
        std::size_t added = 0;
        for (std::size_t i = 0; i < incident_.size(); ++i) {
            const auto& around = incident_[i];
            const bool has_incoming =
                std::any_of(around.begin(), around.end(), [&](const Incident& a) { return points_into(a.edge, i); });
            if (!has_incoming) continue;
            for (const auto& a : around) {
                if (source_[a.edge] != kUndecided) continue;
                added += direct(a.edge, i, a.neighbor, Provenance::Propagated, 3, pass, i, Justification::OutgoingFromInto);
            }
        }
        return added;
    }

    void orient_remaining_subtrees() {
        const std::size_t p = incident_.size();
        std::vector<char> visited(p, 0);
        std::queue<std::size_t> frontier;
        for (std::size_t root = 0; root < p; ++root) {
            if (visited[root]) continue;
            const bool has_undecided = std::any_of(incident_[root].begin(), incident_[root].end(),
                                                   [&](const Incident& a) { return source_[a.edge] == kUndecided; });
            if (!has_undecided) continue;
            visited[root] = 1;
            frontier.push(root);
            while (!frontier.empty()) {
                const std::size_t v = frontier.front();
                frontier.pop();
                for (const auto& a : incident_[v]) {
                    if (source_[a.edge] != kUndecided) continue;
                    direct(a.edge, v, a.neighbor, Provenance::ArbitraryRoot, 5, 0, root, Justification::SubtreeRoot);
                    visited[a.neighbor] = 1;
                    frontier.push(a.neighbor);
                }
            }
        }
    }

    const SkeletonForest& skeleton_;
    OrientationStatistics& stats_;
    PairScan pairs_;
    std::vector<std::size_t> source_;
    std::vector<Provenance> provenance_;
    std::vector<std::vector<Incident>> incident_;
    std::set<std::pair<std::size_t, std::size_t>> conflicts_;
    std::vector<TraceEvent> trace_;
};

}  // namespace

OrientResult orient_fixpoint_trace(const SkeletonForest& skeleton, OrientationStatistics& stats,
                                   std::span<const DirectedEdge> supplied, PairScan pairs) {
    Orienter orienter(skeleton, stats, pairs);
    for (const auto& e : supplied) orienter.supply(e);
    return orienter.run();
}

DirectedPolytree orient(const SkeletonForest& skeleton, OrientationStatistics& stats,
                        std::span<const DirectedEdge> supplied, PairScan pairs) {
    return orient_fixpoint_trace(skeleton, stats, supplied, pairs).tree;
}

DirectedPolytree orient(const SkeletonForest& skeleton, const SampleMatrix& data, const SeedPolicy& seed,
                        const XiMatrix* xi, PairScan pairs) {
    if (skeleton.p() != data.p()) {
        throw Error(ErrorKind::DimensionMismatch, "orient: skeleton has " + std::to_string(skeleton.p()) +
                                                      " vertices, data has " + std::to_string(data.p()) + " columns");
    }
    data.validate();
    SampleStatistics stats(data, seed, xi);
    return orient(skeleton, stats, {}, pairs);
}

}  // namespace polytree
