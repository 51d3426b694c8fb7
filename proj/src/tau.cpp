#include "polytree/tau.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>

#include "polytree/error.hpp"
#include "polytree/planar_tree.hpp"

namespace polytree {

namespace {

constexpr std::size_t kBruteForceLimit = 128;

void check_triple(std::span<const double> y, std::span<const double> z, std::span<const double> x) {
    if (y.size() != z.size() || y.size() != x.size()) {
        throw Error(ErrorKind::LengthMismatch, "tau: sequences have lengths " + std::to_string(y.size()) + ", " +
                                                   std::to_string(z.size()) + ", " + std::to_string(x.size()));
    }
    if (y.size() < 2) throw Error(ErrorKind::TooFewSamples, "tau: need at least 2 observations");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i]) || !std::isfinite(z[i]) || !std::isfinite(x[i])) {
            throw Error(ErrorKind::NonFinite, "tau: non-finite value at index " + std::to_string(i));
        }
    }
}

std::size_t resolve(const TieChooser& choose, NeighborKind kind, std::size_t i, const std::vector<std::size_t>& candidates) {
    if (candidates.size() == 1) return candidates.front();
    return choose(kind, i, candidates);
}

std::vector<std::size_t> ranks_le(std::span<const double> y) {
    const std::size_t n = y.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
    std::vector<std::size_t> rank(n);
    std::size_t a = 0;
    while (a < n) {
        std::size_t b = a + 1;
        while (b < n && y[order[b]] == y[order[a]]) ++b;
        for (std::size_t t = a; t < b; ++t) rank[order[t]] = b;
        a = b;
    }
    return rank;
}

// Nearest neighbours on the line via the sorted order: a point's tie set is
// the rest of its own value group if that is non-empty, otherwise the closer
// of the adjacent value groups (both when equidistant).
std::vector<std::size_t> nearest_on_line(std::span<const double> x, const TieChooser& choose) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b] || (x[a] == x[b] && a < b); });

    // group_start[g] .. group_start[g + 1] indexes `order`
    std::vector<std::size_t> group_start;
    std::vector<std::size_t> group_of(n);
    for (std::size_t t = 0; t < n; ++t) {
        if (t == 0 || x[order[t]] != x[order[t - 1]]) group_start.push_back(t);
        group_of[order[t]] = group_start.size() - 1;
    }
    const std::size_t groups = group_start.size();
    group_start.push_back(n);

    std::vector<std::size_t> nearest(n);
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        candidates.clear();
        const std::size_t g = group_of[i];
        const std::size_t size = group_start[g + 1] - group_start[g];
        if (size > 1) {
            for (std::size_t t = group_start[g]; t < group_start[g + 1]; ++t) {
                if (order[t] != i) candidates.push_back(order[t]);
            }
        } else {
            const double inf = std::numeric_limits<double>::infinity();
            const double d_prev = g > 0 ? std::abs(x[order[group_start[g - 1]]] - x[i]) : inf;
            const double d_next = g + 1 < groups ? std::abs(x[order[group_start[g + 1]]] - x[i]) : inf;
            const double best = std::min(d_prev, d_next);
            if (g > 0 && d_prev == best) {
                for (std::size_t t = group_start[g - 1]; t < group_start[g]; ++t) candidates.push_back(order[t]);
            }
            if (g + 1 < groups && d_next == best) {
                for (std::size_t t = group_start[g + 1]; t < group_start[g + 2]; ++t) candidates.push_back(order[t]);
            }
            std::sort(candidates.begin(), candidates.end());
        }
        nearest[i] = resolve(choose, NeighborKind::X, i, candidates);
    }
    return nearest;
}

void nearest_in_plane_brute(std::span<const double> x, std::span<const double> z, std::size_t i,
                            std::vector<std::size_t>& out) {
    out.clear();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == i) continue;
        const double dx = x[j] - x[i];
        const double dz = z[j] - z[i];
        const double d = dx * dx + dz * dz;
        if (d < best) {
            best = d;
            out.clear();
            out.push_back(j);
        } else if (d == best) {
            out.push_back(j);
        }
    }
}

}  // namespace

TieChooser uniform_tie_chooser(SplitMix64& stream) {
    return [&stream](NeighborKind, std::size_t, std::span<const std::size_t> candidates) {
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        return candidates[pick(stream)];
    };
}

NeighborAssignment assign_neighbors(std::span<const double> y, std::span<const double> z, std::span<const double> x,
                                    const TieChooser& choose, PlanarSearch search) {
    check_triple(y, z, x);
    const std::size_t n = y.size();
    NeighborAssignment a;
    a.rank = ranks_le(y);
    a.nearest_x = nearest_on_line(x, choose);

    if (search == PlanarSearch::Auto) search = n <= kBruteForceLimit ? PlanarSearch::BruteForce : PlanarSearch::KdTree;
    a.nearest_xz.resize(n);
    std::vector<std::size_t> candidates;
    if (search == PlanarSearch::KdTree) {
        const PlanarTree tree(x, z);
        for (std::size_t i = 0; i < n; ++i) {
            tree.nearest_excluding_self(i, candidates);
            a.nearest_xz[i] = resolve(choose, NeighborKind::XZ, i, candidates);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            nearest_in_plane_brute(x, z, i, candidates);
            a.nearest_xz[i] = resolve(choose, NeighborKind::XZ, i, candidates);
        }
    }
    return a;
}

TauResult tau_from_assignment(const NeighborAssignment& a) {
    const std::size_t n = a.rank.size();
    std::int64_t num = 0;
    std::int64_t den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<std::int64_t>(a.rank[i]);
        const auto via_x = std::min(r, static_cast<std::int64_t>(a.rank[a.nearest_x[i]]));
        const auto via_xz = std::min(r, static_cast<std::int64_t>(a.rank[a.nearest_xz[i]]));
        num += via_xz - via_x;
        den += r - via_x;
    }
    const double scale = static_cast<double>(n) * static_cast<double>(n);
    TauResult out;
    out.numerator = static_cast<double>(num) / scale;
    out.denominator = static_cast<double>(den) / scale;
    out.value = den == 0 ? 0.0 : out.numerator / out.denominator;
    return out;
}

TauResult tau(std::span<const double> y, std::span<const double> z, std::span<const double> x, SplitMix64& stream,
              PlanarSearch search) {
    return tau_from_assignment(assign_neighbors(y, z, x, uniform_tie_chooser(stream), search));
}

TauResult tau_oracle(std::span<const double> y, std::span<const double> z, std::span<const double> x,
                     const TieChooser& choose) {
    check_triple(y, z, x);
    const std::size_t n = y.size();
    NeighborAssignment a;
    a.rank.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] <= y[i]) ++a.rank[i];
        }
    }

    std::vector<std::size_t> ties;
    a.nearest_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) best = std::min(best, std::abs(x[j] - x[i]));
        }
        ties.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && std::abs(x[j] - x[i]) == best) ties.push_back(j);
        }
        a.nearest_x[i] = ties.size() == 1 ? ties[0] : choose(NeighborKind::X, i, ties);
    }

    a.nearest_xz.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto dist = [&](std::size_t j) {
            const double dx = x[j] - x[i];
            const double dz = z[j] - z[i];
            return dx * dx + dz * dz;
        };
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) best = std::min(best, dist(j));
        }
        ties.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && dist(j) == best) ties.push_back(j);
        }
        a.nearest_xz[i] = ties.size() == 1 ? ties[0] : choose(NeighborKind::XZ, i, ties);
    }

    // literal sums, kept separate from tau_from_assignment
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = static_cast<double>(a.rank[i]);
        const double rn = static_cast<double>(a.rank[a.nearest_x[i]]);
        const double rm = static_cast<double>(a.rank[a.nearest_xz[i]]);
        num += std::min(r, rm) - std::min(r, rn);
        den += r - std::min(r, rn);
    }
    const double scale = static_cast<double>(n) * static_cast<double>(n);
    TauResult out;
    out.numerator = num / scale;
    out.denominator = den / scale;
    out.value = den == 0.0 ? 0.0 : out.numerator / out.denominator;
    return out;
}

}  // namespace polytree
