#include "polytree/xi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>

#include "polytree/error.hpp"
#include "polytree/parallel.hpp"

namespace polytree {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    "xi: x has " + std::to_string(x.size()) + " values, y has " + std::to_string(y.size()));
    }
    if (x.size() < 2) throw Error(ErrorKind::TooFewSamples, "xi: need at least 2 observations");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw Error(ErrorKind::NonFinite, "xi: non-finite value at index " + std::to_string(i));
        }
    }
}

std::vector<std::size_t> sorted_order(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b] || (v[a] == v[b] && a < b); });
    return order;
}

bool has_repeats(std::span<const double> v, const std::vector<std::size_t>& order) {
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (v[order[i]] == v[order[i - 1]]) return true;
    }
    return false;
}

void shuffle_runs(std::span<const double> v, std::vector<std::size_t>& order, SplitMix64& stream) {
    const std::size_t n = order.size();
    std::size_t a = 0;
    while (a < n) {
        std::size_t b = a + 1;
        while (b < n && v[order[b]] == v[order[a]]) ++b;
        // Fisher-Yates over order[a, b)
        for (std::size_t len = b - a; len > 1; --len) {
            std::uniform_int_distribution<std::size_t> pick(0, len - 1);
            std::swap(order[a + len - 1], order[a + pick(stream)]);
        }
        a = b;
    }
}

// Per-observation counts of y values <= and >= it, plus the xi denominator.
struct ColumnRanks {
    std::vector<std::size_t> up;
    std::vector<std::size_t> down;
    std::int64_t denominator = 0;
};

ColumnRanks column_ranks(std::span<const double> y) {
    const std::size_t n = y.size();
    const auto order = sorted_order(y);
    ColumnRanks r;
    r.up.resize(n);
    r.down.resize(n);
    std::size_t a = 0;
    while (a < n) {
        std::size_t b = a + 1;
        while (b < n && y[order[b]] == y[order[a]]) ++b;
        for (std::size_t t = a; t < b; ++t) {
            r.up[order[t]] = b;
            r.down[order[t]] = n - a;
        }
        a = b;
    }
    const auto nn = static_cast<std::int64_t>(n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto l = static_cast<std::int64_t>(r.down[m]);
        r.denominator += l * (nn - l);
    }
    r.denominator *= 2;
    return r;
}

double xi_from_counts(std::int64_t n, std::int64_t jumps, std::int64_t denominator) {
    if (denominator == 0) return 0.0;
    return 1.0 - static_cast<double>(n * jumps) / static_cast<double>(denominator);
}

double xi_along(const std::vector<std::size_t>& order, const ColumnRanks& ranks) {
    std::int64_t jumps = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto a = static_cast<std::int64_t>(ranks.up[order[i + 1]]);
        const auto b = static_cast<std::int64_t>(ranks.up[order[i]]);
        jumps += a > b ? a - b : b - a;
    }
    return xi_from_counts(static_cast<std::int64_t>(order.size()), jumps, ranks.denominator);
}

}  // namespace

std::vector<std::size_t> tie_break_order(std::span<const double> x, SplitMix64& stream) {
    auto order = sorted_order(x);
    if (has_repeats(x, order)) shuffle_runs(x, order, stream);
    return order;
}

RankProfile rank_profile(std::span<const double> x, std::span<const double> y, SplitMix64& stream) {
    check_pair(x, y);
    RankProfile profile;
    profile.order = tie_break_order(x, stream);
    const auto ranks = column_ranks(y);
    profile.up.reserve(x.size());
    profile.down.reserve(x.size());
    for (const auto m : profile.order) {
        profile.up.push_back(ranks.up[m]);
        profile.down.push_back(ranks.down[m]);
    }
    return profile;
}

double xi_coefficient(std::span<const double> x, std::span<const double> y, SplitMix64& stream) {
    check_pair(x, y);
    const auto order = tie_break_order(x, stream);
    return xi_along(order, column_ranks(y));
}

double xi_coefficient_oracle(std::span<const double> x, std::span<const double> y, std::span<const std::size_t> pi) {
    check_pair(x, y);
    const std::size_t n = x.size();
    if (pi.size() != n) throw Error(ErrorKind::InvalidPermutation, "xi oracle: permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (const auto m : pi) {
        if (m >= n || seen[m]) throw Error(ErrorKind::InvalidPermutation, "xi oracle: not a permutation");
        seen[m] = true;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (x[pi[i]] > x[pi[i + 1]]) throw Error(ErrorKind::InvalidPermutation, "xi oracle: permutation does not sort x");
    }

    std::vector<std::int64_t> r(n), l(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] <= y[pi[i]]) ++r[i];
            if (y[j] >= y[pi[i]]) ++l[i];
        }
    }
    const auto nn = static_cast<std::int64_t>(n);
    std::int64_t jumps = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) jumps += std::abs(r[i + 1] - r[i]);
    std::int64_t denominator = 0;
    for (std::size_t i = 0; i < n; ++i) denominator += l[i] * (nn - l[i]);
    return xi_from_counts(nn, jumps, 2 * denominator);
}

XiMatrix xi_matrix(const SampleMatrix& data, const SeedPolicy& seed, unsigned threads) {
    data.validate();
    const std::size_t p = data.p();
    XiMatrix out(p, data.n());

    std::vector<std::vector<std::size_t>> orders(p);
    std::vector<char> tied(p);
    std::vector<ColumnRanks> ranks(p);
    parallel_for(p, threads, [&](std::size_t c) {
        const auto col = data.column(c);
        orders[c] = sorted_order(col);
        tied[c] = has_repeats(col, orders[c]);
        ranks[c] = column_ranks(col);
    });

    parallel_for(p, threads, [&](std::size_t i) {
        const auto col = data.column(i);
        for (std::size_t j = 0; j < p; ++j) {
            if (j == i) continue;
            if (!tied[i]) {
                // the sorting permutation is unique: no draws would be made
                out(i, j) = xi_along(orders[i], ranks[j]);
            } else {
                auto stream = seed.stream("xi", {i, j});
                auto order = orders[i];
                shuffle_runs(col, order, stream);
                out(i, j) = xi_along(order, ranks[j]);
            }
        }
    });
    return out;
}

}  // namespace polytree
