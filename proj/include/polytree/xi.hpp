#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polytree/sample_matrix.hpp"
#include "polytree/seed.hpp"

namespace polytree {

/// Ingredients of one xi evaluation.
///
/// `order` sorts x non-decreasingly; `up[i]` is the number of y values
/// <= y[order[i]] and `down[i]` the number of y values >= y[order[i]].
struct RankProfile {
    std::vector<std::size_t> order;
    std::vector<std::size_t> up;
    std::vector<std::size_t> down;
};

// Permutation sorting x non-decreasingly; runs of equal x are shuffled with
// draws from `stream`, making it uniform over all sorting permutations.
// Consumes no randomness when x has no repeated values.
std::vector<std::size_t> tie_break_order(std::span<const double> x, SplitMix64& stream);

RankProfile rank_profile(std::span<const double> x, std::span<const double> y, SplitMix64& stream);

/// Rank correlation xi of y on x:
///
///     1 - n * sum_{i<n} |r_{i+1} - r_i| / (2 * sum_i l_i (n - l_i))
///
/// with r, l taken along a sorting permutation of x. Returns 0 when y is
/// constant. O(n log n).
double xi_coefficient(std::span<const double> x, std::span<const double> y, SplitMix64& stream);

/// Literal O(n^2) evaluation of the same formula along a caller-supplied
/// permutation `pi`. Test oracle only.
double xi_coefficient_oracle(std::span<const double> x, std::span<const double> y, std::span<const std::size_t> pi);

/// p x p matrix of pairwise xi estimates; entry (i, j) is the coefficient of
/// column j on column i. The diagonal holds 0 and is never read.
class XiMatrix {
public:
    XiMatrix() = default;
    XiMatrix(std::size_t p, std::size_t n) : p_(p), n_(n), values_(p * p, 0.0) {}

    std::size_t p() const noexcept { return p_; }
    // Sample size the entries were estimated from.
    std::size_t n() const noexcept { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * p_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * p_ + j]; }

    const std::vector<double>& values() const noexcept { return values_; }

    bool operator==(const XiMatrix&) const = default;

private:
    std::size_t p_ = 0;
    std::size_t n_ = 0;
    std::vector<double> values_;
};

// Entry (i, j) uses the stream seed.stream("xi", {i, j}), so the matrix does
// not depend on evaluation order or `threads`.
XiMatrix xi_matrix(const SampleMatrix& data, const SeedPolicy& seed, unsigned threads = 1);

}  // namespace polytree
