#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "polytree/error.hpp"
#include "polytree/models.hpp"
#include "polytree/tau.hpp"
#include "test_support.hpp"

using namespace polytree;

namespace {

TauResult tau_seeded(const std::vector<double>& y, const std::vector<double>& z, const std::vector<double>& x,
                     std::uint64_t seed, PlanarSearch search = PlanarSearch::Auto) {
    SplitMix64 stream(seed);
    return tau(y, z, x, stream, search);
}

TauResult oracle_seeded(const std::vector<double>& y, const std::vector<double>& z, const std::vector<double>& x,
                        std::uint64_t seed) {
    SplitMix64 stream(seed);
    return tau_oracle(y, z, x, uniform_tie_chooser(stream));
}

void check_same(const TauResult& a, const TauResult& b) {
    CHECK(a.numerator == b.numerator);
    CHECK(a.denominator == b.denominator);
    CHECK(a.value == b.value);
}

}  // namespace

TEST_CASE("tau of a constant response is zero") {
    const std::vector<double> y(6, 2.5);
    const std::vector<double> z{1, 2, 3, 4, 5, 6};
    const std::vector<double> x{6, 1, 5, 2, 4, 3};
    const auto r = tau_seeded(y, z, x, 1);
    CHECK(r.value == 0.0);
    CHECK(r.denominator == 0.0);
    CHECK(oracle_seeded(y, z, x, 1).value == 0.0);
}

TEST_CASE("tau on a fixed five-point instance matches the literal transcription") {
    const std::vector<double> x{0.1, 0.9, 0.4, 0.7, 0.2};
    const std::vector<double> z{1, 0, 1, 0, 1};
    const std::vector<double> y{3, 1, 4, 1, 5};
    for (std::uint64_t seed = 0; seed < 20; ++seed) check_same(tau_seeded(y, z, x, seed), oracle_seeded(y, z, x, seed));

    // x has no ties, so N is forced: (4, 3, 4, 1, 0) 0-based. R = (3, 2, 4, 2, 5).
    SplitMix64 stream(0);
    const auto a = assign_neighbors(y, z, x, uniform_tie_chooser(stream));
    CHECK(a.nearest_x == std::vector<std::size_t>{4, 3, 4, 1, 0});
    CHECK(a.rank == std::vector<std::size_t>{3, 2, 4, 2, 5});
}

TEST_CASE("two observations force the neighbours") {
    SplitMix64 stream(3);
    const auto a = assign_neighbors(std::vector<double>{1, 2}, std::vector<double>{3, 4}, std::vector<double>{5, 6},
                                    uniform_tie_chooser(stream));
    CHECK(a.nearest_x == std::vector<std::size_t>{1, 0});
    CHECK(a.nearest_xz == std::vector<std::size_t>{1, 0});
}

TEST_CASE("tau input validation") {
    auto kind = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidModel;
    };
    const std::vector<double> three{1, 2, 3};
    const std::vector<double> two{1, 2};
    CHECK(kind([&] { tau_seeded(three, three, two, 1); }) == ErrorKind::LengthMismatch);
    CHECK(kind([&] { tau_seeded({1}, {1}, {1}, 1); }) == ErrorKind::TooFewSamples);
    CHECK(kind([&] { tau_seeded({1, NAN}, two, two, 1); }) == ErrorKind::NonFinite);
    CHECK(kind([&] { tau_oracle(three, three, two, [](NeighborKind, std::size_t, std::span<const std::size_t> c) { return c[0]; }); }) ==
          ErrorKind::LengthMismatch);
}

TEST_CASE("fast tau equals the oracle with the same tie draws") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t n = 2 + rng() % 39;
        const auto y = testing::random_values(rng, n, rep % 2 == 0);
        const auto z = testing::random_values(rng, n, rep % 3 == 0);
        const auto x = testing::random_values(rng, n, rep % 4 < 2);
        const auto expected = oracle_seeded(y, z, x, rep);
        check_same(tau_seeded(y, z, x, rep, PlanarSearch::BruteForce), expected);
        check_same(tau_seeded(y, z, x, rep, PlanarSearch::KdTree), expected);
        CHECK(expected.denominator >= 0.0);
    }
}

TEST_CASE("k-d tree and brute force agree on tie sets for larger samples") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 300 + rng() % 400;
        const auto y = testing::random_values(rng, n, false);
        const auto z = testing::random_values(rng, n, rep % 2 == 0);
        const auto x = testing::random_values(rng, n, rep % 3 == 0);
        // record every tie set each path presents
        std::vector<std::vector<std::size_t>> brute_sets, tree_sets;
        auto recorder = [](std::vector<std::vector<std::size_t>>& log) {
            return [&log](NeighborKind, std::size_t, std::span<const std::size_t> c) {
                log.emplace_back(c.begin(), c.end());
                return c[c.size() / 2];
            };
        };
        const auto a = assign_neighbors(y, z, x, recorder(brute_sets), PlanarSearch::BruteForce);
        const auto b = assign_neighbors(y, z, x, recorder(tree_sets), PlanarSearch::KdTree);
        CHECK(a.nearest_xz == b.nearest_xz);
        CHECK(brute_sets == tree_sets);
    }
}

TEST_CASE("tau is equivariant under relabelling of observations") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rng() % 30;
        const auto y = testing::random_values(rng, n, rep % 2 == 0);
        const auto z = testing::random_values(rng, n, true);
        const auto x = testing::random_values(rng, n, true);
        std::vector<std::size_t> sigma(n);  // new position t holds old observation sigma[t]
        std::iota(sigma.begin(), sigma.end(), std::size_t{0});
        std::shuffle(sigma.begin(), sigma.end(), rng);
        std::vector<double> py(n), pz(n), px(n);
        for (std::size_t t = 0; t < n; ++t) {
            py[t] = y[sigma[t]];
            pz[t] = z[sigma[t]];
            px[t] = x[sigma[t]];
        }
        // tie choice as a function of the original labels only
        auto pick = [](const std::vector<std::size_t>& label) {
            return [&label](NeighborKind kind, std::size_t i, std::span<const std::size_t> c) {
                return *std::min_element(c.begin(), c.end(), [&](std::size_t a, std::size_t b) {
                    auto key = [&](std::size_t j) {
                        return mix64(label[i] * 1000003ULL + label[j] * 31ULL + (kind == NeighborKind::X ? 0 : 7));
                    };
                    return key(a) < key(b);
                });
            };
        };
        std::vector<std::size_t> identity(n);
        std::iota(identity.begin(), identity.end(), std::size_t{0});
        const auto original = tau_from_assignment(assign_neighbors(y, z, x, pick(identity)));
        const auto permuted = tau_from_assignment(assign_neighbors(py, pz, px, pick(sigma)));
        check_same(original, permuted);
    }
}

TEST_CASE("tau depends on y only through its ranks") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rng() % 40;
        const auto y = testing::random_values(rng, n, rep % 2 == 0);
        const auto z = testing::random_values(rng, n, false);
        const auto x = testing::random_values(rng, n, rep % 3 == 0);
        std::vector<double> transformed(n);
        std::transform(y.begin(), y.end(), transformed.begin(), [](double v) { return 3.0 * std::exp(v) + 1.0; });
        check_same(tau_seeded(y, z, x, rep), tau_seeded(transformed, z, x, rep));
    }
}

TEST_CASE("tau separates conditional independence from a collider") {
    const std::size_t n = 5000;
    SUBCASE("chain: X1 -> X2 -> X3 is conditionally independent") {
        const auto data = sample(TreeModel{ModelKind::Linear, 3}, n, SeedPolicy{31});
        const auto r = tau_seeded(std::vector<double>(data.column(2).begin(), data.column(2).end()),
                                  std::vector<double>(data.column(0).begin(), data.column(0).end()),
                                  std::vector<double>(data.column(1).begin(), data.column(1).end()), 1);
        CHECK(r.value < 0.1);
    }
    SUBCASE("collider: J -> I <- K") {
        std::mt19937_64 rng(17);
        std::normal_distribution<double> normal;
        std::vector<double> j(n), k(n), i(n);
        for (std::size_t m = 0; m < n; ++m) {
            j[m] = normal(rng);
            k[m] = normal(rng);
            i[m] = (j[m] + k[m] + normal(rng)) / std::sqrt(3.0);
        }
        CHECK(tau_seeded(k, j, i, 1).value > 0.1);
    }
}
