#include <cmath>

#include "doctest.h"
#include "polytree/error.hpp"
#include "polytree/models.hpp"

using namespace polytree;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> arrows(const GroundTruth& g) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : g.directed.edges()) out.emplace_back(e.source + 1, e.target + 1);
    return out;
}

double mean(std::span<const double> v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (const double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

double correlation(std::span<const double> a, std::span<const double> b) {
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

using Arrows = std::vector<std::pair<std::size_t, std::size_t>>;

}  // namespace

TEST_CASE("ground truth trees (1-based in expectations)") {
    CHECK(arrows(ground_truth({ModelKind::Linear, 3})) == Arrows{{1, 2}, {2, 3}});
    CHECK(arrows(ground_truth({ModelKind::Star, 4})) == Arrows{{1, 2}, {1, 3}, {1, 4}});
    CHECK(arrows(ground_truth({ModelKind::Binary, 7})) == Arrows{{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {3, 7}});
    CHECK(arrows(ground_truth({ModelKind::ReverseBinary, 7})) ==
          Arrows{{2, 1}, {3, 1}, {4, 2}, {5, 2}, {6, 3}, {7, 3}});
    CHECK(ground_truth({ModelKind::Linear, 1}).skeleton.edges().empty());
}

TEST_CASE("every model yields a spanning tree") {
    for (const auto kind : {ModelKind::Linear, ModelKind::Binary, ModelKind::Star, ModelKind::ReverseBinary}) {
        for (const std::size_t p : {1, 3, 15, 511}) {
            const auto g = ground_truth({kind, p});
            CHECK(g.skeleton.edges().size() == p - 1);
            CHECK(g.directed.skeleton() == g.skeleton);
        }
    }
}

TEST_CASE("binary kinds need p = 2^k - 1") {
    CHECK_THROWS_AS(TreeModel({ModelKind::Binary, 14}).validate(), Error);
    CHECK_THROWS_AS(TreeModel({ModelKind::ReverseBinary, 6}).validate(), Error);
    CHECK_THROWS_AS(TreeModel({ModelKind::Linear, 0}).validate(), Error);
    CHECK_NOTHROW(TreeModel({ModelKind::Binary, 1}).validate());
    CHECK_NOTHROW(TreeModel({ModelKind::Star, 14}).validate());
    CHECK_THROWS_AS(sample({ModelKind::Linear, 3}, 1, SeedPolicy{}), Error);
}

TEST_CASE("model names round-trip") {
    for (const auto kind : {ModelKind::Linear, ModelKind::Binary, ModelKind::Star, ModelKind::ReverseBinary}) {
        CHECK(parse_model_kind(to_string(kind)) == kind);
    }
    CHECK_FALSE(parse_model_kind("tree").has_value());
}

TEST_CASE("every variable has unit variance") {
    for (const auto kind : {ModelKind::Linear, ModelKind::Binary, ModelKind::Star, ModelKind::ReverseBinary}) {
        const auto data = sample({kind, 7}, 10000, SeedPolicy{5});
        for (std::size_t j = 0; j < data.p(); ++j) CHECK(std::abs(variance(data.column(j)) - 1.0) < 0.1);
    }
}

TEST_CASE("adjacent linear variables have correlation 1/sqrt(2)") {
    const auto data = sample({ModelKind::Linear, 2}, 10000, SeedPolicy{6});
    CHECK(std::abs(correlation(data.column(0), data.column(1)) - 1.0 / std::sqrt(2.0)) < 0.03);
}

TEST_CASE("reverse binary leaves are uncorrelated") {
    const auto data = sample({ModelKind::ReverseBinary, 15}, 10000, SeedPolicy{7});
    for (std::size_t a = 7; a < 15; ++a) {
        for (std::size_t b = a + 1; b < 15; ++b) CHECK(std::abs(correlation(data.column(a), data.column(b))) < 0.05);
    }
}

TEST_CASE("sampling is deterministic in the seed") {
    const auto a = sample({ModelKind::Star, 9}, 50, SeedPolicy{8});
    const auto b = sample({ModelKind::Star, 9}, 50, SeedPolicy{8});
    const auto c = sample({ModelKind::Star, 9}, 50, SeedPolicy{9});
    bool same = true;
    bool differs = false;
    for (std::size_t j = 0; j < 9; ++j) {
        for (std::size_t i = 0; i < 50; ++i) {
            same &= a(i, j) == b(i, j);
            differs |= a(i, j) != c(i, j);
        }
    }
    CHECK(same);
    CHECK(differs);
}
