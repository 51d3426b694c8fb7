#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "polytree/graph.hpp"
#include "polytree/orient.hpp"

namespace polytree::testing {

// Sample of length n whose values are drawn from a small pool when `ties`
// is set, so repeats are frequent.
inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, bool ties) {
    std::vector<double> v(n);
    if (ties) {
        std::uniform_int_distribution<int> levels(1, 6);
        std::uniform_int_distribution<int> pick(0, levels(rng) - 1);
        for (auto& x : v) x = 0.5 * pick(rng);
    } else {
        std::normal_distribution<double> normal;
        for (auto& x : v) x = normal(rng);
    }
    return v;
}

// Uniform random labelled tree on p vertices (random attachment order).
inline std::vector<Edge> random_tree(std::mt19937_64& rng, std::size_t p) {
    std::vector<std::size_t> perm(p);
    for (std::size_t i = 0; i < p; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (std::size_t t = 1; t < p; ++t) {
        std::uniform_int_distribution<std::size_t> pick(0, t - 1);
        edges.emplace_back(perm[t], perm[pick(rng)]);
    }
    return edges;
}

// Statistics fixed by the test. Unset entries fall back to the defaults.
class InjectedStatistics final : public OrientationStatistics {
public:
    InjectedStatistics(double default_tau = 0.0, double default_xi = 1.0)
        : default_tau_(default_tau), default_xi_(default_xi) {}

    void set_tau(std::size_t k, std::size_t j, std::size_t i, double v) { tau_[{k, j, i}] = v; }
    void set_xi(std::size_t j, std::size_t k, double v) { xi_[{j, k}] = v; }

    double tau(std::size_t k, std::size_t j, std::size_t i) override {
        ++tau_calls;
        const auto it = tau_.find({k, j, i});
        return it == tau_.end() ? default_tau_ : it->second;
    }
    double xi(std::size_t j, std::size_t k) override {
        const auto it = xi_.find({j, k});
        return it == xi_.end() ? default_xi_ : it->second;
    }

    std::size_t tau_calls = 0;

private:
    double default_tau_;
    double default_xi_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> tau_;
    std::map<std::pair<std::size_t, std::size_t>, double> xi_;
};

}  // namespace polytree::testing
