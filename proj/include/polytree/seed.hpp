#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

namespace polytree {

// SplitMix64 generator. Cheap to construct, which matters because every
// (i, j) pair of the xi matrix and every (k, j, i) triple of the orientation
// step owns its own stream.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives independent random streams from one master seed.
///
/// A stream is a pure function of (master seed, role tag, index tuple):
///
///     h = mix64(master ^ fnv1a(role))
///     h = mix64(h ^ (index_t + 0x9e3779b97f4a7c15 * (t + 1)))   for each index
///
/// so results never depend on the order in which streams are requested or
/// on how work is split across threads.
struct SeedPolicy {
    std::uint64_t master_seed = 0;

    std::uint64_t derive(std::string_view role, std::initializer_list<std::uint64_t> indices = {}) const noexcept;

    SplitMix64 stream(std::string_view role, std::initializer_list<std::uint64_t> indices = {}) const noexcept {
        return SplitMix64(derive(role, indices));
    }

    // Policy for a sub-task (e.g. one benchmark replication).
    SeedPolicy child(std::string_view role, std::initializer_list<std::uint64_t> indices = {}) const noexcept {
        return SeedPolicy{derive(role, indices)};
    }
};

}  // namespace polytree
