#include "polytree/seed.hpp"

namespace polytree {

namespace {

std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t SeedPolicy::derive(std::string_view role, std::initializer_list<std::uint64_t> indices) const noexcept {
    std::uint64_t h = mix64(master_seed ^ fnv1a(role));
    std::uint64_t t = 1;
    for (const auto idx : indices) {
        h = mix64(h ^ (idx + 0x9e3779b97f4a7c15ULL * t));
        ++t;
    }
    return h;
}

}  // namespace polytree
