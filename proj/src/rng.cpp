#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bovw {

namespace {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Seed Seed::derive(std::string_view tag) const {
    return Seed{splitmix64(value ^ fnv1a64(tag))};
}

Seed Seed::derive(std::string_view tag, std::uint64_t index) const {
    return Seed{splitmix64(derive(tag).value ^ splitmix64(index))};
}

RngEngine make_engine(Seed seed) {
    return RngEngine(seed.value);
}

std::uint64_t uniform_index(RngEngine& rng, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("uniform_index: n must be > 0");
    // Rejection sampling over the top of the 64-bit range keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

double uniform01(RngEngine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal01(RngEngine& rng) {
    double u1;
    do {
        u1 = uniform01(rng);
    } while (u1 <= 0.0);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::size_t> sample_without_replacement(RngEngine& rng, std::size_t n, std::size_t m) {
    if (m > n)
        throw std::invalid_argument("sample_without_replacement: m > n");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i)
        pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, n - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

} // namespace bovw
