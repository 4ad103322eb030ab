#ifndef BOVW_RNG_HPP
#define BOVW_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace bovw {

// Root of all randomness in a run. Every consumer derives its own seed from
// the root plus a string tag, so results do not depend on the order in which
// pipeline stages happen to execute.
struct Seed {
    std::uint64_t value = 0;

    // New seed for the consumer identified by `tag` (e.g. "vocab/model/label=3").
    Seed derive(std::string_view tag) const;
    Seed derive(std::string_view tag, std::uint64_t index) const;
};

using RngEngine = std::mt19937_64;

RngEngine make_engine(Seed seed);

// Sampling helpers. std::uniform_int_distribution and friends are
// implementation-defined, so we keep our own to stay bit-stable across
// compilers.

// Unbiased integer in [0, n). n must be > 0.
std::uint64_t uniform_index(RngEngine& rng, std::uint64_t n);

// Uniform double in [0, 1).
double uniform01(RngEngine& rng);

// Standard normal via Box-Muller.
double normal01(RngEngine& rng);

// m distinct indices drawn uniformly without replacement from [0, n).
// Order is the draw order (partial Fisher-Yates). m must be <= n.
std::vector<std::size_t> sample_without_replacement(RngEngine& rng, std::size_t n, std::size_t m);

} // namespace bovw

#endif
