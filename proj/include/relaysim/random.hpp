#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>

namespace relaysim {

// Named substreams keep unrelated random decisions independent: changing how
// often traffic draws, for example, must not shift node placement.
enum class Stream : std::uint8_t { Topology = 0, Backoff = 1, Traffic = 2 };

// Seeded family of deterministic generators. Every (seed, stream, index)
// triple yields the same draw sequence on every host; `index` is used to give
// each node its own substream so that adding or removing one node never
// perturbs another node's draws.
class RandomStreams {
public:
    explicit RandomStreams(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Uniform integer in [lo, hi]. lo > hi is a programming error.
    std::int64_t draw_uniform_int(Stream s, std::uint32_t index, std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64& generator(Stream s, std::uint32_t index);

    std::uint64_t seed_;
    std::unordered_map<std::uint64_t, std::mt19937_64> gens_;
};

}  // namespace relaysim
