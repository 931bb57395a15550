#include "relaysim/random.hpp"

#include <stdexcept>

namespace relaysim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64& RandomStreams::generator(Stream s, std::uint32_t index) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint8_t>(s)) << 32) | index;
    auto it = gens_.find(key);
    if (it == gens_.end()) {
        const std::uint64_t derived = splitmix64(seed_ ^ splitmix64(key));
        it = gens_.emplace(key, std::mt19937_64{derived}).first;
    }
    return it->second;
}

// std::uniform_int_distribution is not bit-reproducible across standard
// library implementations, so bounded draws are done by rejection here.
std::int64_t RandomStreams::draw_uniform_int(Stream s, std::uint32_t index, std::int64_t lo,
                                             std::int64_t hi) {
    if (lo > hi) {
        throw std::logic_error("draw_uniform_int: lo > hi");
    }
    auto& gen = generator(s, index);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {  // full 64-bit range
        return static_cast<std::int64_t>(gen());
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

}  // namespace relaysim
