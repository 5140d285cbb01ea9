#include "qkdturbo/random.hpp"

#include <numeric>

namespace qkdturbo {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
    return mix64(seed ^ mix64(label));
}

Rng make_stream(std::uint64_t seed, std::uint64_t label) {
    return Rng(derive_seed(seed, label));
}

std::size_t random_below(Rng& rng, std::size_t bound) {
    if (bound <= 1) return 0;
    return static_cast<std::size_t>(rng() % bound);
}

Bits random_bits(Rng& rng, std::size_t count) {
    Bits out(count);
    for (auto& b : out) b = random_bit(rng);
    return out;
}

std::vector<std::uint32_t> random_permutation(std::size_t count, Rng& rng) {
    std::vector<std::uint32_t> perm(count);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t i = count; i > 1; --i) {
        const std::size_t j = random_below(rng, i);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

}  // namespace qkdturbo
