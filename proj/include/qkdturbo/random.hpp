#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qkdturbo/common.hpp"

namespace qkdturbo {

// All randomness goes through std::mt19937_64 and the helpers below, which
// touch only the raw 64-bit output stream. The standard specifies that
// stream exactly, so results reproduce across platforms and compilers.
using Rng = std::mt19937_64;

// Labels for deriving independent substreams from one session seed. Each
// party draws from a private stream, so e.g. changing Eve's draws cannot
// shift Alice's or Bob's.
namespace stream {
inline constexpr std::uint64_t alice = 0x616c696365;      // "alice"
inline constexpr std::uint64_t bob = 0x626f62;            // "bob"
inline constexpr std::uint64_t eve = 0x657665;            // "eve"
inline constexpr std::uint64_t sample = 0x73616d706c65;   // "sample"
inline constexpr std::uint64_t interleaver = 0x696c7672;  // "ilvr"
inline constexpr std::uint64_t trial = 0x747269616c;      // "trial"
}  // namespace stream

/// splitmix64 finalizer; maps any 64-bit value to a well-mixed one.
std::uint64_t mix64(std::uint64_t x);

/// Seed for the substream identified by `label`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label);

/// Generator for the substream identified by `label`.
Rng make_stream(std::uint64_t seed, std::uint64_t label);

inline std::uint8_t random_bit(Rng& rng) {
    return static_cast<std::uint8_t>(rng() & 1u);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double random_real(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool random_bernoulli(Rng& rng, double probability) {
    return random_real(rng) < probability;
}

/// Uniform index in [0, bound). Modulo draw; the bias is immaterial at
/// simulation sizes and keeps the draw count per call fixed.
std::size_t random_below(Rng& rng, std::size_t bound);

Bits random_bits(Rng& rng, std::size_t count);

/// Fisher-Yates permutation of {0..count-1}, spelled out so the result does
/// not depend on std::shuffle internals.
std::vector<std::uint32_t> random_permutation(std::size_t count, Rng& rng);

}  // namespace qkdturbo
