#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qkdturbo/common.hpp"

namespace qkdturbo {

enum class DecoderVariant : std::uint8_t { LogMap, MaxLogMap };

/// Extrinsic values fed between the constituent decoders are clamped to this
/// magnitude; it is also the LLR magnitude used for bits received over the
/// error-free public channel.
inline constexpr double kLlrClamp = 50.0;

/// Parallel-concatenated code parameters. The two constituent encoders are
/// identical recursive systematic convolutional codes.
///
/// Generator polynomials use the usual octal convention: with memory
/// m = constraint_length - 1, bit m of the value is the tap on the current
/// symbol and bit 0 the tap on the oldest register cell. The default pair
/// (feedback 7, forward 5) is the canonical 4-state constituent; stronger
/// codes such as (37, 21) drop in via these fields.
struct TurboConfig {
    unsigned feedback_poly = 07;  // octal
    unsigned forward_poly = 05;   // octal
    unsigned constraint_length = 3;
    std::size_t block_length = 1024;
    std::vector<std::uint32_t> interleaver;  // bijection on {0..block_length-1}
    unsigned iterations = 18;
    DecoderVariant variant = DecoderVariant::LogMap;
    double crossover_estimate = 0.05;  // in (0, 0.5); forms channel reliabilities
};

/// Config with defaults plus a pseudo-random interleaver from `interleaver_seed`.
TurboConfig make_turbo_config(std::size_t block_length, unsigned iterations,
                              DecoderVariant variant, double crossover_estimate,
                              std::uint64_t interleaver_seed);

/// Throws ConfigError if any TurboConfig invariant is violated.
void validate(const TurboConfig& config);

/// State machine of one RSC encoder: 2^memory states, two outgoing
/// transitions per state (input 0/1), each with a deterministic parity bit.
struct Trellis {
    unsigned memory = 0;
    unsigned num_states = 0;
    std::vector<std::array<std::uint16_t, 2>> next_state;  // [state][input]
    std::vector<std::array<std::uint8_t, 2>> parity;       // [state][input]
};

Trellis build_trellis(const TurboConfig& config);

/// RSC encoder output: parity along the message-driven path, then
/// memory termination steps of {input bit, parity bit} driving the register
/// back to the all-zero state.
struct RscCodeword {
    Bits parity;
    std::vector<std::array<std::uint8_t, 2>> tail;
};

RscCodeword rsc_encode(const Bits& message, const Trellis& trellis);

/// Turbo codeword: systematic bits, first encoder's parity and termination,
/// second encoder's parity over the interleaved message (left unterminated).
struct TurboCodeword {
    Bits systematic;
    Bits parity1;
    std::vector<std::array<std::uint8_t, 2>> tail1;
    Bits parity2;
};

TurboCodeword turbo_encode(const Bits& message, const TurboConfig& config);

/// Channel LLRs for a hard-decision observation through a BSC:
/// llr[i] = +/- ln((1-crossover)/crossover), positive for observed 0.
Llrs bsc_llr(const Bits& observed, double crossover);

struct SisoResult {
    Llrs extrinsic;
    Llrs posterior;  // posterior[i] == apriori[i] + sys_llr[i] + extrinsic[i]
};

/// Forward-backward decoder for one constituent code. `parity_llr` has
/// length N for an unterminated run or N + memory when it carries the
/// termination steps; LogMap uses exact log-sum-exp recursions, MaxLogMap
/// replaces them with max. Extrinsic output is clamped to +/- kLlrClamp.
SisoResult bcjr_decode(const Llrs& sys_llr, const Llrs& parity_llr, const Llrs& apriori,
                       const Trellis& trellis, DecoderVariant variant);

struct TurboDecodeResult {
    Bits bits;
    std::vector<Bits> iteration_trace;  // hard decision after each round
};

/// Iterative decoder: each round runs SISO-1 on (sys, parity1) with the
/// deinterleaved extrinsic of SISO-2 as a-priori, then SISO-2 on the
/// interleaved systematic and parity2. Decisions come from the sign of the
/// combined posterior (LLR < 0 decodes as 1).
TurboDecodeResult turbo_decode(const Llrs& sys_llr, const Llrs& parity1_llr,
                               const Llrs& parity2_llr, const TurboConfig& config);

template <typename T>
std::vector<T> interleave(const std::vector<T>& seq, const std::vector<std::uint32_t>& perm) {
    if (seq.size() != perm.size())
        throw std::invalid_argument("interleave: sequence and permutation lengths differ");
    std::vector<T> out(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) out[i] = seq[perm[i]];
    return out;
}

template <typename T>
std::vector<T> deinterleave(const std::vector<T>& seq, const std::vector<std::uint32_t>& perm) {
    if (seq.size() != perm.size())
        throw std::invalid_argument("deinterleave: sequence and permutation lengths differ");
    std::vector<T> out(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) out[perm[i]] = seq[i];
    return out;
}

}  // namespace qkdturbo
