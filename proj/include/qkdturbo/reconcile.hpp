#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qkdturbo/bb84.hpp"
#include "qkdturbo/common.hpp"
#include "qkdturbo/random.hpp"
#include "qkdturbo/turbo.hpp"

namespace qkdturbo {

/// Crossover estimate from publicly compared sample bits. Positions index
/// into the sifted key and are removed from the working key before
/// reconciliation.
struct QberEstimate {
    double estimate = 0.0;
    std::size_t sample_size = 0;
    std::vector<std::size_t> sacrificed_positions;
};

/// Estimates clamped into (kCrossoverFloor, 0.5 - kCrossoverFloor) before use
/// as the decoder crossover.
inline constexpr double kCrossoverFloor = 1e-3;

double decoder_crossover(const QberEstimate& qber);

/// Publicly compare a uniform random sample of the sifted key. Returns the
/// observed mismatch rate and the pair with the sampled positions removed.
std::pair<QberEstimate, SiftedPair> estimate_qber(const SiftedPair& pair, double sample_fraction,
                                                  Rng& rng);

struct ReconciliationReport {
    Bits x_hat_a;           // Bob's corrected key
    double pre_ber = 0.0;   // against Alice's key, before decoding
    double post_ber = 0.0;  // against Alice's key, after decoding
    std::size_t disclosed_bits = 0;  // parity + termination + sampled bits
    unsigned iterations_used = 0;
    double encode_seconds = 0.0;
    double decode_seconds = 0.0;
};

/// Corrects Bob's sifted key toward Alice's. Alice turbo-encodes her key in
/// block_length chunks (the final chunk zero-padded; pad positions are
/// publicly known and excluded from BER); only parity and termination bits
/// travel over the error-free public channel, at LLR magnitude kLlrClamp.
/// Bob's systematic LLRs come from his own bits through bsc_llr at the
/// clamped QBER estimate. Deterministic given (pair, config, qber).
ReconciliationReport reconcile(const SiftedPair& pair, const TurboConfig& config,
                               const QberEstimate& qber);

/// hamming(a, b) / length. Throws on empty or mismatched inputs.
double measure_ber(const Bits& a, const Bits& b);

}  // namespace qkdturbo
