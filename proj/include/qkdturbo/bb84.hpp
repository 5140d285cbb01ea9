#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qkdturbo/common.hpp"
#include "qkdturbo/random.hpp"

namespace qkdturbo {

/// The two conjugate measurement bases. Measuring in the matching basis is
/// deterministic; measuring in the other one yields a fair coin.
enum class Basis : std::uint8_t { Rectilinear, Diagonal };

/// One transmitted quantum state. The four (basis, bit) combinations map to
/// the four polarizations: (Rectilinear, 0) = 0 deg, (Rectilinear, 1) = 90 deg,
/// (Diagonal, 0) = 45 deg, (Diagonal, 1) = 135 deg.
struct PolarizedState {
    Basis basis = Basis::Rectilinear;
    std::uint8_t bit = 0;

    bool operator==(const PolarizedState&) const = default;
};

/// Intercept-resend attack parameters: each state is independently
/// eavesdropped with probability `intercept_probability` (s for short).
struct AttackParams {
    double intercept_probability = 0.0;
};

/// Alice's and Bob's correlated sifted keys plus bookkeeping of which raw
/// positions survived sifting.
struct SiftedPair {
    Bits x_a;
    Bits x_b;
    std::vector<std::size_t> kept_positions;  // strictly increasing, < raw_length
    std::size_t raw_length = 0;
};

/// Throws std::invalid_argument unless 0 <= intercept_probability <= 1.
void validate(const AttackParams& attack);

std::vector<Basis> random_bases(Rng& rng, std::size_t count);

/// Alice's state preparation: element i is (bases[i], bits[i]).
std::vector<PolarizedState> prepare_states(const Bits& bits, const std::vector<Basis>& bases);

/// Measure a single state in `basis`; draws from `rng` only when the bases
/// differ.
std::uint8_t measure_one(const PolarizedState& state, Basis basis, Rng& rng);

/// Bob's measurement of each incoming state in his basis choice.
Bits measure(const std::vector<PolarizedState>& states, const std::vector<Basis>& bases, Rng& rng);

/// Eve's attack: each state is independently intercepted with probability s.
/// An intercepted state is measured in a uniformly guessed basis and replaced
/// by the state corresponding to Eve's result.
std::vector<PolarizedState> intercept_resend(std::vector<PolarizedState> states,
                                             const AttackParams& attack, Rng& rng);

/// Keep exactly the positions where both sides chose the same basis.
SiftedPair sift(const std::vector<Basis>& alice_bases, const std::vector<Basis>& bob_bases,
                const Bits& alice_bits, const Bits& bob_bits);

/// One full protocol round: random preparation by Alice, optional
/// interception by Eve, measurement by Bob, sifting. Pure function of
/// (n_states, attack, seed); each party draws from its own derived stream.
SiftedPair run_bb84_session(std::size_t n_states, const AttackParams& attack, std::uint64_t seed);

/// Sifted-key error rate induced by intercept-resend: s/4.
double theoretical_ber(const AttackParams& attack);

}  // namespace qkdturbo
