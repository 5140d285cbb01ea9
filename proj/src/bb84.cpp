#include "qkdturbo/bb84.hpp"

#include <stdexcept>

namespace qkdturbo {

void validate(const AttackParams& attack) {
    const double s = attack.intercept_probability;
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("AttackParams: intercept probability must be in [0, 1]");
}

std::vector<Basis> random_bases(Rng& rng, std::size_t count) {
    std::vector<Basis> bases(count);
    for (auto& b : bases) b = random_bit(rng) ? Basis::Diagonal : Basis::Rectilinear;
    return bases;
}

std::vector<PolarizedState> prepare_states(const Bits& bits, const std::vector<Basis>& bases) {
    if (bits.size() != bases.size())
        throw std::invalid_argument("prepare_states: bits and bases lengths differ");
    std::vector<PolarizedState> states(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) states[i] = {bases[i], bits[i]};
    return states;
}

std::uint8_t measure_one(const PolarizedState& state, Basis basis, Rng& rng) {
    if (basis == state.basis) return state.bit;
    return random_bit(rng);
}

Bits measure(const std::vector<PolarizedState>& states, const std::vector<Basis>& bases,
             Rng& rng) {
    if (states.size() != bases.size())
        throw std::invalid_argument("measure: states and bases lengths differ");
    Bits out(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) out[i] = measure_one(states[i], bases[i], rng);
    return out;
}

std::vector<PolarizedState> intercept_resend(std::vector<PolarizedState> states,
                                             const AttackParams& attack, Rng& rng) {
    validate(attack);
    for (auto& state : states) {
        if (!random_bernoulli(rng, attack.intercept_probability)) continue;
        const Basis guess = random_bit(rng) ? Basis::Diagonal : Basis::Rectilinear;
        const std::uint8_t result = measure_one(state, guess, rng);
        state = {guess, result};
    }
    return states;
}

SiftedPair sift(const std::vector<Basis>& alice_bases, const std::vector<Basis>& bob_bases,
                const Bits& alice_bits, const Bits& bob_bits) {
    const std::size_t n = alice_bases.size();
    if (bob_bases.size() != n || alice_bits.size() != n || bob_bits.size() != n)
        throw std::invalid_argument("sift: input lengths differ");
    SiftedPair pair;
    pair.raw_length = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (alice_bases[i] != bob_bases[i]) continue;
        pair.x_a.push_back(alice_bits[i]);
        pair.x_b.push_back(bob_bits[i]);
        pair.kept_positions.push_back(i);
    }
    return pair;
}

SiftedPair run_bb84_session(std::size_t n_states, const AttackParams& attack,
                            std::uint64_t seed) {
    if (n_states == 0) throw std::invalid_argument("run_bb84_session: n_states must be positive");
    validate(attack);

    Rng alice_rng = make_stream(seed, stream::alice);
    Rng bob_rng = make_stream(seed, stream::bob);
    Rng eve_rng = make_stream(seed, stream::eve);

    const Bits alice_bits = random_bits(alice_rng, n_states);
    const std::vector<Basis> alice_bases = random_bases(alice_rng, n_states);
    std::vector<PolarizedState> states = prepare_states(alice_bits, alice_bases);

    states = intercept_resend(std::move(states), attack, eve_rng);

    const std::vector<Basis> bob_bases = random_bases(bob_rng, n_states);
    const Bits bob_bits = measure(states, bob_bases, bob_rng);

    return sift(alice_bases, bob_bases, alice_bits, bob_bits);
}

double theoretical_ber(const AttackParams& attack) {
    validate(attack);
    return attack.intercept_probability / 4.0;
}

}  // namespace qkdturbo
