#include "qkdturbo/turbo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qkdturbo/random.hpp"

namespace qkdturbo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

double combine(double a, double b, DecoderVariant variant) {
    return variant == DecoderVariant::LogMap ? log_sum_exp(a, b) : std::max(a, b);
}

// 0 -> +1, 1 -> -1; matches the positive-LLR-means-0 convention.
double bipolar(unsigned bit) { return bit ? -1.0 : 1.0; }

std::uint8_t parity_of(unsigned word) {
    return static_cast<std::uint8_t>(std::popcount(word) & 1u);
}

void require_finite(const Llrs& values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite LLR");
}

// Shift the block so its largest entry is 0; a common offset cancels in
// every LLR difference but keeps exp() in range.
void normalize(std::vector<double>& metrics) {
    const double hi = *std::max_element(metrics.begin(), metrics.end());
    if (hi == kNegInf) return;
    for (double& m : metrics) m -= hi;
}

}  // namespace

TurboConfig make_turbo_config(std::size_t block_length, unsigned iterations,
                              DecoderVariant variant, double crossover_estimate,
                              std::uint64_t interleaver_seed) {
    TurboConfig config;
    config.block_length = block_length;
    config.iterations = iterations;
    config.variant = variant;
    config.crossover_estimate = crossover_estimate;
    Rng rng = make_stream(interleaver_seed, stream::interleaver);
    config.interleaver = random_permutation(block_length, rng);
    validate(config);
    return config;
}

void validate(const TurboConfig& config) {
    const unsigned k = config.constraint_length;
    if (k < 2 || k > 16) throw ConfigError("TurboConfig: constraint length out of range [2, 16]");
    const unsigned memory = k - 1;
    const unsigned top_bit = 1u << memory;
    for (auto [poly, name] : {std::pair{config.feedback_poly, "feedback"},
                              std::pair{config.forward_poly, "forward"}}) {
        if (poly >= (top_bit << 1))
            throw ConfigError(std::string("TurboConfig: ") + name + " polynomial too wide");
        if (!(poly & top_bit))
            throw ConfigError(std::string("TurboConfig: ") + name +
                              " polynomial lacks the current-symbol tap");
        if (!(poly & 1u))
            throw ConfigError(std::string("TurboConfig: ") + name +
                              " polynomial degree below constraint length - 1");
    }
    if (config.block_length == 0) throw ConfigError("TurboConfig: block length must be positive");
    if (config.iterations == 0) throw ConfigError("TurboConfig: iterations must be >= 1");
    if (!(config.crossover_estimate > 0.0 && config.crossover_estimate < 0.5))
        throw ConfigError("TurboConfig: crossover estimate must lie in (0, 0.5)");
    if (config.interleaver.size() != config.block_length)
        throw ConfigError("TurboConfig: interleaver length differs from block length");
    std::vector<std::uint32_t> sorted = config.interleaver;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i) throw ConfigError("TurboConfig: interleaver is not a permutation");
}

Trellis build_trellis(const TurboConfig& config) {
    validate(config);
    const unsigned memory = config.constraint_length - 1;
    const unsigned num_states = 1u << memory;
    // State bit (memory - j) holds the register cell j steps old; polynomial
    // bit (memory - j) is the tap on it, so masking state with the low
    // polynomial bits lines the taps up.
    const unsigned state_mask = num_states - 1;
    const unsigned fb_mask = config.feedback_poly & state_mask;
    const unsigned fw_mask = config.forward_poly & state_mask;
    const unsigned fw_current = (config.forward_poly >> memory) & 1u;

    Trellis trellis;
    trellis.memory = memory;
    trellis.num_states = num_states;
    trellis.next_state.resize(num_states);
    trellis.parity.resize(num_states);
    for (unsigned state = 0; state < num_states; ++state) {
        for (unsigned input : {0u, 1u}) {
            const unsigned recursion = input ^ parity_of(state & fb_mask);
            const std::uint8_t out = static_cast<std::uint8_t>(
                (fw_current & recursion) ^ parity_of(state & fw_mask));
            const unsigned next = (recursion << (memory - 1)) | (state >> 1);
            trellis.next_state[state][input] = static_cast<std::uint16_t>(next);
            trellis.parity[state][input] = out;
        }
    }
    return trellis;
}

RscCodeword rsc_encode(const Bits& message, const Trellis& trellis) {
    RscCodeword out;
    out.parity.resize(message.size());
    unsigned state = 0;
    for (std::size_t i = 0; i < message.size(); ++i) {
        const unsigned input = message[i] & 1u;
        out.parity[i] = trellis.parity[state][input];
        state = trellis.next_state[state][input];
    }
    // Termination: the input cancelling the feedback keeps the recursion bit
    // at zero, which is the branch with the smaller next state (the two next
    // states differ only in the top bit).
    out.tail.resize(trellis.memory);
    for (unsigned step = 0; step < trellis.memory; ++step) {
        const unsigned input = trellis.next_state[state][0] > trellis.next_state[state][1] ? 1u : 0u;
        out.tail[step] = {static_cast<std::uint8_t>(input), trellis.parity[state][input]};
        state = trellis.next_state[state][input];
    }
    if (state != 0) throw std::logic_error("rsc_encode: termination did not reach state 0");
    return out;
}

TurboCodeword turbo_encode(const Bits& message, const TurboConfig& config) {
    validate(config);
    if (message.size() != config.block_length)
        throw std::invalid_argument("turbo_encode: message length differs from block length");
    const Trellis trellis = build_trellis(config);
    RscCodeword first = rsc_encode(message, trellis);
    const Bits permuted = interleave(message, config.interleaver);
    RscCodeword second = rsc_encode(permuted, trellis);

    TurboCodeword cw;
    cw.systematic = message;
    cw.parity1 = std::move(first.parity);
    cw.tail1 = std::move(first.tail);
    cw.parity2 = std::move(second.parity);  // encoder 2 stays unterminated
    return cw;
}

Llrs bsc_llr(const Bits& observed, double crossover) {
    if (!(crossover > 0.0 && crossover < 0.5))
        throw std::invalid_argument("bsc_llr: crossover must lie in (0, 0.5)");
    const double magnitude = std::log((1.0 - crossover) / crossover);
    Llrs llr(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i)
        llr[i] = observed[i] ? -magnitude : magnitude;
    return llr;
}

SisoResult bcjr_decode(const Llrs& sys_llr, const Llrs& parity_llr, const Llrs& apriori,
                       const Trellis& trellis, DecoderVariant variant) {
    const std::size_t n = sys_llr.size();
    const std::size_t steps = parity_llr.size();
    if (apriori.size() != n)
        throw std::invalid_argument("bcjr_decode: apriori length differs from systematic");
    if (steps != n && steps != n + trellis.memory)
        throw std::invalid_argument(
            "bcjr_decode: parity length must be N (unterminated) or N + memory (terminated)");
    require_finite(sys_llr, "bcjr_decode systematic");
    require_finite(parity_llr, "bcjr_decode parity");
    require_finite(apriori, "bcjr_decode apriori");

    const bool terminated = steps == n + trellis.memory;
    const unsigned num_states = trellis.num_states;

    // Branch metric for (state, input) at trellis step i. Termination steps
    // carry no systematic or a-priori information.
    auto gamma = [&](std::size_t i, unsigned state, unsigned input) {
        double g = 0.5 * bipolar(trellis.parity[state][input]) * parity_llr[i];
        if (i < n) g += 0.5 * bipolar(input) * (sys_llr[i] + apriori[i]);
        return g;
    };

    std::vector<std::vector<double>> alpha(steps + 1, std::vector<double>(num_states, kNegInf));
    alpha[0][0] = 0.0;  // encoder starts in the all-zero state
    for (std::size_t i = 0; i < steps; ++i) {
        for (unsigned state = 0; state < num_states; ++state) {
            if (alpha[i][state] == kNegInf) continue;
            for (unsigned input : {0u, 1u}) {
                const unsigned next = trellis.next_state[state][input];
                alpha[i + 1][next] =
                    combine(alpha[i + 1][next], alpha[i][state] + gamma(i, state, input), variant);
            }
        }
        normalize(alpha[i + 1]);
    }

    std::vector<std::vector<double>> beta(steps + 1, std::vector<double>(num_states, kNegInf));
    if (terminated) {
        beta[steps][0] = 0.0;
    } else {
        std::fill(beta[steps].begin(), beta[steps].end(), 0.0);
    }
    for (std::size_t i = steps; i-- > 0;) {
        for (unsigned state = 0; state < num_states; ++state) {
            for (unsigned input : {0u, 1u}) {
                const unsigned next = trellis.next_state[state][input];
                if (beta[i + 1][next] == kNegInf) continue;
                beta[i][state] =
                    combine(beta[i][state], beta[i + 1][next] + gamma(i, state, input), variant);
            }
        }
        normalize(beta[i]);
    }

    SisoResult result;
    result.extrinsic.resize(n);
    result.posterior.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double metric[2] = {kNegInf, kNegInf};
        for (unsigned state = 0; state < num_states; ++state) {
            if (alpha[i][state] == kNegInf) continue;
            for (unsigned input : {0u, 1u}) {
                const unsigned next = trellis.next_state[state][input];
                const double m = alpha[i][state] + gamma(i, state, input) + beta[i + 1][next];
                metric[input] = combine(metric[input], m, variant);
            }
        }
        const double raw_posterior = metric[0] - metric[1];
        const double extrinsic =
            std::clamp(raw_posterior - apriori[i] - sys_llr[i], -kLlrClamp, kLlrClamp);
        result.extrinsic[i] = extrinsic;
        result.posterior[i] = apriori[i] + sys_llr[i] + extrinsic;
    }
    return result;
}

TurboDecodeResult turbo_decode(const Llrs& sys_llr, const Llrs& parity1_llr,
                               const Llrs& parity2_llr, const TurboConfig& config) {
    validate(config);
    const std::size_t n = config.block_length;
    if (sys_llr.size() != n)
        throw std::invalid_argument("turbo_decode: systematic length differs from block length");
    const Trellis trellis = build_trellis(config);

    const Llrs sys_permuted = interleave(sys_llr, config.interleaver);
    Llrs extrinsic2(n, 0.0);

    TurboDecodeResult result;
    result.iteration_trace.reserve(config.iterations);
    for (unsigned round = 0; round < config.iterations; ++round) {
        const Llrs apriori1 = deinterleave(extrinsic2, config.interleaver);
        const SisoResult siso1 =
            bcjr_decode(sys_llr, parity1_llr, apriori1, trellis, config.variant);

        const Llrs apriori2 = interleave(siso1.extrinsic, config.interleaver);
        const SisoResult siso2 =
            bcjr_decode(sys_permuted, parity2_llr, apriori2, trellis, config.variant);
        extrinsic2 = siso2.extrinsic;

        const Llrs posterior = deinterleave(siso2.posterior, config.interleaver);
        Bits decision(n);
        for (std::size_t i = 0; i < n; ++i) decision[i] = posterior[i] < 0.0 ? 1 : 0;
        result.iteration_trace.push_back(std::move(decision));
    }
    result.bits = result.iteration_trace.back();
    return result;
}

}  // namespace qkdturbo
