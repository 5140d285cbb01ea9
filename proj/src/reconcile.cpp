#include "qkdturbo/reconcile.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qkdturbo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

double decoder_crossover(const QberEstimate& qber) {
    if (qber.estimate >= 0.5)
        throw ProtocolError("reconcile: estimated crossover >= 0.5, channel unusable");
    return std::clamp(qber.estimate, kCrossoverFloor, 0.5 - kCrossoverFloor);
}

std::pair<QberEstimate, SiftedPair> estimate_qber(const SiftedPair& pair, double sample_fraction,
                                                  Rng& rng) {
    if (!(sample_fraction > 0.0 && sample_fraction < 1.0))
        throw std::invalid_argument("estimate_qber: sample fraction must lie in (0, 1)");
    const std::size_t length = pair.x_a.size();
    if (pair.x_b.size() != length || pair.kept_positions.size() != length)
        throw std::invalid_argument("estimate_qber: SiftedPair fields have mismatched lengths");
    if (length < 100) throw ProtocolError("estimate_qber: sifted key shorter than 100 bits");

    const std::size_t sample_size =
        std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(length) * sample_fraction));

    // Partial Fisher-Yates: the first sample_size slots end up holding a
    // uniform sample without replacement.
    std::vector<std::size_t> indices(length);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < sample_size; ++i) {
        const std::size_t j = i + random_below(rng, length - i);
        std::swap(indices[i], indices[j]);
    }
    std::vector<std::size_t> sample(indices.begin(), indices.begin() + sample_size);
    std::sort(sample.begin(), sample.end());

    std::size_t mismatches = 0;
    for (std::size_t pos : sample)
        if (pair.x_a[pos] != pair.x_b[pos]) ++mismatches;

    QberEstimate estimate;
    estimate.estimate = static_cast<double>(mismatches) / static_cast<double>(sample_size);
    estimate.sample_size = sample_size;
    estimate.sacrificed_positions = sample;

    SiftedPair trimmed;
    trimmed.raw_length = pair.raw_length;
    trimmed.x_a.reserve(length - sample_size);
    trimmed.x_b.reserve(length - sample_size);
    trimmed.kept_positions.reserve(length - sample_size);
    std::size_t next_sacrificed = 0;
    for (std::size_t i = 0; i < length; ++i) {
        if (next_sacrificed < sample.size() && sample[next_sacrificed] == i) {
            ++next_sacrificed;
            continue;
        }
        trimmed.x_a.push_back(pair.x_a[i]);
        trimmed.x_b.push_back(pair.x_b[i]);
        trimmed.kept_positions.push_back(pair.kept_positions[i]);
    }
    return {std::move(estimate), std::move(trimmed)};
}

ReconciliationReport reconcile(const SiftedPair& pair, const TurboConfig& config,
                               const QberEstimate& qber) {
    validate(config);
    const double crossover = decoder_crossover(qber);
    const std::size_t length = pair.x_a.size();
    if (pair.x_b.size() != length)
        throw std::invalid_argument("reconcile: SiftedPair fields have mismatched lengths");
    const std::size_t block = config.block_length;
    if (length < block) throw ProtocolError("reconcile: key shorter than one block");

    ReconciliationReport report;
    report.iterations_used = config.iterations;
    report.x_hat_a.reserve(length);

    const std::size_t num_blocks = (length + block - 1) / block;
    std::size_t disclosed = qber.sample_size;

    for (std::size_t b = 0; b < num_blocks; ++b) {
        const std::size_t begin = b * block;
        const std::size_t real_len = std::min(block, length - begin);

        // Final partial block is padded with publicly known zeros.
        Bits alice_block(block, 0);
        Bits bob_block(block, 0);
        std::copy_n(pair.x_a.begin() + static_cast<std::ptrdiff_t>(begin), real_len,
                    alice_block.begin());
        std::copy_n(pair.x_b.begin() + static_cast<std::ptrdiff_t>(begin), real_len,
                    bob_block.begin());

        const auto encode_start = Clock::now();
        const TurboCodeword cw = turbo_encode(alice_block, config);
        report.encode_seconds += seconds_since(encode_start);

        disclosed += cw.parity1.size() + 2 * cw.tail1.size() + cw.parity2.size();

        const auto decode_start = Clock::now();
        // Bob's systematic information is his own key; pad positions are
        // known with certainty on both sides.
        Llrs sys = bsc_llr(bob_block, crossover);
        for (std::size_t i = real_len; i < block; ++i) sys[i] = kLlrClamp;

        // Parity and termination bits arrive over the error-free public
        // channel, so they carry the clamp-bound reliability.
        Llrs parity1(block + cw.tail1.size());
        for (std::size_t i = 0; i < block; ++i)
            parity1[i] = cw.parity1[i] ? -kLlrClamp : kLlrClamp;
        for (std::size_t i = 0; i < cw.tail1.size(); ++i)
            parity1[block + i] = cw.tail1[i][1] ? -kLlrClamp : kLlrClamp;
        Llrs parity2(block);
        for (std::size_t i = 0; i < block; ++i)
            parity2[i] = cw.parity2[i] ? -kLlrClamp : kLlrClamp;

        const TurboDecodeResult decoded = turbo_decode(sys, parity1, parity2, config);
        report.decode_seconds += seconds_since(decode_start);

        report.x_hat_a.insert(report.x_hat_a.end(), decoded.bits.begin(),
                              decoded.bits.begin() + static_cast<std::ptrdiff_t>(real_len));
    }

    report.disclosed_bits = disclosed;
    report.pre_ber = measure_ber(pair.x_a, pair.x_b);
    report.post_ber = measure_ber(pair.x_a, report.x_hat_a);
    return report;
}

double measure_ber(const Bits& a, const Bits& b) {
    if (a.empty()) throw std::invalid_argument("measure_ber: empty input");
    if (a.size() != b.size()) throw std::invalid_argument("measure_ber: lengths differ");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++mismatches;
    return static_cast<double>(mismatches) / static_cast<double>(a.size());
}

}  // namespace qkdturbo
