// End-to-end acceptance checks for the whole pipeline. Each criterion prints
// one PASS/FAIL line; the process exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcjr_oracle.hpp"
#include "qkdturbo/bb84.hpp"
#include "qkdturbo/reconcile.hpp"
#include "qkdturbo/sweep.hpp"
#include "qkdturbo/turbo.hpp"

using namespace qkdturbo;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

// One large session plus estimation plus reconciliation at a given s.
struct PipelineRun {
    double pre_ber;
    double post_ber;
    std::size_t blocks;
};

PipelineRun run_pipeline(double s, std::size_t n_states, unsigned iterations,
                         std::uint64_t seed) {
    const SiftedPair pair = run_bb84_session(n_states, AttackParams{s}, seed);
    Rng sample_rng = make_stream(seed, stream::sample);
    const auto [estimate, trimmed] = estimate_qber(pair, 0.1, sample_rng);
    const TurboConfig config =
        make_turbo_config(1024, iterations, DecoderVariant::LogMap, 0.05, seed);
    const ReconciliationReport report = reconcile(trimmed, config, estimate);
    return {report.pre_ber, report.post_ber, trimmed.x_a.size() / 1024};
}

// Criterion 1: empirical sifted-key BER tracks s/4 within 3 sigma for every
// s on the grid, with at least 1e5 sifted bits per point, in under a minute.
Outcome qber_law() {
    const auto start = Clock::now();
    double worst_ratio = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double s = i / 10.0;
        const SiftedPair pair = run_bb84_session(220000, AttackParams{s}, 1000 + i);
        const double n = static_cast<double>(pair.x_a.size());
        if (n < 100000) return {false, fmt("only %.0f sifted bits at s=%.1f", n, s)};
        const double ber = measure_ber(pair.x_a, pair.x_b);
        const double expected = s / 4.0;
        const double tolerance = 3.0 * binomial_sigma(expected, n);
        worst_ratio = std::max(worst_ratio, std::fabs(ber - expected) / tolerance);
        if (std::fabs(ber - expected) > tolerance)
            return {false, fmt("s=%.1f: BER %.5f vs s/4=%.5f exceeds 3 sigma", s, ber, expected)};
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed >= 60.0) return {false, fmt("took %.1fs (limit 60s)", elapsed)};
    return {true, fmt("all 10 s values within 3 sigma (worst %.2f sigma), %.1fs", 3.0 * worst_ratio,
                      elapsed)};
}

// Criterion 2: at s=0.8 the reconciled BER is at most half the raw BER,
// averaged over at least 100 blocks.
Outcome gain_heavy_eavesdropping() {
    const PipelineRun run = run_pipeline(0.8, 260000, 18, 2024);
    if (run.blocks < 100) return {false, fmt("only %zu blocks", run.blocks)};
    const bool pass = run.post_ber <= run.pre_ber / 2.0;
    return {pass, fmt("pre %.4f -> post %.4f over %zu blocks (need post <= pre/2)", run.pre_ber,
                      run.post_ber, run.blocks)};
}

// Criterion 3: at s=0.1 reconciliation reduces the BER, 3-sigma test.
Outcome gain_light_eavesdropping() {
    const PipelineRun run = run_pipeline(0.1, 260000, 18, 2025);
    const double n = static_cast<double>(run.blocks) * 1024.0;
    const double sigma = std::sqrt((run.pre_ber * (1.0 - run.pre_ber)) / n +
                                   (run.post_ber * (1.0 - run.post_ber)) / n);
    const bool pass = run.pre_ber - run.post_ber > 3.0 * sigma;
    return {pass, fmt("pre %.4f -> post %.4f over %zu blocks (margin %.4f, 3 sigma %.4f)",
                      run.pre_ber, run.post_ber, run.blocks, run.pre_ber - run.post_ber,
                      3.0 * sigma)};
}

// Criteria 4 and 6 share one default-shaped sweep over s in {0.1..1.0}.
const SweepResult& grid_sweep() {
    static const SweepResult result = [] {
        SweepConfig config;
        config.s_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
        config.n_states = 20000;
        config.trials = 10;
        config.iteration_settings = {1, 18};
        config.seed = 31415;
        config.turbo = make_turbo_config(1024, 18, DecoderVariant::LogMap, 0.05, 31415);
        config.measure_timings = false;
        return run_sweep(config);
    }();
    return result;
}

// Criterion 4: mean error removal across the s grid is at least 50%.
Outcome average_error_removal() {
    const SweepResult& result = grid_sweep();
    for (const SweepSummary& summary : result.summaries) {
        if (summary.iterations != 18) continue;
        const bool pass = summary.error_removal >= 0.5;
        return {pass, fmt("mean removal %.1f%% at 18 iterations (need >= 50%%)",
                          summary.error_removal * 100.0)};
    }
    return {false, "no 18-iteration summary"};
}

// Criterion 5: at full eavesdropping the reconciled BER stays within the 11%
// secrecy bound.
Outcome full_eavesdropping_bound() {
    const PipelineRun run = run_pipeline(1.0, 260000, 18, 2026);
    if (run.blocks < 100) return {false, fmt("only %zu blocks", run.blocks)};
    const bool pass = run.post_ber <= 0.11;
    return {pass, fmt("post %.4f at s=1 over %zu blocks (bound 0.11)", run.post_ber, run.blocks)};
}

// Criterion 6: at s >= 0.8, 18 iterations do not do worse than 1 within
// 3 sigma.
Outcome iteration_tradeoff() {
    const SweepResult& result = grid_sweep();
    std::string detail;
    for (double s : {0.8, 0.9, 1.0}) {
        std::optional<SweepRow> one, eighteen;
        for (const SweepRow& row : result.rows) {
            if (std::fabs(row.s - s) > 1e-12) continue;
            if (row.iterations == 1) one = row;
            if (row.iterations == 18) eighteen = row;
        }
        if (!one || !eighteen) return {false, fmt("missing rows at s=%.1f", s)};
        const double sigma = std::sqrt(one->post_ber_stderr * one->post_ber_stderr +
                                       eighteen->post_ber_stderr * eighteen->post_ber_stderr);
        if (eighteen->post_ber_mean > one->post_ber_mean + 3.0 * sigma)
            return {false, fmt("s=%.1f: BER(18)=%.4f vs BER(1)=%.4f beyond 3 sigma", s,
                               eighteen->post_ber_mean, one->post_ber_mean)};
        detail += fmt("s=%.1f: %.4f/%.4f ", s, eighteen->post_ber_mean, one->post_ber_mean);
    }
    return {true, "BER(18)/BER(1) " + detail};
}

// Criterion 7: the SISO decoder matches exhaustive enumeration to 1e-9 in
// both variants, within 10 seconds.
Outcome decoder_oracle_equivalence() {
    const auto start = Clock::now();
    const TurboConfig config = make_turbo_config(8, 1, DecoderVariant::LogMap, 0.1, 99);
    const Trellis trellis = build_trellis(config);
    Rng rng(271828);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const bool terminated = trial % 2 == 0;
        Llrs sys(8), parity(terminated ? 10 : 8), apriori(8);
        for (auto& v : sys) v = (random_real(rng) - 0.5) * 8.0;
        for (auto& v : parity) v = (random_real(rng) - 0.5) * 8.0;
        for (auto& v : apriori) v = (random_real(rng) - 0.5) * 8.0;

        for (bool use_max : {false, true}) {
            const DecoderVariant variant =
                use_max ? DecoderVariant::MaxLogMap : DecoderVariant::LogMap;
            const SisoResult decoded = bcjr_decode(sys, parity, apriori, trellis, variant);
            const Llrs expected = oracle::exhaustive_posteriors(sys, parity, apriori, 07, 05, 2,
                                                                terminated, use_max);
            for (std::size_t i = 0; i < 8; ++i)
                worst = std::max(worst, std::fabs(decoded.posterior[i] - expected[i]));
        }
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed >= 10.0) return {false, fmt("took %.1fs (limit 10s)", elapsed)};
    const bool pass = worst <= 1e-9;
    return {pass, fmt("max |decoder - oracle| = %.2e over 50 vectors, %.2fs", worst, elapsed)};
}

// Criterion 8: the property bundle.
Outcome property_suite() {
    std::vector<std::string> failures;

    // Interleaver bijection for a spread of seeds.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const TurboConfig config = make_turbo_config(512, 1, DecoderVariant::LogMap, 0.1, seed);
        std::vector<std::uint32_t> sorted = config.interleaver;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i) failures.push_back(fmt("interleaver seed %llu not a bijection",
                                                       static_cast<unsigned long long>(seed)));
    }

    // Noiseless round-trip, 100 random messages.
    {
        const TurboConfig config = make_turbo_config(128, 1, DecoderVariant::LogMap, 0.1, 4);
        Rng rng(8128);
        for (int trial = 0; trial < 100; ++trial) {
            const Bits message = random_bits(rng, 128);
            const TurboCodeword cw = turbo_encode(message, config);
            Llrs sys(128), parity1(130), parity2(128);
            for (std::size_t i = 0; i < 128; ++i) {
                sys[i] = cw.systematic[i] ? -kLlrClamp : kLlrClamp;
                parity1[i] = cw.parity1[i] ? -kLlrClamp : kLlrClamp;
                parity2[i] = cw.parity2[i] ? -kLlrClamp : kLlrClamp;
            }
            for (std::size_t t = 0; t < 2; ++t)
                parity1[128 + t] = cw.tail1[t][1] ? -kLlrClamp : kLlrClamp;
            if (turbo_decode(sys, parity1, parity2, config).bits != message) {
                failures.push_back("noiseless round-trip failed");
                break;
            }
        }
    }

    // Encoder linearity on the pre-tail parity streams.
    {
        const TurboConfig config = make_turbo_config(64, 1, DecoderVariant::LogMap, 0.1, 5);
        Rng rng(6174);
        for (int trial = 0; trial < 50; ++trial) {
            const Bits m1 = random_bits(rng, 64), m2 = random_bits(rng, 64);
            Bits m3(64);
            for (std::size_t i = 0; i < 64; ++i) m3[i] = m1[i] ^ m2[i];
            const TurboCodeword c1 = turbo_encode(m1, config), c2 = turbo_encode(m2, config),
                                c3 = turbo_encode(m3, config);
            for (std::size_t i = 0; i < 64; ++i) {
                if (c3.parity1[i] != (c1.parity1[i] ^ c2.parity1[i]) ||
                    c3.parity2[i] != (c1.parity2[i] ^ c2.parity2[i])) {
                    failures.push_back("encoder linearity violated");
                    trial = 50;
                    break;
                }
            }
        }
    }

    // Sifting keeps half the positions at n = 1e5.
    {
        Rng alice(141), bob(142);
        const std::size_t n = 100000;
        const Bits bits = random_bits(alice, n);
        const SiftedPair pair =
            sift(random_bases(alice, n), random_bases(bob, n), bits, bits);
        const double fraction = static_cast<double>(pair.x_a.size()) / static_cast<double>(n);
        if (std::fabs(fraction - 0.5) > 0.005)
            failures.push_back(fmt("keep fraction %.4f outside 0.5 +/- 0.005", fraction));
    }

    // No eavesdropper, no discrepancies.
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const SiftedPair pair = run_bb84_session(20000, AttackParams{0.0}, seed);
        if (pair.x_a != pair.x_b) failures.push_back("s=0 session keys differ");
    }

    // Deterministic replay: same seed, identical CSV bytes.
    {
        SweepConfig config;
        config.s_values = {0.0, 0.4, 0.8};
        config.n_states = 6000;
        config.trials = 3;
        config.iteration_settings = {1, 4};
        config.seed = 2718;
        config.turbo = make_turbo_config(256, 4, DecoderVariant::LogMap, 0.05, 2718);
        config.measure_timings = false;
        std::ostringstream first, second;
        emit_csv(run_sweep(config).rows, first);
        emit_csv(run_sweep(config).rows, second);
        if (first.str() != second.str()) failures.push_back("replay CSV differs");
    }

    if (!failures.empty()) return {false, failures.front()};
    return {true, "bijection, round-trip, linearity, keep fraction, s=0 agreement, replay"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "QBER law BER = s/4 across the grid", qber_law},
        {2, "reconciliation gain at s=0.8 (factor >= 2)", gain_heavy_eavesdropping},
        {3, "reconciliation gain at s=0.1 (direction, 3 sigma)", gain_light_eavesdropping},
        {4, "average error removal >= 50% across the grid", average_error_removal},
        {5, "post-BER <= 11% at full eavesdropping", full_eavesdropping_bound},
        {6, "iteration trade-off at s >= 0.8", iteration_tradeoff},
        {7, "decoder oracle equivalence (1e-9)", decoder_oracle_equivalence},
        {8, "property suite", property_suite},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = Clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        std::printf("[%s] criterion %d: %s -- %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.id, criterion.name, outcome.detail.c_str(), elapsed);
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
