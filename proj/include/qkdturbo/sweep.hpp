#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qkdturbo/common.hpp"
#include "qkdturbo/turbo.hpp"

namespace qkdturbo {

/// Batch driver configuration: run `trials` sessions per eavesdropping
/// probability, reconcile each under every iteration setting, and aggregate.
struct SweepConfig {
    std::vector<double> s_values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::size_t n_states = 20000;
    std::size_t trials = 10;
    TurboConfig turbo;                              // iterations field is overridden per setting
    std::vector<unsigned> iteration_settings = {1, 18};
    std::uint64_t seed = 1;
    double sample_fraction = 0.1;
    bool measure_timings = true;  // disable for byte-reproducible output
    std::string output_path;      // consumed by the CLI, not by run_sweep
};

void validate(const SweepConfig& config);

/// One aggregated result per (s value, iteration setting). BER columns carry
/// the mean and standard error over trials; disclosed bits and timings are
/// per-trial means.
struct SweepRow {
    double s = 0.0;
    unsigned iterations = 0;
    double theoretical_ber = 0.0;  // always exactly s/4
    double pre_ber_mean = 0.0;
    double pre_ber_stderr = 0.0;
    double post_ber_mean = 0.0;
    double post_ber_stderr = 0.0;
    double disclosed_bits = 0.0;
    double session_seconds = 0.0;
    double reconcile_seconds = 0.0;

    bool operator==(const SweepRow&) const = default;
};

/// Grid-averaged figures per iteration setting. error_removal averages
/// (1 - post/pre) over the rows with nonzero pre-BER.
struct SweepSummary {
    unsigned iterations = 0;
    double mean_pre_ber = 0.0;
    double mean_post_ber = 0.0;
    double error_removal = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // s-major order, iteration settings inner
    std::vector<SweepSummary> summaries;
};

/// Deterministic given config.seed: per-trial seeds are derived from
/// (s index, trial index), and the same session feeds every iteration
/// setting so settings are compared on identical keys.
SweepResult run_sweep(const SweepConfig& config);

/// CSV schema, one header line then one line per row:
/// s,iterations,theoretical_ber,pre_ber_mean,pre_ber_stderr,post_ber_mean,
/// post_ber_stderr,disclosed_bits,session_seconds,reconcile_seconds
/// Values use shortest round-trip formatting, '.' decimal point, LF endings.
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Inverse of emit_csv; parse_csv(emit_csv(rows)) reproduces rows exactly.
std::vector<SweepRow> parse_csv(std::istream& in);

}  // namespace qkdturbo
