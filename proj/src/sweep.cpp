#include "qkdturbo/sweep.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "qkdturbo/bb84.hpp"
#include "qkdturbo/reconcile.hpp"

namespace qkdturbo {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::string_view kCsvHeader =
    "s,iterations,theoretical_ber,pre_ber_mean,pre_ber_stderr,post_ber_mean,post_ber_stderr,"
    "disclosed_bits,session_seconds,reconcile_seconds";

double mean(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

double standard_error(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw IoError("emit_csv: failed to format value");
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view field) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw IoError("parse_csv: malformed numeric field '" + std::string(field) + "'");
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

void validate(const SweepConfig& config) {
    if (config.s_values.empty()) throw ConfigError("SweepConfig: no s values");
    for (double s : config.s_values)
        if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("SweepConfig: s values must lie in [0, 1]");
    if (config.n_states == 0) throw ConfigError("SweepConfig: n_states must be positive");
    if (config.trials == 0) throw ConfigError("SweepConfig: trials must be >= 1");
    if (config.iteration_settings.empty())
        throw ConfigError("SweepConfig: no iteration settings");
    for (unsigned iters : config.iteration_settings)
        if (iters == 0) throw ConfigError("SweepConfig: iteration settings must be >= 1");
    if (!(config.sample_fraction > 0.0 && config.sample_fraction < 1.0))
        throw ConfigError("SweepConfig: sample fraction must lie in (0, 1)");
    validate(config.turbo);
}

SweepResult run_sweep(const SweepConfig& config) {
    validate(config);
    const std::size_t num_settings = config.iteration_settings.size();

    struct Accumulator {
        std::vector<double> pre, post, disclosed, session_s, reconcile_s;
    };
    // [s index][iteration-setting index]
    std::vector<std::vector<Accumulator>> cells(
        config.s_values.size(), std::vector<Accumulator>(num_settings));

    for (std::size_t s_idx = 0; s_idx < config.s_values.size(); ++s_idx) {
        const AttackParams attack{config.s_values[s_idx]};
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            const std::uint64_t trial_seed = derive_seed(
                config.seed, derive_seed(stream::trial, (static_cast<std::uint64_t>(s_idx) << 32) |
                                                            static_cast<std::uint64_t>(trial)));

            const auto session_start = Clock::now();
            const SiftedPair pair = run_bb84_session(config.n_states, attack, trial_seed);
            Rng sample_rng = make_stream(trial_seed, stream::sample);
            auto [qber, trimmed] = estimate_qber(pair, config.sample_fraction, sample_rng);
            const double session_seconds =
                config.measure_timings
                    ? std::chrono::duration<double>(Clock::now() - session_start).count()
                    : 0.0;

            for (std::size_t it_idx = 0; it_idx < num_settings; ++it_idx) {
                TurboConfig turbo = config.turbo;
                turbo.iterations = config.iteration_settings[it_idx];

                const auto reconcile_start = Clock::now();
                const ReconciliationReport report = reconcile(trimmed, turbo, qber);
                const double reconcile_seconds =
                    config.measure_timings
                        ? std::chrono::duration<double>(Clock::now() - reconcile_start).count()
                        : 0.0;

                Accumulator& acc = cells[s_idx][it_idx];
                acc.pre.push_back(report.pre_ber);
                acc.post.push_back(report.post_ber);
                acc.disclosed.push_back(static_cast<double>(report.disclosed_bits));
                acc.session_s.push_back(session_seconds);
                acc.reconcile_s.push_back(reconcile_seconds);
            }
        }
    }

    SweepResult result;
    result.rows.reserve(config.s_values.size() * num_settings);
    for (std::size_t s_idx = 0; s_idx < config.s_values.size(); ++s_idx) {
        for (std::size_t it_idx = 0; it_idx < num_settings; ++it_idx) {
            const Accumulator& acc = cells[s_idx][it_idx];
            SweepRow row;
            row.s = config.s_values[s_idx];
            row.iterations = config.iteration_settings[it_idx];
            row.theoretical_ber = row.s / 4.0;
            row.pre_ber_mean = mean(acc.pre);
            row.pre_ber_stderr = standard_error(acc.pre);
            row.post_ber_mean = mean(acc.post);
            row.post_ber_stderr = standard_error(acc.post);
            row.disclosed_bits = mean(acc.disclosed);
            row.session_seconds = mean(acc.session_s);
            row.reconcile_seconds = mean(acc.reconcile_s);
            result.rows.push_back(row);
        }
    }

    for (std::size_t it_idx = 0; it_idx < num_settings; ++it_idx) {
        SweepSummary summary;
        summary.iterations = config.iteration_settings[it_idx];
        std::vector<double> pres, posts, removals;
        for (const SweepRow& row : result.rows) {
            if (row.iterations != summary.iterations) continue;
            pres.push_back(row.pre_ber_mean);
            posts.push_back(row.post_ber_mean);
            if (row.pre_ber_mean > 0.0)
                removals.push_back(1.0 - row.post_ber_mean / row.pre_ber_mean);
        }
        summary.mean_pre_ber = mean(pres);
        summary.mean_post_ber = mean(posts);
        summary.error_removal = mean(removals);
        result.summaries.push_back(summary);
    }
    return result;
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    out << kCsvHeader << '\n';
    for (const SweepRow& row : rows) {
        out << format_double(row.s) << ',' << row.iterations << ','
            << format_double(row.theoretical_ber) << ',' << format_double(row.pre_ber_mean) << ','
            << format_double(row.pre_ber_stderr) << ',' << format_double(row.post_ber_mean) << ','
            << format_double(row.post_ber_stderr) << ',' << format_double(row.disclosed_bits)
            << ',' << format_double(row.session_seconds) << ','
            << format_double(row.reconcile_seconds) << '\n';
    }
    if (!out) throw IoError("emit_csv: write failed");
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream file(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!file) throw IoError("emit_csv: cannot open '" + path + "' for writing");
    emit_csv(rows, file);
}

std::vector<SweepRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw IoError("parse_csv: missing or unexpected header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 10) throw IoError("parse_csv: expected 10 fields per line");
        SweepRow row;
        row.s = parse_double(fields[0]);
        row.iterations = static_cast<unsigned>(parse_double(fields[1]));
        row.theoretical_ber = parse_double(fields[2]);
        row.pre_ber_mean = parse_double(fields[3]);
        row.pre_ber_stderr = parse_double(fields[4]);
        row.post_ber_mean = parse_double(fields[5]);
        row.post_ber_stderr = parse_double(fields[6]);
        row.disclosed_bits = parse_double(fields[7]);
        row.session_seconds = parse_double(fields[8]);
        row.reconcile_seconds = parse_double(fields[9]);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qkdturbo
