#include <algorithm>
#include <iostream>
#include <sstream>

#include "doctest.h"
#include "qkdturbo/random.hpp"
#include "qkdturbo/sweep.hpp"

using namespace qkdturbo;

namespace {

SweepConfig tiny_sweep(std::vector<double> s_values, std::uint64_t seed) {
    SweepConfig config;
    config.s_values = std::move(s_values);
    config.n_states = 4000;
    config.trials = 2;
    config.turbo = make_turbo_config(256, 2, DecoderVariant::LogMap, 0.05, seed);
    config.iteration_settings = {1, 2};
    config.seed = seed;
    config.measure_timings = false;
    return config;
}

}  // namespace

TEST_CASE("sweep config validation") {
    SweepConfig config = tiny_sweep({0.2}, 1);
    config.s_values = {1.2};
    CHECK_THROWS_AS(validate(config), ConfigError);
    config = tiny_sweep({0.2}, 1);
    config.trials = 0;
    CHECK_THROWS_AS(validate(config), ConfigError);
    config = tiny_sweep({0.2}, 1);
    config.iteration_settings.clear();
    CHECK_THROWS_AS(validate(config), ConfigError);
    config = tiny_sweep({0.2}, 1);
    config.sample_fraction = 1.0;
    CHECK_THROWS_AS(validate(config), ConfigError);
}

TEST_CASE("a sweep at s=0 reports zero error rates") {
    const SweepResult result = run_sweep(tiny_sweep({0.0}, 5));
    REQUIRE(result.rows.size() == 2);  // one per iteration setting
    for (const SweepRow& row : result.rows) {
        CHECK(row.s == 0.0);
        CHECK(row.theoretical_ber == 0.0);
        CHECK(row.pre_ber_mean == 0.0);
        CHECK(row.post_ber_mean == 0.0);
    }
}

TEST_CASE("rows carry s/4 exactly and order is s-major") {
    const SweepResult result = run_sweep(tiny_sweep({0.0, 0.4}, 7));
    REQUIRE(result.rows.size() == 4);
    CHECK(result.rows[0].s == 0.0);
    CHECK(result.rows[0].iterations == 1);
    CHECK(result.rows[1].s == 0.0);
    CHECK(result.rows[1].iterations == 2);
    CHECK(result.rows[2].s == 0.4);
    for (const SweepRow& row : result.rows) {
        CHECK(row.theoretical_ber == row.s / 4.0);
        CHECK(row.post_ber_mean <= row.pre_ber_mean + 3.0 * row.pre_ber_stderr);
    }
    CHECK(result.summaries.size() == 2);
}

TEST_CASE("same seed reproduces the CSV byte for byte") {
    const SweepConfig config = tiny_sweep({0.0, 0.6}, 11);
    std::ostringstream first, second;
    emit_csv(run_sweep(config).rows, first);
    emit_csv(run_sweep(config).rows, second);
    CHECK(first.str() == second.str());
    CHECK(!first.str().empty());

    SweepConfig other = config;
    other.seed = 12;
    std::ostringstream third;
    emit_csv(run_sweep(other).rows, third);
    CHECK(first.str() != third.str());
}

TEST_CASE("a single zero row emits a two-line file with plain zeros") {
    SweepRow row;
    row.iterations = 1;
    std::ostringstream out;
    emit_csv({row}, out);
    std::istringstream lines(out.str());
    std::string header, data, extra;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, data));
    CHECK(!std::getline(lines, extra));
    CHECK(data == "0,1,0,0,0,0,0,0,0,0");
}

TEST_CASE("every emitted line has the 10 schema columns") {
    const SweepResult result = run_sweep(tiny_sweep({0.0, 0.4}, 13));
    std::ostringstream out;
    emit_csv(result.rows, out);
    std::istringstream lines(out.str());
    std::string line;
    while (std::getline(lines, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
}

TEST_CASE("csv round-trips random rows exactly") {
    Rng rng(17);
    for (int set = 0; set < 10; ++set) {
        std::vector<SweepRow> rows(1 + random_below(rng, 8));
        for (SweepRow& row : rows) {
            row.s = random_real(rng);
            row.iterations = 1 + static_cast<unsigned>(random_below(rng, 30));
            row.theoretical_ber = row.s / 4.0;
            row.pre_ber_mean = random_real(rng);
            row.pre_ber_stderr = random_real(rng) * 1e-3;
            row.post_ber_mean = random_real(rng);
            row.post_ber_stderr = random_real(rng) * 1e-3;
            row.disclosed_bits = random_real(rng) * 1e6;
            row.session_seconds = random_real(rng);
            row.reconcile_seconds = random_real(rng);
        }
        std::ostringstream out;
        emit_csv(rows, out);
        std::istringstream in(out.str());
        CHECK(parse_csv(in) == rows);
    }
}

TEST_CASE("emit_csv rejects empty input and unwritable paths") {
    CHECK_THROWS_AS(emit_csv({}, std::cout), std::invalid_argument);
    CHECK_THROWS_AS(emit_csv({SweepRow{}}, std::string("/nonexistent-dir/out.csv")), IoError);
}

TEST_CASE("parse_csv rejects malformed input") {
    std::istringstream bad_header("wrong\n");
    CHECK_THROWS_AS(parse_csv(bad_header), IoError);
    std::istringstream short_line(
        "s,iterations,theoretical_ber,pre_ber_mean,pre_ber_stderr,post_ber_mean,post_ber_stderr,"
        "disclosed_bits,session_seconds,reconcile_seconds\n1,2,3\n");
    CHECK_THROWS_AS(parse_csv(short_line), IoError);
}
