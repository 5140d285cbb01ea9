#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qkdturbo/bb84.hpp"
#include "qkdturbo/reconcile.hpp"
#include "qkdturbo/sweep.hpp"
#include "qkdturbo/turbo.hpp"

namespace py = pybind11;
using namespace qkdturbo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "BB84 intercept-resend simulation with turbo-code key reconciliation";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<ProtocolError>(m, "ProtocolError");
    py::register_exception<IoError>(m, "IoError");

    py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t>(), py::arg("seed"));

    py::enum_<Basis>(m, "Basis")
        .value("Rectilinear", Basis::Rectilinear)
        .value("Diagonal", Basis::Diagonal);

    py::class_<PolarizedState>(m, "PolarizedState")
        .def(py::init<Basis, std::uint8_t>(), py::arg("basis"), py::arg("bit"))
        .def_readwrite("basis", &PolarizedState::basis)
        .def_readwrite("bit", &PolarizedState::bit)
        .def("__eq__", [](const PolarizedState& a, const PolarizedState& b) { return a == b; });

    py::class_<AttackParams>(m, "AttackParams")
        .def(py::init<double>(), py::arg("intercept_probability"))
        .def_readwrite("intercept_probability", &AttackParams::intercept_probability);

    py::class_<SiftedPair>(m, "SiftedPair")
        .def(py::init<>())
        .def_readwrite("x_a", &SiftedPair::x_a)
        .def_readwrite("x_b", &SiftedPair::x_b)
        .def_readwrite("kept_positions", &SiftedPair::kept_positions)
        .def_readwrite("raw_length", &SiftedPair::raw_length);

    m.def("prepare_states", &prepare_states, py::arg("bits"), py::arg("bases"));
    m.def("measure", &measure, py::arg("states"), py::arg("bases"), py::arg("rng"));
    m.def("intercept_resend", &intercept_resend, py::arg("states"), py::arg("attack"),
          py::arg("rng"));
    m.def("sift", &sift, py::arg("alice_bases"), py::arg("bob_bases"), py::arg("alice_bits"),
          py::arg("bob_bits"));
    m.def("run_bb84_session", &run_bb84_session, py::arg("n_states"), py::arg("attack"),
          py::arg("seed"));
    m.def("theoretical_ber", &theoretical_ber, py::arg("attack"));

    py::enum_<DecoderVariant>(m, "DecoderVariant")
        .value("LogMap", DecoderVariant::LogMap)
        .value("MaxLogMap", DecoderVariant::MaxLogMap);

    py::class_<TurboConfig>(m, "TurboConfig")
        .def(py::init<>())
        .def_readwrite("feedback_poly", &TurboConfig::feedback_poly)
        .def_readwrite("forward_poly", &TurboConfig::forward_poly)
        .def_readwrite("constraint_length", &TurboConfig::constraint_length)
        .def_readwrite("block_length", &TurboConfig::block_length)
        .def_readwrite("interleaver", &TurboConfig::interleaver)
        .def_readwrite("iterations", &TurboConfig::iterations)
        .def_readwrite("variant", &TurboConfig::variant)
        .def_readwrite("crossover_estimate", &TurboConfig::crossover_estimate);

    m.def("make_turbo_config", &make_turbo_config, py::arg("block_length"), py::arg("iterations"),
          py::arg("variant"), py::arg("crossover_estimate"), py::arg("interleaver_seed"));

    py::class_<TurboCodeword>(m, "TurboCodeword")
        .def_readonly("systematic", &TurboCodeword::systematic)
        .def_readonly("parity1", &TurboCodeword::parity1)
        .def_readonly("tail1", &TurboCodeword::tail1)
        .def_readonly("parity2", &TurboCodeword::parity2);

    py::class_<TurboDecodeResult>(m, "TurboDecodeResult")
        .def_readonly("bits", &TurboDecodeResult::bits)
        .def_readonly("iteration_trace", &TurboDecodeResult::iteration_trace);

    m.def("turbo_encode", &turbo_encode, py::arg("message"), py::arg("config"));
    m.def("turbo_decode", &turbo_decode, py::arg("sys_llr"), py::arg("parity1_llr"),
          py::arg("parity2_llr"), py::arg("config"));
    m.def("bsc_llr", &bsc_llr, py::arg("observed"), py::arg("crossover"));

    py::class_<QberEstimate>(m, "QberEstimate")
        .def(py::init<>())
        .def_readwrite("estimate", &QberEstimate::estimate)
        .def_readwrite("sample_size", &QberEstimate::sample_size)
        .def_readwrite("sacrificed_positions", &QberEstimate::sacrificed_positions);

    py::class_<ReconciliationReport>(m, "ReconciliationReport")
        .def_readonly("x_hat_a", &ReconciliationReport::x_hat_a)
        .def_readonly("pre_ber", &ReconciliationReport::pre_ber)
        .def_readonly("post_ber", &ReconciliationReport::post_ber)
        .def_readonly("disclosed_bits", &ReconciliationReport::disclosed_bits)
        .def_readonly("iterations_used", &ReconciliationReport::iterations_used)
        .def_readonly("encode_seconds", &ReconciliationReport::encode_seconds)
        .def_readonly("decode_seconds", &ReconciliationReport::decode_seconds);

    m.def("estimate_qber", &estimate_qber, py::arg("pair"), py::arg("sample_fraction"),
          py::arg("rng"));
    m.def("reconcile", &reconcile, py::arg("pair"), py::arg("config"), py::arg("qber"));
    m.def("measure_ber", &measure_ber, py::arg("a"), py::arg("b"));

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("s_values", &SweepConfig::s_values)
        .def_readwrite("n_states", &SweepConfig::n_states)
        .def_readwrite("trials", &SweepConfig::trials)
        .def_readwrite("turbo", &SweepConfig::turbo)
        .def_readwrite("iteration_settings", &SweepConfig::iteration_settings)
        .def_readwrite("seed", &SweepConfig::seed)
        .def_readwrite("sample_fraction", &SweepConfig::sample_fraction)
        .def_readwrite("measure_timings", &SweepConfig::measure_timings)
        .def_readwrite("output_path", &SweepConfig::output_path);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("s", &SweepRow::s)
        .def_readonly("iterations", &SweepRow::iterations)
        .def_readonly("theoretical_ber", &SweepRow::theoretical_ber)
        .def_readonly("pre_ber_mean", &SweepRow::pre_ber_mean)
        .def_readonly("pre_ber_stderr", &SweepRow::pre_ber_stderr)
        .def_readonly("post_ber_mean", &SweepRow::post_ber_mean)
        .def_readonly("post_ber_stderr", &SweepRow::post_ber_stderr)
        .def_readonly("disclosed_bits", &SweepRow::disclosed_bits)
        .def_readonly("session_seconds", &SweepRow::session_seconds)
        .def_readonly("reconcile_seconds", &SweepRow::reconcile_seconds);

    py::class_<SweepSummary>(m, "SweepSummary")
        .def_readonly("iterations", &SweepSummary::iterations)
        .def_readonly("mean_pre_ber", &SweepSummary::mean_pre_ber)
        .def_readonly("mean_post_ber", &SweepSummary::mean_post_ber)
        .def_readonly("error_removal", &SweepSummary::error_removal);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("summaries", &SweepResult::summaries);

    m.def("run_sweep", &run_sweep, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("emit_csv",
          py::overload_cast<const std::vector<SweepRow>&, const std::string&>(&emit_csv),
          py::arg("rows"), py::arg("path"));
}
