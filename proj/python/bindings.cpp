#include "nvpulse/circuits.hpp"
#include "nvpulse/config.hpp"
#include "nvpulse/gate_synth.hpp"
#include "nvpulse/misalignment.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace nvpulse;

namespace {

GateTarget make_target(const std::string& kind, int qubit, double angle) {
    if (kind == "x") return GateTarget::x(qubit, angle);
    if (kind == "y") return GateTarget::y(qubit, angle);
    if (kind == "cz") return GateTarget::cz();
    throw ConfigError("kind must be 'x', 'y' or 'cz'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Noise-robust pulse synthesis for NV-centre nuclear-spin registers";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    m.def("transition_frequencies", [] { return transition_frequencies(default_register()); },
          "Nuclear transition frequencies of the default register, rad/s.");

    m.def(
        "synthesize",
        [](const std::string& kind, int qubit, double angle, double tau, int basis_count) {
            const Register reg = default_register();
            const GateTarget t = make_target(kind, qubit, angle);
            const bool cz = t.kind == GateKind::CZ;
            const auto r = synthesize(reg, t, tau, basis_count, cz ? NoiseModel::electron() : NoiseModel::nuclear(),
                                      cz ? AmplitudeBounds::cz() : AmplitudeBounds::single_qubit());
            py::dict d;
            d["coefficients"] = r.waveform.coefficients;
            d["averaged_infidelity"] = r.averaged_infidelity;
            d["intrinsic_infidelity"] = r.intrinsic_infidelity;
            d["gradient_residual"] = r.gradient_residual;
            return d;
        },
        py::arg("kind"), py::arg("qubit") = 1, py::arg("angle") = kPi, py::arg("tau") = 1e-6, py::arg("basis_count") = 3);

    m.def("qft_pulse_count", [](int n) { return count_pulses(qft(n)); }, py::arg("n"));

    m.def(
        "qft_fidelity",
        [](int n, double T2, int reference_pulse_count) {
            SimulationOptions o;
            if (reference_pulse_count > 0) o.reference_pulse_count = reference_pulse_count;
            return simulate_circuit(qft(n), qft_input_state(n), {}, LindbladModel::uniform(n, T2), o).fidelity;
        },
        py::arg("n"), py::arg("T2") = 1.8e-3, py::arg("reference_pulse_count") = 0);

    m.def(
        "misalignment",
        [](double A_zz_MHz, double A_nd_MHz, double tau) {
            SurveySettings s;
            s.tau = tau;
            const auto rows =
                survey_sites({{"site", A_zz_MHz * kMHz, A_nd_MHz * kMHz}}, PhysicalConstants::defaults(), 0.62, s);
            return py::make_tuple(rows[0].angles.theta, rows[0].infidelity);
        },
        py::arg("A_zz_MHz"), py::arg("A_nd_MHz"), py::arg("tau") = 1e-6, "Returns (theta_rad, cz_infidelity).");

    m.def("config_hash", [](const std::string& text) { return config_hash(nlohmann::json::parse(text)); },
          py::arg("json_text"));
}
