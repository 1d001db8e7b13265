#include "nvpulse/cli.hpp"

#include "nvpulse/circuits.hpp"
#include "nvpulse/config.hpp"
#include "nvpulse/gate_synth.hpp"
#include "nvpulse/misalignment.hpp"
#include "nvpulse/time_ordered.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nvpulse {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_relative(const fs::path& base, const std::string& path) {
    const fs::path p = fs::path(path).is_absolute() ? fs::path(path) : base / path;
    return load_json_file(p.string());
}

Register load_register(const json& cfg) {
    Register reg = cfg.contains("register") ? register_from_json(cfg.at("register")) : default_register();
    reg.validate();
    return reg;
}

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10e", x);
    return buf;
}

std::string csv_preamble(const json& cfg, const Register& reg) {
    return "# config_hash: " + config_hash(cfg) + "\n# constants: " + constants_table(reg).dump() + "\n";
}

json json_envelope(const json& cfg, const Register& reg, const json& result) {
    return {{"config_hash", config_hash(cfg)}, {"constants", constants_table(reg)}, {"config", cfg}, {"result", result}};
}

std::vector<double> grid_values(const json& cfg, const std::string& list_key, const std::string& range_key) {
    if (cfg.contains(list_key)) return cfg.at(list_key).get<std::vector<double>>();
    if (cfg.contains(range_key)) {
        const auto& g = cfg.at(range_key);
        const double a = g.at("start").get<double>(), b = g.at("stop").get<double>(), s = g.at("step").get<double>();
        if (!(s > 0.0) || b < a) throw ConfigError(range_key + " needs step > 0 and stop >= start");
        const long n = std::lround((b - a) / s) + 1;
        std::vector<double> v;
        for (long k = 0; k < n; ++k) v.push_back(a + static_cast<double>(k) * s);
        return v;
    }
    throw ConfigError("config needs '" + list_key + "' or '" + range_key + "'");
}

template <class F>
auto with_json_errors(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

json resolve_config(const RunOptions& opts) {
    json cfg = load_json_file(opts.config_path);
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    const fs::path base = fs::path(opts.config_path).parent_path();
    for (const char* key : {"register", "synthesis", "circuit", "sites"})
        if (cfg.contains(key) && cfg[key].is_string()) {
            const auto s = cfg[key].get<std::string>();
            if (std::string(key) == "circuit" && (s == "qft3" || s == "qft5")) continue;
            cfg[key] = load_relative(base, s);
        }
    cfg["seed"] = opts.seed ? *opts.seed : cfg.value("seed", std::uint64_t{0});
    return cfg;
}

OutputFiles cmd_synthesize(const RunOptions& opts) {
    const json cfg = resolve_config(opts);
    const Register reg = load_register(cfg);
    return with_json_errors("synthesize config", [&] {
        const GateTarget target = target_from_json(cfg.at("target"));
        target.validate(reg);
        const bool cz = target.kind == GateKind::CZ;
        const NoiseModel noise = noise_from_json(cfg.value("noise", json()), cz ? NoiseModel::electron() : NoiseModel::nuclear());
        const AmplitudeBounds bounds =
            bounds_from_json(cfg.value("bounds", json()), cz ? AmplitudeBounds::cz() : AmplitudeBounds::single_qubit());
        const double sf = cfg.value("shift_fraction", 0.2);
        const auto taus = grid_values(cfg, "tau_s", "tau_grid_s");
        std::vector<int> Ms;
        if (cfg.contains("M"))
            Ms = cfg.at("M").get<std::vector<int>>();
        else
            for (int m = 1; m <= cfg.value("M_max", 6); ++m) Ms.push_back(m);
        const auto mult = cfg.value("sigma_multipliers", std::vector<double>{1.0});
        if (taus.empty() || Ms.empty() || mult.empty()) throw ConfigError("sweep grids must be non-empty");
        for (int m : Ms)
            if (m < 1) throw ConfigError("basis counts must be at least 1");

        const auto rows = linewidth_sweep(reg, target, taus, Ms, mult, noise, bounds, opts.threads, sf);

        const json cell = cfg.value("result_cell", json::object());
        const double tau = cell.value("tau_s", taus.front());
        const int M = cell.value("M", *std::max_element(Ms.begin(), Ms.end()));
        const auto result = synthesize(reg, target, tau, M, noise, bounds, sf);

        std::string csv = csv_preamble(cfg, reg) + sweep_csv_header() + "\n";
        for (const auto& r : rows) csv += sweep_csv_row(r) + "\n";
        json res = synthesis_to_json(result);
        res["tau_s"] = tau;
        res["M"] = M;
        res["noise"] = noise_to_json(noise);
        res["bounds"] = bounds_to_json(bounds);
        return OutputFiles{{"synthesis.json", json_envelope(cfg, reg, res).dump(2) + "\n"}, {"sweep.csv", csv}};
    });
}

OutputFiles cmd_refine(const RunOptions& opts) {
    const json cfg = resolve_config(opts);
    const Register reg = load_register(cfg);
    return with_json_errors("refine config", [&] {
        GateTarget target;
        json wj;
        if (cfg.contains("synthesis")) {
            const json& s = cfg.at("synthesis").contains("result") ? cfg.at("synthesis").at("result") : cfg.at("synthesis");
            target = target_from_json(s.at("target"));
            wj = s.at("waveform");
        } else {
            target = target_from_json(cfg.at("target"));
            wj = cfg.at("waveform");
        }
        target.validate(reg);
        if (target.kind == GateKind::CZ) throw ConfigError("refinement supports single-qubit gates only");
        if (!wj.contains("carrier_rad_s")) wj["carrier_rad_s"] = target_carrier(reg, target);
        const PulseWaveform w = waveform_from_json(wj);

        NoiseModel defaults = NoiseModel::nuclear();
        defaults.quadrature_nodes = 3;
        const NoiseModel noise = noise_from_json(cfg.value("noise", json()), defaults);

        RefinementGrid grid = RefinementGrid::origin_only(w.basis.count());
        if (cfg.contains("grid")) {
            const auto& g = cfg.at("grid");
            grid.box = g.at("box_rad_s").get<std::vector<std::pair<double, double>>>();
            grid.coarse_step = g.value("coarse_step_rad_s", grid.coarse_step);
            grid.fine_step = g.value("fine_step_rad_s", grid.fine_step);
        }
        const std::string integ = cfg.value("integrator", std::string("magnus4"));
        if (integ != "magnus4" && integ != "midpoint") throw ConfigError("integrator must be 'magnus4' or 'midpoint'");
        PropagatorSettings settings =
            PropagatorSettings::for_tau(w.basis.tau, integ == "magnus4" ? Integrator::Magnus4 : Integrator::Midpoint);
        settings.steps = cfg.value("steps", settings.steps);

        const auto rep = refine_coefficients(reg, w, target, noise, grid, settings, opts.threads, cfg.value("polish", false));
        json res = refinement_to_json(rep);
        res["target"] = target_to_json(target);
        res["noise"] = noise_to_json(noise);
        res["integrator"] = integ;
        return OutputFiles{{"refinement.json", json_envelope(cfg, reg, res).dump(2) + "\n"}};
    });
}

OutputFiles cmd_simulate(const RunOptions& opts) {
    const json cfg = resolve_config(opts);
    const Register reg = load_register(cfg);
    return with_json_errors("simulate config", [&] {
        const json& cj = cfg.at("circuit");
        Circuit circuit;
        std::optional<int> reference;
        std::string input = "zero";
        if (cj.is_string()) {
            const int n = cj.get<std::string>() == "qft3" ? 3 : 5;
            circuit = qft(n);
            reference = n == 3 ? 75 : 195;
            input = "qft_preimage";
        } else {
            circuit = circuit_from_json(cj);
        }
        if (cfg.contains("reference_pulse_count"))
            reference = cfg["reference_pulse_count"].is_null() ? std::nullopt : std::optional<int>(cfg["reference_pulse_count"].get<int>());
        input = cfg.value("input_state", input);

        SimulationOptions sim;
        sim.reference_pulse_count = reference;
        sim.dense = cfg.value("dense", false);
        if (circuit.n > sim.max_qubits)
            throw ConfigError("circuit has " + std::to_string(circuit.n) + " qubits; at most 5 are supported");

        const Eigen::Index dim = Eigen::Index{1} << circuit.n;
        CVec psi = CVec::Zero(dim);
        if (input == "qft_preimage")
            psi = qft_input_state(circuit.n);
        else if (input == "zero")
            psi(0) = 1.0;
        else if (input == "plus")
            psi.setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
        else
            throw ConfigError("input_state must be 'qft_preimage', 'zero' or 'plus'");

        LindbladModel model;
        const json& t2 = cfg.at("T2_s");
        model = t2.is_array() ? LindbladModel{t2.get<std::vector<double>>()} : LindbladModel::uniform(circuit.n, t2.get<double>());
        model.validate();

        TimingModel timing;
        if (cfg.contains("timing")) {
            const auto& tj = cfg.at("timing");
            timing.single_gate_time = tj.value("single_gate_time_s", timing.single_gate_time);
            timing.cz_gate_time = tj.value("cz_gate_time_s", timing.cz_gate_time);
            timing.readout_cycles = tj.value("readout_cycles", timing.readout_cycles);
            timing.cycle_time = tj.value("cycle_time_s", timing.cycle_time);
        }
        timing.validate();
        std::vector<double> multiples = cfg.value("gate_time_multiples", std::vector<double>{});
        if (multiples.empty())
            for (int k = 0; k <= 10; ++k) multiples.push_back(0.1 * k);

        const auto sweep = fidelity_sweep(circuit, psi, timing, model, multiples, sim, opts.threads);
        const auto final_rep = simulate_circuit(circuit, psi, timing, model, sim);
        const long shots = cfg.value("shots", 1000L);
        const auto trace = sample_shot_convergence(final_rep.fidelity, shots, cfg.at("seed").get<std::uint64_t>(),
                                                   final_rep.total_time);

        std::string sw = csv_preamble(cfg, reg) + "gate_time_multiple,single_gate_time_s,fidelity,total_time_s\n";
        for (const auto& p : sweep)
            sw += sci(p.multiple) + "," + sci(p.multiple * timing.single_gate_time) + "," + sci(p.fidelity) + "," +
                  sci(p.total_time) + "\n";
        std::string st = csv_preamble(cfg, reg) + "shot,running_mean,wall_time_s\n";
        for (const auto& s : trace) st += std::to_string(s.shot) + "," + sci(s.running_mean) + "," + sci(s.wall_time) + "\n";

        json res = {{"qubits", circuit.n},
                    {"derived_pulse_count", final_rep.derived_pulse_count},
                    {"reference_pulse_count", final_rep.reference_pulse_count},
                    {"duration_scale", final_rep.duration_scale},
                    {"fidelity", final_rep.fidelity},
                    {"shot_time_s", final_rep.shot_time},
                    {"total_time_s", final_rep.total_time},
                    {"timing_report_s", timing_report(circuit.n, final_rep.reference_pulse_count, timing)},
                    {"input_state", input},
                    {"shots", shots}};
        return OutputFiles{{"simulation.json", json_envelope(cfg, reg, res).dump(2) + "\n"},
                           {"fidelity_sweep.csv", sw},
                           {"shot_trace.csv", st}};
    });
}

OutputFiles cmd_survey_misalignment(const RunOptions& opts) {
    const json cfg = resolve_config(opts);
    const Register reg = load_register(cfg);
    return with_json_errors("survey config", [&] {
        const auto sites = sites_from_json(cfg.at("sites"));
        SurveySettings s;
        s.tau = cfg.value("tau_s", s.tau);
        s.phi = cfg.value("phi_rad", s.phi);
        s.isotope = cfg.value("isotope", s.isotope);
        if (!(s.tau > 0.0)) throw ConfigError("tau_s must be positive");
        const auto rows = survey_sites(sites, reg.constants, reg.B0, s, opts.threads);
        std::string csv = csv_preamble(cfg, reg) + survey_csv_header() + "\n";
        for (const auto& r : rows) csv += survey_csv_row(r) + "\n";
        return OutputFiles{{"misalignment_survey.csv", csv}};
    });
}

void write_outputs(const std::string& out_dir, const OutputFiles& files) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());
    for (const auto& [name, text] : files) {
        const fs::path target = fs::path(out_dir) / name;
        const fs::path tmp = fs::path(out_dir) / (name + ".tmp");
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
            out << text;
        }
        fs::rename(tmp, target);
    }
}

int run_subcommand(const std::string& name, const RunOptions& opts, std::string& message) {
    try {
        OutputFiles files;
        if (name == "synthesize")
            files = cmd_synthesize(opts);
        else if (name == "refine")
            files = cmd_refine(opts);
        else if (name == "simulate")
            files = cmd_simulate(opts);
        else if (name == "survey-misalignment")
            files = cmd_survey_misalignment(opts);
        else
            throw ConfigError("unknown subcommand '" + name + "'");
        write_outputs(opts.out_dir, files);
        std::ostringstream os;
        for (const auto& [f, text] : files) os << "wrote " << (fs::path(opts.out_dir) / f).string() << "\n";
        message = os.str();
        return 0;
    } catch (const ConfigError& e) {
        message = std::string("config error: ") + e.what() + "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        message = std::string("config error: ") + e.what() + "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        message = std::string("config error: ") + e.what() + "\n";
        return 1;
    } catch (const SolverError& e) {
        message = std::string("solver failure: ") + e.what() + "\n";
        return 2;
    } catch (const std::exception& e) {
        message = std::string("solver failure: ") + e.what() + "\n";
        return 2;
    }
}

}  // namespace nvpulse
