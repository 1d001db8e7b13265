#pragma once

#include "nvpulse/lindblad.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nvpulse {

enum class OpKind { Rx, Ry, CZ };

struct CircuitOp {
    OpKind kind = OpKind::Rx;
    std::vector<int> qubits;
    double angle = 0.0;     // rad, rotations only
    double duration = 0.0;  // s
};

// Ops are stored in execution order.
struct Circuit {
    int n = 0;
    std::vector<CircuitOp> ops;

    void validate() const;
    void append(const Circuit& other);
};

enum class GateName { H, Phase, CPhase, CNOT, SWAP, QFT };

struct GateSpec {
    GateName name = GateName::H;
    std::vector<int> qubits;  // H/PHASE: {q}; CPHASE/CNOT/SWAP: {a, b} (a control); QFT: unused
    double theta = 0.0;
    int n = 0;                // register size
};

// Decomposition into Rx, Ry and CZ pulses with zero durations.
Circuit decompose(const GateSpec& gate);
Circuit hadamard(int n, int q);
Circuit phase_gate(int n, int q, double theta);
Circuit cphase(int n, int a, int b, double theta);
Circuit cnot(int n, int a, int b);
Circuit swap_gate(int n, int a, int b);
Circuit qft(int n);

int count_pulses(const Circuit& c);

// Generator K with U = exp(-i K) for one op on the full register.
CMat op_generator(const CircuitOp& op, int n);
CMat op_unitary(const CircuitOp& op, int n);
CMat circuit_unitary(const Circuit& c);

// Normalized DFT with omega = exp(2 pi i / 2^n), qubit 0 most significant.
CMat dft_matrix(int n);

// |Tr(U^dag V)| / dim.
double global_phase_fidelity(const CMat& U, const CMat& V);

struct TimingModel {
    double single_gate_time = 1e-6;
    double cz_gate_time = 1e-6;
    int readout_cycles = 500;
    double cycle_time = 2e-6;

    void validate() const;
};

// pulse_count * single_gate_time + n * M * t_c.
double timing_report(int n, int pulse_count, const TimingModel& timing);

// Sets each op duration from the timing model times `scale`.
Circuit with_timing(Circuit c, const TimingModel& timing, double scale = 1.0);

struct SimulationOptions {
    std::optional<int> reference_pulse_count;  // scales op durations so the shot exposure matches this count
    int max_qubits = 5;
    bool dense = false;                        // full 4^n superoperator instead of the factorized channel
};

struct SimulationReport {
    double fidelity = 1.0;
    int derived_pulse_count = 0;
    int reference_pulse_count = 0;
    double duration_scale = 1.0;
    double shot_time = 0.0;
    double total_time = 0.0;
};

// Evolves psi_in through the circuit (op durations from `timing`) with concurrent dephasing;
// fidelity against the ideal output U psi_in.
SimulationReport simulate_circuit(const Circuit& c, const CVec& psi_in, const TimingModel& timing,
                                  const LindbladModel& model, const SimulationOptions& opts = {});

// Density matrix after the noisy circuit; op durations are taken as stored.
CMat run_noisy(const Circuit& c, const CMat& rho0, const LindbladModel& model, bool dense = false);

// DFT^dag |0...01>, the preimage of |0...01> under QFT(n).
CVec qft_input_state(int n);

struct SweepPoint {
    double multiple = 0.0;
    double fidelity = 1.0;
    double total_time = 0.0;
};

// Gate times scaled by each multiple of the timing model's gate times.
std::vector<SweepPoint> fidelity_sweep(const Circuit& c, const CVec& psi_in, const TimingModel& timing,
                                       const LindbladModel& model, const std::vector<double>& multiples,
                                       const SimulationOptions& opts = {}, int threads = 1);

struct ShotSample {
    long shot = 0;
    double running_mean = 0.0;
    double wall_time = 0.0;
};

std::vector<ShotSample> sample_shot_convergence(double p, long shots, std::uint64_t seed, double shot_time);

// Least-squares fit of F = A exp(-k x) on log F.
struct DecayFit {
    double amplitude = 1.0;
    double rate = 0.0;
};

DecayFit fit_exponential_decay(const std::vector<double>& x, const std::vector<double>& F);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace nvpulse
