#pragma once

#include "nvpulse/pulse_basis.hpp"
#include "nvpulse/quadrature.hpp"

#include <string>
#include <vector>

namespace nvpulse {

enum class GateKind { SingleX, SingleY, CZ };

struct GateTarget {
    GateKind kind = GateKind::SingleX;
    std::size_t target_qubit = 0;
    double angle = kPi;  // X_T or Y_T; CZ always uses 2 pi

    static GateTarget x(std::size_t q, double angle) { return {GateKind::SingleX, q, angle}; }
    static GateTarget y(std::size_t q, double angle) { return {GateKind::SingleY, q, angle}; }
    static GateTarget cz() { return {GateKind::CZ, 0, kTwoPi}; }
    void validate(const Register& reg) const;
};

struct NoiseModel {
    double sigma_delta = 0.0;    // rad/s
    double sigma_epsilon = 0.0;
    double sigma_phi = 0.0;      // rad
    bool include_phase = true;
    int quadrature_nodes = 21;

    // Defaults for nuclear-spin (single-qubit) and electron-spin (CZ) drives.
    static NoiseModel nuclear();
    static NoiseModel electron();
    void validate() const;
    std::vector<NoisePoint> points() const;
};

struct AmplitudeBounds {
    double coeff_lo = -5e6;        // rad/s
    double coeff_hi = 5e6;
    double time_domain_cap = 25e6;

    static AmplitudeBounds single_qubit() { return {-5e6, 5e6, 25e6}; }
    static AmplitudeBounds cz() { return {0.5e6, 15e6, 80e6}; }
    void validate() const;
};

// Exact intrinsic infidelity of the noiseless rotation angles against a single-qubit target.
double intrinsic_infidelity_single(const std::vector<double>& X, const std::vector<double>& Y, const GateTarget& target);
double intrinsic_infidelity_single(const std::vector<double>& X, const GateTarget& target);
// Second-order expansion of the exact form.
double quadratic_infidelity_single(const std::vector<double>& X, const std::vector<double>& Y, const GateTarget& target);

double intrinsic_infidelity_cz(const std::array<double, 4>& X, const std::array<double, 4>& Y = {});
double quadratic_infidelity_cz(const std::array<double, 4>& X, const std::array<double, 4>& Y = {});

// Carrier frequency and quadrature used for a target: omega_j with a(w) or b(w), or lambda for CZ.
double target_carrier(const Register& reg, const GateTarget& target);
Quadrature target_quadrature(const GateTarget& target);

// Exact / quadratic infidelity of one waveform under one noise realization.
double realization_infidelity(const Register& reg, const GateTarget& target, const PulseWaveform& w,
                              const NoiseRealization& noise, bool quadratic);

struct BasisSolutions {
    PulseWaveform shape;               // basis, quadrature, carrier; coefficients unused
    std::vector<double> amplitudes;    // step-1 amplitude per basis index, rad/s
    std::vector<bool> clipped;         // amplitude sits on a bound
    std::vector<double> intrinsic;     // intrinsic infidelity of each single-basis pulse
};

// Step 1: per basis index, the bounded scalar amplitude minimizing the exact intrinsic infidelity.
BasisSolutions generate_basis_solutions(const Register& reg, const GateTarget& target, double tau, int basis_count,
                                        const AmplitudeBounds& bounds, double shift_fraction = 0.2);

// Intrinsic infidelity of a single basis function at amplitude f.
double single_basis_infidelity(const Register& reg, const GateTarget& target, const SincBasis& basis, int n, double f);

// Gauss-Hermite average of the quadratic-form infidelity.
double averaged_infidelity(const Register& reg, const GateTarget& target, const PulseWaveform& w, const NoiseModel& noise);
// Gauss-Hermite average of the exact infidelity.
double averaged_exact_infidelity(const Register& reg, const GateTarget& target, const PulseWaveform& w,
                                 const NoiseModel& noise);

struct SynthesisResult {
    GateTarget target;
    std::vector<double> per_basis_amplitudes;
    std::vector<bool> clipped;
    std::vector<double> combination;   // c_n multiplying the step-1 amplitudes
    PulseWaveform waveform;            // coefficients = c_n * amplitude_n
    double intrinsic_infidelity = 0.0;
    double quadratic_intrinsic = 0.0;
    double averaged_infidelity = 0.0;
    double averaged_exact = 0.0;
    double max_time_amplitude = 0.0;
    bool exceeds_cap = false;
    double condition_estimate = 0.0;
    double gradient_residual = 0.0;    // max |d<I>/dc_n| at the solution
    bool small_angle_flag = false;     // exact and quadratic averages differ by more than 10%
};

// Step 2: least-squares minimizer of the averaged quadratic infidelity over linear combinations.
SynthesisResult optimize_combination(const Register& reg, const GateTarget& target, const BasisSolutions& basis,
                                     const NoiseModel& noise, const AmplitudeBounds& bounds);

// Steps 1 and 2 with the first `basis_count` basis functions.
SynthesisResult synthesize(const Register& reg, const GateTarget& target, double tau, int basis_count,
                           const NoiseModel& noise, const AmplitudeBounds& bounds, double shift_fraction = 0.2);

// Keeps the first m basis solutions.
BasisSolutions truncate(const BasisSolutions& b, int m);

// Hadamard as Ry(pi/2) followed by Rx(pi) on the same qubit.
struct CompositeResult {
    std::vector<SynthesisResult> parts;
    double intrinsic_infidelity = 0.0;
    double averaged_infidelity = 0.0;
};

CompositeResult synthesize_hadamard(const Register& reg, std::size_t qubit, double tau, int basis_count,
                                    const NoiseModel& noise, const AmplitudeBounds& bounds, double shift_fraction = 0.2);

struct SweepRow {
    double tau = 0.0;
    int M = 0;
    double sigma_multiplier = 1.0;
    double intrinsic_I = 0.0;
    double averaged_I = 0.0;
    double max_amp = 0.0;
    std::string clipped_flags;
};

// One synthesis per (tau, M, multiplier) cell; sigma_delta is scaled by the multiplier. Rows are ordered tau, M, multiplier.
std::vector<SweepRow> linewidth_sweep(const Register& reg, const GateTarget& target, const std::vector<double>& taus,
                                      const std::vector<int>& Ms, const std::vector<double>& multipliers,
                                      const NoiseModel& noise, const AmplitudeBounds& bounds, int threads = 1,
                                      double shift_fraction = 0.2);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& r);

nlohmann::json noise_to_json(const NoiseModel& n);
NoiseModel noise_from_json(const nlohmann::json& j, const NoiseModel& defaults);
nlohmann::json bounds_to_json(const AmplitudeBounds& b);
AmplitudeBounds bounds_from_json(const nlohmann::json& j, const AmplitudeBounds& defaults);
nlohmann::json target_to_json(const GateTarget& t);
GateTarget target_from_json(const nlohmann::json& j);
nlohmann::json synthesis_to_json(const SynthesisResult& r);
SynthesisResult synthesis_from_json(const nlohmann::json& j);

}  // namespace nvpulse
