#pragma once

#include "nvpulse/gate_synth.hpp"

#include <string>
#include <utility>
#include <vector>

namespace nvpulse {

enum class Integrator { Magnus4, Midpoint };

struct PropagatorSettings {
    int steps = 8000;
    Integrator integrator = Integrator::Magnus4;
    double unitarity_tolerance = 1e-10;

    // 8000 steps per microsecond of gate time.
    static PropagatorSettings for_tau(double tau, Integrator integrator = Integrator::Magnus4);
    void validate() const;
};

// Time-ordered propagator of every nucleus (2x2 each) under H_single with the noisy field.
std::vector<Mat2> propagate_factors(const Register& reg, const PulseWaveform& w, const NoiseRealization& noise,
                                    const PropagatorSettings& settings);

// Full register propagator, the tensor product of the per-nucleus factors.
CMat propagate(const Register& reg, const PulseWaveform& w, const NoiseRealization& noise,
               const PropagatorSettings& settings);

// Largest entry of |U - V|.
double operator_distance(const CMat& U, const CMat& V);

// Ideal single-qubit gate on each nucleus (identity off target).
std::vector<Mat2> target_factors(std::size_t nuclei, const GateTarget& target);

// 1 - Re Tr(U^dag V) / Tr(U^dag U) for tensor-product operators.
double factor_infidelity(const std::vector<Mat2>& U, const std::vector<Mat2>& V);

double refined_averaged_infidelity(const Register& reg, const PulseWaveform& w, const GateTarget& target,
                                   const NoiseModel& noise, const PropagatorSettings& settings, int threads = 1);

struct RefinementGrid {
    std::vector<std::pair<double, double>> box;  // per-coefficient offset range, rad/s
    double coarse_step = 0.05e6;
    double fine_step = 0.01e6;                   // <= 0 disables the fine pass

    static RefinementGrid origin_only(int m);
    void validate(int m) const;
};

struct RefinementReport {
    std::vector<double> c;   // rad/s
    std::vector<double> d;   // rad/s
    int N = 0;
    double unrefined_I = 0.0;
    double refined_I = 0.0;
    std::string path;        // "grid" or "grid+polish"
    int evaluations = 0;
    nlohmann::json grid_spec;
};

RefinementReport refine_coefficients(const Register& reg, const PulseWaveform& w, const GateTarget& target,
                                     const NoiseModel& noise, const RefinementGrid& grid,
                                     const PropagatorSettings& settings, int threads = 1, bool polish = false);

nlohmann::json refinement_to_json(const RefinementReport& r);

}  // namespace nvpulse
