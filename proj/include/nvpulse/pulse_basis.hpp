#pragma once

#include "nvpulse/spin_model.hpp"

#include <array>
#include <vector>

namespace nvpulse {

// Unnormalized sinc: sin(x)/x, sinc(0) = 1.
double sinc(double x);

struct SincBasis {
    double tau = 1e-6;             // s
    double shift_fraction = 0.2;   // Kadec bound requires < 1/4
    int max_index = 0;             // basis count M = max_index + 1

    int count() const { return max_index + 1; }
    double shift(int n) const;     // mu_n, rad/s
    void validate() const;
};

double basis_shift(int n, double tau, double shift_fraction = 0.2);

// Unit-amplitude basis function in the frequency domain: tau*[sinc(tau/2 (w - mu)) + sinc(tau/2 (w + mu))].
double basis_frequency(const SincBasis& basis, int n, double omega);

// Unit-amplitude basis function in the time domain: 2 sqrt(2 pi) cos(mu t) on |t| <= tau/2.
double basis_time(const SincBasis& basis, int n, double t);

enum class Quadrature { Cosine, Sine };  // a(w) drives cos(wt), b(w) drives sin(wt)

struct PulseWaveform {
    SincBasis basis;
    Quadrature quadrature = Quadrature::Cosine;
    double carrier = 0.0;               // rad/s
    std::vector<double> coefficients;   // rad/s, one per basis index

    void validate() const;
};

struct NoiseRealization {
    double delta = 0.0;    // carrier frequency error, rad/s
    double epsilon = 0.0;  // fractional amplitude error
    double phi = 0.0;      // phase error, rad
};

double eval_frequency(const PulseWaveform& w, double omega);
double eval_time(const PulseWaveform& w, double t);

// Full control field (1+eps) * envelope(t) * cos or sin((carrier + delta) t + phi).
double eval_field(const PulseWaveform& w, const NoiseRealization& noise, double t);

// Largest |envelope(t)| on a uniform grid over the pulse support.
double max_time_amplitude(const PulseWaveform& w, int samples = 4001);

struct Functionals {
    std::vector<double> X;
    std::vector<double> Y;
};

// Per-basis responses: X = Xn * coefficients, Y = Yn * coefficients (rows = nuclei).
struct FunctionalResponse {
    Eigen::MatrixXd Xn;
    Eigen::MatrixXd Yn;
};

FunctionalResponse single_response(const std::vector<double>& omegas, const SincBasis& basis, Quadrature q,
                                   double carrier, const NoiseRealization& noise);

// Rotation angles imparted on every nucleus. The carrier must be the target transition frequency.
Functionals rotation_functionals(const Register& reg, const PulseWaveform& w, std::size_t target_j,
                                 const NoiseRealization& noise);

struct CzFunctionals {
    std::array<double, 4> X{};  // nuclear states 11, 10, 01, 00
    std::array<double, 4> Y{};
};

struct CzResponse {
    Eigen::Matrix<double, 4, Eigen::Dynamic> Xn;
    Eigen::Matrix<double, 4, Eigen::Dynamic> Yn;
};

CzResponse cz_response(const CzParameters& p, const SincBasis& basis, const NoiseRealization& noise);

// Electron rotation angles per nuclear configuration; the carrier must be lambda.
CzFunctionals cz_functionals(const CzParameters& p, const PulseWaveform& w, const NoiseRealization& noise);

nlohmann::json waveform_to_json(const PulseWaveform& w);
PulseWaveform waveform_from_json(const nlohmann::json& j);

}  // namespace nvpulse
