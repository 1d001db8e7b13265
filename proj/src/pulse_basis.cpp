#include "nvpulse/pulse_basis.hpp"

#include <cmath>

namespace nvpulse {

namespace {
const double kSqrt2Pi = std::sqrt(kTwoPi);
const double kHalfSqrt2Pi = 0.5 * std::sqrt(kTwoPi);

void check_carrier(double carrier, double expected, const char* what) {
    if (std::abs(carrier - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw std::invalid_argument(std::string("waveform carrier must equal ") + what);
}
}  // namespace

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double SincBasis::shift(int n) const { return basis_shift(n, tau, shift_fraction); }

void SincBasis::validate() const {
    if (!(tau > 0.0)) throw ConfigError("gate time tau must be positive");
    if (!(shift_fraction >= 0.0 && shift_fraction < 0.25)) throw ConfigError("shift fraction must lie in [0, 1/4)");
    if (max_index < 0) throw ConfigError("basis needs at least one function");
}

double basis_shift(int n, double tau, double shift_fraction) {
    if (n < 0) throw std::invalid_argument("basis index must be non-negative");
    return (n + shift_fraction) * kTwoPi / tau;
}

double basis_frequency(const SincBasis& basis, int n, double omega) {
    const double mu = basis.shift(n);
    const double h = 0.5 * basis.tau;
    return basis.tau * (sinc(h * (omega - mu)) + sinc(h * (omega + mu)));
}

double basis_time(const SincBasis& basis, int n, double t) {
    if (std::abs(t) > 0.5 * basis.tau) return 0.0;
    return 2.0 * kSqrt2Pi * std::cos(basis.shift(n) * t);
}

void PulseWaveform::validate() const {
    basis.validate();
    if (static_cast<int>(coefficients.size()) != basis.count())
        throw ConfigError("coefficient count does not match basis size");
    for (double c : coefficients)
        if (!std::isfinite(c)) throw ConfigError("waveform coefficient is not finite");
}

double eval_frequency(const PulseWaveform& w, double omega) {
    double s = 0.0;
    for (int n = 0; n < static_cast<int>(w.coefficients.size()); ++n)
        s += w.coefficients[n] * basis_frequency(w.basis, n, omega);
    return s;
}

double eval_time(const PulseWaveform& w, double t) {
    if (std::abs(t) > 0.5 * w.basis.tau) return 0.0;
    double s = 0.0;
    for (int n = 0; n < static_cast<int>(w.coefficients.size()); ++n)
        s += w.coefficients[n] * std::cos(w.basis.shift(n) * t);
    return 2.0 * kSqrt2Pi * s;
}

double eval_field(const PulseWaveform& w, const NoiseRealization& noise, double t) {
    const double arg = (w.carrier + noise.delta) * t + noise.phi;
    const double env = eval_time(w, t);
    return (1.0 + noise.epsilon) * env * (w.quadrature == Quadrature::Cosine ? std::cos(arg) : std::sin(arg));
}

double max_time_amplitude(const PulseWaveform& w, int samples) {
    double m = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = -0.5 * w.basis.tau + w.basis.tau * k / (samples - 1);
        m = std::max(m, std::abs(eval_time(w, t)));
    }
    return m;
}

FunctionalResponse single_response(const std::vector<double>& omegas, const SincBasis& basis, Quadrature q,
                                   double carrier, const NoiseRealization& noise) {
    const int M = basis.count();
    const int N = static_cast<int>(omegas.size());
    FunctionalResponse r{Eigen::MatrixXd::Zero(N, M), Eigen::MatrixXd::Zero(N, M)};
    const double W = carrier + noise.delta;
    const double amp = (1.0 + noise.epsilon) * kHalfSqrt2Pi;
    const double c = std::cos(noise.phi), s = std::sin(noise.phi);
    for (int i = 0; i < N; ++i) {
        for (int n = 0; n < M; ++n) {
            const double plus = basis_frequency(basis, n, omegas[i] + W);
            const double minus = basis_frequency(basis, n, omegas[i] - W);
            if (q == Quadrature::Cosine) {
                r.Xn(i, n) = -amp * c * (plus + minus);
                r.Yn(i, n) = -amp * s * (plus - minus);
            } else {
                r.Xn(i, n) = -amp * s * (plus + minus);
                r.Yn(i, n) = amp * c * (plus - minus);
            }
        }
    }
    return r;
}

Functionals rotation_functionals(const Register& reg, const PulseWaveform& w, std::size_t target_j,
                                 const NoiseRealization& noise) {
    if (target_j >= reg.size()) throw std::out_of_range("target qubit out of range");
    const auto omegas = transition_frequencies(reg);
    check_carrier(w.carrier, omegas[target_j], "the target transition frequency");
    const auto r = single_response(omegas, w.basis, w.quadrature, w.carrier, noise);
    const Eigen::Map<const Eigen::VectorXd> c(w.coefficients.data(), static_cast<Eigen::Index>(w.coefficients.size()));
    Eigen::VectorXd X = r.Xn * c, Y = r.Yn * c;
    return {std::vector<double>(X.data(), X.data() + X.size()), std::vector<double>(Y.data(), Y.data() + Y.size())};
}

CzResponse cz_response(const CzParameters& p, const SincBasis& basis, const NoiseRealization& noise) {
    const int M = basis.count();
    CzResponse r{Eigen::Matrix<double, 4, Eigen::Dynamic>::Zero(4, M), Eigen::Matrix<double, 4, Eigen::Dynamic>::Zero(4, M)};
    const double L = p.lambda + noise.delta;
    const double amp = (1.0 + noise.epsilon) * kHalfSqrt2Pi;
    const double c = std::cos(noise.phi), s = std::sin(noise.phi);
    for (int k = 0; k < 4; ++k) {
        for (int n = 0; n < M; ++n) {
            const double plus = basis_frequency(basis, n, p.conditional[k] + L);
            const double minus = basis_frequency(basis, n, p.conditional[k] - L);
            r.Xn(k, n) = amp * c * (plus + minus);
            r.Yn(k, n) = amp * s * (minus - plus);
        }
    }
    return r;
}

CzFunctionals cz_functionals(const CzParameters& p, const PulseWaveform& w, const NoiseRealization& noise) {
    check_carrier(w.carrier, p.lambda, "lambda");
    if (w.quadrature != Quadrature::Cosine) throw std::invalid_argument("CZ pulses use the cosine quadrature");
    const auto r = cz_response(p, w.basis, noise);
    const Eigen::Map<const Eigen::VectorXd> c(w.coefficients.data(), static_cast<Eigen::Index>(w.coefficients.size()));
    Eigen::Vector4d X = r.Xn * c, Y = r.Yn * c;
    CzFunctionals f;
    for (int k = 0; k < 4; ++k) {
        f.X[k] = X(k);
        f.Y[k] = Y(k);
    }
    return f;
}

nlohmann::json waveform_to_json(const PulseWaveform& w) {
    nlohmann::json j;
    j["tau_s"] = w.basis.tau;
    j["shift_fraction"] = w.basis.shift_fraction;
    j["quadrature"] = w.quadrature == Quadrature::Cosine ? "cosine" : "sine";
    j["carrier_rad_s"] = w.carrier;
    j["coefficients"] = w.coefficients;
    return j;
}

PulseWaveform waveform_from_json(const nlohmann::json& j) {
    try {
        PulseWaveform w;
        w.basis.tau = j.at("tau_s").get<double>();
        w.basis.shift_fraction = j.value("shift_fraction", 0.2);
        const auto q = j.value("quadrature", std::string("cosine"));
        if (q == "cosine")
            w.quadrature = Quadrature::Cosine;
        else if (q == "sine")
            w.quadrature = Quadrature::Sine;
        else
            throw ConfigError("quadrature must be 'cosine' or 'sine'");
        w.carrier = j.at("carrier_rad_s").get<double>();
        w.coefficients = j.at("coefficients").get<std::vector<double>>();
        w.basis.max_index = static_cast<int>(w.coefficients.size()) - 1;
        w.validate();
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("waveform: ") + e.what());
    }
}

}  // namespace nvpulse
