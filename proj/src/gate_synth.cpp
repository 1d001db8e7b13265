#include "nvpulse/gate_synth.hpp"

#include "nvpulse/parallel.hpp"

#include <boost/math/tools/minima.hpp>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace nvpulse {

void GateTarget::validate(const Register& reg) const {
    if (kind == GateKind::CZ) {
        if (reg.size() != 2) throw ConfigError("CZ target needs a two-nucleus register");
        return;
    }
    if (target_qubit >= reg.size()) throw ConfigError("target qubit out of range");
    if (!(angle > -kTwoPi && angle <= kTwoPi)) throw ConfigError("target angle must lie in (-2pi, 2pi]");
}

NoiseModel NoiseModel::nuclear() { return {1e3 / kTwoPi, 1e-3, 1e-3 / kTwoPi, true, 21}; }
NoiseModel NoiseModel::electron() { return {27.5e3 / kTwoPi, 1e-3, 1e-3 / kTwoPi, false, 21}; }

void NoiseModel::validate() const {
    if (sigma_delta < 0.0 || sigma_epsilon < 0.0 || sigma_phi < 0.0) throw ConfigError("noise sigmas must be non-negative");
    if (quadrature_nodes < 1) throw ConfigError("quadrature needs at least one node");
}

std::vector<NoisePoint> NoiseModel::points() const {
    return noise_grid(sigma_delta, sigma_epsilon, include_phase ? sigma_phi : 0.0, quadrature_nodes);
}

void AmplitudeBounds::validate() const {
    if (!(coeff_lo < coeff_hi)) throw ConfigError("amplitude bounds need lo < hi");
    if (!(time_domain_cap > 0.0)) throw ConfigError("time-domain cap must be positive");
}

namespace {

// Weight of the squared perpendicular component of the target rotation.
double perpendicular_weight(double A) {
    if (std::abs(A) < 1e-8) return 0.125;
    const double s = std::sin(0.5 * A);
    return s * s / (2.0 * A * A);
}

double target_overlap(double par, double perp, double A) {
    const double th = std::hypot(par, perp);
    const double half = 0.5 * th;
    const double sinc_half = th > 1e-12 ? std::sin(half) / th : 0.5;
    return std::cos(0.5 * A) * std::cos(half) + std::sin(0.5 * A) * sinc_half * par;
}

bool is_single(const GateTarget& t) { return t.kind != GateKind::CZ; }

}  // namespace

double intrinsic_infidelity_single(const std::vector<double>& X, const std::vector<double>& Y, const GateTarget& target) {
    const std::size_t j = target.target_qubit;
    if (j >= X.size() || Y.size() != X.size()) throw std::invalid_argument("functional length mismatch");
    double prod = 1.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (i == j) continue;
        prod *= std::cos(0.5 * std::hypot(X[i], Y[i]));
    }
    const bool along_x = target.kind == GateKind::SingleX;
    const double par = along_x ? X[j] : Y[j];
    const double perp = along_x ? Y[j] : X[j];
    return 1.0 - prod * target_overlap(par, perp, target.angle);
}

double intrinsic_infidelity_single(const std::vector<double>& X, const GateTarget& target) {
    return intrinsic_infidelity_single(X, std::vector<double>(X.size(), 0.0), target);
}

double quadratic_infidelity_single(const std::vector<double>& X, const std::vector<double>& Y, const GateTarget& target) {
    const std::size_t j = target.target_qubit;
    if (j >= X.size() || Y.size() != X.size()) throw std::invalid_argument("functional length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (i == j) continue;
        s += 0.125 * (X[i] * X[i] + Y[i] * Y[i]);
    }
    const bool along_x = target.kind == GateKind::SingleX;
    const double par = along_x ? X[j] : Y[j];
    const double perp = along_x ? Y[j] : X[j];
    return s + 0.125 * (par - target.angle) * (par - target.angle) + perpendicular_weight(target.angle) * perp * perp;
}

double intrinsic_infidelity_cz(const std::array<double, 4>& X, const std::array<double, 4>& Y) {
    double s = -2.0 * std::cos(0.5 * std::hypot(X[0], Y[0]));
    for (int k = 1; k < 4; ++k) s += 2.0 * std::cos(0.5 * std::hypot(X[k], Y[k]));
    return 1.0 - s / 8.0;
}

double quadratic_infidelity_cz(const std::array<double, 4>& X, const std::array<double, 4>& Y) {
    double s = (X[0] - kTwoPi) * (X[0] - kTwoPi);
    for (int k = 1; k < 4; ++k) s += X[k] * X[k] + Y[k] * Y[k];
    return s / 32.0;
}

double target_carrier(const Register& reg, const GateTarget& target) {
    if (target.kind == GateKind::CZ) return cz_parameters(reg).lambda;
    return transition_frequency(reg, target.target_qubit);
}

Quadrature target_quadrature(const GateTarget& target) {
    return target.kind == GateKind::SingleY ? Quadrature::Sine : Quadrature::Cosine;
}

double realization_infidelity(const Register& reg, const GateTarget& target, const PulseWaveform& w,
                              const NoiseRealization& noise, bool quadratic) {
    if (is_single(target)) {
        const auto f = rotation_functionals(reg, w, target.target_qubit, noise);
        return quadratic ? quadratic_infidelity_single(f.X, f.Y, target) : intrinsic_infidelity_single(f.X, f.Y, target);
    }
    const auto f = cz_functionals(cz_parameters(reg), w, noise);
    return quadratic ? quadratic_infidelity_cz(f.X, f.Y) : intrinsic_infidelity_cz(f.X, f.Y);
}

namespace {

// Noiseless response of basis n, one entry per functional component.
struct ColumnResponse {
    Eigen::VectorXd X, Y;
};

ColumnResponse noiseless_column(const Register& reg, const GateTarget& target, const SincBasis& basis, int n) {
    SincBasis one = basis;
    one.max_index = n;
    if (is_single(target)) {
        const auto r = single_response(transition_frequencies(reg), one, target_quadrature(target),
                                       target_carrier(reg, target), NoiseRealization{});
        return {r.Xn.col(n), r.Yn.col(n)};
    }
    const auto r = cz_response(cz_parameters(reg), one, NoiseRealization{});
    return {r.Xn.col(n), r.Yn.col(n)};
}

double column_infidelity(const GateTarget& target, const ColumnResponse& col, double f) {
    if (is_single(target)) {
        std::vector<double> X(col.X.size()), Y(col.Y.size());
        for (Eigen::Index i = 0; i < col.X.size(); ++i) {
            X[i] = f * col.X(i);
            Y[i] = f * col.Y(i);
        }
        return intrinsic_infidelity_single(X, Y, target);
    }
    std::array<double, 4> X{}, Y{};
    for (int k = 0; k < 4; ++k) {
        X[k] = f * col.X(k);
        Y[k] = f * col.Y(k);
    }
    return intrinsic_infidelity_cz(X, Y);
}

}  // namespace

double single_basis_infidelity(const Register& reg, const GateTarget& target, const SincBasis& basis, int n, double f) {
    return column_infidelity(target, noiseless_column(reg, target, basis, n), f);
}

BasisSolutions generate_basis_solutions(const Register& reg, const GateTarget& target, double tau, int basis_count,
                                        const AmplitudeBounds& bounds, double shift_fraction) {
    target.validate(reg);
    bounds.validate();
    if (basis_count < 1) throw ConfigError("basis count must be at least 1");
    BasisSolutions out;
    out.shape.basis = SincBasis{tau, shift_fraction, basis_count - 1};
    out.shape.basis.validate();
    out.shape.quadrature = target_quadrature(target);
    out.shape.carrier = target_carrier(reg, target);
    out.shape.coefficients.assign(basis_count, 0.0);

    constexpr int kGrid = 200;
    const double lo = bounds.coeff_lo, hi = bounds.coeff_hi;
    const double step = (hi - lo) / (kGrid - 1);
    for (int n = 0; n < basis_count; ++n) {
        const auto col = noiseless_column(reg, target, out.shape.basis, n);
        auto objective = [&](double f) { return column_infidelity(target, col, f); };
        std::vector<double> vals(kGrid);
        for (int k = 0; k < kGrid; ++k) vals[k] = objective(lo + k * step);
        double f = lo, best_val = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kGrid; ++k) {
            if (!std::isfinite(vals[k])) continue;
            const bool local = (k == 0 || !(vals[k - 1] < vals[k])) && (k == kGrid - 1 || !(vals[k + 1] < vals[k]));
            if (!local) continue;
            const double x0 = lo + k * step;
            if (vals[k] < best_val) {
                best_val = vals[k];
                f = x0;
            }
            const auto r = boost::math::tools::brent_find_minima(objective, std::max(lo, x0 - step), std::min(hi, x0 + step), 52);
            if (std::isfinite(r.second) && r.second < best_val) {
                f = r.first;
                best_val = r.second;
            }
        }
        if (!std::isfinite(best_val))
            throw SolverError("basis amplitude search found no finite infidelity for basis index " + std::to_string(n));
        // Bound endpoints.
        for (double edge : {lo, hi}) {
            const double v = objective(edge);
            if (v < best_val) {
                best_val = v;
                f = edge;
            }
        }
        const double tol = 1e-6 * (hi - lo);
        out.amplitudes.push_back(f);
        out.clipped.push_back(std::abs(f - lo) < tol || std::abs(f - hi) < tol);
        out.intrinsic.push_back(best_val);
    }
    return out;
}

BasisSolutions truncate(const BasisSolutions& b, int m) {
    if (m < 1 || m > static_cast<int>(b.amplitudes.size())) throw std::invalid_argument("truncation size out of range");
    BasisSolutions t = b;
    t.shape.basis.max_index = m - 1;
    t.shape.coefficients.assign(m, 0.0);
    t.amplitudes.resize(m);
    t.clipped.resize(m);
    t.intrinsic.resize(m);
    return t;
}

double averaged_infidelity(const Register& reg, const GateTarget& target, const PulseWaveform& w, const NoiseModel& noise) {
    noise.validate();
    double s = 0.0;
    for (const auto& p : noise.points()) s += p.weight * realization_infidelity(reg, target, w, {p.delta, p.epsilon, p.phi}, true);
    return s;
}

double averaged_exact_infidelity(const Register& reg, const GateTarget& target, const PulseWaveform& w,
                                 const NoiseModel& noise) {
    noise.validate();
    double s = 0.0;
    for (const auto& p : noise.points()) s += p.weight * realization_infidelity(reg, target, w, {p.delta, p.epsilon, p.phi}, false);
    return s;
}

namespace {

// Weighted least-squares system whose residual norm squared is the averaged quadratic infidelity.
void build_system(const Register& reg, const GateTarget& target, const SincBasis& basis, const NoiseModel& noise,
                  Eigen::MatrixXd& A, Eigen::VectorXd& b) {
    const auto pts = noise.points();
    const int M = basis.count();
    if (is_single(target)) {
        const auto omegas = transition_frequencies(reg);
        const int N = static_cast<int>(omegas.size());
        const std::size_t j = target.target_qubit;
        const double carrier = target_carrier(reg, target);
        const auto quad = target_quadrature(target);
        const double wperp = perpendicular_weight(target.angle);
        A.resize(static_cast<Eigen::Index>(pts.size()) * 2 * N, M);
        b.resize(A.rows());
        Eigen::Index row = 0;
        for (const auto& p : pts) {
            const auto r = single_response(omegas, basis, quad, carrier, {p.delta, p.epsilon, p.phi});
            const double s8 = std::sqrt(p.weight / 8.0);
            for (int i = 0; i < N; ++i) {
                if (static_cast<std::size_t>(i) == j) {
                    const bool along_x = target.kind == GateKind::SingleX;
                    const Eigen::RowVectorXd par = along_x ? r.Xn.row(i) : r.Yn.row(i);
                    const Eigen::RowVectorXd perp = along_x ? r.Yn.row(i) : r.Xn.row(i);
                    A.row(row) = s8 * par;
                    b(row++) = s8 * target.angle;
                    A.row(row) = std::sqrt(p.weight * wperp) * perp;
                    b(row++) = 0.0;
                } else {
                    A.row(row) = s8 * r.Xn.row(i);
                    b(row++) = 0.0;
                    A.row(row) = s8 * r.Yn.row(i);
                    b(row++) = 0.0;
                }
            }
        }
        return;
    }
    const auto cz = cz_parameters(reg);
    A.resize(static_cast<Eigen::Index>(pts.size()) * 7, M);
    b.resize(A.rows());
    Eigen::Index row = 0;
    for (const auto& p : pts) {
        const auto r = cz_response(cz, basis, {p.delta, p.epsilon, p.phi});
        const double s32 = std::sqrt(p.weight / 32.0);
        for (int k = 0; k < 4; ++k) {
            A.row(row) = s32 * r.Xn.row(k);
            b(row++) = k == 0 ? s32 * kTwoPi : 0.0;
        }
        for (int k = 1; k < 4; ++k) {
            A.row(row) = s32 * r.Yn.row(k);
            b(row++) = 0.0;
        }
    }
}

}  // namespace

SynthesisResult optimize_combination(const Register& reg, const GateTarget& target, const BasisSolutions& basis,
                                     const NoiseModel& noise, const AmplitudeBounds& bounds) {
    target.validate(reg);
    noise.validate();
    const int M = basis.shape.basis.count();
    if (M < 1 || static_cast<int>(basis.amplitudes.size()) != M) throw ConfigError("basis solutions are inconsistent");

    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    build_system(reg, target, basis.shape.basis, noise, A, b);

    // Unknowns are the combination coefficients c_n; zero step-1 amplitudes fall back to raw coefficients.
    Eigen::VectorXd scale(M);
    for (int n = 0; n < M; ++n) scale(n) = basis.amplitudes[n] != 0.0 ? basis.amplitudes[n] : 1.0;
    const Eigen::MatrixXd As = A * scale.asDiagonal();
    Eigen::VectorXd colnorm = As.colwise().norm().transpose();
    for (int n = 0; n < M; ++n)
        if (colnorm(n) == 0.0) colnorm(n) = 1.0;
    const Eigen::MatrixXd An = As * colnorm.cwiseInverse().asDiagonal();

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(An);
    const Eigen::VectorXd y = cod.solve(b);
    const Eigen::VectorXd c = y.cwiseQuotient(colnorm);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(An);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (!c.allFinite() || cod.rank() == 0)
        throw SolverError("combination solve failed (condition estimate " + std::to_string(cond) + ")");

    SynthesisResult res;
    res.target = target;
    res.per_basis_amplitudes = basis.amplitudes;
    res.clipped = basis.clipped;
    res.combination.assign(c.data(), c.data() + M);
    res.waveform = basis.shape;
    res.waveform.coefficients.resize(M);
    for (int n = 0; n < M; ++n) res.waveform.coefficients[n] = c(n) * scale(n);
    const Eigen::VectorXd resid = As * c - b;
    res.averaged_infidelity = resid.squaredNorm();
    res.gradient_residual = (2.0 * As.transpose() * resid).cwiseAbs().maxCoeff();
    res.condition_estimate = cond;
    res.intrinsic_infidelity = realization_infidelity(reg, target, res.waveform, {}, false);
    res.quadratic_intrinsic = realization_infidelity(reg, target, res.waveform, {}, true);
    res.averaged_exact = averaged_exact_infidelity(reg, target, res.waveform, noise);
    const double big = std::max(res.averaged_exact, res.averaged_infidelity);
    res.small_angle_flag = big > 1e-14 && std::abs(res.averaged_exact - res.averaged_infidelity) > 0.1 * big;
    res.max_time_amplitude = max_time_amplitude(res.waveform);
    res.exceeds_cap = res.max_time_amplitude > bounds.time_domain_cap;
    return res;
}

SynthesisResult synthesize(const Register& reg, const GateTarget& target, double tau, int basis_count,
                           const NoiseModel& noise, const AmplitudeBounds& bounds, double shift_fraction) {
    const auto basis = generate_basis_solutions(reg, target, tau, basis_count, bounds, shift_fraction);
    return optimize_combination(reg, target, basis, noise, bounds);
}

CompositeResult synthesize_hadamard(const Register& reg, std::size_t qubit, double tau, int basis_count,
                                    const NoiseModel& noise, const AmplitudeBounds& bounds, double shift_fraction) {
    CompositeResult out;
    out.parts.push_back(synthesize(reg, GateTarget::y(qubit, 0.5 * kPi), tau, basis_count, noise, bounds, shift_fraction));
    out.parts.push_back(synthesize(reg, GateTarget::x(qubit, kPi), tau, basis_count, noise, bounds, shift_fraction));
    double keep_i = 1.0, keep_a = 1.0;
    for (const auto& p : out.parts) {
        keep_i *= 1.0 - p.intrinsic_infidelity;
        keep_a *= 1.0 - p.averaged_infidelity;
    }
    out.intrinsic_infidelity = 1.0 - keep_i;
    out.averaged_infidelity = 1.0 - keep_a;
    return out;
}

std::vector<SweepRow> linewidth_sweep(const Register& reg, const GateTarget& target, const std::vector<double>& taus,
                                      const std::vector<int>& Ms, const std::vector<double>& multipliers,
                                      const NoiseModel& noise, const AmplitudeBounds& bounds, int threads,
                                      double shift_fraction) {
    if (taus.empty() || Ms.empty() || multipliers.empty()) throw ConfigError("sweep grids must be non-empty");
    int Mmax = 0;
    for (int m : Ms) {
        if (m < 1) throw ConfigError("basis counts must be at least 1");
        Mmax = std::max(Mmax, m);
    }
    for (double k : multipliers)
        if (k < 0.0) throw ConfigError("sigma multipliers must be non-negative");

    std::vector<BasisSolutions> sols(taus.size());
    parallel_for(taus.size(), threads, [&](std::size_t t) {
        sols[t] = generate_basis_solutions(reg, target, taus[t], Mmax, bounds, shift_fraction);
    });

    const std::size_t cells = taus.size() * Ms.size() * multipliers.size();
    std::vector<SweepRow> rows(cells);
    parallel_for(cells, threads, [&](std::size_t idx) {
        const std::size_t k = idx % multipliers.size();
        const std::size_t m = (idx / multipliers.size()) % Ms.size();
        const std::size_t t = idx / (multipliers.size() * Ms.size());
        NoiseModel nm = noise;
        nm.sigma_delta *= multipliers[k];
        SynthesisResult r;
        try {
            r = optimize_combination(reg, target, truncate(sols[t], Ms[m]), nm, bounds);
        } catch (const SolverError& e) {
            std::ostringstream msg;
            msg << "cell tau=" << taus[t] << " s, M=" << Ms[m] << ": " << e.what();
            throw SolverError(msg.str());
        }
        SweepRow row;
        row.tau = taus[t];
        row.M = Ms[m];
        row.sigma_multiplier = multipliers[k];
        row.intrinsic_I = r.intrinsic_infidelity;
        row.averaged_I = r.averaged_infidelity;
        row.max_amp = r.max_time_amplitude;
        for (bool c : r.clipped) row.clipped_flags.push_back(c ? '1' : '0');
        rows[idx] = row;
    });
    return rows;
}

std::string sweep_csv_header() { return "tau_s,M,sigma_multiplier,intrinsic_I,averaged_I,max_amp_rad_s,clipped_flags"; }

std::string sweep_csv_row(const SweepRow& r) {
    std::ostringstream os;
    os << std::setprecision(10) << r.tau << ',' << r.M << ',' << r.sigma_multiplier << ',' << std::setprecision(8)
       << r.intrinsic_I << ',' << r.averaged_I << ',' << r.max_amp << ',' << r.clipped_flags;
    return os.str();
}

nlohmann::json noise_to_json(const NoiseModel& n) {
    return {{"sigma_delta_rad_s", n.sigma_delta},
            {"sigma_epsilon", n.sigma_epsilon},
            {"sigma_phi_rad", n.sigma_phi},
            {"include_phase", n.include_phase},
            {"quadrature_nodes", n.quadrature_nodes}};
}

NoiseModel noise_from_json(const nlohmann::json& j, const NoiseModel& defaults) {
    NoiseModel n = defaults;
    if (j.is_null()) return n;
    try {
        n.sigma_delta = j.value("sigma_delta_rad_s", n.sigma_delta);
        n.sigma_epsilon = j.value("sigma_epsilon", n.sigma_epsilon);
        n.sigma_phi = j.value("sigma_phi_rad", n.sigma_phi);
        n.include_phase = j.value("include_phase", n.include_phase);
        n.quadrature_nodes = j.value("quadrature_nodes", n.quadrature_nodes);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("noise: ") + e.what());
    }
    n.validate();
    return n;
}

nlohmann::json bounds_to_json(const AmplitudeBounds& b) {
    return {{"coeff_lo_rad_s", b.coeff_lo}, {"coeff_hi_rad_s", b.coeff_hi}, {"time_domain_cap_rad_s", b.time_domain_cap}};
}

AmplitudeBounds bounds_from_json(const nlohmann::json& j, const AmplitudeBounds& defaults) {
    AmplitudeBounds b = defaults;
    if (j.is_null()) return b;
    try {
        b.coeff_lo = j.value("coeff_lo_rad_s", b.coeff_lo);
        b.coeff_hi = j.value("coeff_hi_rad_s", b.coeff_hi);
        b.time_domain_cap = j.value("time_domain_cap_rad_s", b.time_domain_cap);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bounds: ") + e.what());
    }
    b.validate();
    return b;
}

nlohmann::json target_to_json(const GateTarget& t) {
    const char* kind = t.kind == GateKind::SingleX ? "single_x" : t.kind == GateKind::SingleY ? "single_y" : "cz";
    return {{"kind", kind}, {"target_qubit", t.target_qubit}, {"angle_rad", t.angle}};
}

GateTarget target_from_json(const nlohmann::json& j) {
    try {
        GateTarget t;
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "single_x")
            t.kind = GateKind::SingleX;
        else if (kind == "single_y")
            t.kind = GateKind::SingleY;
        else if (kind == "cz")
            return GateTarget::cz();
        else
            throw ConfigError("unknown gate kind '" + kind + "'");
        t.target_qubit = j.value("target_qubit", std::size_t{0});
        t.angle = j.value("angle_rad", kPi);
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("gate: ") + e.what());
    }
}

nlohmann::json synthesis_to_json(const SynthesisResult& r) {
    nlohmann::json j;
    j["target"] = target_to_json(r.target);
    j["per_basis_amplitudes_rad_s"] = r.per_basis_amplitudes;
    j["clipped"] = r.clipped;
    j["combination"] = r.combination;
    j["waveform"] = waveform_to_json(r.waveform);
    j["intrinsic_infidelity"] = r.intrinsic_infidelity;
    j["quadratic_intrinsic"] = r.quadratic_intrinsic;
    j["averaged_infidelity"] = r.averaged_infidelity;
    j["averaged_exact_infidelity"] = r.averaged_exact;
    j["max_time_amplitude_rad_s"] = r.max_time_amplitude;
    j["exceeds_cap"] = r.exceeds_cap;
    j["condition_estimate"] = r.condition_estimate;
    j["gradient_residual"] = r.gradient_residual;
    j["small_angle_flag"] = r.small_angle_flag;
    return j;
}

SynthesisResult synthesis_from_json(const nlohmann::json& j) {
    try {
        SynthesisResult r;
        r.target = target_from_json(j.at("target"));
        r.per_basis_amplitudes = j.value("per_basis_amplitudes_rad_s", std::vector<double>{});
        r.clipped = j.value("clipped", std::vector<bool>{});
        r.combination = j.value("combination", std::vector<double>{});
        r.waveform = waveform_from_json(j.at("waveform"));
        r.intrinsic_infidelity = j.value("intrinsic_infidelity", 0.0);
        r.quadratic_intrinsic = j.value("quadratic_intrinsic", 0.0);
        r.averaged_infidelity = j.value("averaged_infidelity", 0.0);
        r.averaged_exact = j.value("averaged_exact_infidelity", 0.0);
        r.max_time_amplitude = j.value("max_time_amplitude_rad_s", 0.0);
        r.exceeds_cap = j.value("exceeds_cap", false);
        r.condition_estimate = j.value("condition_estimate", 0.0);
        r.gradient_residual = j.value("gradient_residual", 0.0);
        r.small_angle_flag = j.value("small_angle_flag", false);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("synthesis result: ") + e.what());
    }
}

}  // namespace nvpulse
