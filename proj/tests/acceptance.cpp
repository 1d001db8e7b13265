// Prints one PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails.
#include "nvpulse/circuits.hpp"
#include "nvpulse/gate_synth.hpp"
#include "nvpulse/lindblad.hpp"
#include "nvpulse/misalignment.hpp"
#include "nvpulse/time_ordered.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>

using namespace nvpulse;

namespace {

int threads() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

int failures = 0;

void report(int id, bool ok, const std::string& detail, double seconds) {
    std::printf("criterion %d %s: %s [%.1f s]\n", id, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Largest constraint residual of the noiseless functionals against the target rotation.
double single_residual(const Register& reg, const SynthesisResult& r) {
    const auto f = rotation_functionals(reg, r.waveform, r.target.target_qubit, {});
    double worst = 0.0;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        const bool on = i == r.target.target_qubit;
        const double wantX = on && r.target.kind == GateKind::SingleX ? r.target.angle : 0.0;
        const double wantY = on && r.target.kind == GateKind::SingleY ? r.target.angle : 0.0;
        worst = std::max({worst, std::abs(f.X[i] - wantX), std::abs(f.Y[i] - wantY)});
    }
    return worst;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const Register reg = default_register();
    double worst = 0.0;
    for (std::size_t q = 0; q < 2; ++q)
        for (const auto& tgt : {GateTarget::x(q, kPi), GateTarget::y(q, kPi / 2), GateTarget::x(q, kPi / 2)}) {
            const auto r = synthesize(reg, tgt, 1e-6, 3, NoiseModel::nuclear(), AmplitudeBounds::single_qubit());
            worst = std::max(worst, single_residual(reg, r));
        }
    const auto cz = synthesize(reg, GateTarget::cz(), 1e-6, 6, NoiseModel::electron(), AmplitudeBounds::cz());
    const auto f = cz_functionals(cz_parameters(reg), cz.waveform, {});
    const double r1 = std::abs(f.X[0] - kTwoPi);
    const double rk = std::max({std::abs(f.X[1]), std::abs(f.X[2]), std::abs(f.X[3])});
    report(1, worst < 1e-4 && r1 < 1e-3 && rk < 1e-3,
           fmt("single-qubit max residual %.2e rad (< 1e-4); CZ |X1-2pi| %.2e, max |X2..4| %.2e (< 1e-3)", worst, r1, rk),
           since(t0));
}

void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    const Register reg = default_register();
    const auto noise = NoiseModel::nuclear();
    const auto bounds = AmplitudeBounds::single_qubit();
    double worst_x = 0.0, worst_h = 0.0, worst_y = 0.0;
    for (std::size_t q = 0; q < 2; ++q) {
        worst_x = std::max(worst_x, synthesize(reg, GateTarget::x(q, kPi), 1e-6, 3, noise, bounds).averaged_infidelity);
        worst_h = std::max(worst_h, synthesize_hadamard(reg, q, 1e-6, 3, noise, bounds).averaged_infidelity);
        worst_y = std::max(worst_y, synthesize(reg, GateTarget::y(q, kPi / 2), 1e-6, 3, noise, bounds).averaged_infidelity);
    }
    report(2, worst_x <= 1e-5 && worst_h <= 1e-5 && worst_y <= 1e-6,
           fmt("<I> X %.2e, H %.2e (<= 1e-5); Ry(pi/2) %.2e (<= 1e-6)", worst_x, worst_h, worst_y), since(t0));
}

void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const Register reg = default_register();
    const auto rows = linewidth_sweep(reg, GateTarget::cz(), {1e-6, 1.5e-6, 2e-6}, {1, 2, 3, 4, 5, 6}, {1.0},
                                      NoiseModel::electron(), AmplitudeBounds::cz(), threads());
    double at16 = 1.0;
    bool monotone = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].tau == 1e-6 && rows[k].M == 6) at16 = rows[k].averaged_I;
        if (k > 0 && rows[k].tau == rows[k - 1].tau && rows[k].averaged_I > rows[k - 1].averaged_I * (1 + 1e-9)) monotone = false;
    }
    report(3, at16 <= 1e-4 && monotone,
           fmt("tau=1us M=6 <I> %.2e (<= 1e-4); non-increasing in M for tau in {1,1.5,2} us: ", at16) +
               (monotone ? "yes" : "no"),
           since(t0));
}

void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    const Register reg = default_register();
    const auto target = GateTarget::x(1, kPi);
    PulseWaveform w;
    w.basis = {1e-6, 0.2, 1};
    w.quadrature = Quadrature::Cosine;
    w.carrier = target_carrier(reg, target);
    w.coefficients = {-1.20e6, 0.79e6};
    double conv = 0.0;
    for (int N : {4000, 8000}) {
        PropagatorSettings s1{N}, s2{2 * N};
        const NoiseRealization nr{};
        conv = std::max(conv, operator_distance(propagate(reg, w, nr, s1), propagate(reg, w, nr, s2)));
    }
    NoiseModel noise = NoiseModel::nuclear();
    noise.quadrature_nodes = 3;
    RefinementGrid grid;
    grid.box = {{-1.5e6, 0.5e6}, {-1.5e6, 0.5e6}};
    const auto rep = refine_coefficients(reg, w, target, noise, grid, PropagatorSettings::for_tau(1e-6), threads());
    const double ref = 2.90e-5;
    const bool ok = rep.refined_I <= 5e-5 && rep.refined_I <= 2 * ref && rep.refined_I >= ref / 2 && conv < 1e-6;
    report(4, ok,
           fmt("refined <I> %.3e (unrefined %.3e) at d = (%.2f, %.2f) Mrad/s", rep.refined_I, rep.unrefined_I,
               rep.d[0] / 1e6, rep.d[1] / 1e6) +
               fmt("; operator distance N vs 2N for N in {4000, 8000}: %.2e", conv),
           since(t0));
}

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    const double T2 = 1.8e-3;
    CVec plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    double lo = 1.0, hi = 0.0, dev = 0.0;
    for (int k = 1; k <= 10; ++k) {
        Circuit c{1, {{OpKind::Rx, {0}, kPi, k * 1e-6}}};
        const CMat rho = run_noisy(c, pure_state(plus), LindbladModel::uniform(1, T2));
        const CVec ideal = op_unitary(c.ops[0], 1) * plus;
        const double err = 1.0 - state_fidelity(pure_state(ideal), rho);
        const double oracle = 1.0 - 0.5 * (1.0 + std::exp(-k * 1e-6 / T2));
        lo = std::min(lo, err);
        hi = std::max(hi, err);
        dev = std::max(dev, std::abs(err - oracle));
    }
    report(5, lo >= 1e-4 && hi <= 1e-2 && dev < 1e-9,
           fmt("state errors %.3e .. %.3e (band [1e-4, 1e-2]); max deviation from dephasing oracle %.1e", lo, hi, dev),
           since(t0));
}

void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    const TimingModel timing;
    double F[2], T[2];
    int counts[2];
    const int ns[2] = {3, 5}, refs[2] = {75, 195};
    for (int k = 0; k < 2; ++k) {
        SimulationOptions opts;
        opts.reference_pulse_count = refs[k];
        const auto rep = simulate_circuit(qft(ns[k]), qft_input_state(ns[k]), timing, LindbladModel::uniform(ns[k], 1.8e-3), opts);
        F[k] = rep.fidelity;
        T[k] = timing_report(ns[k], refs[k], timing);
        counts[k] = rep.derived_pulse_count;
    }
    auto round2 = [](double x) { return std::round(x * 1e4) / 1e4; };
    const bool ok = std::abs(F[0] - 0.964) <= 0.01 && std::abs(F[1] - 0.855) <= 0.02 && round2(T[0]) == 0.0031 &&
                    round2(T[1]) == 0.0052;
    report(6, ok,
           fmt("QFT3 F %.4f (0.964 +- 0.01), QFT5 F %.4f (0.855 +- 0.02); times %.6f s, %.6f s", F[0], F[1], T[0], T[1]) +
               " (derived pulse counts " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) +
               ", durations scaled to 75/195)",
           since(t0));
}

void criterion7() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto consts = PhysicalConstants::defaults();
    SurveySettings s;
    const auto rows = survey_sites({{"S", 0.412 * kMHz, 0.060 * kMHz}}, consts, 0.62, s);
    const double th = rows[0].angles.theta, I = rows[0].infidelity;
    report(7, std::abs(th - 0.0085) <= 2e-4 && I >= 1e-3 && I <= 1e-2,
           fmt("theta %.5f rad (0.0085 +- 0.0002); CZ infidelity %.3e (band [1e-3, 1e-2])", th, I), since(t0));
}

// Property suite: invariants, analytic-vs-numeric oracles, decompositions, gradient residual.
void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    const Register reg = default_register();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    double herm = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double t = 0.5e-6 * u(rng), f = 1e6 * u(rng);
        const CMat H1 = single_qubit_hamiltonian(reg, f, t);
        const CMat H2 = two_qubit_hamiltonian(cz_parameters(reg), f, t);
        herm = std::max({herm, max_abs(H1 - H1.adjoint()) / std::max(1.0, max_abs(H1)),
                         max_abs(H2 - H2.adjoint()) / std::max(1.0, max_abs(H2))});
    }

    double unit = 0.0;
    {
        PulseWaveform w{{1e-6, 0.2, 2}, Quadrature::Cosine, target_carrier(reg, GateTarget::x(0, kPi)), {0.7e6, -0.4e6, 0.2e6}};
        const CMat U = propagate(reg, w, {500.0, 1e-3, 1e-3}, PropagatorSettings{4000});
        unit = max_abs(U.adjoint() * U - CMat::Identity(U.rows(), U.cols()));
    }

    double func = 0.0;
    using boost::math::quadrature::gauss_kronrod;
    const auto omegas = transition_frequencies(reg);
    const auto cp = cz_parameters(reg);
    for (int k = 0; k < 100; ++k) {
        const int M = 1 + static_cast<int>(rng() % 4);
        const bool cz = k % 4 == 3;
        PulseWaveform w;
        w.basis = {(0.5 + 1.5 * (u(rng) + 1) / 2) * 1e-6, 0.2, M - 1};
        w.quadrature = !cz && k % 2 ? Quadrature::Sine : Quadrature::Cosine;
        const std::size_t j = rng() % 2;
        w.carrier = cz ? cp.lambda : omegas[j];
        for (int n = 0; n < M; ++n) w.coefficients.push_back(3e6 * u(rng));
        const NoiseRealization nr{2e4 * u(rng), 0.01 * u(rng), 0.05 * u(rng)};
        const double h = w.basis.tau / 2;
        auto integrate = [&](auto g) {
            const int pieces = std::max(64, static_cast<int>(4 * std::abs(w.carrier) * w.basis.tau / kTwoPi));
            double s = 0.0;
            for (int p = 0; p < pieces; ++p)
                s += gauss_kronrod<double, 31>::integrate(g, -h + 2 * h * p / pieces, -h + 2 * h * (p + 1) / pieces, 0, 1e-13);
            return s;
        };
        if (cz) {
            const auto f = cz_functionals(cp, w, nr);
            for (int s = 0; s < 4; ++s) {
                const double om = cp.conditional[s];
                const double X = integrate([&](double t) { return eval_field(w, nr, t) * std::cos(om * t); });
                const double Y = integrate([&](double t) { return -eval_field(w, nr, t) * std::sin(om * t); });
                func = std::max({func, std::abs(f.X[s] - X), std::abs(f.Y[s] - Y)});
            }
        } else {
            const auto f = rotation_functionals(reg, w, j, nr);
            for (std::size_t i = 0; i < reg.size(); ++i) {
                const double om = omegas[i];
                const double X = integrate([&](double t) { return -eval_field(w, nr, t) * std::cos(om * t); });
                const double Y = integrate([&](double t) { return -eval_field(w, nr, t) * std::sin(om * t); });
                func = std::max({func, std::abs(f.X[i] - X), std::abs(f.Y[i] - Y)});
            }
        }
    }

    double lind = 0.0, trace_pos = 0.0;
    for (int n = 1; n <= 2; ++n) {
        const Eigen::Index d = Eigen::Index{1} << n;
        CMat H = CMat::Zero(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c) H(r, c) = cplx(u(rng), u(rng)) * 2e6;
        H = 0.5 * (H + H.adjoint()).eval();
        const LindbladModel model{std::vector<double>(static_cast<std::size_t>(n), 3e-6)};
        CVec psi(d);
        for (Eigen::Index r = 0; r < d; ++r) psi(r) = cplx(u(rng), u(rng));
        psi.normalize();
        const CMat rho0 = pure_state(psi);
        const double dur = 2e-6;
        const auto S = build_superoperators(H, model);
        const CMat rho = evolve(rho0, S, dur);
        const CMat L = S.H + S.G;
        using State = std::vector<cplx>;
        const CVec v0 = vectorize(rho0);
        State x(v0.data(), v0.data() + v0.size());
        auto rhs = [&](const State& s, State& ds, double) {
            const CVec out = L * Eigen::Map<const CVec>(s.data(), static_cast<Eigen::Index>(s.size()));
            ds.assign(out.data(), out.data() + out.size());
        };
        boost::numeric::odeint::integrate_adaptive(
            boost::numeric::odeint::make_controlled<boost::numeric::odeint::runge_kutta_dopri5<State>>(1e-13, 1e-13), rhs, x,
            0.0, dur, 1e-9);
        const CMat rk = unvectorize(Eigen::Map<const CVec>(x.data(), static_cast<Eigen::Index>(x.size())), d);
        lind = std::max(lind, max_abs(rho - rk));
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()));
        trace_pos = std::max({trace_pos, std::abs(rho.trace() - 1.0), std::max(0.0, -es.eigenvalues().minCoeff()),
                              max_abs(rho - rho.adjoint())});
    }

    double decomp = 0.0;
    for (int k = 0; k < 16; ++k) {
        const double th = -kPi + kTwoPi * k / 15.0;
        Eigen::Matrix4cd cph = Eigen::Matrix4cd::Identity();
        cph(3, 3) = std::polar(1.0, th);
        CMat ph = CMat::Identity(2, 2);
        ph(1, 1) = std::polar(1.0, th);
        decomp = std::max({decomp, 1.0 - global_phase_fidelity(circuit_unitary(cphase(2, 0, 1, th)), cph),
                           1.0 - global_phase_fidelity(circuit_unitary(phase_gate(1, 0, th)), ph)});
    }
    {
        CMat H(2, 2), CN = CMat::Zero(4, 4), SW = CMat::Zero(4, 4);
        H << 1, 1, 1, -1;
        H /= std::sqrt(2.0);
        CN(0, 0) = CN(1, 1) = CN(2, 3) = CN(3, 2) = 1;
        SW(0, 0) = SW(1, 2) = SW(2, 1) = SW(3, 3) = 1;
        decomp = std::max({decomp, 1.0 - global_phase_fidelity(circuit_unitary(hadamard(1, 0)), H),
                           1.0 - global_phase_fidelity(circuit_unitary(cnot(2, 0, 1)), CN),
                           1.0 - global_phase_fidelity(circuit_unitary(swap_gate(2, 0, 1)), SW)});
    }
    double qftd = 0.0;
    for (int n = 1; n <= 5; ++n) qftd = std::max(qftd, 1.0 - global_phase_fidelity(circuit_unitary(qft(n)), dft_matrix(n)));

    double grad = 0.0;
    for (const auto& tgt : {GateTarget::x(0, kPi), GateTarget::x(1, kPi), GateTarget::y(1, kPi / 2)})
        grad = std::max(grad, synthesize(reg, tgt, 1e-6, 3, NoiseModel::nuclear(), AmplitudeBounds::single_qubit()).gradient_residual);
    grad = std::max(grad, synthesize(reg, GateTarget::cz(), 1e-6, 4, NoiseModel::electron(), AmplitudeBounds::cz()).gradient_residual);

    const bool ok = herm < 1e-12 && unit < 1e-10 && func < 1e-8 && lind < 1e-7 && trace_pos < 1e-10 && decomp < 1e-10 &&
                    qftd < 1e-10 && grad < 1e-10;
    std::string detail = fmt("Hermiticity %.1e, unitarity %.1e, functionals vs quadrature %.1e rad (100 draws), ", herm,
                             unit, func) +
                         fmt("Lindblad vs RK %.1e, trace/positivity %.1e, ", lind, trace_pos) +
                         fmt("decompositions %.1e, QFT vs DFT %.1e, gradient residual %.1e", decomp, qftd, grad);
    report(8, ok, detail, since(t0));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
