#include "nvpulse/time_ordered.hpp"

#include "nvpulse/parallel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nvpulse {

PropagatorSettings PropagatorSettings::for_tau(double tau, Integrator integrator) {
    PropagatorSettings s;
    s.steps = static_cast<int>(std::ceil(8000.0 * tau / 1e-6 - 1e-9));
    s.integrator = integrator;
    return s;
}

void PropagatorSettings::validate() const {
    if (steps < 1) throw ConfigError("propagator needs at least one step");
}

namespace {

// Field samples of one noise realization: per-basis field values and nuclear phases at every evaluation point.
struct SampledRealization {
    int steps = 0;
    int points_per_step = 0;
    double dt = 0.0;
    double amp_bound_per_coeff = 0.0;  // bound on |field| per unit |c_n|
    Eigen::MatrixXd basis_field;       // (M, samples)
    Eigen::MatrixXd cos_w, sin_w;      // (nuclei, samples)
};

SampledRealization sample(const std::vector<double>& omegas, const PulseWaveform& w, const NoiseRealization& noise,
                          const PropagatorSettings& settings) {
    settings.validate();
    SampledRealization s;
    s.steps = settings.steps;
    s.points_per_step = settings.integrator == Integrator::Magnus4 ? 2 : 1;
    s.dt = w.basis.tau / settings.steps;
    const int M = w.basis.count();
    const int samples = s.steps * s.points_per_step;
    s.basis_field.resize(M, samples);
    s.cos_w.resize(static_cast<Eigen::Index>(omegas.size()), samples);
    s.sin_w.resize(static_cast<Eigen::Index>(omegas.size()), samples);
    s.amp_bound_per_coeff = (1.0 + std::abs(noise.epsilon)) * 2.0 * std::sqrt(kTwoPi);
    const double off = std::sqrt(3.0) / 6.0;
    const double carrier = w.carrier + noise.delta;
    for (int k = 0; k < s.steps; ++k) {
        const double mid = -0.5 * w.basis.tau + (k + 0.5) * s.dt;
        for (int p = 0; p < s.points_per_step; ++p) {
            const double t = s.points_per_step == 1 ? mid : mid + (p == 0 ? -off : off) * s.dt;
            const int col = k * s.points_per_step + p;
            const double arg = carrier * t + noise.phi;
            const double drive = -(1.0 + noise.epsilon) * (w.quadrature == Quadrature::Cosine ? std::cos(arg) : std::sin(arg));
            for (int n = 0; n < M; ++n) s.basis_field(n, col) = drive * basis_time(w.basis, n, t);
            for (std::size_t i = 0; i < omegas.size(); ++i) {
                s.cos_w(static_cast<Eigen::Index>(i), col) = std::cos(omegas[i] * t);
                s.sin_w(static_cast<Eigen::Index>(i), col) = std::sin(omegas[i] * t);
            }
        }
    }
    return s;
}

std::vector<Mat2> factors_from_samples(const SampledRealization& s, const Eigen::VectorXd& c) {
    const Eigen::Index nuclei = s.cos_w.rows();
    const double bound = s.amp_bound_per_coeff * c.cwiseAbs().sum() * 0.5 * static_cast<double>(nuclei);
    if (!(bound * s.dt < 1.0)) {
        std::ostringstream msg;
        msg << "propagator step guard violated: max|H|*dt <= " << bound * s.dt << " must be < 1; increase the step count above "
            << s.steps;
        throw SolverError(msg.str());
    }
    const Eigen::RowVectorXd field = c.transpose() * s.basis_field;
    std::vector<Mat2> out(static_cast<std::size_t>(nuclei), Mat2::Identity());
    const double magnus2 = std::sqrt(3.0) * s.dt * s.dt / 12.0;
    for (Eigen::Index i = 0; i < nuclei; ++i) {
        Mat2 U = Mat2::Identity();
        for (int k = 0; k < s.steps; ++k) {
            double rx, ry, rz = 0.0;
            if (s.points_per_step == 1) {
                rx = s.dt * field(k) * s.cos_w(i, k);
                ry = s.dt * field(k) * s.sin_w(i, k);
            } else {
                const int a = 2 * k, b = 2 * k + 1;
                const double h1x = field(a) * s.cos_w(i, a), h1y = field(a) * s.sin_w(i, a);
                const double h2x = field(b) * s.cos_w(i, b), h2y = field(b) * s.sin_w(i, b);
                rx = 0.5 * s.dt * (h1x + h2x);
                ry = 0.5 * s.dt * (h1y + h2y);
                rz = -magnus2 * (h1x * h2y - h1y * h2x);
            }
            U = su2_exp(rx, ry, rz) * U;
        }
        out[static_cast<std::size_t>(i)] = U;
    }
    return out;
}

Eigen::VectorXd coeff_vector(const std::vector<double>& c) {
    return Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

CMat tensor(const std::vector<Mat2>& f) {
    CMat U = CMat::Identity(1, 1);
    for (const auto& m : f) U = kron(U, m);
    return U;
}

}  // namespace

std::vector<Mat2> propagate_factors(const Register& reg, const PulseWaveform& w, const NoiseRealization& noise,
                                    const PropagatorSettings& settings) {
    w.validate();
    const auto s = sample(transition_frequencies(reg), w, noise, settings);
    return factors_from_samples(s, coeff_vector(w.coefficients));
}

CMat propagate(const Register& reg, const PulseWaveform& w, const NoiseRealization& noise,
               const PropagatorSettings& settings) {
    const CMat U = tensor(propagate_factors(reg, w, noise, settings));
    const double err = max_abs(U.adjoint() * U - CMat::Identity(U.rows(), U.cols()));
    if (err > settings.unitarity_tolerance) throw SolverError("propagator lost unitarity: " + std::to_string(err));
    return U;
}

double operator_distance(const CMat& U, const CMat& V) { return max_abs(U - V); }

std::vector<Mat2> target_factors(std::size_t nuclei, const GateTarget& target) {
    if (target.kind == GateKind::CZ) throw std::invalid_argument("time-ordered targets are single-qubit gates");
    if (target.target_qubit >= nuclei) throw std::out_of_range("target qubit out of range");
    std::vector<Mat2> f(nuclei, Mat2::Identity());
    f[target.target_qubit] = target.kind == GateKind::SingleX ? su2_exp(target.angle, 0.0, 0.0) : su2_exp(0.0, target.angle, 0.0);
    return f;
}

double factor_infidelity(const std::vector<Mat2>& U, const std::vector<Mat2>& V) {
    if (U.size() != V.size()) throw std::invalid_argument("factor count mismatch");
    cplx overlap = 1.0;
    double norm = 1.0;
    for (std::size_t i = 0; i < U.size(); ++i) {
        overlap *= (U[i].adjoint() * V[i]).trace();
        norm *= (U[i].adjoint() * U[i]).trace().real();
    }
    return 1.0 - overlap.real() / norm;
}

namespace {

struct RealizationSet {
    std::vector<SampledRealization> samples;
    std::vector<double> weights;
};

RealizationSet sample_all(const Register& reg, const PulseWaveform& w, const NoiseModel& noise,
                          const PropagatorSettings& settings, int threads) {
    noise.validate();
    const auto pts = noise.points();
    const auto omegas = transition_frequencies(reg);
    RealizationSet set;
    set.samples.resize(pts.size());
    set.weights.resize(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t k) {
        set.samples[k] = sample(omegas, w, {pts[k].delta, pts[k].epsilon, pts[k].phi}, settings);
        set.weights[k] = pts[k].weight;
    });
    return set;
}

double averaged_from_set(const RealizationSet& set, const Eigen::VectorXd& c, const std::vector<Mat2>& target) {
    double s = 0.0;
    for (std::size_t k = 0; k < set.samples.size(); ++k)
        s += set.weights[k] * factor_infidelity(factors_from_samples(set.samples[k], c), target);
    return s;
}

std::vector<double> axis_points(double lo, double hi, double step) {
    std::vector<double> v;
    if (step <= 0.0 || hi <= lo) return {lo};
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int k = 0; k <= n; ++k) v.push_back(lo + k * step);
    return v;
}

std::vector<std::vector<double>> cartesian(const std::vector<std::vector<double>>& axes) {
    std::vector<std::vector<double>> out{{}};
    for (const auto& ax : axes) {
        std::vector<std::vector<double>> next;
        next.reserve(out.size() * ax.size());
        for (const auto& p : out)
            for (double v : ax) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

double refined_averaged_infidelity(const Register& reg, const PulseWaveform& w, const GateTarget& target,
                                   const NoiseModel& noise, const PropagatorSettings& settings, int threads) {
    target.validate(reg);
    w.validate();
    const auto set = sample_all(reg, w, noise, settings, threads);
    const auto tgt = target_factors(reg.size(), target);
    const Eigen::VectorXd c = coeff_vector(w.coefficients);
    std::vector<double> parts(set.samples.size());
    parallel_for(set.samples.size(), threads, [&](std::size_t k) {
        parts[k] = set.weights[k] * factor_infidelity(factors_from_samples(set.samples[k], c), tgt);
    });
    double s = 0.0;
    for (double p : parts) s += p;
    return s;
}

RefinementGrid RefinementGrid::origin_only(int m) {
    RefinementGrid g;
    g.box.assign(static_cast<std::size_t>(m), {0.0, 0.0});
    g.coarse_step = 0.0;
    g.fine_step = 0.0;
    return g;
}

void RefinementGrid::validate(int m) const {
    if (static_cast<int>(box.size()) != m) throw ConfigError("refinement grid needs one range per coefficient");
    for (const auto& [lo, hi] : box)
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("refinement range needs lo <= hi");
    if (coarse_step < 0.0 || fine_step < 0.0) throw ConfigError("refinement steps must be non-negative");
    if (coarse_step == 0.0)
        for (const auto& [lo, hi] : box)
            if (lo != hi) throw ConfigError("refinement range with lo < hi needs a positive coarse step");
}

RefinementReport refine_coefficients(const Register& reg, const PulseWaveform& w, const GateTarget& target,
                                     const NoiseModel& noise, const RefinementGrid& grid,
                                     const PropagatorSettings& settings, int threads, bool polish) {
    target.validate(reg);
    w.validate();
    const int M = w.basis.count();
    grid.validate(M);
    const auto set = sample_all(reg, w, noise, settings, threads);
    const auto tgt = target_factors(reg.size(), target);
    const Eigen::VectorXd c0 = coeff_vector(w.coefficients);

    int evaluations = 0;
    auto evaluate_all = [&](const std::vector<std::vector<double>>& pts) {
        std::vector<double> vals(pts.size());
        parallel_for(pts.size(), threads, [&](std::size_t k) {
            vals[k] = averaged_from_set(set, c0 + coeff_vector(pts[k]), tgt);
        });
        evaluations += static_cast<int>(pts.size());
        return vals;
    };

    RefinementReport rep;
    rep.c = w.coefficients;
    rep.N = settings.steps;
    rep.unrefined_I = evaluate_all({std::vector<double>(M, 0.0)})[0];
    std::vector<double> best(M, 0.0);
    double best_val = rep.unrefined_I;
    auto consider = [&](const std::vector<std::vector<double>>& pts) {
        const auto vals = evaluate_all(pts);
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (vals[k] < best_val) {
                best_val = vals[k];
                best = pts[k];
            }
    };

    std::vector<std::vector<double>> axes;
    for (const auto& [lo, hi] : grid.box) axes.push_back(axis_points(lo, hi, grid.coarse_step));
    consider(cartesian(axes));
    const std::vector<double> coarse_best = best;
    if (grid.fine_step > 0.0 && grid.coarse_step > 0.0) {
        std::vector<std::vector<double>> fine_axes;
        for (int n = 0; n < M; ++n) {
            const auto [lo, hi] = grid.box[n];
            if (hi <= lo) {
                fine_axes.push_back({lo});
                continue;
            }
            fine_axes.push_back(axis_points(coarse_best[n] - grid.coarse_step, coarse_best[n] + grid.coarse_step, grid.fine_step));
        }
        consider(cartesian(fine_axes));
    }
    rep.path = "grid";
    if (polish) {
        rep.path = "grid+polish";
        double step = grid.fine_step > 0.0 ? grid.fine_step : std::max(grid.coarse_step, 1e3);
        const double min_step = step / 64.0;
        for (int iter = 0; iter < 200 && step >= min_step; ++iter) {
            std::vector<std::vector<double>> trial;
            for (int n = 0; n < M; ++n)
                for (double sgn : {-1.0, 1.0}) {
                    auto p = best;
                    p[n] += sgn * step;
                    trial.push_back(p);
                }
            const double before = best_val;
            consider(trial);
            if (!(best_val < before)) step *= 0.5;
        }
    }
    rep.d = best;
    rep.refined_I = best_val;
    rep.evaluations = evaluations;
    nlohmann::json box = nlohmann::json::array();
    for (const auto& [lo, hi] : grid.box) box.push_back({lo, hi});
    rep.grid_spec = {{"box_rad_s", box},
                     {"coarse_step_rad_s", grid.coarse_step},
                     {"fine_step_rad_s", grid.fine_step},
                     {"coarse_argmin_rad_s", coarse_best},
                     {"integrator", settings.integrator == Integrator::Magnus4 ? "magnus4" : "midpoint"},
                     {"quadrature_nodes", noise.quadrature_nodes}};
    return rep;
}

nlohmann::json refinement_to_json(const RefinementReport& r) {
    return {{"c", r.c},
            {"d", r.d},
            {"units", "rad/s"},
            {"N", r.N},
            {"unrefined_I", r.unrefined_I},
            {"refined_I", r.refined_I},
            {"path", r.path},
            {"evaluations", r.evaluations},
            {"grid_spec", r.grid_spec}};
}

}  // namespace nvpulse
