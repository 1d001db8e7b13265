#include "nvpulse/circuits.hpp"

#include "nvpulse/parallel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace nvpulse {

void Circuit::validate() const {
    if (n < 1) throw ConfigError("circuit needs at least one qubit");
    for (const auto& op : ops) {
        const std::size_t want = op.kind == OpKind::CZ ? 2 : 1;
        if (op.qubits.size() != want) throw ConfigError("op has the wrong number of qubits");
        for (int q : op.qubits)
            if (q < 0 || q >= n) throw ConfigError("op qubit index out of range");
        if (op.kind == OpKind::CZ && op.qubits[0] == op.qubits[1]) throw ConfigError("CZ needs two distinct qubits");
        if (op.duration < 0.0) throw ConfigError("op duration must be non-negative");
    }
}

void Circuit::append(const Circuit& other) {
    if (other.n != n) throw std::invalid_argument("circuit size mismatch");
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

namespace {

CircuitOp rx(int q, double a) { return {OpKind::Rx, {q}, a, 0.0}; }
CircuitOp ry(int q, double a) { return {OpKind::Ry, {q}, a, 0.0}; }
CircuitOp cz(int a, int b) { return {OpKind::CZ, {a, b}, 0.0, 0.0}; }

// Identities are written right to left; execution order is the reverse.
Circuit from_right_to_left(int n, std::vector<CircuitOp> ops) {
    std::reverse(ops.begin(), ops.end());
    Circuit c{n, std::move(ops)};
    c.validate();
    return c;
}

void check_pair(int n, int a, int b) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw ConfigError("two-qubit gate needs distinct valid qubits");
}

}  // namespace

Circuit hadamard(int n, int q) { return from_right_to_left(n, {rx(q, kPi), ry(q, 0.5 * kPi)}); }

Circuit phase_gate(int n, int q, double theta) {
    return from_right_to_left(n, {ry(q, -0.5 * kPi), rx(q, theta), ry(q, 0.5 * kPi)});
}

Circuit cphase(int n, int a, int b, double theta) {
    check_pair(n, a, b);
    const double p = (theta + kPi) / 4.0;
    return from_right_to_left(n, {ry(a, -0.5 * kPi), rx(a, 0.5 * theta), ry(a, 0.5 * kPi),
                                  rx(b, -0.5 * kPi), ry(b, -p), cz(a, b), ry(b, p), rx(b, 0.5 * kPi),
                                  ry(b, -0.5 * kPi), rx(b, -p), cz(a, b), rx(b, p), ry(b, 0.5 * kPi)});
}

Circuit cnot(int n, int a, int b) {
    check_pair(n, a, b);
    Circuit c{n, {}};
    c.append(hadamard(n, b));
    c.ops.push_back(cz(a, b));
    c.append(hadamard(n, b));
    return c;
}

Circuit swap_gate(int n, int a, int b) {
    Circuit c{n, {}};
    c.append(cnot(n, a, b));
    c.append(cnot(n, b, a));
    c.append(cnot(n, a, b));
    return c;
}

Circuit qft(int n) {
    if (n < 1) throw ConfigError("QFT needs at least one qubit");
    Circuit c{n, {}};
    for (int k = 0; k < n; ++k) {
        c.append(hadamard(n, k));
        for (int m = k + 1; m < n; ++m) c.append(cphase(n, m, k, kPi / std::pow(2.0, m - k)));
    }
    for (int k = 0; k < n / 2; ++k) c.append(swap_gate(n, k, n - 1 - k));
    return c;
}

Circuit decompose(const GateSpec& g) {
    auto need = [&](std::size_t k) {
        if (g.qubits.size() != k) throw ConfigError("gate has the wrong number of qubits");
    };
    switch (g.name) {
        case GateName::H: need(1); return hadamard(g.n, g.qubits[0]);
        case GateName::Phase: need(1); return phase_gate(g.n, g.qubits[0], g.theta);
        case GateName::CPhase: need(2); return cphase(g.n, g.qubits[0], g.qubits[1], g.theta);
        case GateName::CNOT: need(2); return cnot(g.n, g.qubits[0], g.qubits[1]);
        case GateName::SWAP: need(2); return swap_gate(g.n, g.qubits[0], g.qubits[1]);
        case GateName::QFT: return qft(g.n);
    }
    throw ConfigError("unknown gate kind");
}

int count_pulses(const Circuit& c) {
    c.validate();
    return static_cast<int>(c.ops.size());
}

CMat op_generator(const CircuitOp& op, int n) {
    switch (op.kind) {
        case OpKind::Rx: return embed(0.5 * op.angle * pauli::X(), op.qubits.at(0), n);
        case OpKind::Ry: return embed(0.5 * op.angle * pauli::Y(), op.qubits.at(0), n);
        case OpKind::CZ: return kPi * embed(pauli::P1(), op.qubits.at(0), n) * embed(pauli::P1(), op.qubits.at(1), n);
    }
    throw std::invalid_argument("unknown op kind");
}

CMat op_unitary(const CircuitOp& op, int n) {
    if (op.kind == OpKind::CZ) {
        CMat U = CMat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
        const int a = op.qubits.at(0), b = op.qubits.at(1);
        for (Eigen::Index i = 0; i < U.rows(); ++i)
            if (((i >> (n - 1 - a)) & 1) && ((i >> (n - 1 - b)) & 1)) U(i, i) = -1.0;
        return U;
    }
    const double a = op.angle;
    const Mat2 u = op.kind == OpKind::Rx ? su2_exp(a, 0.0, 0.0) : su2_exp(0.0, a, 0.0);
    return embed(u, op.qubits.at(0), n);
}

CMat circuit_unitary(const Circuit& c) {
    c.validate();
    CMat U = CMat::Identity(Eigen::Index{1} << c.n, Eigen::Index{1} << c.n);
    for (const auto& op : c.ops) U = op_unitary(op, c.n) * U;
    return U;
}

CMat dft_matrix(int n) {
    const Eigen::Index N = Eigen::Index{1} << n;
    CMat F(N, N);
    for (Eigen::Index r = 0; r < N; ++r)
        for (Eigen::Index c = 0; c < N; ++c) F(r, c) = std::polar(1.0 / std::sqrt(static_cast<double>(N)), kTwoPi * static_cast<double>((r * c) % N) / N);
    return F;
}

double global_phase_fidelity(const CMat& U, const CMat& V) {
    if (U.rows() != V.rows() || U.cols() != V.cols()) throw std::invalid_argument("dimension mismatch");
    return std::abs((U.adjoint() * V).trace()) / static_cast<double>(U.rows());
}

void TimingModel::validate() const {
    if (single_gate_time < 0.0 || cz_gate_time < 0.0 || cycle_time < 0.0 || readout_cycles < 0)
        throw ConfigError("timing values must be non-negative");
}

double timing_report(int n, int pulse_count, const TimingModel& timing) {
    timing.validate();
    if (n < 0 || pulse_count < 0) throw ConfigError("qubit and pulse counts must be non-negative");
    return pulse_count * timing.single_gate_time + static_cast<double>(n) * timing.readout_cycles * timing.cycle_time;
}

Circuit with_timing(Circuit c, const TimingModel& timing, double scale) {
    for (auto& op : c.ops) op.duration = scale * (op.kind == OpKind::CZ ? timing.cz_gate_time : timing.single_gate_time);
    return c;
}

namespace {

// Maps (local index, spectator index) to the full basis index; local qubits keep their listed order.
std::vector<std::vector<Eigen::Index>> index_map(int n, const std::vector<int>& local) {
    std::vector<int> others;
    for (int q = 0; q < n; ++q)
        if (std::find(local.begin(), local.end(), q) == local.end()) others.push_back(q);
    const int k = static_cast<int>(local.size());
    const Eigen::Index dl = Eigen::Index{1} << k, dout = Eigen::Index{1} << (n - k);
    std::vector<std::vector<Eigen::Index>> map(static_cast<std::size_t>(dl), std::vector<Eigen::Index>(static_cast<std::size_t>(dout)));
    for (Eigen::Index l = 0; l < dl; ++l)
        for (Eigen::Index o = 0; o < dout; ++o) {
            Eigen::Index idx = 0;
            for (int b = 0; b < k; ++b)
                if ((l >> (k - 1 - b)) & 1) idx |= Eigen::Index{1} << (n - 1 - local[b]);
            for (int b = 0; b < n - k; ++b)
                if ((o >> (n - k - 1 - b)) & 1) idx |= Eigen::Index{1} << (n - 1 - others[b]);
            map[l][o] = idx;
        }
    return map;
}

void apply_local_channel(CMat& rho, const CircuitOp& op, const LindbladModel& model, int n) {
    const int k = static_cast<int>(op.qubits.size());
    CircuitOp local = op;
    for (int b = 0; b < k; ++b) local.qubits[b] = b;
    LindbladModel lm;
    for (int q : op.qubits) lm.T2.push_back(model.T2.at(q));
    const CMat E = gate_channel(op_generator(local, k), lm, op.duration);
    const auto map = index_map(n, op.qubits);
    std::vector<int> others;
    for (int q = 0; q < n; ++q)
        if (std::find(op.qubits.begin(), op.qubits.end(), q) == op.qubits.end()) others.push_back(q);
    const Eigen::Index dl = Eigen::Index{1} << k, dout = Eigen::Index{1} << (n - k);
    std::vector<double> decay(others.size());
    for (std::size_t b = 0; b < others.size(); ++b) decay[b] = std::exp(-op.duration / model.T2.at(others[b]));
    CVec v(dl * dl);
    for (Eigen::Index ro = 0; ro < dout; ++ro)
        for (Eigen::Index co = 0; co < dout; ++co) {
            for (Eigen::Index c = 0; c < dl; ++c)
                for (Eigen::Index r = 0; r < dl; ++r) v(r + dl * c) = rho(map[r][ro], map[c][co]);
            double f = 1.0;
            const Eigen::Index diff = ro ^ co;
            for (std::size_t b = 0; b < others.size(); ++b)
                if ((diff >> (others.size() - 1 - b)) & 1) f *= decay[b];
            const CVec out = f * (E * v);
            for (Eigen::Index c = 0; c < dl; ++c)
                for (Eigen::Index r = 0; r < dl; ++r) rho(map[r][ro], map[c][co]) = out(r + dl * c);
        }
}

}  // namespace

CMat run_noisy(const Circuit& c, const CMat& rho0, const LindbladModel& model, bool dense) {
    c.validate();
    if (model.qubits() != c.n) throw ConfigError("decoherence model size does not match circuit");
    model.validate();
    CMat rho = rho0;
    if (dense) {
        const Superoperator base = build_superoperators(CMat::Zero(rho0.rows(), rho0.cols()), model);
        for (const auto& op : c.ops) {
            const CMat E = (coherent_superoperator(op_generator(op, c.n)) + base.G * op.duration).exp();
            rho = unvectorize(E * vectorize(rho), rho.rows());
        }
        return rho;
    }
    for (const auto& op : c.ops) apply_local_channel(rho, op, model, c.n);
    return rho;
}

CVec qft_input_state(int n) {
    const Eigen::Index N = Eigen::Index{1} << n;
    CVec out = CVec::Zero(N);
    out(1 % N) = 1.0;
    return dft_matrix(n).adjoint() * out;
}

SimulationReport simulate_circuit(const Circuit& c, const CVec& psi_in, const TimingModel& timing,
                                  const LindbladModel& model, const SimulationOptions& opts) {
    if (c.n > opts.max_qubits) throw ConfigError("circuit has " + std::to_string(c.n) + " qubits; at most " + std::to_string(opts.max_qubits) + " are supported");
    timing.validate();
    if (psi_in.size() != (Eigen::Index{1} << c.n)) throw ConfigError("input state dimension does not match circuit");
    SimulationReport rep;
    rep.derived_pulse_count = count_pulses(c);
    rep.reference_pulse_count = opts.reference_pulse_count.value_or(rep.derived_pulse_count);
    if (rep.reference_pulse_count < 0) throw ConfigError("reference pulse count must be non-negative");
    rep.duration_scale = rep.derived_pulse_count > 0 ? static_cast<double>(rep.reference_pulse_count) / rep.derived_pulse_count : 1.0;
    const Circuit timed = with_timing(c, timing, rep.duration_scale);
    const CVec psi = psi_in / psi_in.norm();
    const CMat rho = run_noisy(timed, pure_state(psi), model, opts.dense);
    const CVec ideal = circuit_unitary(c) * psi;
    rep.fidelity = state_fidelity(pure_state(ideal), rho);
    rep.shot_time = 0.0;
    for (const auto& op : timed.ops) rep.shot_time += op.duration;
    rep.total_time = rep.shot_time + static_cast<double>(c.n) * timing.readout_cycles * timing.cycle_time;
    return rep;
}

std::vector<SweepPoint> fidelity_sweep(const Circuit& c, const CVec& psi_in, const TimingModel& timing,
                                       const LindbladModel& model, const std::vector<double>& multiples,
                                       const SimulationOptions& opts, int threads) {
    std::vector<SweepPoint> out(multiples.size());
    parallel_for(multiples.size(), threads, [&](std::size_t k) {
        if (multiples[k] < 0.0) throw ConfigError("gate-time multiples must be non-negative");
        TimingModel t = timing;
        t.single_gate_time *= multiples[k];
        t.cz_gate_time *= multiples[k];
        const auto rep = simulate_circuit(c, psi_in, t, model, opts);
        out[k] = {multiples[k], rep.fidelity, rep.total_time};
    });
    return out;
}

std::vector<ShotSample> sample_shot_convergence(double p, long shots, std::uint64_t seed, double shot_time) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("success probability must lie in [0, 1]");
    if (shots < 0) throw ConfigError("shot count must be non-negative");
    std::mt19937_64 rng(seed);
    std::vector<ShotSample> trace;
    trace.reserve(static_cast<std::size_t>(shots));
    long hits = 0;
    for (long s = 1; s <= shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < p) ++hits;
        trace.push_back({s, static_cast<double>(hits) / s, s * shot_time});
    }
    return trace;
}

DecayFit fit_exponential_decay(const std::vector<double>& x, const std::vector<double>& F) {
    if (x.size() != F.size() || x.size() < 2) throw ConfigError("decay fit needs at least two matching points");
    Eigen::MatrixXd A(static_cast<Eigen::Index>(x.size()), 2);
    Eigen::VectorXd b(A.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        if (!(F[i] > 0.0)) throw ConfigError("decay fit needs positive fidelities");
        A(i, 0) = 1.0;
        A(i, 1) = -x[i];
        b(i) = std::log(F[i]);
    }
    const Eigen::Vector2d s = A.colPivHouseholderQr().solve(b);
    return {std::exp(s(0)), s(1)};
}

nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : c.ops) {
        const char* kind = op.kind == OpKind::Rx ? "Rx" : op.kind == OpKind::Ry ? "Ry" : "CZ";
        ops.push_back({{"kind", kind}, {"qubits", op.qubits}, {"angle_rad", op.angle}, {"duration_s", op.duration}});
    }
    return {{"n", c.n}, {"ops", ops}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
    try {
        Circuit c;
        c.n = j.at("n").get<int>();
        for (const auto& jo : j.at("ops")) {
            CircuitOp op;
            const auto kind = jo.at("kind").get<std::string>();
            if (kind == "Rx")
                op.kind = OpKind::Rx;
            else if (kind == "Ry")
                op.kind = OpKind::Ry;
            else if (kind == "CZ")
                op.kind = OpKind::CZ;
            else
                throw ConfigError("unknown op kind '" + kind + "'");
            op.qubits = jo.at("qubits").get<std::vector<int>>();
            op.angle = jo.value("angle_rad", 0.0);
            op.duration = jo.value("duration_s", 0.0);
            c.ops.push_back(op);
        }
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("circuit: ") + e.what());
    }
}

}  // namespace nvpulse
