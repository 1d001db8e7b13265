#include "nvpulse/lindblad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Eigenvalues>

#include <cmath>

namespace nvpulse {

CVec vectorize(const CMat& rho) { return Eigen::Map<const CVec>(rho.data(), rho.size()); }

CMat unvectorize(const CVec& v, Eigen::Index dim) {
    if (v.size() != dim * dim) throw std::invalid_argument("vector length does not match dimension");
    return Eigen::Map<const CMat>(v.data(), dim, dim);
}

LindbladModel LindbladModel::uniform(int n, double T2) {
    LindbladModel m;
    m.T2.assign(static_cast<std::size_t>(n), T2);
    return m;
}

void LindbladModel::validate() const {
    for (double t : T2)
        if (!(t > 0.0)) throw ConfigError("T2 must be positive");
}

std::vector<CMat> LindbladModel::jump_operators() const {
    validate();
    std::vector<CMat> L;
    const int n = qubits();
    for (int m = 0; m < n; ++m) L.push_back(std::sqrt(0.5 / T2[m]) * embed(pauli::Z(), m, n));
    return L;
}

CMat coherent_superoperator(const CMat& H) {
    const CMat I = CMat::Identity(H.rows(), H.cols());
    return cplx(0, -1) * (kron(I, H) - kron(H.transpose(), I));
}

CMat dissipator(const std::vector<CMat>& jumps, Eigen::Index dim) {
    const CMat I = CMat::Identity(dim, dim);
    CMat G = CMat::Zero(dim * dim, dim * dim);
    for (const auto& L : jumps) {
        if (L.rows() != dim || L.cols() != dim) throw std::invalid_argument("jump operator dimension mismatch");
        const CMat LdL = L.adjoint() * L;
        G += kron(L.conjugate(), L) - 0.5 * kron(I, LdL) - 0.5 * kron(LdL.transpose(), I);
    }
    return G;
}

Superoperator build_superoperators(const CMat& H, const LindbladModel& model, HamiltonianForm form) {
    if (H.rows() != H.cols()) throw std::invalid_argument("Hamiltonian must be square");
    if (H.rows() != (Eigen::Index{1} << model.qubits())) throw std::invalid_argument("Hamiltonian dimension does not match model");
    return {coherent_superoperator(H), dissipator(model.jump_operators(), H.rows()), form};
}

CMat evolve(const CMat& rho0, const Superoperator& s, double duration) {
    if (duration < 0.0) throw std::invalid_argument("duration must be non-negative");
    const Eigen::Index dim = rho0.rows();
    if (s.G.rows() != dim * dim) throw std::invalid_argument("superoperator dimension mismatch");
    const CMat gen = (s.form == HamiltonianForm::Rate ? CMat(s.H * duration) : s.H) + s.G * duration;
    const CMat E = gen.exp();
    if (!E.allFinite()) throw SolverError("matrix exponential did not converge");
    return unvectorize(E * vectorize(rho0), dim);
}

double state_fidelity(const CMat& rho_ideal, const CMat& rho) {
    if (rho_ideal.rows() != rho.rows() || rho_ideal.cols() != rho.cols()) throw std::invalid_argument("dimension mismatch");
    const cplx num = (rho_ideal.adjoint() * rho).trace();
    const cplx den = (rho_ideal.adjoint() * rho_ideal).trace();
    return num.real() / den.real();
}

void check_density_matrix(const CMat& rho, double tol) {
    if (rho.rows() != rho.cols()) throw ConfigError("density matrix must be square");
    if (max_abs(rho - rho.adjoint()) > tol) throw ConfigError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > tol) throw ConfigError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()));
    if (es.eigenvalues().minCoeff() < -tol) throw ConfigError("density matrix has a negative eigenvalue");
}

CMat gate_channel(const CMat& K, const LindbladModel& model, double duration) {
    const Superoperator s = build_superoperators(K, model, HamiltonianForm::Integrated);
    return (s.H + s.G * duration).exp();
}

CMat pure_state(const CVec& psi) { return psi * psi.adjoint(); }

nlohmann::json density_to_json(const CMat& rho) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < rho.cols(); ++c) row.push_back({rho(r, c).real(), rho(r, c).imag()});
        j.push_back(row);
    }
    return j;
}

CMat density_from_json(const nlohmann::json& j) {
    try {
        const auto n = static_cast<Eigen::Index>(j.size());
        CMat rho(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (static_cast<Eigen::Index>(j[r].size()) != n) throw ConfigError("density matrix JSON must be square");
            for (Eigen::Index c = 0; c < n; ++c) rho(r, c) = cplx(j[r][c][0].get<double>(), j[r][c][1].get<double>());
        }
        return rho;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("density matrix: ") + e.what());
    }
}

}  // namespace nvpulse
