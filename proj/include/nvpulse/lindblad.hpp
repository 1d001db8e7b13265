#pragma once

#include "nvpulse/common.hpp"

#include <json.hpp>

#include <vector>

namespace nvpulse {

// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
CVec vectorize(const CMat& rho);
CMat unvectorize(const CVec& v, Eigen::Index dim);

struct LindbladModel {
    std::vector<double> T2;  // per qubit, s

    static LindbladModel uniform(int n, double T2);
    int qubits() const { return static_cast<int>(T2.size()); }
    void validate() const;
    // sqrt(1/(2 T2_m)) sigma_z on qubit m.
    std::vector<CMat> jump_operators() const;
};

enum class HamiltonianForm { Rate, Integrated };

struct Superoperator {
    CMat H;  // coherent part, -i(1 kron H - H^T kron 1)
    CMat G;  // dissipative part
    HamiltonianForm form = HamiltonianForm::Rate;
};

CMat coherent_superoperator(const CMat& H);
CMat dissipator(const std::vector<CMat>& jumps, Eigen::Index dim);

// H is either a Hamiltonian (rad/s) or its time integral (rad), per `form`.
Superoperator build_superoperators(const CMat& H, const LindbladModel& model,
                                   HamiltonianForm form = HamiltonianForm::Rate);

// exp(int H dt + G t) applied to vec(rho0).
CMat evolve(const CMat& rho0, const Superoperator& s, double duration);

// Tr(rho_I^dag rho) / Tr(rho_I^dag rho_I), real part.
double state_fidelity(const CMat& rho_ideal, const CMat& rho);

// Throws ConfigError unless rho is Hermitian, unit-trace and positive semidefinite within tol.
void check_density_matrix(const CMat& rho, double tol = 1e-9);

// Superoperator of a gate U = exp(-i K) acting for `duration` under concurrent dephasing.
CMat gate_channel(const CMat& K, const LindbladModel& model, double duration);

CMat pure_state(const CVec& psi);

nlohmann::json density_to_json(const CMat& rho);
CMat density_from_json(const nlohmann::json& j);

}  // namespace nvpulse
