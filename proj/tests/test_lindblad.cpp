#include "nvpulse/lindblad.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace nvpulse;

namespace {

CMat random_hermitian(int dim, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g;
    CMat A(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) A(r, c) = cplx(g(rng), g(rng));
    return scale * 0.5 * (A + A.adjoint());
}

CMat random_density(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMat A(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) A(r, c) = cplx(g(rng), g(rng));
    const CMat rho = A * A.adjoint();
    return rho / rho.trace();
}

// Classical RK4 on the matrix form of the master equation.
CMat rk4_master(const CMat& H, const std::vector<CMat>& L, CMat rho, double duration, int steps) {
    auto rhs = [&](const CMat& r) {
        CMat d = cplx(0, -1) * (H * r - r * H);
        for (const auto& l : L) {
            const CMat ldl = l.adjoint() * l;
            d += l * r * l.adjoint() - 0.5 * (ldl * r + r * ldl);
        }
        return d;
    };
    const double h = duration / steps;
    for (int k = 0; k < steps; ++k) {
        const CMat k1 = rhs(rho), k2 = rhs(rho + 0.5 * h * k1), k3 = rhs(rho + 0.5 * h * k2), k4 = rhs(rho + h * k3);
        rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

CVec plus_state() {
    CVec p(2);
    p << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return p;
}

}  // namespace

TEST_CASE("vectorization identity") {
    std::mt19937_64 rng(3);
    const CMat A = random_hermitian(3, rng, 1.0), X = random_density(3, rng), B = random_hermitian(3, rng, 1.0);
    CHECK(max_abs(vectorize(A * X * B) - kron(B.transpose(), A) * vectorize(X)) < 1e-12);
    CHECK(max_abs(unvectorize(vectorize(X), 3) - X) == 0.0);
    CHECK_THROWS_AS(unvectorize(vectorize(X), 2), std::invalid_argument);
}

TEST_CASE("dissipator examples") {
    CHECK(max_abs(dissipator({}, 2)) == 0.0);
    const double T2 = 1e-3;
    const CMat G = dissipator(LindbladModel::uniform(1, T2).jump_operators(), 2);
    CMat want = CMat::Zero(4, 4);
    want(1, 1) = -1.0 / T2;
    want(2, 2) = -1.0 / T2;
    CHECK(max_abs(G - want) < 1e-9);
    CHECK(max_abs(coherent_superoperator(CMat::Zero(4, 4))) == 0.0);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(LindbladModel::uniform(2, 0.0).validate(), ConfigError);
    CHECK_THROWS_AS(LindbladModel::uniform(1, -1.0).jump_operators(), ConfigError);
    CHECK_THROWS_AS(build_superoperators(CMat::Zero(2, 2), LindbladModel::uniform(2, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(evolve(CMat::Identity(2, 2) / 2.0, build_superoperators(CMat::Zero(2, 2), LindbladModel::uniform(1, 1.0)), -1.0),
                    std::invalid_argument);
}

TEST_CASE("zero duration returns the initial state") {
    std::mt19937_64 rng(5);
    const CMat rho = random_density(4, rng);
    const auto s = build_superoperators(random_hermitian(4, rng, 1e6), LindbladModel::uniform(2, 1e-3));
    CHECK(max_abs(evolve(rho, s, 0.0) - rho) < 1e-15);
}

TEST_CASE("pure dephasing of the plus state") {
    const double T2 = 1.8e-3;
    const auto s = build_superoperators(CMat::Zero(2, 2), LindbladModel::uniform(1, T2));
    for (double t : {1e-6, 1e-4, 1e-3}) {
        const CMat rho = evolve(pure_state(plus_state()), s, t);
        CHECK(rho(0, 1).real() == doctest::Approx(0.5 * std::exp(-t / T2)).epsilon(1e-12));
        CHECK(rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(state_fidelity(pure_state(plus_state()), rho) == doctest::Approx(0.5 * (1 + std::exp(-t / T2))).epsilon(1e-12));
    }
}

TEST_CASE("state fidelity limits") {
    CVec zero(2), one(2);
    zero << 1, 0;
    one << 0, 1;
    CHECK(state_fidelity(pure_state(zero), pure_state(zero)) == doctest::Approx(1.0));
    CHECK(state_fidelity(pure_state(zero), pure_state(one)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(state_fidelity(pure_state(zero), CMat::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("generator preserves the trace") {
    std::mt19937_64 rng(11);
    for (int n : {1, 2, 3}) {
        const int dim = 1 << n;
        const auto s = build_superoperators(random_hermitian(dim, rng, 1e5), LindbladModel::uniform(n, 2e-4));
        const CVec vecI = vectorize(CMat::Identity(dim, dim));
        CHECK((vecI.adjoint() * (s.H + s.G)).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("superoperator evolution agrees with an independent RK4 integration") {
    std::mt19937_64 rng(17);
    for (int n : {1, 2}) {
        const int dim = 1 << n;
        const CMat H = random_hermitian(dim, rng, 2e6);
        LindbladModel m;
        for (int q = 0; q < n; ++q) m.T2.push_back(1e-6 * (1 + q));
        const CMat rho0 = random_density(dim, rng);
        const double t = 2e-6;
        const CMat a = evolve(rho0, build_superoperators(H, m), t);
        const CMat b = rk4_master(H, m.jump_operators(), rho0, t, 20000);
        CHECK(max_abs(a - b) < 1e-9);
    }
}

TEST_CASE("evolution keeps states physical") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 3, dim = 1 << n;
        const auto s = build_superoperators(random_hermitian(dim, rng, 1e6), LindbladModel::uniform(n, 1e-6 * (1 + trial)));
        const CMat rho = evolve(random_density(dim, rng), s, 1e-6 * (trial % 5));
        CHECK_NOTHROW(check_density_matrix(rho, 1e-10));
    }
}

TEST_CASE("no dissipation reproduces unitary evolution") {
    std::mt19937_64 rng(29);
    const CMat H = random_hermitian(4, rng, 1e6);
    const CMat rho0 = random_density(4, rng);
    const double t = 3e-6;
    const Superoperator s{coherent_superoperator(H), CMat::Zero(16, 16), HamiltonianForm::Rate};
    const CMat U = (cplx(0, -t) * H).exp();
    CHECK(max_abs(evolve(rho0, s, t) - U * rho0 * U.adjoint()) < 1e-10);

    const CMat K = H * t;
    const Superoperator si{coherent_superoperator(K), CMat::Zero(16, 16), HamiltonianForm::Integrated};
    CHECK(max_abs(evolve(rho0, si, t) - U * rho0 * U.adjoint()) < 1e-10);
}

TEST_CASE("gate channel on the plus state") {
    const double T2 = 1.8e-3;
    const CMat K = 0.5 * kPi * pauli::X();
    const CMat ideal = pure_state(su2_exp(kPi, 0, 0) * plus_state());
    for (double t : {1e-6, 2e-6, 1e-5}) {
        const CMat rho = unvectorize(gate_channel(K, LindbladModel::uniform(1, T2), t) * vectorize(pure_state(plus_state())), 2);
        const double err = 1.0 - state_fidelity(ideal, rho);
        CHECK(err == doctest::Approx(0.5 * (1 - std::exp(-t / T2))).epsilon(1e-9));
    }
    const CMat rho = unvectorize(gate_channel(K, LindbladModel::uniform(1, T2), 1e-6) * vectorize(pure_state(plus_state())), 2);
    const double err = 1.0 - state_fidelity(ideal, rho);
    CHECK(err >= 1e-4);
    CHECK(err <= 1e-3);
}

TEST_CASE("density matrix checks and JSON") {
    CHECK_NOTHROW(check_density_matrix(CMat::Identity(2, 2) / 2.0));
    CHECK_THROWS_AS(check_density_matrix(CMat::Identity(2, 2)), ConfigError);
    CMat neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(check_density_matrix(neg), ConfigError);
    CMat nh(2, 2);
    nh << 0.5, 0.3, 0.0, 0.5;
    CHECK_THROWS_AS(check_density_matrix(nh), ConfigError);
    std::mt19937_64 rng(31);
    const CMat rho = random_density(4, rng);
    CHECK(max_abs(density_from_json(density_to_json(rho)) - rho) == 0.0);
    CHECK_THROWS_AS(density_from_json(nlohmann::json::parse("[[1,2],[3]]")), ConfigError);
}
