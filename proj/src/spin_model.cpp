#include "nvpulse/spin_model.hpp"

#include <algorithm>
#include <cmath>

namespace nvpulse {

PhysicalConstants PhysicalConstants::defaults() {
    PhysicalConstants c;
    c.gamma_e = 28024.951 * kMHz;
    c.D = 2870.0 * kMHz;
    c.gamma_nuclear["13C"] = 10.705 * kMHz;
    c.gamma_nuclear["15N"] = -4.316 * kMHz;
    return c;
}

void PhysicalConstants::validate() const {
    if (!(gamma_e > 0.0)) throw ConfigError("gamma_e must be positive");
    if (!(D > 0.0)) throw ConfigError("zero-field splitting D must be positive");
    for (const auto& [k, v] : gamma_nuclear)
        if (!std::isfinite(v) || v == 0.0) throw ConfigError("nuclear gyromagnetic ratio for " + k + " must be finite and nonzero");
}

double PhysicalConstants::nuclear(const std::string& isotope) const {
    auto it = gamma_nuclear.find(isotope);
    if (it == gamma_nuclear.end()) throw ConfigError("unknown isotope '" + isotope + "'");
    return it->second;
}

void Register::validate(double aligned_ratio) const {
    constants.validate();
    if (!(B0 > 0.0)) throw ConfigError("B0 must be positive");
    if (nuclei.empty()) throw ConfigError("register has no nuclei");
    for (const auto& n : nuclei) {
        if (!n.A.allFinite()) throw ConfigError("hyperfine tensor of " + n.label + " is not finite");
        if (n.aligned) {
            const double axial = std::abs(n.A(2, 2) + n.gamma * B0);
            if (std::abs(n.A(0, 2)) > aligned_ratio * axial || std::abs(n.A(1, 2)) > aligned_ratio * axial)
                throw ConfigError("nucleus " + n.label + " is flagged aligned but its off-diagonal hyperfine terms are large");
        }
    }
    auto w = transition_frequencies(*this);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t k = i + 1; k < w.size(); ++k)
            if (std::abs(w[i] - w[k]) < 1e-9 * std::max(std::abs(w[i]), 1.0))
                throw ConfigError("nuclei " + nuclei[i].label + " and " + nuclei[k].label + " share a transition frequency");
}

Register default_register() {
    Register r;
    r.B0 = 0.62;
    r.constants = PhysicalConstants::defaults();
    NucleusSpec n;
    n.label = "15N";
    n.gamma = r.constants.nuclear("15N");
    n.A(2, 2) = 3.0 * kMHz;
    NucleusSpec c;
    c.label = "13C";
    c.gamma = r.constants.nuclear("13C");
    c.A(2, 2) = 0.413 * kMHz;
    r.nuclei = {n, c};
    return r;
}

NucleusSpec nucleus_from_site(const std::string& label, double gamma, double A_zz, double A_nd) {
    NucleusSpec n;
    n.label = label;
    n.gamma = gamma;
    n.A = Eigen::Matrix3d::Identity() * A_zz;
    const double off = A_nd / std::sqrt(2.0);
    n.A(0, 2) = n.A(2, 0) = off;
    n.A(1, 2) = n.A(2, 1) = off;
    return n;
}

double transition_frequency(const Register& reg, std::size_t i) {
    if (i >= reg.nuclei.size()) throw std::out_of_range("nucleus index out of range");
    const auto& n = reg.nuclei[i];
    const double axial = n.A(2, 2) + n.gamma * reg.B0;
    return std::sqrt(axial * axial + n.A(0, 2) * n.A(0, 2) + n.A(1, 2) * n.A(1, 2));
}

std::vector<double> transition_frequencies(const Register& reg) {
    std::vector<double> w(reg.size());
    for (std::size_t i = 0; i < reg.size(); ++i) w[i] = transition_frequency(reg, i);
    return w;
}

CzParameters cz_parameters(const Register& reg) {
    if (reg.size() != 2) throw ConfigError("CZ model needs exactly two nuclei");
    CzParameters p;
    p.Delta = reg.constants.D - reg.constants.gamma_e * reg.B0;
    p.Omega = std::sqrt(2.0) * reg.constants.gamma_e;
    for (std::size_t i = 0; i < 2; ++i) {
        const double gB = reg.nuclei[i].gamma * reg.B0;
        const double w = transition_frequency(reg, i);
        p.alpha[i] = -0.5 * gB - 0.5 * w;
        p.beta[i] = -0.5 * gB + 0.5 * w;
    }
    p.lambda = p.Delta + p.beta[0] + p.beta[1];
    p.conditional = {p.Delta + p.beta[0] + p.beta[1], p.Delta + p.beta[0] - p.beta[1],
                     p.Delta - p.beta[0] + p.beta[1], p.Delta - p.beta[0] - p.beta[1]};
    return p;
}

CMat single_qubit_hamiltonian(const Register& reg, double field, double t) {
    const int n = static_cast<int>(reg.size());
    const int dim = 1 << n;
    CMat h = CMat::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        const double w = transition_frequency(reg, i);
        Mat2 local = -0.5 * field * (std::cos(w * t) * pauli::X() + std::sin(w * t) * pauli::Y());
        h += embed(local, i, n);
    }
    return h;
}

CMat two_qubit_hamiltonian(const CzParameters& p, double drive, double t) {
    CMat nx = CMat::Zero(4, 4), ny = CMat::Zero(4, 4);
    // Nuclear basis index = 2*s1 + s2; conditional[] is ordered 11, 10, 01, 00.
    for (int k = 0; k < 4; ++k) {
        const int idx = 3 - k;
        nx(idx, idx) = std::cos(p.conditional[k] * t);
        ny(idx, idx) = std::sin(p.conditional[k] * t);
    }
    return 0.5 * drive * (kron(pauli::X(), nx) - kron(pauli::Y(), ny));
}

namespace {

Eigen::Matrix3d tensor_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw ConfigError("A_MHz must be a 3x3 array");
    Eigen::Matrix3d A;
    for (int r = 0; r < 3; ++r) {
        if (!j[r].is_array() || j[r].size() != 3) throw ConfigError("A_MHz must be a 3x3 array");
        for (int c = 0; c < 3; ++c) A(r, c) = j[r][c].get<double>() * kMHz;
    }
    return A;
}

}  // namespace

PhysicalConstants constants_from_json(const nlohmann::json& j) {
    PhysicalConstants c = PhysicalConstants::defaults();
    if (j.is_null()) return c;
    if (j.contains("gamma_e_MHz_per_T")) c.gamma_e = j.at("gamma_e_MHz_per_T").get<double>() * kMHz;
    if (j.contains("D_MHz")) c.D = j.at("D_MHz").get<double>() * kMHz;
    if (j.contains("gamma_nuclear_MHz_per_T"))
        for (const auto& [k, v] : j.at("gamma_nuclear_MHz_per_T").items()) c.gamma_nuclear[k] = v.get<double>() * kMHz;
    c.validate();
    return c;
}

nlohmann::json constants_to_json(const PhysicalConstants& c) {
    nlohmann::json j;
    j["gamma_e_MHz_per_T"] = c.gamma_e / kMHz;
    j["D_MHz"] = c.D / kMHz;
    for (const auto& [k, v] : c.gamma_nuclear) j["gamma_nuclear_MHz_per_T"][k] = v / kMHz;
    return j;
}

Register register_from_json(const nlohmann::json& j) {
    try {
        Register r;
        r.B0 = j.at("B0_tesla").get<double>();
        r.constants = constants_from_json(j.contains("constants") ? j.at("constants") : nlohmann::json());
        for (const auto& jn : j.at("nuclei")) {
            NucleusSpec n;
            n.label = jn.at("label").get<std::string>();
            if (jn.contains("gamma_MHz_per_T"))
                n.gamma = jn.at("gamma_MHz_per_T").get<double>() * kMHz;
            else
                n.gamma = r.constants.nuclear(jn.value("isotope", n.label));
            n.A = tensor_from_json(jn.at("A_MHz"));
            n.aligned = jn.value("aligned", true);
            r.nuclei.push_back(n);
        }
        r.validate();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("register: ") + e.what());
    }
}

nlohmann::json register_to_json(const Register& reg) {
    nlohmann::json j;
    j["B0_tesla"] = reg.B0;
    j["constants"] = constants_to_json(reg.constants);
    j["nuclei"] = nlohmann::json::array();
    for (const auto& n : reg.nuclei) {
        nlohmann::json jn;
        jn["label"] = n.label;
        jn["gamma_MHz_per_T"] = n.gamma / kMHz;
        nlohmann::json A = nlohmann::json::array();
        for (int r = 0; r < 3; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < 3; ++c) row.push_back(n.A(r, c) / kMHz);
            A.push_back(row);
        }
        jn["A_MHz"] = A;
        jn["aligned"] = n.aligned;
        j["nuclei"].push_back(jn);
    }
    return j;
}

}  // namespace nvpulse
