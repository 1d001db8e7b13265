#pragma once

#include "nvpulse/common.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace nvpulse {

// All rates in rad/s, fields in tesla.
struct PhysicalConstants {
    double gamma_e = 0.0;                        // rad s^-1 T^-1
    double D = 0.0;                              // rad s^-1
    std::map<std::string, double> gamma_nuclear; // rad s^-1 T^-1, signed

    static PhysicalConstants defaults();
    void validate() const;
    double nuclear(const std::string& isotope) const;
};

struct NucleusSpec {
    std::string label;
    double gamma = 0.0;                         // rad s^-1 T^-1
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();  // hyperfine tensor, rad/s
    bool aligned = true;
};

struct Register {
    double B0 = 0.0;
    PhysicalConstants constants;
    std::vector<NucleusSpec> nuclei;

    std::size_t size() const { return nuclei.size(); }
    // Throws ConfigError when an invariant fails.
    void validate(double aligned_ratio = 0.1) const;
};

// 15N (A = 3 MHz) and 13C (A = 0.413 MHz) at B0 = 0.62 T, both aligned with the NV axis.
Register default_register();

// Nucleus with an isotropic diagonal tensor A_zz and off-diagonal magnitude A_nd split equally over xz and yz.
NucleusSpec nucleus_from_site(const std::string& label, double gamma, double A_zz, double A_nd);

double transition_frequency(const Register& reg, std::size_t i);
std::vector<double> transition_frequencies(const Register& reg);

struct CzParameters {
    double Delta = 0.0;
    double Omega = 0.0;
    std::array<double, 2> alpha{};
    std::array<double, 2> beta{};
    double lambda = 0.0;
    // Electron frequencies for nuclear states 11, 10, 01, 00.
    std::array<double, 4> conditional{};
};

CzParameters cz_parameters(const Register& reg);

// H_single(t) for field sample gamma*B1(t) (rad/s), dimension 2^N.
CMat single_qubit_hamiltonian(const Register& reg, double field, double t);

// H_multi(t) for drive sample Omega*B1(t) (rad/s); electron is the leftmost factor, dimension 8.
CMat two_qubit_hamiltonian(const CzParameters& p, double drive, double t);

// JSON uses MHz and MHz/T; values are converted to rad/s on load.
Register register_from_json(const nlohmann::json& j);
nlohmann::json register_to_json(const Register& reg);
PhysicalConstants constants_from_json(const nlohmann::json& j);
nlohmann::json constants_to_json(const PhysicalConstants& c);

}  // namespace nvpulse
