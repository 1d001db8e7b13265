#pragma once

#include "nvpulse/spin_model.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace nvpulse {

struct MisalignmentAngles {
    double theta = 0.0;  // rad, in [0, pi/2)
    double phi = 0.0;    // rad
};

// Second-order corrections from the non-secular hyperfine terms, rad/s.
struct SecularCorrections {
    double chi = 0.0;
    double eta = 0.0;
    double xi = 0.0;
};

// tan theta = sqrt(A_xz^2 + A_yz^2) / (A_zz + gamma B0), phi = atan2(A_xz, A_yz).
MisalignmentAngles rotation_angles(const NucleusSpec& nucleus, double B0);

SecularCorrections secular_corrections(const NucleusSpec& nucleus, const PhysicalConstants& constants, double B0);

// Target and perturbed CZ propagators in electron (x) nucleus ordering.
CMat cz_target_unitary();
CMat cz_misaligned_unitary(const MisalignmentAngles& angles, const SecularCorrections& corr, double gamma_n, double B0,
                           double tau);

// 1 - Re Tr(U_T^dag U_A) / 4.
double cz_misalignment_infidelity(const MisalignmentAngles& angles, const SecularCorrections& corr, double gamma_n,
                                  double B0, double tau);

struct LatticeSite {
    std::string label;
    double A_zz = 0.0;  // rad/s
    double A_nd = 0.0;  // rad/s
};

struct SurveyRow {
    LatticeSite site;
    MisalignmentAngles angles;
    SecularCorrections corrections;
    double infidelity = 0.0;
};

struct SurveySettings {
    double tau = 1e-6;
    double phi = kPi / 2;
    std::string isotope = "13C";
};

std::vector<SurveyRow> survey_sites(const std::vector<LatticeSite>& sites, const PhysicalConstants& constants,
                                    double B0, const SurveySettings& settings, int threads = 1);

std::string survey_csv_header();
std::string survey_csv_row(const SurveyRow& row);

// Sites as [{label, A_zz_MHz, A_nd_MHz}].
std::vector<LatticeSite> sites_from_json(const nlohmann::json& j);

}  // namespace nvpulse
