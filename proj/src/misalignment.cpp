#include "nvpulse/misalignment.hpp"

#include "nvpulse/parallel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdio>

namespace nvpulse {

MisalignmentAngles rotation_angles(const NucleusSpec& nu, double B0) {
    const double den = nu.A(2, 2) + nu.gamma * B0;
    if (std::abs(den) < 1e-12 * (std::abs(nu.A(2, 2)) + std::abs(nu.gamma * B0)) || den == 0.0)
        throw ConfigError("misalignment angle undefined: A_zz + gamma B0 vanishes for " + nu.label);
    const double axz = nu.A(0, 2), ayz = nu.A(1, 2);
    MisalignmentAngles a;
    a.theta = std::atan(std::hypot(axz, ayz) / std::abs(den));
    a.phi = (axz == 0.0 && ayz == 0.0) ? 0.0 : std::atan2(axz, ayz);
    return a;
}

SecularCorrections secular_corrections(const NucleusSpec& nu, const PhysicalConstants& c, double B0) {
    const double geB = c.gamma_e * B0;
    const double den = c.D * c.D - geB * geB;
    if (std::abs(den) < 1e-12 * c.D * c.D) throw ConfigError("secular correction denominator vanishes (D = gamma_e B0)");
    const double k = geB / den;
    const auto& A = nu.A;
    return {k * (A(1, 1) * A(2, 0) - A(1, 0) * A(2, 1)), k * (A(0, 0) * A(2, 1) - A(0, 1) * A(2, 0)),
            k * (A(0, 1) * A(0, 1) - A(0, 0) * A(1, 1))};
}

namespace {

CMat cz_generator() { return kTwoPi * kron(pauli::X(), pauli::P1()); }

}  // namespace

CMat cz_target_unitary() { return (cplx(0, -0.5) * cz_generator()).exp(); }

CMat cz_misaligned_unitary(const MisalignmentAngles& a, const SecularCorrections& s, double gamma_n, double B0,
                           double tau) {
    if (!(tau > 0.0)) throw ConfigError("gate duration must be positive");
    const double st = a.theta * std::sin(a.phi), ct = a.theta * std::cos(a.phi);
    const double bx = gamma_n * B0 * st - s.chi + s.xi * st;
    const double by = gamma_n * B0 * ct - s.eta + s.xi * ct;
    const double bz = -(s.chi * st + s.eta * ct + s.xi);
    const CMat P = pauli::P1();
    const CMat K = cz_generator() + tau * (bx * kron(P, pauli::X()) + by * kron(P, pauli::Y()) + bz * kron(P, pauli::Z()));
    return (cplx(0, -0.5) * K).exp();
}

double cz_misalignment_infidelity(const MisalignmentAngles& a, const SecularCorrections& s, double gamma_n, double B0,
                                  double tau) {
    const CMat UT = cz_target_unitary();
    const CMat UA = cz_misaligned_unitary(a, s, gamma_n, B0, tau);
    return 1.0 - (UT.adjoint() * UA).trace().real() / (UT.adjoint() * UT).trace().real();
}

std::vector<SurveyRow> survey_sites(const std::vector<LatticeSite>& sites, const PhysicalConstants& constants,
                                    double B0, const SurveySettings& settings, int threads) {
    const double gamma = constants.nuclear(settings.isotope);
    std::vector<SurveyRow> rows(sites.size());
    parallel_for(sites.size(), threads, [&](std::size_t i) {
        SurveyRow& r = rows[i];
        r.site = sites[i];
        const NucleusSpec nu = nucleus_from_site(sites[i].label, gamma, sites[i].A_zz, sites[i].A_nd);
        r.angles = rotation_angles(nu, B0);
        r.angles.phi = settings.phi;
        r.corrections = secular_corrections(nu, constants, B0);
        r.infidelity = cz_misalignment_infidelity(r.angles, r.corrections, gamma, B0, settings.tau);
    });
    return rows;
}

std::string survey_csv_header() { return "label,A_zz_MHz,A_nd_MHz,theta_rad,infidelity"; }

std::string survey_csv_row(const SurveyRow& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.10e,%.10e", r.site.A_zz / kMHz, r.site.A_nd / kMHz, r.angles.theta,
                  r.infidelity);
    return r.site.label + buf;
}

std::vector<LatticeSite> sites_from_json(const nlohmann::json& j) {
    try {
        std::vector<LatticeSite> out;
        for (const auto& s : j) {
            LatticeSite site{s.at("label").get<std::string>(), s.at("A_zz_MHz").get<double>() * kMHz,
                             s.at("A_nd_MHz").get<double>() * kMHz};
            if (site.A_nd < 0.0) throw ConfigError("A_nd must be non-negative for site " + site.label);
            out.push_back(site);
        }
        if (out.empty()) throw ConfigError("site list is empty");
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("sites: ") + e.what());
    }
}

}  // namespace nvpulse
