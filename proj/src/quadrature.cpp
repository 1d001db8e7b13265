#include "nvpulse/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace nvpulse {

// Golub-Welsch: eigen-decomposition of the Jacobi matrix of the probabilists' Hermite recurrence.
GaussRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("Gauss-Hermite rule needs at least one node");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        r.nodes[k] = es.eigenvalues()(k);
        r.weights[k] = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
        total += r.weights[k];
    }
    for (auto& w : r.weights) w /= total;
    // Exact symmetry about zero.
    for (int k = 0; k < n / 2; ++k) {
        const double x = 0.5 * (r.nodes[n - 1 - k] - r.nodes[k]);
        const double w = 0.5 * (r.weights[k] + r.weights[n - 1 - k]);
        r.nodes[k] = -x;
        r.nodes[n - 1 - k] = x;
        r.weights[k] = r.weights[n - 1 - k] = w;
    }
    if (n % 2) r.nodes[n / 2] = 0.0;
    return r;
}

std::vector<NoisePoint> noise_grid(double sigma_delta, double sigma_epsilon, double sigma_phi, int nodes) {
    const GaussRule one{{0.0}, {1.0}};
    const GaussRule full = gauss_hermite(nodes);
    const GaussRule& rd = sigma_delta > 0.0 ? full : one;
    const GaussRule& re = sigma_epsilon > 0.0 ? full : one;
    const GaussRule& rp = sigma_phi > 0.0 ? full : one;
    std::vector<NoisePoint> pts;
    pts.reserve(rd.nodes.size() * re.nodes.size() * rp.nodes.size());
    for (std::size_t a = 0; a < rd.nodes.size(); ++a)
        for (std::size_t b = 0; b < re.nodes.size(); ++b)
            for (std::size_t c = 0; c < rp.nodes.size(); ++c)
                pts.push_back({rd.nodes[a] * sigma_delta, re.nodes[b] * sigma_epsilon, rp.nodes[c] * sigma_phi,
                               rd.weights[a] * re.weights[b] * rp.weights[c]});
    return pts;
}

}  // namespace nvpulse
