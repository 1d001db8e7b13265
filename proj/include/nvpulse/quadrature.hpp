#pragma once

#include <vector>

namespace nvpulse {

// Gauss-Hermite rule for a standard normal variable: sum_k w_k f(x_k) ~ E[f(X)], weights sum to 1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_hermite(int n);

// Tensor grid over several independent normals with the given sigmas; a zero sigma collapses to one node.
struct NoisePoint {
    double delta, epsilon, phi, weight;
};

std::vector<NoisePoint> noise_grid(double sigma_delta, double sigma_epsilon, double sigma_phi, int nodes);

}  // namespace nvpulse
