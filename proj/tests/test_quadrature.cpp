#include "nvpulse/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace nvpulse;

TEST_CASE("Gauss-Hermite rule integrates normal moments exactly") {
    for (int n : {1, 2, 3, 5, 8, 21}) {
        const auto g = gauss_hermite(n);
        REQUIRE(static_cast<int>(g.nodes.size()) == n);
        CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
        double dfact = 1.0;
        for (int k = 1; 2 * k <= 2 * n - 1; ++k) {
            dfact *= 2 * k - 1;
            double m = 0.0, odd = 0.0;
            for (int i = 0; i < n; ++i) {
                m += g.weights[i] * std::pow(g.nodes[i], 2 * k);
                odd += g.weights[i] * std::pow(g.nodes[i], 2 * k - 1);
            }
            CHECK(m == doctest::Approx(dfact).epsilon(1e-10));
            CHECK(std::abs(odd) < 1e-10 * dfact);
        }
        for (int i = 0; i < n; ++i) CHECK(g.nodes[i] == -g.nodes[n - 1 - i]);
    }
    CHECK_THROWS(gauss_hermite(0));
}

TEST_CASE("noise grid") {
    auto pts = noise_grid(1.0, 2.0, 3.0, 5);
    CHECK(pts.size() == 125);
    double w = 0.0, vd = 0.0, ve = 0.0, vp = 0.0;
    for (const auto& p : pts) {
        w += p.weight;
        vd += p.weight * p.delta * p.delta;
        ve += p.weight * p.epsilon * p.epsilon;
        vp += p.weight * p.phi * p.phi;
    }
    CHECK(w == doctest::Approx(1.0));
    CHECK(vd == doctest::Approx(1.0));
    CHECK(ve == doctest::Approx(4.0));
    CHECK(vp == doctest::Approx(9.0));
    CHECK(noise_grid(1.0, 0.0, 3.0, 5).size() == 25);
    pts = noise_grid(0.0, 0.0, 0.0, 21);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].weight == 1.0);
    CHECK(pts[0].delta == 0.0);
}
