#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nvpulse {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kMHz = kTwoPi * 1e6;  // MHz -> rad/s

// Bad input or configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Numerical failure: guard violations, singular systems (CLI exit code 2).
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace pauli {
Mat2 I();
Mat2 X();
Mat2 Y();
Mat2 Z();
// |1><1|
Mat2 P1();
}  // namespace pauli

CMat kron(const CMat& a, const CMat& b);

// Embeds a 2x2 operator on qubit q of an n-qubit register; qubit 0 is the leftmost factor.
CMat embed(const CMat& op, int q, int n);

// exp(-i (r . sigma) / 2) for a real rotation vector r.
Mat2 su2_exp(double rx, double ry, double rz);

double max_abs(const CMat& m);

}  // namespace nvpulse
