#include "nvpulse/common.hpp"

#include <cmath>

namespace nvpulse {

namespace pauli {
Mat2 I() { return Mat2::Identity(); }
Mat2 X() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}
Mat2 Y() {
    Mat2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Mat2 Z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}
Mat2 P1() {
    Mat2 m;
    m << 0, 0, 0, 1;
    return m;
}
}  // namespace pauli

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat embed(const CMat& op, int q, int n) {
    if (q < 0 || q >= n) throw std::out_of_range("qubit index out of range");
    CMat out = CMat::Identity(1, 1);
    for (int k = 0; k < n; ++k) out = kron(out, k == q ? op : CMat(CMat::Identity(2, 2)));
    return out;
}

Mat2 su2_exp(double rx, double ry, double rz) {
    const double th = std::sqrt(rx * rx + ry * ry + rz * rz);
    const double c = std::cos(0.5 * th);
    // sin(th/2)/th, with the th -> 0 limit
    const double s = th > 1e-12 ? std::sin(0.5 * th) / th : 0.5 - th * th / 48.0;
    Mat2 u;
    u(0, 0) = cplx(c, -s * rz);
    u(1, 1) = cplx(c, s * rz);
    u(0, 1) = cplx(-s * ry, -s * rx);
    u(1, 0) = cplx(s * ry, -s * rx);
    return u;
}

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace nvpulse
