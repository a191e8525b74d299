#include "uqcpac/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

namespace uqcpac {

namespace {

void check_same_n(const StateVector& s1, const StateVector& s2, const char* what) {
    if (s1.n != s2.n)
        throw domain_error(std::string(what) + ": qubit counts differ");
}

}  // namespace

double fidelity(const StateVector& s1, const StateVector& s2) {
    check_same_n(s1, s2, "fidelity");
    return std::abs(s1.amps.dot(s2.amps));
}

double loss(const StateVector& s1, const StateVector& s2) {
    check_same_n(s1, s2, "loss");
    // sqrt(1 - F^2) evaluated as the norm of s2's component orthogonal to s1;
    // algebraically equal for unit vectors, but with absolute error O(eps)
    // instead of O(sqrt(eps)) near coinciding states
    const cx overlap = s1.amps.dot(s2.amps);
    const double d = (s2.amps - overlap * s1.amps).norm();
    return std::min(d, 1.0);
}

double trace_distance_oracle(const StateVector& s1, const StateVector& s2) {
    check_same_n(s1, s2, "trace_distance_oracle");
    if (s1.n > kDenseUnitaryCap)
        throw resource_error("trace_distance_oracle: n exceeds dense cap");
    const Matrix rho1 = s1.amps * s1.amps.adjoint();
    const Matrix rho2 = s2.amps * s2.amps.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho1 - rho2, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double op_norm_distance(const Matrix& u1, const Matrix& u2) {
    if (u1.rows() != u2.rows() || u1.cols() != u2.cols())
        throw domain_error("op_norm_distance: dimension mismatch");
    Eigen::JacobiSVD<Matrix> svd(u1 - u2);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

PhaseEquivalence equal_up_to_phase(const Matrix& u1, const Matrix& u2, double tol) {
    if (u1.rows() != u2.rows() || u1.cols() != u2.cols())
        throw domain_error("equal_up_to_phase: dimension mismatch");
    const Matrix w = u1.adjoint() * u2;
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        const double m = std::abs(w(i, i));
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    PhaseEquivalence out;
    out.phase = std::arg(w(best, best));
    const Matrix d =
        w - std::exp(cx(0, out.phase)) * Matrix::Identity(w.rows(), w.cols());
    Eigen::JacobiSVD<Matrix> svd(d);
    out.residual = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    out.equivalent = out.residual <= tol;
    return out;
}

}  // namespace uqcpac
