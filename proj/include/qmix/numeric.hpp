#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace qmix {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Central numeric policy. Every module reads its tolerances from here so
/// that tests, verification suites and the CLI agree on one set of numbers.
struct NumericPolicy {
    double hermiticity = 1e-12;        // max |M - M†| entry allowed
    double psd_slack = 1e-10;          // eigenvalues may dip this far below 0
    double trace = 1e-10;              // |Tr - 1| allowed for states
    double state_equality = 1e-10;     // max-norm for "these states are equal"
    double simulation = 1e-9;          // channel-simulation identity checks
    double covariance = 1e-9;          // teleportation-covariance relation checks
    double ppt_feasibility = 1e-8;     // PPT witness: partial-transpose eigenvalue slack
    double support_cutoff = 1e-10;     // eigenvalue below this counts as outside support
    double block_orthogonality = 1e-14;// off-block leakage of control-program states
    double prob_sum = 1e-12;           // ensemble probabilities must sum to 1 within this
    double uncertainty_slack = 1e-9;   // Gaussian V + iΩ may dip this far below 0
};

inline constexpr NumericPolicy tol{};

inline double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double eps = tol.hermiticity) {
    return max_abs_diff(m, m.adjoint()) <= eps;
}

}  // namespace qmix
