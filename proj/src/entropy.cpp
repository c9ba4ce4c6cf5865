#include "qmix/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmix {

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("binary_entropy: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double shannon_entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) {
        if (x < 0.0) throw std::domain_error("shannon_entropy: negative probability");
        if (x > 0.0) h -= x * std::log2(x);
    }
    return h;
}

double von_neumann_entropy(const Matrix& rho) {
    EigH e = eig_hermitian(rho);
    double s = 0.0;
    for (int k = 0; k < e.values.size(); ++k) {
        double lam = e.values(k);
        if (lam < -tol.psd_slack) {
            throw std::invalid_argument("von_neumann_entropy: input not PSD");
        }
        if (lam > 0.0) s -= lam * std::log2(lam);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return von_neumann_entropy(rho.mat());
}

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows()) {
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    }
    EigH es = eig_hermitian(sigma);
    // Weight of rho on sigma's kernel decides finiteness.
    double kernel_mass = 0.0;
    for (int k = 0; k < es.values.size(); ++k) {
        if (es.values(k) <= tol.support_cutoff) {
            Vector v = es.vectors.col(k);
            kernel_mass += std::real((v.adjoint() * rho * v)(0));
        }
    }
    if (kernel_mass > tol.support_cutoff) {
        return std::numeric_limits<double>::infinity();
    }
    EigH er = eig_hermitian(rho);
    double s = 0.0;
    for (int k = 0; k < er.values.size(); ++k) {
        double lam = std::max(er.values(k), 0.0);
        if (lam > 0.0) s += lam * std::log2(lam);
    }
    for (int k = 0; k < es.values.size(); ++k) {
        if (es.values(k) > tol.support_cutoff) {
            Vector v = es.vectors.col(k);
            double w = std::real((v.adjoint() * rho * v)(0));
            s -= w * std::log2(es.values(k));
        }
    }
    return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return relative_entropy(rho.mat(), sigma.mat());
}

double coherent_information(const QuantumChannel& ch) {
    const DensityMatrix& c = ch.choi();
    Matrix rho_b = partial_trace(c.mat(), c.sig().dims, {1});
    return von_neumann_entropy(rho_b) - von_neumann_entropy(c.mat());
}

double reverse_coherent_information(const QuantumChannel& ch) {
    const DensityMatrix& c = ch.choi();
    Matrix rho_a = partial_trace(c.mat(), c.sig().dims, {0});
    return von_neumann_entropy(rho_a) - von_neumann_entropy(c.mat());
}

}  // namespace qmix
