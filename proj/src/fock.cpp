#include "qmix/fock.hpp"

#include <cmath>
#include <stdexcept>

#include "qmix/entropy.hpp"
#include "qmix/linalg.hpp"

namespace qmix {

namespace {

constexpr double kDeficitLimit = 1e-6;

struct TwoModePattern {
    double mu;
    double eta_a;
    double eta_b;
};

// Match cov = [[aI, cZ],[cZ, bI]] as loss applied to both arms of a TMSV.
TwoModePattern match_lossy_tmsv(const RealMatrix& v) {
    RealMatrix z = RealMatrix::Identity(2, 2);
    z(1, 1) = -1.0;
    const double a = v(0, 0);
    const double b = v(2, 2);
    const double c = v(0, 2);
    RealMatrix rebuilt(4, 4);
    rebuilt.topLeftCorner(2, 2) = a * RealMatrix::Identity(2, 2);
    rebuilt.bottomRightCorner(2, 2) = b * RealMatrix::Identity(2, 2);
    rebuilt.topRightCorner(2, 2) = c * z;
    rebuilt.bottomLeftCorner(2, 2) = c * z;
    if ((v - rebuilt).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("fock_oracle: covariance is not of lossy-TMSV form");
    }
    if (std::abs(c) < 1e-12) {
        // Product of thermals; report as mu = max variance with full loss on
        // the other arm handled by the caller (not via this pattern).
        return {0.0, 0.0, 0.0};
    }
    const double r = c * c / ((a - 1.0) * (b - 1.0));
    if (!(r > 1.0)) {
        throw std::invalid_argument("fock_oracle: correlations exceed the lossy-TMSV family");
    }
    const double mu = (r + 1.0) / (r - 1.0);
    TwoModePattern p{mu, (a - 1.0) / (mu - 1.0), (b - 1.0) / (mu - 1.0)};
    if (p.eta_a < 0.0 || p.eta_a > 1.0 + 1e-9 || p.eta_b < 0.0 || p.eta_b > 1.0 + 1e-9) {
        throw std::invalid_argument("fock_oracle: implied transmissivities outside [0,1]");
    }
    p.eta_a = std::min(p.eta_a, 1.0);
    p.eta_b = std::min(p.eta_b, 1.0);
    return p;
}

DensityMatrix renormalized(const Matrix& m, const SubsystemSignature& sig) {
    Matrix out = (m + Matrix(m.adjoint())) / 2.0;
    out /= out.trace().real();
    return {std::move(out), sig};
}

}  // namespace

DensityMatrix fock_tmsv(double mu, int cutoff) {
    if (mu < 1.0) throw std::invalid_argument("TMSV variance must be >= 1");
    if (cutoff < 10) throw std::invalid_argument("cutoff must be >= 10");
    const int n = cutoff + 1;
    const double lam = std::sqrt((mu - 1.0) / (mu + 1.0));
    Vector psi = Vector::Zero(n * n);
    const double norm = std::sqrt(1.0 - lam * lam);
    for (int k = 0; k <= cutoff; ++k) psi(k * n + k) = norm * std::pow(lam, k);
    Matrix rho = psi * psi.adjoint();
    return renormalized(rho, SubsystemSignature({n, n}, {Party::A, Party::B}));
}

DensityMatrix fock_thermal(double nu, int cutoff) {
    if (nu < 1.0) throw std::invalid_argument("thermal symplectic eigenvalue must be >= 1");
    const int n = cutoff + 1;
    const double lam = (nu - 1.0) / (nu + 1.0);
    Matrix rho = Matrix::Zero(n, n);
    for (int k = 0; k <= cutoff; ++k) rho(k, k) = (1.0 - lam) * std::pow(lam, k);
    return renormalized(rho, SubsystemSignature({n}, {Party::B}));
}

std::vector<Matrix> fock_lossy_kraus(double eta, int cutoff) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("transmissivity in [0,1]");
    const int n = cutoff + 1;
    std::vector<Matrix> kraus;
    for (int k = 0; k <= cutoff; ++k) {
        Matrix kk = Matrix::Zero(n, n);
        for (int m = k; m <= cutoff; ++m) {
            // log-binomial for stability at large cutoffs
            double logc = std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
            double amp = std::exp(0.5 * (logc + (m - k) * std::log(std::max(eta, 1e-300)) +
                                         k * std::log(std::max(1.0 - eta, 1e-300))));
            kk(m - k, m) = amp;
        }
        kraus.push_back(std::move(kk));
        if (eta == 1.0) break;  // only k = 0 survives
    }
    return kraus;
}

DensityMatrix fock_apply_lossy(const DensityMatrix& rho, double eta, int mode) {
    const auto& dims = rho.sig().dims;
    if (mode < 0 || mode >= static_cast<int>(dims.size())) {
        throw std::invalid_argument("fock_apply_lossy: bad mode");
    }
    const int cutoff = dims[mode] - 1;
    auto kraus = fock_lossy_kraus(eta, cutoff);
    Matrix out = Matrix::Zero(rho.dim(), rho.dim());
    for (const Matrix& k : kraus) {
        Matrix full;
        if (dims.size() == 1) {
            full = k;
        } else if (mode == 0) {
            full = kron(k, identity(dims[1]));
        } else {
            full = kron(identity(dims[0]), k);
        }
        out += full * rho.mat() * full.adjoint();
    }
    return renormalized(out, rho.sig());
}

double fock_trace_deficit(const GaussianState& g, int cutoff) {
    if (g.mean.cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("fock oracle handles zero-mean states only");
    }
    if (g.modes() == 1) {
        const double nu = g.cov(0, 0);
        const double lam = (nu - 1.0) / (nu + 1.0);
        return std::pow(lam, cutoff + 1);
    }
    TwoModePattern p = match_lossy_tmsv(g.cov);
    if (p.mu == 0.0) {
        double d1 = std::pow((g.cov(0, 0) - 1.0) / (g.cov(0, 0) + 1.0), cutoff + 1);
        double d2 = std::pow((g.cov(2, 2) - 1.0) / (g.cov(2, 2) + 1.0), cutoff + 1);
        return 1.0 - (1.0 - d1) * (1.0 - d2);
    }
    const double lam2 = (p.mu - 1.0) / (p.mu + 1.0);
    return std::pow(lam2, cutoff + 1);
}

DensityMatrix fock_oracle(const GaussianState& g, int cutoff) {
    if (cutoff < 10) throw std::invalid_argument("cutoff must be >= 10");
    if (g.mean.cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("fock oracle handles zero-mean states only");
    }
    double deficit = fock_trace_deficit(g, cutoff);
    if (deficit > kDeficitLimit) {
        throw std::invalid_argument("fock_oracle: cutoff too small, trace deficit " +
                                    std::to_string(deficit));
    }
    if (g.modes() == 1) {
        if (std::abs(g.cov(0, 0) - g.cov(1, 1)) > 1e-9 || std::abs(g.cov(0, 1)) > 1e-9) {
            throw std::invalid_argument("fock_oracle: single-mode states must be thermal");
        }
        return fock_thermal(g.cov(0, 0), cutoff);
    }
    if (g.modes() != 2) throw std::invalid_argument("fock_oracle: at most two modes");

    TwoModePattern p = match_lossy_tmsv(g.cov);
    if (p.mu == 0.0) {
        DensityMatrix a = fock_thermal(g.cov(0, 0), cutoff);
        DensityMatrix b = fock_thermal(g.cov(2, 2), cutoff);
        DensityMatrix prod = tensor(a, b);
        return {prod.mat(), SubsystemSignature({cutoff + 1, cutoff + 1}, {Party::A, Party::B})};
    }
    DensityMatrix rho = fock_tmsv(p.mu, cutoff);
    if (p.eta_a < 1.0) rho = fock_apply_lossy(rho, p.eta_a, 0);
    if (p.eta_b < 1.0) rho = fock_apply_lossy(rho, p.eta_b, 1);
    return rho;
}

double fock_oracle_rel_entropy(const GaussianState& g1, const GaussianState& g2, int cutoff) {
    DensityMatrix r1 = fock_oracle(g1, cutoff);
    DensityMatrix r2 = fock_oracle(g2, cutoff);
    return relative_entropy(r1.mat(), r2.mat());
}

double fock_rci(const DensityMatrix& rho) {
    if (rho.sig().size() != 2) throw std::invalid_argument("fock_rci: need a two-mode state");
    Matrix a = partial_trace(rho.mat(), rho.sig().dims, {0});
    return von_neumann_entropy(a) - von_neumann_entropy(rho.mat());
}

}  // namespace qmix
