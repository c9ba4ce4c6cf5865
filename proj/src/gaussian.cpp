#include "qmix/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qmix/entropy.hpp"

namespace qmix {

namespace {

Matrix plus_i_omega(const RealMatrix& v) {
    const int modes = static_cast<int>(v.rows()) / 2;
    Matrix m = v.cast<Complex>();
    RealMatrix om = symplectic_form(modes);
    m += Complex(0, 1) * om.cast<Complex>();
    return m;
}

}  // namespace

GaussianState::GaussianState(RealVector mean_in, RealMatrix cov_in)
    : mean(std::move(mean_in)), cov(std::move(cov_in)) {
    if (mean.size() % 2 != 0 || cov.rows() != mean.size() || cov.cols() != mean.size()) {
        throw std::invalid_argument("Gaussian state needs 2m mean entries and a 2m x 2m cov");
    }
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > tol.hermiticity) {
        throw std::invalid_argument("covariance matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(plus_i_omega(cov), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.uncertainty_slack) {
        throw std::invalid_argument("covariance matrix violates the uncertainty principle: "
                                    "min eig(V+iΩ) = " +
                                    std::to_string(es.eigenvalues().minCoeff()));
    }
}

GaussianState GaussianState::vacuum(int modes) {
    return {RealVector::Zero(2 * modes), RealMatrix::Identity(2 * modes, 2 * modes)};
}

GaussianState GaussianState::reduced(const std::vector<int>& keep_modes) const {
    const int m = static_cast<int>(keep_modes.size());
    RealVector mu(2 * m);
    RealMatrix v(2 * m, 2 * m);
    for (int a = 0; a < m; ++a) {
        mu.segment(2 * a, 2) = mean.segment(2 * keep_modes[a], 2);
        for (int b = 0; b < m; ++b) {
            v.block(2 * a, 2 * b, 2, 2) = cov.block(2 * keep_modes[a], 2 * keep_modes[b], 2, 2);
        }
    }
    return {std::move(mu), std::move(v)};
}

RealMatrix symplectic_form(int modes) {
    RealMatrix om = RealMatrix::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        om(2 * k, 2 * k + 1) = 1.0;
        om(2 * k + 1, 2 * k) = -1.0;
    }
    return om;
}

LossyChannel::LossyChannel(double eta_in, Complex gamma) : eta(eta_in) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("transmissivity must lie in [0,1]");
    displacement = gamma * std::sqrt(1.0 - eta);
}

GaussianState tmsv_state(double mu) {
    if (mu < 1.0) throw std::invalid_argument("TMSV variance must be >= 1");
    const double c = std::sqrt(mu * mu - 1.0);
    RealMatrix v = RealMatrix::Zero(4, 4);
    v.topLeftCorner(2, 2) = mu * RealMatrix::Identity(2, 2);
    v.bottomRightCorner(2, 2) = mu * RealMatrix::Identity(2, 2);
    RealMatrix z = RealMatrix::Identity(2, 2);
    z(1, 1) = -1.0;
    v.topRightCorner(2, 2) = c * z;
    v.bottomLeftCorner(2, 2) = c * z;
    return {RealVector::Zero(4), std::move(v)};
}

GaussianState apply_lossy(const LossyChannel& ch, const GaussianState& g, int mode) {
    if (mode < 0 || mode >= g.modes()) throw std::invalid_argument("apply_lossy: bad mode index");
    const int n = 2 * g.modes();
    RealMatrix x = RealMatrix::Identity(n, n);
    const double root_eta = std::sqrt(ch.eta);
    x(2 * mode, 2 * mode) = root_eta;
    x(2 * mode + 1, 2 * mode + 1) = root_eta;
    RealMatrix y = RealMatrix::Zero(n, n);
    y(2 * mode, 2 * mode) = 1.0 - ch.eta;
    y(2 * mode + 1, 2 * mode + 1) = 1.0 - ch.eta;
    RealMatrix cov = x * g.cov * x.transpose() + y;
    RealVector mean = x * g.mean;
    mean(2 * mode) += 2.0 * ch.displacement.real();
    mean(2 * mode + 1) += 2.0 * ch.displacement.imag();
    return {std::move(mean), std::move(cov)};
}

GaussianState quasi_choi_state(double eta, double mu) {
    return apply_lossy(LossyChannel(eta), tmsv_state(mu), 1);
}

std::vector<double> symplectic_eigenvalues(const GaussianState& g) {
    const int m = g.modes();
    Matrix a = g.cov.cast<Complex>() * (Complex(0, 1) * symplectic_form(m).cast<Complex>());
    Eigen::ComplexEigenSolver<Matrix> es(a);
    std::vector<double> nus;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        double lam = es.eigenvalues()(k).real();
        if (lam > 0.0) nus.push_back(std::max(lam, 1.0));
    }
    std::sort(nus.begin(), nus.end());
    if (static_cast<int>(nus.size()) != m) {
        throw std::runtime_error("symplectic spectrum did not split into ± pairs");
    }
    return nus;
}

double entropy_kernel(double nu) {
    if (nu <= 1.0 + 1e-12) return 0.0;
    const double a = (nu + 1.0) / 2.0;
    const double b = (nu - 1.0) / 2.0;
    return a * std::log2(a) - b * std::log2(b);
}

double symplectic_entropy(const GaussianState& g) {
    double s = 0.0;
    for (double nu : symplectic_eigenvalues(g)) s += entropy_kernel(nu);
    return s;
}

double gaussian_rci(double eta, double mu) {
    if (eta <= 0.0 || eta >= 1.0) throw std::invalid_argument("gaussian_rci: eta in (0,1)");
    GaussianState joint = quasi_choi_state(eta, mu);
    GaussianState a = joint.reduced({0});
    return symplectic_entropy(a) - symplectic_entropy(joint);
}

double gaussian_relative_entropy(const GaussianState& g1, const GaussianState& g2) {
    if (g1.modes() != g2.modes()) {
        throw std::invalid_argument("gaussian_relative_entropy: mode count mismatch");
    }
    auto nus2 = symplectic_eigenvalues(g2);
    for (double nu : nus2) {
        if (nu <= 1.0 + 1e-9) {
            throw std::invalid_argument(
                "gaussian_relative_entropy: second state is rank deficient (nu = " +
                std::to_string(nu) + "); relative entropy may be infinite");
        }
    }
    const int m = g1.modes();
    const Matrix i_om = Complex(0, 1) * symplectic_form(m).cast<Complex>();

    // Gibbs exponent G = iΩ · arccoth(V iΩ) via the eigendecomposition of the
    // (diagonalizable) matrix V iΩ; eigenvalues come in ±ν pairs with ν > 1,
    // where arccoth is real.
    Matrix a = g2.cov.cast<Complex>() * i_om;
    Eigen::ComplexEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("gaussian_relative_entropy: eigensolver failed on V·iΩ");
    }
    Vector f(es.eigenvalues().size());
    for (int k = 0; k < f.size(); ++k) {
        Complex z = es.eigenvalues()(k);
        f(k) = 0.5 * std::log((z + 1.0) / (z - 1.0));  // arccoth
    }
    Matrix p = es.eigenvectors();
    Matrix g_gibbs = i_om * p * f.asDiagonal() * p.inverse();
    // The exponent is real symmetric; the imaginary residue measures the
    // conditioning of the similarity transform.
    double residue = g_gibbs.imag().cwiseAbs().maxCoeff();
    if (residue > 1e-7) {
        throw std::runtime_error("gaussian_relative_entropy: ill-conditioned Gibbs exponent, "
                                 "imaginary residue " +
                                 std::to_string(residue));
    }
    RealMatrix g_real = g_gibbs.real();
    g_real = (g_real + RealMatrix(g_real.transpose())) / 2.0;

    double log_z = 0.5 * std::log(std::real(plus_i_omega(g2.cov).determinant()) /
                                  std::pow(2.0, 2 * m));
    RealVector du = g1.mean - g2.mean;
    double cross = log_z + 0.5 * ((g_real * g1.cov).trace() + du.dot(g_real * du));
    return -symplectic_entropy(g1) + cross / std::numbers::ln2;
}

double plob_bound(double eta) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("plob_bound: eta in [0,1]");
    if (eta == 1.0) return std::numeric_limits<double>::infinity();
    return -std::log2(1.0 - eta);
}

SandwichBounds lossy_mixture_bounds(const std::vector<double>& probs,
                                    const std::vector<double>& etas) {
    if (probs.size() != etas.size() || probs.empty()) {
        throw std::invalid_argument("lossy_mixture_bounds: aligned nonempty lists required");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol.prob_sum) {
        throw std::invalid_argument("probabilities must sum to 1");
    }
    double upper = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] == 0.0) continue;
        upper += probs[i] * plob_bound(etas[i]);  // +inf propagates for eta = 1
    }
    return {upper - shannon_entropy(probs), upper};
}

namespace {

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

struct Panel {
    double a, b, value, error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        double v = f(c + h * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * v;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * v;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadratureResult continuous_mixture_upper(const std::function<double(double)>& density,
                                          double eta_min, double eta_max, double abs_tol) {
    if (!(eta_min >= 0.0 && eta_max < 1.0 && eta_min < eta_max)) {
        throw std::invalid_argument("need 0 <= eta_min < eta_max < 1 (hard wall below 1)");
    }
    auto integrand = [&](double eta) { return -density(eta) * std::log2(1.0 - eta); };
    std::vector<Panel> work = {evaluate_panel(integrand, eta_min, eta_max)};
    int evaluated = 1;
    for (int round = 0; round < 60; ++round) {
        double total_err = 0.0;
        for (const Panel& p : work) total_err += p.error;
        if (total_err <= abs_tol) break;
        // Split the worst panel.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < work.size(); ++i) {
            if (work[i].error > work[worst].error) worst = i;
        }
        Panel p = work[worst];
        double mid = 0.5 * (p.a + p.b);
        work[worst] = evaluate_panel(integrand, p.a, mid);
        work.push_back(evaluate_panel(integrand, mid, p.b));
        evaluated += 2;
    }
    double value = 0.0, err = 0.0;
    for (const Panel& p : work) {
        value += p.value;
        err += p.error;
    }
    return {value, err, evaluated};
}

bool classical_env_covariance_check(double eta,
                                    const std::vector<std::pair<Complex, Complex>>& samples) {
    const double root_eta = std::sqrt(eta);
    GaussianState probe = GaussianState::vacuum(1);
    for (const auto& [gamma, z] : samples) {
        LossyChannel displaced(eta, gamma);
        LossyChannel plain(eta);

        // Input displaced by z versus the undisplaced input.
        GaussianState in_shifted = probe;
        in_shifted.mean(0) += 2.0 * z.real();
        in_shifted.mean(1) += 2.0 * z.imag();
        GaussianState out_base = apply_lossy(displaced, probe, 0);
        GaussianState out_shifted = apply_lossy(displaced, in_shifted, 0);

        RealVector shift = out_shifted.mean - out_base.mean;
        RealVector expected(2);
        expected << 2.0 * root_eta * z.real(), 2.0 * root_eta * z.imag();
        if ((shift - expected).cwiseAbs().maxCoeff() > 1e-10) return false;

        // E_{η,γ} = fixed displacement ∘ E_{η,0} at the moment level.
        GaussianState plain_out = apply_lossy(plain, probe, 0);
        RealVector offset = out_base.mean - plain_out.mean;
        RealVector expected_offset(2);
        expected_offset << 2.0 * displaced.displacement.real(),
            2.0 * displaced.displacement.imag();
        if ((offset - expected_offset).cwiseAbs().maxCoeff() > 1e-10) return false;
        if ((out_base.cov - plain_out.cov).cwiseAbs().maxCoeff() > 1e-10) return false;
    }
    return true;
}

}  // namespace qmix
