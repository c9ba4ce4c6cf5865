#include "qmix/random.hpp"

#include <Eigen/QR>

namespace qmix {

namespace {
Matrix ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> g;
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}
}  // namespace

DensityMatrix random_pure_state(int d, Rng& rng, Party label) {
    Vector v = ginibre(d, 1, rng);
    v.normalize();
    return {v * v.adjoint(), {d}, {label}};
}

DensityMatrix random_state(int d, Rng& rng, Party label) {
    Matrix g = ginibre(d, d, rng);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    w = (w + Matrix(w.adjoint())) / 2.0;
    return {std::move(w), {d}, {label}};
}

DensityMatrix random_state(const SubsystemSignature& sig, Rng& rng) {
    int d = sig.total_dim();
    Matrix g = ginibre(d, d, rng);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    w = (w + Matrix(w.adjoint())) / 2.0;
    return {std::move(w), sig};
}

Matrix random_unitary(int d, Rng& rng) {
    Matrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase convention so the distribution is Haar.
    for (int k = 0; k < d; ++k) {
        Complex ph = r(k, k) / std::abs(r(k, k));
        q.col(k) *= ph;
    }
    return q;
}

Matrix random_hermitian(int d, Rng& rng) {
    Matrix g = ginibre(d, d, rng);
    return (g + g.adjoint()) / 2.0;
}

Matrix random_isometry(int rows, int cols, Rng& rng) {
    Matrix u = random_unitary(rows, rng);
    return u.leftCols(cols);
}

std::vector<double> random_probabilities(int n, Rng& rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(n);
    double s = 0.0;
    for (double& x : p) {
        x = e(rng);
        s += x;
    }
    for (double& x : p) x /= s;
    return p;
}

}  // namespace qmix
