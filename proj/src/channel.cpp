#include "qmix/channel.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qmix {

namespace {

void check_probability(double p, const char* what) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
    }
}

DensityMatrix choi_from_kraus(const std::vector<Matrix>& kraus, int d_in, int d_out) {
    Vector phi = max_entangled_ket(d_in);
    Matrix acc = Matrix::Zero(d_in * d_out, d_in * d_out);
    for (const Matrix& k : kraus) {
        Matrix ext = kron(identity(d_in), k);
        Vector v = ext * phi;
        acc += v * v.adjoint();
    }
    acc = (acc + Matrix(acc.adjoint())) / 2.0;
    return {std::move(acc), {d_in, d_out}, {Party::A, Party::B}};
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, DensityMatrix choi, int din, int dout)
    : kraus_(std::move(kraus)), choi_(std::move(choi)), d_in_(din), d_out_(dout) {}

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus) {
    if (kraus.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
    const int d_out = static_cast<int>(kraus[0].rows());
    const int d_in = static_cast<int>(kraus[0].cols());
    Matrix tp = Matrix::Zero(d_in, d_in);
    for (const Matrix& k : kraus) {
        if (k.rows() != d_out || k.cols() != d_in) {
            throw std::invalid_argument("Kraus operators must share a common shape");
        }
        tp += k.adjoint() * k;
    }
    if (max_abs_diff(tp, identity(d_in)) > tol.state_equality) {
        throw std::invalid_argument("Kraus list is not trace preserving");
    }
    DensityMatrix choi = choi_from_kraus(kraus, d_in, d_out);
    return QuantumChannel(std::move(kraus), std::move(choi), d_in, d_out);
}

QuantumChannel QuantumChannel::from_choi(const DensityMatrix& choi) {
    if (choi.sig().size() != 2) {
        throw std::invalid_argument("Choi state needs a two-factor (A,B) signature");
    }
    const int d_in = choi.sig().dims[0];
    const int d_out = choi.sig().dims[1];
    // Trace preservation: Tr_B (d_in · choi) = I_A.
    Matrix marg = partial_trace(choi.mat(), choi.sig().dims, {0});
    if (max_abs_diff(Matrix(marg * static_cast<double>(d_in)), identity(d_in)) >
        tol.state_equality) {
        throw std::invalid_argument("Choi marginal is not maximally mixed (map not TP)");
    }
    // Canonical Kraus operators from the Choi eigendecomposition.
    EigH e = eig_hermitian(choi.mat());
    std::vector<Matrix> kraus;
    for (int v = 0; v < e.values.size(); ++v) {
        if (e.values(v) < tol.psd_slack) continue;
        Matrix k(d_out, d_in);
        for (int i = 0; i < d_in; ++i)
            for (int j = 0; j < d_out; ++j) k(j, i) = e.vectors(i * d_out + j, v);
        k *= std::sqrt(e.values(v) * d_in);
        kraus.push_back(std::move(k));
    }
    return QuantumChannel(std::move(kraus), choi, d_in, d_out);
}

Matrix QuantumChannel::apply_to(const Matrix& x) const {
    if (x.rows() != d_in_ || x.cols() != d_in_) {
        throw std::invalid_argument("channel input has wrong dimension");
    }
    Matrix out = Matrix::Zero(d_out_, d_out_);
    for (const Matrix& k : kraus_) out += k * x * k.adjoint();
    return out;
}

DensityMatrix QuantumChannel::apply(const DensityMatrix& rho) const {
    Matrix out = apply_to(rho.mat());
    out = (out + Matrix(out.adjoint())) / 2.0;
    return {std::move(out), {d_out_}, {Party::T}};
}

ChannelEnsemble::ChannelEnsemble(std::vector<EnsembleEntry> e) : entries(std::move(e)) {
    if (entries.empty()) throw std::invalid_argument("empty channel ensemble");
    double sum = 0.0;
    for (const auto& en : entries) {
        if (en.p < 0.0) throw std::invalid_argument("ensemble probabilities must be nonnegative");
        sum += en.p;
        if (en.channel.d_in() != entries[0].channel.d_in() ||
            en.channel.d_out() != entries[0].channel.d_out()) {
            throw std::invalid_argument("ensemble channels must share input/output dimensions");
        }
    }
    if (std::abs(sum - 1.0) > tol.prob_sum) {
        throw std::invalid_argument("ensemble probabilities must sum to 1");
    }
}

QuantumChannel mixture(const ChannelEnsemble& ens) {
    std::vector<Matrix> kraus;
    for (const auto& en : ens.entries) {
        const double w = std::sqrt(en.p);
        if (w == 0.0) continue;
        for (const Matrix& k : en.channel.kraus()) kraus.push_back(w * k);
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel compose(const QuantumChannel& g, const QuantumChannel& f) {
    if (f.d_out() != g.d_in()) throw std::invalid_argument("compose: dimension mismatch");
    std::vector<Matrix> kraus;
    for (const Matrix& kg : g.kraus())
        for (const Matrix& kf : f.kraus()) kraus.push_back(kg * kf);
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel tensor_channel(const QuantumChannel& a, const QuantumChannel& b) {
    std::vector<Matrix> kraus;
    for (const Matrix& ka : a.kraus())
        for (const Matrix& kb : b.kraus()) kraus.push_back(kron(ka, kb));
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel channel_from_action(int d_in, int d_out,
                                   const std::function<Matrix(const Matrix&)>& action) {
    Matrix choi = Matrix::Zero(d_in * d_out, d_in * d_out);
    for (int a = 0; a < d_in; ++a) {
        for (int b = 0; b < d_in; ++b) {
            Matrix img = action(matrix_unit(d_in, a, b));
            // choi += |a⟩⟨b| ⊗ img / d_in
            choi.block(a * d_out, b * d_out, d_out, d_out) += img / static_cast<double>(d_in);
        }
    }
    choi = (choi + Matrix(choi.adjoint())) / 2.0;
    return QuantumChannel::from_choi(DensityMatrix(std::move(choi), {d_in, d_out},
                                                   {Party::A, Party::B}));
}

QuantumChannel identity_channel(int d) {
    return QuantumChannel::from_kraus({identity(d)});
}

QuantumChannel dephasing_channel(double q) {
    check_probability(q, "dephasing probability");
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return QuantumChannel::from_kraus({std::sqrt(1.0 - q) * identity(2), std::sqrt(q) * z});
}

QuantumChannel pauli_channel(double p_i, double p_x, double p_y, double p_z) {
    for (double p : {p_i, p_x, p_y, p_z}) check_probability(p, "Pauli probability");
    if (std::abs(p_i + p_x + p_y + p_z - 1.0) > tol.prob_sum) {
        throw std::invalid_argument("Pauli probabilities must sum to 1");
    }
    Matrix x = Matrix::Zero(2, 2), y = Matrix::Zero(2, 2), z = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    y(0, 1) = Complex(0, -1);
    y(1, 0) = Complex(0, 1);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    std::vector<Matrix> kraus;
    if (p_i > 0) kraus.push_back(std::sqrt(p_i) * identity(2));
    if (p_x > 0) kraus.push_back(std::sqrt(p_x) * x);
    if (p_y > 0) kraus.push_back(std::sqrt(p_y) * y);
    if (p_z > 0) kraus.push_back(std::sqrt(p_z) * z);
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel erasure_channel(int d, double p) {
    check_probability(p, "erasure probability");
    // Input space = first d output basis vectors, flag |e⟩ = index d.
    Matrix embed = Matrix::Zero(d + 1, d);
    for (int j = 0; j < d; ++j) embed(j, j) = 1.0;
    std::vector<Matrix> kraus;
    kraus.push_back(std::sqrt(1.0 - p) * embed);
    for (int j = 0; j < d; ++j) {
        Matrix k = Matrix::Zero(d + 1, d);
        k(d, j) = std::sqrt(p);
        kraus.push_back(std::move(k));
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel replacer_channel(const DensityMatrix& target, int d_in) {
    EigH e = eig_hermitian(target.mat());
    const int d_out = target.dim();
    std::vector<Matrix> kraus;
    for (int v = 0; v < e.values.size(); ++v) {
        if (e.values(v) <= tol.psd_slack) continue;
        for (int j = 0; j < d_in; ++j) {
            Matrix k = Matrix::Zero(d_out, d_in);
            k.col(j) = std::sqrt(e.values(v)) * e.vectors.col(v);
            kraus.push_back(std::move(k));
        }
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel replacer0_channel() {
    return replacer_channel(DensityMatrix(basis_proj(2, 0), {2}, {Party::T}), 2);
}

QuantumChannel erasure_replacer_channel() {
    return replacer_channel(DensityMatrix(basis_proj(3, 2), {3}, {Party::T}), 2);
}

QuantumChannel dephrasure_channel(double p, double q) {
    check_probability(p, "erasure probability");
    check_probability(q, "dephasing probability");
    Matrix e0 = Matrix::Zero(3, 2), e1 = Matrix::Zero(3, 2), e2 = Matrix::Zero(3, 2),
           e3 = Matrix::Zero(3, 2);
    e0(0, 0) = e0(1, 1) = std::sqrt((1.0 - p) * (1.0 - q));
    e1(0, 0) = std::sqrt((1.0 - p) * q);
    e1(1, 1) = -std::sqrt((1.0 - p) * q);
    e2(2, 0) = std::sqrt(p);
    e3(2, 1) = std::sqrt(p);
    return QuantumChannel::from_kraus({e0, e1, e2, e3});
}

QuantumChannel dad_channel(double p) {
    return mixture(dad_ensemble(p));
}

ChannelEnsemble dad_ensemble(double p) {
    check_probability(p, "DAD probability");
    return ChannelEnsemble({{p, replacer0_channel()}, {1.0 - p, identity_channel(2)}});
}

QuantumChannel pipeline_channel(const QuantumChannel& inner, double p) {
    return compose(erasure_channel(inner.d_out(), p), inner);
}

QuantumChannel embed_output(const QuantumChannel& ch, int extra_dims) {
    if (extra_dims < 0) throw std::invalid_argument("embed_output: negative padding");
    const int d_out = ch.d_out() + extra_dims;
    std::vector<Matrix> kraus;
    for (const Matrix& k : ch.kraus()) {
        Matrix kk = Matrix::Zero(d_out, ch.d_in());
        kk.topRows(ch.d_out()) = k;
        kraus.push_back(std::move(kk));
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

ChannelEnsemble dephrasure_ensemble(double p, double q) {
    return ChannelEnsemble({{1.0 - p, embed_output(dephasing_channel(q), 1)},
                            {p, erasure_replacer_channel()}});
}

double channel_action_distance(const QuantumChannel& a, const QuantumChannel& b) {
    if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
        throw std::invalid_argument("channel_action_distance: dimension mismatch");
    }
    double dev = 0.0;
    for (int i = 0; i < a.d_in(); ++i)
        for (int j = 0; j < a.d_in(); ++j) {
            Matrix u = matrix_unit(a.d_in(), i, j);
            dev = std::max(dev, max_abs_diff(a.apply_to(u), b.apply_to(u)));
        }
    return dev;
}

}  // namespace qmix
