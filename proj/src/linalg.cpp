#include "qmix/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qmix {

namespace {

// Digits of `index` over the mixed radix `dims`, leftmost factor slowest.
void digits_of(int index, const std::vector<int>& dims, std::vector<int>& out) {
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

int index_of(const std::vector<int>& digits, const std::vector<int>& dims) {
    int idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

int product(const std::vector<int>& v) {
    int n = 1;
    for (int d : v) n *= d;
    return n;
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return {kron(a.mat(), b.mat()), SubsystemSignature::concat(a.sig(), b.sig())};
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& keep) {
    const int n = product(dims);
    if (m.rows() != n || m.cols() != n) {
        throw std::invalid_argument("partial_trace: dims do not match matrix");
    }
    std::vector<int> traced;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);
    }
    std::vector<int> keep_dims, traced_dims;
    for (int k : keep) keep_dims.push_back(dims.at(k));
    for (int k : traced) traced_dims.push_back(dims[k]);

    // Per full index: its kept-part index and traced-part index.
    std::vector<int> kept_of(n), traced_of(n), dg(dims.size()), sub;
    for (int i = 0; i < n; ++i) {
        digits_of(i, dims, dg);
        sub.clear();
        for (int k : keep) sub.push_back(dg[k]);
        kept_of[i] = index_of(sub, keep_dims);
        sub.clear();
        for (int k : traced) sub.push_back(dg[k]);
        traced_of[i] = index_of(sub, traced_dims);
    }

    Matrix out = Matrix::Zero(product(keep_dims), product(keep_dims));
    const int nt = product(traced_dims);
    const int nk = product(keep_dims);
    // Walk rows/cols grouped by traced index to keep the inner loop dense.
    std::vector<std::vector<int>> by_traced(nt);
    for (int i = 0; i < n; ++i) by_traced[traced_of[i]].push_back(i);
    for (int t = 0; t < nt; ++t) {
        const auto& rows = by_traced[t];
        for (int i : rows)
            for (int j : rows) out(kept_of[i], kept_of[j]) += m(i, j);
    }
    (void)nk;
    return out;
}

Matrix permute_subsystems(const Matrix& m, const std::vector<int>& dims,
                          const std::vector<int>& perm) {
    const int n = product(dims);
    if (m.rows() != n) throw std::invalid_argument("permute_subsystems: dims mismatch");
    if (perm.size() != dims.size()) throw std::invalid_argument("permute_subsystems: bad perm");
    std::vector<int> new_dims(dims.size());
    for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
    std::vector<int> map(n), dg(dims.size()), ndg(dims.size());
    for (int i = 0; i < n; ++i) {
        digits_of(i, dims, dg);
        for (std::size_t k = 0; k < perm.size(); ++k) ndg[k] = dg[perm[k]];
        map[i] = index_of(ndg, new_dims);
    }
    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(map[i], map[j]) = m(i, j);
    return out;
}

Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<int>& transposed) {
    const int n = product(dims);
    if (m.rows() != n) throw std::invalid_argument("partial_transpose: dims mismatch");
    Matrix out(n, n);
    std::vector<int> di(dims.size()), dj(dims.size());
    for (int i = 0; i < n; ++i) {
        digits_of(i, dims, di);
        for (int j = 0; j < n; ++j) {
            digits_of(j, dims, dj);
            std::vector<int> ri = di, rj = dj;
            for (int k : transposed) {
                std::swap(ri[k], rj[k]);
            }
            out(index_of(ri, dims), index_of(rj, dims)) = m(i, j);
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Party>& keep) {
    for (Party p : keep) {
        auto idx = rho.sig().indices_of({p});
        if (idx.empty()) {
            throw std::invalid_argument(std::string("partial_trace: label ") +
                                        static_cast<char>(p) + " not present in " +
                                        rho.sig().str());
        }
    }
    std::vector<int> keep_idx = rho.sig().indices_of(keep);
    Matrix reduced = partial_trace(rho.mat(), rho.sig().dims, keep_idx);
    return {std::move(reduced), rho.sig().select(keep_idx)};
}

Matrix partial_transpose(const DensityMatrix& rho, const std::vector<Party>& transposed) {
    return partial_transpose(rho.mat(), rho.sig().dims, rho.sig().indices_of(transposed));
}

EigH eig_hermitian(const Matrix& m) {
    if (!is_hermitian(m)) {
        throw std::invalid_argument("eig_hermitian: input not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed");
    }
    // Eigen returns ascending order; flip to descending.
    const int n = static_cast<int>(m.rows());
    EigH r;
    r.values = es.eigenvalues().reverse();
    r.vectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) r.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
    return r;
}

Matrix log2_psd(const Matrix& m, double cutoff) {
    EigH e = eig_hermitian(m);
    RealVector lg = RealVector::Zero(e.values.size());
    for (int k = 0; k < e.values.size(); ++k) {
        if (e.values(k) > cutoff) lg(k) = std::log2(e.values(k));
    }
    return e.vectors * lg.asDiagonal() * e.vectors.adjoint();
}

Matrix identity(int d) {
    return Matrix::Identity(d, d);
}

Vector basis_ket(int d, int j) {
    Vector v = Vector::Zero(d);
    v(j) = 1.0;
    return v;
}

Matrix basis_proj(int d, int j) {
    Matrix m = Matrix::Zero(d, d);
    m(j, j) = 1.0;
    return m;
}

Vector max_entangled_ket(int d) {
    Vector v = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return v;
}

DensityMatrix max_entangled_state(int d) {
    Vector v = max_entangled_ket(d);
    return {v * v.adjoint(), {d, d}, {Party::A, Party::B}};
}

Matrix matrix_unit(int d, int a, int b) {
    Matrix m = Matrix::Zero(d, d);
    m(a, b) = 1.0;
    return m;
}

bool is_psd(const Matrix& m, double slack) {
    if (!is_hermitian(m, 1e-9)) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -slack;
}

}  // namespace qmix
