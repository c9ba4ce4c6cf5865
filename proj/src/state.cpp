#include "qmix/state.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qmix {

SubsystemSignature::SubsystemSignature(std::vector<int> d, std::vector<Party> l)
    : dims(std::move(d)), labels(std::move(l)) {
    if (dims.size() != labels.size()) {
        throw std::invalid_argument("signature: dims and labels must have equal length");
    }
    for (int n : dims) {
        if (n <= 0) throw std::invalid_argument("signature: dimensions must be positive");
    }
}

int SubsystemSignature::total_dim() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

std::vector<int> SubsystemSignature::indices_of(const std::vector<Party>& parties) const {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(labels.size()); ++k) {
        for (Party p : parties) {
            if (labels[k] == p) {
                out.push_back(k);
                break;
            }
        }
    }
    return out;
}

SubsystemSignature SubsystemSignature::select(const std::vector<int>& idx) const {
    std::vector<int> d;
    std::vector<Party> l;
    for (int k : idx) {
        d.push_back(dims.at(k));
        l.push_back(labels.at(k));
    }
    return {std::move(d), std::move(l)};
}

SubsystemSignature SubsystemSignature::concat(const SubsystemSignature& a,
                                              const SubsystemSignature& b) {
    std::vector<int> d = a.dims;
    d.insert(d.end(), b.dims.begin(), b.dims.end());
    std::vector<Party> l = a.labels;
    l.insert(l.end(), b.labels.begin(), b.labels.end());
    return {std::move(d), std::move(l)};
}

std::string SubsystemSignature::str() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (k) os << ",";
        os << static_cast<char>(labels[k]) << ":" << dims[k];
    }
    return os.str();
}

DensityMatrix::DensityMatrix(Matrix m, SubsystemSignature sig)
    : mat_(std::move(m)), sig_(std::move(sig)) {
    if (mat_.rows() != mat_.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    if (sig_.total_dim() != mat_.rows()) {
        throw std::invalid_argument("signature dims (" + sig_.str() +
                                    ") do not multiply to the matrix dimension");
    }
    if (!is_hermitian(mat_)) {
        throw std::invalid_argument("density matrix is not Hermitian within tolerance");
    }
    double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw std::invalid_argument("density matrix trace deviates from 1: " + std::to_string(tr));
    }
    if (mat_.rows() <= 256) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol.psd_slack) {
            throw std::invalid_argument("density matrix has eigenvalue below -PSD slack: " +
                                        std::to_string(es.eigenvalues().minCoeff()));
        }
    }
}

DensityMatrix::DensityMatrix(Matrix m, std::vector<int> dims, std::vector<Party> labels)
    : DensityMatrix(std::move(m), SubsystemSignature(std::move(dims), std::move(labels))) {}

}  // namespace qmix
