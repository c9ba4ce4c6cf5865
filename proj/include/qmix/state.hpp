#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "qmix/numeric.hpp"

namespace qmix {

/// Party tags for subsystems. C = control, A/B = Alice/Bob halves of a
/// program state, T = target (channel input), E = environment/flag.
enum class Party : char { C = 'C', A = 'A', B = 'B', T = 'T', E = 'E' };

/// Ordered list of local dimensions with a party tag per factor.
struct SubsystemSignature {
    std::vector<int> dims;
    std::vector<Party> labels;

    SubsystemSignature() = default;
    SubsystemSignature(std::vector<int> d, std::vector<Party> l);

    int total_dim() const;
    std::size_t size() const { return dims.size(); }

    /// Indices of all factors carrying one of the given labels.
    std::vector<int> indices_of(const std::vector<Party>& parties) const;

    /// Signature restricted to the given factor indices (in the given order).
    SubsystemSignature select(const std::vector<int>& idx) const;

    static SubsystemSignature concat(const SubsystemSignature& a, const SubsystemSignature& b);
    std::string str() const;
};

/// Hermitian, PSD, unit-trace matrix together with its subsystem layout.
/// Immutable after construction; construction validates the state
/// invariants (the PSD check is skipped above dimension 256, where states
/// are produced by PSD-preserving constructions such as Kraus sums).
class DensityMatrix {
  public:
    /// Trivial one-dimensional state (placeholder value).
    DensityMatrix() : mat_(Matrix::Ones(1, 1)), sig_({1}, {Party::T}) {}
    DensityMatrix(Matrix m, SubsystemSignature sig);
    DensityMatrix(Matrix m, std::vector<int> dims, std::vector<Party> labels);

    const Matrix& mat() const { return mat_; }
    const SubsystemSignature& sig() const { return sig_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

  private:
    Matrix mat_;
    SubsystemSignature sig_;
};

}  // namespace qmix
