#pragma once

#include <functional>
#include <vector>

#include "qmix/linalg.hpp"
#include "qmix/state.hpp"

namespace qmix {

/// Completely positive trace-preserving map between finite-dimensional
/// systems. Both the Kraus list and the (unit-trace, Bell-convention) Choi
/// state are kept; construction from either representation fills in the
/// other, and both are checked against the CPTP invariants.
class QuantumChannel {
  public:
    static QuantumChannel from_kraus(std::vector<Matrix> kraus);
    static QuantumChannel from_choi(const DensityMatrix& choi);

    int d_in() const { return d_in_; }
    int d_out() const { return d_out_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }

    /// Choi state ρ_E = (I ⊗ E)(Φ) with Φ the d_in-dimensional maximally
    /// entangled state; signature (A: d_in, B: d_out).
    const DensityMatrix& choi() const { return choi_; }

    /// Σ_k K X K† on an arbitrary input operator (used on basis elements too).
    Matrix apply_to(const Matrix& x) const;
    DensityMatrix apply(const DensityMatrix& rho) const;

  private:
    QuantumChannel(std::vector<Matrix> kraus, DensityMatrix choi, int din, int dout);
    std::vector<Matrix> kraus_;
    DensityMatrix choi_;
    int d_in_;
    int d_out_;
};

struct EnsembleEntry {
    double p;
    QuantumChannel channel;
};

/// Mixture Σ_i p_i E_i of channels sharing input and output dimensions.
struct ChannelEnsemble {
    std::vector<EnsembleEntry> entries;

    ChannelEnsemble() = default;
    explicit ChannelEnsemble(std::vector<EnsembleEntry> e);
    int size() const { return static_cast<int>(entries.size()); }
    int d_in() const { return entries.at(0).channel.d_in(); }
    int d_out() const { return entries.at(0).channel.d_out(); }
};

/// Average channel with flattened Kraus list {√p_i K_k^(i)}.
QuantumChannel mixture(const ChannelEnsemble& ens);

/// g ∘ f: apply f first, then g.
QuantumChannel compose(const QuantumChannel& g, const QuantumChannel& f);
QuantumChannel tensor_channel(const QuantumChannel& a, const QuantumChannel& b);

/// Build a channel from its action on matrix units (synthesises the Choi).
QuantumChannel channel_from_action(int d_in, int d_out,
                                   const std::function<Matrix(const Matrix&)>& action);

// --- Named constructors -------------------------------------------------------

QuantumChannel identity_channel(int d);
/// Phase flip with probability q (qubit).
QuantumChannel dephasing_channel(double q);
QuantumChannel pauli_channel(double p_i, double p_x, double p_y, double p_z);
/// Input kept with probability 1-p, otherwise replaced by the flag |e⟩ = |d⟩
/// appended to the input space (output dimension d+1).
QuantumChannel erasure_channel(int d, double p);
/// ρ ↦ Tr(ρ)·target, input dimension d_in.
QuantumChannel replacer_channel(const DensityMatrix& target, int d_in);
/// Replace with |0⟩⟨0| (qubit).
QuantumChannel replacer0_channel();
/// Replace a qubit with the erasure flag |e⟩ in the 3-dimensional output.
QuantumChannel erasure_replacer_channel();
/// Dephasing with probability q followed by erasure with probability p;
/// built from the four canonical Kraus operators on the 2→3 space.
QuantumChannel dephrasure_channel(double p, double q);
/// p·(replace with |0⟩) + (1-p)·identity on a qubit.
QuantumChannel dad_channel(double p);
ChannelEnsemble dad_ensemble(double p);
/// inner channel followed by erasure with probability p.
QuantumChannel pipeline_channel(const QuantumChannel& inner, double p);
/// Qubit channel embedded into a (d_out+1)-dimensional output space
/// (identity on the appended flag direction never reached).
QuantumChannel embed_output(const QuantumChannel& ch, int extra_dims);

/// Dephrasure as a two-component ensemble {(1-p)·embedded dephasing, p·E_e}.
ChannelEnsemble dephrasure_ensemble(double p, double q);

/// Max-norm deviation of the two channels' action over all matrix units.
double channel_action_distance(const QuantumChannel& a, const QuantumChannel& b);

}  // namespace qmix
