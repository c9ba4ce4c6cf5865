#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "qmix/ree.hpp"
#include "qmix/teleport.hpp"

namespace qmix {

/// One component's LOCC simulation: E(ρ) = L(program ⊗ ρ). Either a
/// generalized teleportation over the program state (with per-outcome
/// corrections) or an arbitrary trace-preserving map on P⊗T.
struct SimulationDescriptor {
    DensityMatrix program;  // signature (A: d, B: d')
    struct Teleportation {
        CorrectionTable table;
    };
    struct GenericMap {
        QuantumChannel locc;  // P⊗T → T'
    };
    std::variant<Teleportation, GenericMap> locc_kind;

    Matrix apply_to(const Matrix& input) const;
};

/// Choi program + covariance-table teleportation for a covariant channel.
/// Throws if the channel is not teleportation covariant under the search set.
SimulationDescriptor choi_teleport_descriptor(const QuantumChannel& ch);

/// Program-free simulation through the map X ↦ E(Tr_P X); always exact.
SimulationDescriptor generic_descriptor(const QuantumChannel& ch, const DensityMatrix& program);

/// Max-norm deviation of the descriptor from the channel over a full
/// operator basis.
double descriptor_deviation(const SimulationDescriptor& desc, const QuantumChannel& ch);

/// Ensemble entry bundled with its simulation.
struct SimulatedEnsemble {
    ChannelEnsemble ensemble;
    std::vector<SimulationDescriptor> descriptors;

    SimulatedEnsemble(ChannelEnsemble ens, std::vector<SimulationDescriptor> desc);
    /// All components simulated over their Choi states via teleportation.
    static SimulatedEnsemble from_covariant_components(const ChannelEnsemble& ens);
};

/// Block-diagonal control-program state θ = Σ_i p_i |i⟩⟨i|_C ⊗ σ_P^i.
struct ControlProgramState {
    std::vector<std::pair<double, DensityMatrix>> blocks;
    DensityMatrix realized;  // signature (C, A, B[, A, B, ...])

    static ControlProgramState build(const std::vector<std::pair<double, DensityMatrix>>& blocks);
    int control_dim() const { return static_cast<int>(blocks.size()); }
    /// Largest matrix element between distinct control blocks (should be 0).
    double off_block_leakage() const;
};

ControlProgramState build_control_program(const SimulatedEnsemble& ens);

/// Conditional channel action Σ_i p_i L_i(σ_P^i ⊗ ρ), computed block by
/// block (the full C⊗P⊗T operator is never materialized).
Matrix conditional_apply(const SimulatedEnsemble& ens, const Matrix& rho);
DensityMatrix conditional_apply(const SimulatedEnsemble& ens, const DensityMatrix& rho);

/// The conditional simulation as a channel (via its Choi matrix).
QuantumChannel conditional_channel(const SimulatedEnsemble& ens);

/// Max-norm deviation between the conditional simulation and the average
/// channel over a complete operator basis. Exact constructions stay ≤ 1e-9.
double verify_simulation(const SimulatedEnsemble& ens);

/// REE oracle signature: E_R of a bipartite state, split read off its labels.
using ReeOracle = std::function<double(const DensityMatrix&)>;

struct ReeChainResult {
    double e_theta;     // E_R(θ_CP), CA|B split
    double sum_bound;   // Σ_i p_i E_R(σ_P^i)
};

/// Evaluate both sides of the REE chain E_R(θ_CP) ≤ Σ p_i E_R(σ_P^i).
/// Throws if the numerically computed left side exceeds the right side by
/// more than `slack` (the chain inequality is exact mathematics; a violation
/// means the oracle failed).
ReeChainResult ree_chain_bound(const ControlProgramState& theta, const ReeOracle& ree,
                               double slack = 1e-4);

struct FiniteSizeParams {
    long long n;   // channel uses
    double eps;    // security parameter, in (0, 1/(4α))
    double alpha;  // dimension constant; 1 for entanglement distribution

    void validate() const;
};

/// R_n^ε ≤ sum_ree/(1−4εα) + 2H₂(ε)/((1−4εα)n).
double finite_size_bound(const FiniteSizeParams& params, double sum_ree);

/// θ_CP for M simultaneous ensembles with a joint distribution over index
/// tuples (row-major over the component counts). Blocks are tensor products
/// of the per-slot programs.
ControlProgramState build_memory_control_program(
    const std::vector<std::vector<DensityMatrix>>& programs_per_slot,
    const std::vector<double>& joint_p);

/// Memory-channel bound Σ_i p_i Σ_k E_R(σ^{k,i_k}) from per-slot component
/// REE tables.
double memory_bound(const std::vector<std::vector<double>>& ree_per_slot,
                    const std::vector<double>& joint_p);

}  // namespace qmix
