#include "qmix/condsim.hpp"

#include <cmath>
#include <stdexcept>

namespace qmix {

Matrix SimulationDescriptor::apply_to(const Matrix& input) const {
    if (std::holds_alternative<Teleportation>(locc_kind)) {
        return teleport(program, input, std::get<Teleportation>(locc_kind).table);
    }
    const QuantumChannel& locc = std::get<GenericMap>(locc_kind).locc;
    return locc.apply_to(kron(program.mat(), input));
}

SimulationDescriptor choi_teleport_descriptor(const QuantumChannel& ch) {
    WeylGroup group(ch.d_in());
    auto table = covariance_table(ch, group);
    if (!table) {
        throw std::invalid_argument(
            "choi_teleport_descriptor: channel is not teleportation covariant "
            "under the correction search set");
    }
    return {ch.choi(), SimulationDescriptor::Teleportation{*table}};
}

SimulationDescriptor generic_descriptor(const QuantumChannel& ch, const DensityMatrix& program) {
    const int dp = program.dim();
    const int d_in = ch.d_in();
    // L(X) = E(Tr_P X), with Kraus operators (⟨j|_P ⊗ K).
    std::vector<Matrix> kraus;
    for (int j = 0; j < dp; ++j) {
        Matrix bra = Matrix::Zero(1, dp);
        bra(0, j) = 1.0;
        for (const Matrix& k : ch.kraus()) kraus.push_back(kron(bra, k));
    }
    (void)d_in;
    QuantumChannel locc = QuantumChannel::from_kraus(std::move(kraus));
    return {program, SimulationDescriptor::GenericMap{std::move(locc)}};
}

double descriptor_deviation(const SimulationDescriptor& desc, const QuantumChannel& ch) {
    double dev = 0.0;
    for (int a = 0; a < ch.d_in(); ++a)
        for (int b = 0; b < ch.d_in(); ++b) {
            Matrix basis = matrix_unit(ch.d_in(), a, b);
            dev = std::max(dev, max_abs_diff(desc.apply_to(basis), ch.apply_to(basis)));
        }
    return dev;
}

SimulatedEnsemble::SimulatedEnsemble(ChannelEnsemble ens, std::vector<SimulationDescriptor> desc)
    : ensemble(std::move(ens)), descriptors(std::move(desc)) {
    if (descriptors.size() != ensemble.entries.size()) {
        throw std::invalid_argument("every ensemble entry needs a simulation descriptor");
    }
}

SimulatedEnsemble SimulatedEnsemble::from_covariant_components(const ChannelEnsemble& ens) {
    std::vector<SimulationDescriptor> desc;
    for (const auto& e : ens.entries) desc.push_back(choi_teleport_descriptor(e.channel));
    return {ens, std::move(desc)};
}

ControlProgramState ControlProgramState::build(
    const std::vector<std::pair<double, DensityMatrix>>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("control-program state needs blocks");
    const int n = static_cast<int>(blocks.size());
    const int dp = blocks[0].second.dim();
    for (const auto& [p, sigma] : blocks) {
        if (sigma.dim() != dp) {
            throw std::invalid_argument("program states must share a dimension");
        }
        if (p < 0.0) throw std::invalid_argument("block probabilities must be nonnegative");
    }
    Matrix theta = Matrix::Zero(n * dp, n * dp);
    for (int i = 0; i < n; ++i) {
        theta.block(i * dp, i * dp, dp, dp) = blocks[i].first * blocks[i].second.mat();
    }
    SubsystemSignature sig = SubsystemSignature::concat(
        SubsystemSignature({n}, {Party::C}), blocks[0].second.sig());
    ControlProgramState st{blocks, DensityMatrix(std::move(theta), std::move(sig))};
    return st;
}

double ControlProgramState::off_block_leakage() const {
    const int n = control_dim();
    const int dp = blocks[0].second.dim();
    double leak = 0.0;
    const Matrix& m = realized.mat();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            leak = std::max(leak, max_abs(m.block(i * dp, j * dp, dp, dp)));
        }
    return leak;
}

ControlProgramState build_control_program(const SimulatedEnsemble& ens) {
    std::vector<std::pair<double, DensityMatrix>> blocks;
    for (std::size_t i = 0; i < ens.descriptors.size(); ++i) {
        blocks.emplace_back(ens.ensemble.entries[i].p, ens.descriptors[i].program);
    }
    return ControlProgramState::build(blocks);
}

Matrix conditional_apply(const SimulatedEnsemble& ens, const Matrix& rho) {
    if (rho.rows() != ens.ensemble.d_in()) {
        throw std::invalid_argument("conditional_apply: input dimension mismatch");
    }
    Matrix out = Matrix::Zero(ens.ensemble.d_out(), ens.ensemble.d_out());
    for (std::size_t i = 0; i < ens.descriptors.size(); ++i) {
        const double p = ens.ensemble.entries[i].p;
        if (p == 0.0) continue;
        out += p * ens.descriptors[i].apply_to(rho);
    }
    return out;
}

DensityMatrix conditional_apply(const SimulatedEnsemble& ens, const DensityMatrix& rho) {
    Matrix out = conditional_apply(ens, rho.mat());
    out = (out + Matrix(out.adjoint())) / 2.0;
    return {std::move(out), {ens.ensemble.d_out()}, {Party::T}};
}

QuantumChannel conditional_channel(const SimulatedEnsemble& ens) {
    return channel_from_action(ens.ensemble.d_in(), ens.ensemble.d_out(),
                               [&](const Matrix& x) { return conditional_apply(ens, x); });
}

double verify_simulation(const SimulatedEnsemble& ens) {
    QuantumChannel avg = mixture(ens.ensemble);
    const int d = ens.ensemble.d_in();
    double dev = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Matrix basis = matrix_unit(d, a, b);
            dev = std::max(dev, max_abs_diff(conditional_apply(ens, basis), avg.apply_to(basis)));
        }
    return dev;
}

ReeChainResult ree_chain_bound(const ControlProgramState& theta, const ReeOracle& ree,
                               double slack) {
    double e_theta = ree(theta.realized);
    double sum = 0.0;
    for (const auto& [p, sigma] : theta.blocks) {
        if (p == 0.0) continue;
        sum += p * ree(sigma);
    }
    if (e_theta > sum + slack) {
        throw std::logic_error("REE chain violated: E_R(theta) = " + std::to_string(e_theta) +
                               " > component bound " + std::to_string(sum));
    }
    return {e_theta, sum};
}

void FiniteSizeParams::validate() const {
    if (n <= 0) throw std::domain_error("finite-size bound needs n >= 1");
    if (alpha < 1.0) throw std::domain_error("alpha must be >= 1");
    if (eps <= 0.0 || 1.0 - 4.0 * eps * alpha <= 0.0) {
        throw std::domain_error("need eps in (0, 1/(4 alpha))");
    }
}

double finite_size_bound(const FiniteSizeParams& params, double sum_ree) {
    params.validate();
    const double denom = 1.0 - 4.0 * params.eps * params.alpha;
    return sum_ree / denom +
           2.0 * binary_entropy(params.eps) / (denom * static_cast<double>(params.n));
}

ControlProgramState build_memory_control_program(
    const std::vector<std::vector<DensityMatrix>>& programs_per_slot,
    const std::vector<double>& joint_p) {
    if (programs_per_slot.empty()) throw std::invalid_argument("need at least one slot");
    std::size_t total = 1;
    for (const auto& slot : programs_per_slot) {
        if (slot.empty()) throw std::invalid_argument("memory slot without components");
        total *= slot.size();
    }
    if (joint_p.size() != total) {
        throw std::invalid_argument("joint distribution size must match the index tuples");
    }
    double sum = 0.0;
    for (double p : joint_p) sum += p;
    if (std::abs(sum - 1.0) > tol.prob_sum) {
        throw std::invalid_argument("joint distribution must sum to 1");
    }

    std::vector<std::pair<double, DensityMatrix>> blocks;
    const int slots = static_cast<int>(programs_per_slot.size());
    for (std::size_t flat = 0; flat < total; ++flat) {
        // Decode the tuple (row-major, slot 0 slowest).
        std::size_t rem = flat;
        std::vector<int> idx(slots);
        for (int k = slots - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(rem % programs_per_slot[k].size());
            rem /= programs_per_slot[k].size();
        }
        DensityMatrix block = programs_per_slot[0][idx[0]];
        for (int k = 1; k < slots; ++k) block = tensor(block, programs_per_slot[k][idx[k]]);
        blocks.emplace_back(joint_p[flat], std::move(block));
    }
    return ControlProgramState::build(blocks);
}

double memory_bound(const std::vector<std::vector<double>>& ree_per_slot,
                    const std::vector<double>& joint_p) {
    std::size_t total = 1;
    for (const auto& slot : ree_per_slot) total *= slot.size();
    if (joint_p.size() != total) {
        throw std::invalid_argument("joint distribution size must match the index tuples");
    }
    const int slots = static_cast<int>(ree_per_slot.size());
    double bound = 0.0;
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        double term = 0.0;
        for (int k = slots - 1; k >= 0; --k) {
            int i = static_cast<int>(rem % ree_per_slot[k].size());
            rem /= ree_per_slot[k].size();
            term += ree_per_slot[k][i];
        }
        bound += joint_p[flat] * term;
    }
    return bound;
}

}  // namespace qmix
