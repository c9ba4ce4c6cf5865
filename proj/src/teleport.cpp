#include "qmix/teleport.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmix {

namespace {

// E(U B U†) == V E(B) V† over all matrix units B, compared as superoperators.
bool covariance_holds(const QuantumChannel& ch, const Matrix& u, const Matrix& v) {
    const int d = ch.d_in();
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            Matrix basis = matrix_unit(d, a, b);
            Matrix lhs = ch.apply_to(u * basis * u.adjoint());
            Matrix rhs = v * ch.apply_to(basis) * v.adjoint();
            if (max_abs_diff(lhs, rhs) > tol.covariance) return false;
        }
    }
    return true;
}

// Candidate corrections on the output space for a given channel shape.
std::vector<Matrix> correction_candidates(int d_in, int d_out) {
    std::vector<Matrix> cands;
    WeylGroup out_group(d_out);
    for (const Matrix& w : out_group.operators) cands.push_back(w);
    if (d_out > d_in) {
        // Flag-preserving candidates: input-space Weyl element, identity on
        // the appended erasure directions.
        WeylGroup in_group(d_in);
        for (const Matrix& w : in_group.operators) {
            Matrix v = identity(d_out);
            v.topLeftCorner(d_in, d_in) = w;
            cands.push_back(std::move(v));
        }
    }
    return cands;
}

}  // namespace

WeylGroup::WeylGroup(int dimension) : d(dimension) {
    if (d < 2) throw std::invalid_argument("Weyl group needs dimension >= 2");
    Matrix x = Matrix::Zero(d, d), z = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        x((j + 1) % d, j) = 1.0;
        z(j, j) = std::exp(Complex(0, 2.0 * std::numbers::pi * j / d));
    }
    Matrix xa = identity(d);
    for (int a = 0; a < d; ++a) {
        Matrix zb = identity(d);
        for (int b = 0; b < d; ++b) {
            operators.push_back(xa * zb);
            zb = z * zb;
        }
        xa = x * xa;
    }
}

CorrectionTable standard_corrections(int d) {
    WeylGroup g(d);
    return {d, g.operators};
}

Matrix teleport(const DensityMatrix& program, const Matrix& input,
                const CorrectionTable& corrections) {
    if (program.sig().size() != 2) {
        throw std::invalid_argument("teleport: program needs a two-factor (A,B) signature");
    }
    const int d = program.sig().dims[0];
    const int d_out = program.sig().dims[1];
    if (input.rows() != d || input.cols() != d) {
        throw std::invalid_argument("teleport: input dimension must match program A side");
    }
    if (static_cast<int>(corrections.corrections.size()) != d * d || corrections.d != d) {
        throw std::invalid_argument("teleport: correction table must cover all d² outcomes");
    }

    // Order systems (A, T, B); joint = program_AB ⊗ input_T permuted.
    std::vector<int> dims_abt = {d, d_out, d};
    Matrix joint = kron(program.mat(), input);
    Matrix atb = permute_subsystems(joint, dims_abt, {0, 2, 1});
    const std::vector<int> dims_atb = {d, d, d_out};

    WeylGroup bell(d);
    Vector phi = max_entangled_ket(d);
    Matrix out = Matrix::Zero(d_out, d_out);
    for (int k = 0; k < d * d; ++k) {
        Vector phi_k = kron(identity(d), bell.operators[k]) * phi;
        Matrix proj = kron(Matrix(phi_k * phi_k.adjoint()), identity(d_out));
        Matrix post = proj * atb * proj;
        Matrix bob = partial_trace(post, dims_atb, {2});
        const Matrix& v = corrections.corrections[k];
        out += v * bob * v.adjoint();
    }
    return out;
}

DensityMatrix teleport(const DensityMatrix& program, const DensityMatrix& input,
                       const CorrectionTable& corrections) {
    Matrix out = teleport(program, input.mat(), corrections);
    out = (out + Matrix(out.adjoint())) / 2.0;
    return {std::move(out), {program.sig().dims[1]}, {Party::T}};
}

std::vector<std::vector<Matrix>> covariance_candidates(const QuantumChannel& ch,
                                                       const WeylGroup& group) {
    if (ch.d_in() != group.d) {
        throw std::invalid_argument("covariance_candidates: group dimension mismatch");
    }
    std::vector<Matrix> cands = correction_candidates(ch.d_in(), ch.d_out());
    std::vector<std::vector<Matrix>> valid(group.size());
    for (int k = 0; k < group.size(); ++k) {
        for (const Matrix& v : cands) {
            if (covariance_holds(ch, group.operators[k], v)) valid[k].push_back(v);
        }
    }
    return valid;
}

std::optional<CorrectionTable> covariance_table(const QuantumChannel& ch,
                                                const WeylGroup& group) {
    auto valid = covariance_candidates(ch, group);
    CorrectionTable table{group.d, {}};
    for (const auto& v : valid) {
        if (v.empty()) return std::nullopt;
        table.corrections.push_back(v.front());
    }
    return table;
}

bool jointly_covariant(const std::vector<QuantumChannel>& components, const WeylGroup& group) {
    return joint_covariance_table(components, group).has_value();
}

bool jointly_covariant(const ChannelEnsemble& ens, const WeylGroup& group) {
    std::vector<QuantumChannel> comps;
    for (const auto& e : ens.entries) comps.push_back(e.channel);
    return jointly_covariant(comps, group);
}

std::optional<CorrectionTable> joint_covariance_table(
    const std::vector<QuantumChannel>& components, const WeylGroup& group) {
    if (components.empty()) throw std::invalid_argument("joint covariance of empty list");
    for (const auto& c : components) {
        if (c.d_in() != components[0].d_in() || c.d_out() != components[0].d_out()) {
            return std::nullopt;  // different spaces, no shared teleportation LOCC
        }
    }
    std::vector<Matrix> cands = correction_candidates(components[0].d_in(), components[0].d_out());
    CorrectionTable table{group.d, {}};
    for (int k = 0; k < group.size(); ++k) {
        bool found = false;
        for (const Matrix& v : cands) {
            bool all = true;
            for (const auto& c : components) {
                if (!covariance_holds(c, group.operators[k], v)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                table.corrections.push_back(v);
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return table;
}

double teleport_simulation_deviation(const QuantumChannel& ch, const CorrectionTable& table) {
    const int d = ch.d_in();
    double dev = 0.0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            Matrix basis = matrix_unit(d, a, b);
            Matrix via_teleport = teleport(ch.choi(), basis, table);
            dev = std::max(dev, max_abs_diff(via_teleport, ch.apply_to(basis)));
        }
    }
    return dev;
}

}  // namespace qmix
