#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmix/bounds.hpp"
#include "qmix/condsim.hpp"
#include "qmix/entropy.hpp"
#include "qmix/fock.hpp"
#include "qmix/gaussian.hpp"
#include "qmix/report.hpp"
#include "qmix/ree.hpp"
#include "qmix/verify.hpp"

namespace {

using qmix::CapacityReport;

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    bool swept() const { return steps > 1; }
    double at(int k) const {
        if (steps == 1) return start;
        return start + (stop - start) * k / (steps - 1);
    }
};

// Accepts "value" or "start:stop:steps".
GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    auto first = text.find(':');
    if (first == std::string::npos) {
        g.start = g.stop = std::stod(text);
        g.steps = 1;
        return g;
    }
    auto second = text.find(':', first + 1);
    if (second == std::string::npos) {
        throw CLI::ValidationError("grid", "expected value or start:stop:steps");
    }
    g.start = std::stod(text.substr(0, first));
    g.stop = std::stod(text.substr(first + 1, second - first - 1));
    g.steps = std::stoi(text.substr(second + 1));
    if (g.steps < 1 || g.start > g.stop) {
        throw CLI::ValidationError("grid", "need steps >= 1 and start <= stop");
    }
    return g;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stod(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

void emit(const std::string& content, const std::string& output_path) {
    if (output_path.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + output_path);
    f << content;
}

CapacityReport finite_size_report(double log10n, double eps, double alpha, double sum_ree) {
    long long n = static_cast<long long>(std::llround(std::pow(10.0, log10n)));
    CapacityReport r;
    r.channel_id = "finite-size";
    r.params = {{"log10n", log10n}, {"eps", eps}, {"alpha", alpha}, {"sum_ree", sum_ree}};
    r.upper = qmix::finite_size_bound({n, eps, alpha}, sum_ree);
    r.exact = false;
    r.method_notes = {{"upper", "finite-size key-rate bound from the component REE sum"}};
    return r;
}

int run_sweep(const std::string& channel, const std::vector<std::pair<std::string, GridSpec>>& axes,
              double eps, double alpha, double sum_ree, double inner_ree,
              const std::string& output) {
    std::vector<std::pair<std::string, GridSpec>> swept;
    for (const auto& a : axes) {
        if (a.second.swept()) swept.push_back(a);
    }
    if (swept.size() > 2) {
        std::fprintf(stderr, "error: at most two parameters may be swept\n");
        return 2;
    }
    auto value_of = [&](const std::string& name, int i, int j) {
        for (std::size_t k = 0; k < axes.size(); ++k) {
            if (axes[k].first != name) continue;
            if (!axes[k].second.swept()) return axes[k].second.start;
            if (!swept.empty() && swept[0].first == name) return swept[0].second.at(i);
            return swept[1].second.at(j);
        }
        throw std::runtime_error("unknown parameter " + name);
    };
    const int n1 = swept.empty() ? 1 : swept[0].second.steps;
    const int n2 = swept.size() < 2 ? 1 : swept[1].second.steps;

    std::vector<qmix::SweepRow> rows;
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            CapacityReport rep;
            if (channel == "dephrasure") {
                rep = qmix::dephrasure_capacities(value_of("p", i, j), value_of("q", i, j));
            } else if (channel == "dad") {
                rep = qmix::dad_bound(value_of("p", i, j));
            } else if (channel == "pipeline") {
                rep = qmix::pipeline_report(inner_ree, value_of("p", i, j));
            } else if (channel == "finite-size") {
                rep = finite_size_report(value_of("log10n", i, j), eps, alpha, sum_ree);
            } else {
                std::fprintf(stderr, "error: unknown sweep channel '%s'\n", channel.c_str());
                return 2;
            }
            qmix::SweepRow row;
            row.param1 = swept.empty() ? "" : qmix::format_number(swept[0].second.at(i));
            row.param2 = swept.size() < 2 ? "" : qmix::format_number(swept[1].second.at(j));
            row.report = std::move(rep);
            rows.push_back(std::move(row));
        }
    }
    emit(qmix::sweep_to_csv(rows), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional simulation of quantum channel mixtures: capacity bounds, "
                 "verification suites and numeric oracles"};
    app.require_subcommand(1);
    std::uint64_t seed = 42;
    app.add_option("--seed", seed, "seed for randomized checks (recorded in reports)");

    // ---- bounds ----------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "compute one capacity report");
    std::string b_channel, b_output, b_format = "json";
    double b_p = 0.0, b_q = 0.0, b_inner_ree = -1.0, b_inner_q = -1.0;
    double b_eta_min = 0.0, b_eta_max = 0.5;
    int b_slots = 2;
    bool b_correlated = false;
    std::string b_probs, b_etas;
    bounds->add_option("channel", b_channel,
                       "dephrasure | dad | pipeline | lossy-mixture | lossy-continuous | memory")
        ->required();
    bounds->add_option("--p", b_p, "erasure/mixture probability");
    bounds->add_option("--q", b_q, "dephasing probability");
    bounds->add_option("--inner-ree", b_inner_ree, "pipeline: REE of the inner program state");
    bounds->add_option("--inner-q", b_inner_q, "pipeline: inner dephasing parameter");
    bounds->add_option("--probs", b_probs, "lossy-mixture: comma-separated probabilities");
    bounds->add_option("--etas", b_etas, "lossy-mixture: comma-separated transmissivities");
    bounds->add_option("--eta-min", b_eta_min, "lossy-continuous: lower edge of the density");
    bounds->add_option("--eta-max", b_eta_max, "lossy-continuous: upper edge of the density");
    bounds->add_option("--slots", b_slots, "memory: number of simultaneous systems");
    bounds->add_flag("--correlated", b_correlated, "memory: perfectly correlated distribution");
    bounds->add_option("--output", b_output, "write the report here instead of stdout");
    bounds->add_option("--format", b_format, "json (default) or csv");

    // ---- sweep -----------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "grid sweep written as CSV");
    std::string s_channel, s_output;
    std::string s_p, s_q, s_log10n;
    double s_eps = 0.01, s_alpha = 1.0, s_sum_ree = 0.7, s_inner_ree = 1.0;
    sweep->add_option("channel", s_channel, "dephrasure | dad | pipeline | finite-size")
        ->required();
    sweep->add_option("--p", s_p, "value or start:stop:steps");
    sweep->add_option("--q", s_q, "value or start:stop:steps");
    sweep->add_option("--log10n", s_log10n, "finite-size: value or start:stop:steps");
    sweep->add_option("--eps", s_eps, "finite-size: security parameter");
    sweep->add_option("--alpha", s_alpha, "finite-size: dimension constant");
    sweep->add_option("--sum-ree", s_sum_ree, "finite-size: component REE sum");
    sweep->add_option("--inner-ree", s_inner_ree, "pipeline: inner REE");
    sweep->add_option("--output", s_output, "CSV path (stdout when omitted)");

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite;
    std::vector<std::string> v_tols;
    verify->add_option("suite", v_suite, "condsim | teleport | ree | gaussian | all")->required();
    verify->add_option("--tol", v_tols, "threshold override name=value (repeatable)");

    // ---- oracle ----------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "independent brute-force oracles");
    std::string o_kind;
    double o_mu = 1.5, o_eta = 0.5, o_lambda = 0.7, o_eta_max = 0.5;
    int o_cutoff = 40;
    oracle->add_option("kind", o_kind, "fock-compare | bell-ree | quad-uniform")->required();
    oracle->add_option("--mu", o_mu, "TMSV variance");
    oracle->add_option("--eta", o_eta, "transmissivity");
    oracle->add_option("--cutoff", o_cutoff, "Fock truncation");
    oracle->add_option("--lambda", o_lambda, "largest Bell weight");
    oracle->add_option("--eta-max", o_eta_max, "upper edge of the uniform density");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    }

    try {
        if (bounds->parsed()) {
            CapacityReport rep;
            if (b_channel == "dephrasure") {
                rep = qmix::dephrasure_capacities(b_p, b_q);
            } else if (b_channel == "dad") {
                rep = qmix::dad_bound(b_p);
            } else if (b_channel == "pipeline") {
                double inner = b_inner_ree;
                if (inner < 0.0 && b_inner_q >= 0.0) {
                    inner = 1.0 - qmix::binary_entropy(b_inner_q);
                }
                if (inner < 0.0) {
                    std::fprintf(stderr, "error: pipeline needs --inner-ree or --inner-q\n");
                    return 2;
                }
                rep = qmix::pipeline_report(inner, b_p);
            } else if (b_channel == "lossy-mixture") {
                rep = qmix::lossy_mixture_report(parse_list(b_probs), parse_list(b_etas));
            } else if (b_channel == "lossy-continuous") {
                rep = qmix::continuous_lossy_report(b_eta_min, b_eta_max);
            } else if (b_channel == "memory") {
                rep = qmix::memory_dad_report(b_slots, b_p, b_correlated);
            } else {
                std::fprintf(stderr, "error: unknown channel '%s'\n", b_channel.c_str());
                return 2;
            }
            if (b_format == "json") {
                emit(qmix::report_to_json(rep, seed), b_output);
            } else if (b_format == "csv") {
                emit(qmix::sweep_to_csv({{"", "", rep}}), b_output);
            } else {
                std::fprintf(stderr, "error: unknown format '%s'\n", b_format.c_str());
                return 2;
            }
            return 0;
        }

        if (sweep->parsed()) {
            std::vector<std::pair<std::string, GridSpec>> axes;
            if (!s_p.empty()) axes.emplace_back("p", parse_grid(s_p));
            if (!s_q.empty()) axes.emplace_back("q", parse_grid(s_q));
            if (!s_log10n.empty()) axes.emplace_back("log10n", parse_grid(s_log10n));
            return run_sweep(s_channel, axes, s_eps, s_alpha, s_sum_ree, s_inner_ree, s_output);
        }

        if (verify->parsed()) {
            auto checks = qmix::verify_suite(v_suite, seed);
            for (const std::string& ov : v_tols) {
                auto eq = ov.find('=');
                if (eq == std::string::npos) {
                    std::fprintf(stderr, "usage error: --tol expects name=value\n");
                    return 2;
                }
                std::string name = ov.substr(0, eq);
                double value = std::stod(ov.substr(eq + 1));
                for (auto& c : checks) {
                    if (c.name == name) c.threshold = value;
                }
            }
            bool all_ok = true;
            for (const auto& c : checks) {
                std::printf("%-52s deviation=%-12.3e threshold=%-9.0e %s\n", c.name.c_str(),
                            c.deviation, c.threshold, c.passed() ? "ok" : "FAIL");
                all_ok = all_ok && c.passed();
            }
            std::printf("%s: %zu checks, %s\n", v_suite.c_str(), checks.size(),
                        all_ok ? "all passed" : "FAILURES present");
            return all_ok ? 0 : 1;
        }

        if (oracle->parsed()) {
            nlohmann::ordered_json j;
            if (o_kind == "fock-compare") {
                qmix::GaussianState qc = qmix::quasi_choi_state(o_eta, o_mu);
                double deficit = qmix::fock_trace_deficit(qc, o_cutoff);
                double rci_fock = qmix::fock_rci(qmix::fock_oracle(qc, o_cutoff));
                double rci_moment = qmix::gaussian_rci(o_eta, o_mu);
                j["kind"] = "fock-compare";
                j["mu"] = o_mu;
                j["eta"] = o_eta;
                j["cutoff"] = o_cutoff;
                j["trace_deficit"] = deficit;
                j["rci_fock"] = rci_fock;
                j["rci_moment"] = rci_moment;
                j["abs_difference"] = std::abs(rci_fock - rci_moment);
            } else if (o_kind == "bell-ree") {
                std::vector<double> w = {o_lambda, (1 - o_lambda) / 3, (1 - o_lambda) / 3,
                                         (1 - o_lambda) / 3};
                auto closed = qmix::bell_diagonal_ree(w);
                auto solver = qmix::ree_ppt(qmix::bell_diagonal_state(w));
                j["kind"] = "bell-ree";
                j["lambda"] = o_lambda;
                j["closed_form"] = closed.value;
                j["ppt_solver"] = solver.value;
                j["solver_gap_estimate"] = solver.gap_estimate;
                j["abs_difference"] = std::abs(closed.value - solver.value);
            } else if (o_kind == "quad-uniform") {
                double width = o_eta_max;
                auto quad = qmix::continuous_mixture_upper(
                    [&](double) { return 1.0 / width; }, 0.0, o_eta_max);
                // Closed form of (1/w)∫₀^w −log2(1−η) dη.
                double closed =
                    ((1.0 - o_eta_max) * std::log2(1.0 - o_eta_max) + o_eta_max / std::numbers::ln2) /
                    width;
                j["kind"] = "quad-uniform";
                j["eta_max"] = o_eta_max;
                j["quadrature"] = quad.value;
                j["error_estimate"] = quad.error_estimate;
                j["closed_form"] = closed;
                j["abs_difference"] = std::abs(closed - quad.value);
            } else {
                std::fprintf(stderr, "error: unknown oracle '%s'\n", o_kind.c_str());
                return 2;
            }
            std::fputs((j.dump(2) + "\n").c_str(), stdout);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
