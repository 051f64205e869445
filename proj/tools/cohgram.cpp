// Command-line front end: decide membership, closure membership and
// distance-matrix questions on JSON matrix/ensemble documents, emit one
// JSON report per run on stdout, diagnostics on stderr.
//
// Exit codes: 0 decided member/true, 3 decided not-member/false,
//             1 usage or format error, 2 numerical failure or budget.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cohgram/closure.hpp"
#include "cohgram/edm.hpp"
#include "cohgram/generators.hpp"
#include "cohgram/io.hpp"
#include "cohgram/membership.hpp"

namespace {

using namespace cohgram;

constexpr int kExitTrue = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitFalse = 3;

Json read_document(const std::string& path) {
    if (path == "-") return parse_document(std::cin, "stdin");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path + ": cannot open");
    return parse_document(in, path);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(path + ": cannot open for writing");
    out << text;
}

struct DecisionFlags {
    double beta = -kPi;
    double tol_eig = 0.0;
    bool tol_eig_set = false;
    double tol_zero = 1e-10;
    std::string centering = "e1";
    std::uint64_t max_candidates = 1000000;
    std::string witness_out;

    BranchSpec branch() const {
        BranchSpec b;
        b.beta = beta;
        if (tol_eig_set) b.tol_eig = tol_eig;
        b.tol_zero = tol_zero;
        return b;
    }
};

void add_tolerance_flags(CLI::App* cmd, DecisionFlags& flags) {
    cmd->add_option("--branch-beta", flags.beta, "Branch start beta (radians)")
        ->capture_default_str();
    cmd->add_option("--tol-eig", flags.tol_eig,
                    "Eigenvalue slack (default: 1e-9 * n * max|entry|)")
        ->each([&flags](const std::string&) { flags.tol_eig_set = true; });
    cmd->add_option("--tol-zero", flags.tol_zero, "Zero-entry threshold")
        ->capture_default_str();
}

void add_decision_flags(CLI::App* cmd, DecisionFlags& flags) {
    add_tolerance_flags(cmd, flags);
    cmd->add_option("--centering", flags.centering, "Centering vector s")
        ->check(CLI::IsMember({"e1", "mean"}))
        ->capture_default_str();
    cmd->add_option("--max-candidates", flags.max_candidates,
                    "Refuse searches above this candidate count")
        ->capture_default_str();
    cmd->add_option("--witness-out", flags.witness_out,
                    "Write the witness ensemble to this path");
}

int exit_code(const std::string& verdict) {
    if (verdict == "member" || verdict == "edm") return kExitTrue;
    if (verdict == "not-member" || verdict == "not-edm") return kExitFalse;
    return kExitNumeric;
}

int emit(const Json& report) {
    std::cout << dump_report(report);
    return exit_code(report.at("verdict").get<std::string>());
}

int budget_error(const std::string& command, const BranchSpec& branch,
                 const BudgetExceededError& e) {
    Json report = plain_report(command, "error", branch);
    report["reason"] = Json{{"kind", "CandidateBudgetExceeded"},
                            {"theoretical", e.theoretical},
                            {"budget", e.budget}};
    std::cout << dump_report(report);
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
}

int run_check(const std::string& input, const DecisionFlags& flags,
              const std::string& command, const std::string& ensemble_out) {
    const BranchSpec branch = flags.branch();
    const GramMatrix p = GramMatrix::unchecked(matrix_from_json(read_document(input)));
    const ComplexVector s = flags.centering == "mean" ? centering_mean(p.size())
                                                      : centering_e1(p.size());
    MembershipResult result;
    try {
        result = check_membership(p, branch, s, flags.max_candidates);
    } catch (const BudgetExceededError& e) {
        return budget_error(command, branch, e);
    }
    if (result.witness) {
        const std::string payload =
            ensemble_to_json(result.witness->ensemble).dump(2) + "\n";
        if (!flags.witness_out.empty()) write_text(flags.witness_out, payload);
        if (!ensemble_out.empty()) write_text(ensemble_out, payload);
    }
    return emit(membership_report(command, result, branch));
}

int run_closure(const std::string& input, const DecisionFlags& flags,
                const std::string& permutation_out) {
    const BranchSpec branch = flags.branch();
    const GramMatrix p = GramMatrix::unchecked(matrix_from_json(read_document(input)));
    ClosureOptions opts;
    opts.centering = flags.centering == "mean" ? ClosureOptions::Centering::Mean
                                               : ClosureOptions::Centering::FirstState;
    opts.max_candidates = flags.max_candidates;
    ClosureResult result;
    try {
        result = check_closure_membership(p, branch, opts);
    } catch (const BudgetExceededError& e) {
        return budget_error("closure", branch, e);
    }
    if (result.verdict == Verdict::Member) {
        if (!permutation_out.empty())
            write_text(permutation_out,
                       Json{{"kind", "permutation"}, {"map", result.permutation}}.dump(2) +
                           "\n");
        if (!flags.witness_out.empty()) {
            Json blocks = Json::array();
            for (const auto& block : result.blocks)
                blocks.push_back(
                    Json{{"indices", block.indices},
                         {"ensemble",
                          ensemble_to_json(block.membership.witness->ensemble)}});
            write_text(flags.witness_out,
                       Json{{"kind", "block-witnesses"}, {"blocks", std::move(blocks)}}
                               .dump(2) +
                           "\n");
        }
    }
    return emit(closure_report("closure", result, branch));
}

int run_gram(const std::string& input, const std::string& out) {
    const CoherentEnsemble e = ensemble_from_json(read_document(input));
    write_text(out, matrix_to_json(gram_of_ensemble(e).mat).dump(2) + "\n");
    return kExitTrue;
}

int run_approx(const std::vector<std::string>& block_paths, std::optional<double> a,
               std::optional<double> eps, const std::string& out) {
    const BranchSpec branch;
    std::vector<CoherentEnsemble> blocks;
    blocks.reserve(block_paths.size());
    for (const auto& path : block_paths)
        blocks.push_back(ensemble_from_json(read_document(path)));
    const double marker = eps ? displacement_for_epsilon(*eps) : *a;
    const CoherentEnsemble joined = approximate_block_diagonal(blocks, marker);
    write_text(out, ensemble_to_json(joined).dump(2) + "\n");
    Json report = plain_report("approx", "member", branch);
    report["marker_amplitude"] = marker;
    std::cout << dump_report(report);
    return kExitTrue;
}

int run_edm(const std::string& input, const DecisionFlags& flags) {
    const BranchSpec branch = flags.branch();
    const RealMatrix m = real_matrix_from_json(read_document(input));
    const EdmCandidate cand = EdmCandidate::checked(m);
    const bool ok = is_edm(cand, branch);
    return emit(plain_report("edm", ok ? "edm" : "not-edm", branch));
}

int run_edm_exp(const std::string& input, const DecisionFlags& flags,
                const std::string& out) {
    const BranchSpec branch = flags.branch();
    const RealMatrix m = real_matrix_from_json(read_document(input));
    const EdmCandidate cand = EdmCandidate::checked(m);
    try {
        const CoherentEnsemble witness = hadamard_exp_edm_witness(cand, branch);
        const std::string payload = ensemble_to_json(witness).dump(2) + "\n";
        if (!out.empty()) write_text(out, payload);
        if (!flags.witness_out.empty()) write_text(flags.witness_out, payload);
        Json report = plain_report("edm-exp", "edm", branch);
        report["witness"] = ensemble_to_json(witness);
        return emit(report);
    } catch (const NotEdmError&) {
        return emit(plain_report("edm-exp", "not-edm", branch));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gram matrices of multi-mode coherent states: decision and "
                 "reconstruction toolkit"};
    app.require_subcommand(1);

    DecisionFlags check_flags;
    auto* check = app.add_subcommand("check", "Decide membership and reconstruct");
    std::string check_input;
    check->add_option("matrix", check_input, "MatrixFile path or -")->required();
    add_decision_flags(check, check_flags);

    DecisionFlags closure_flags;
    auto* closure = app.add_subcommand("closure", "Decide closure membership");
    std::string closure_input;
    std::string permutation_out;
    closure->add_option("matrix", closure_input, "MatrixFile path or -")->required();
    add_decision_flags(closure, closure_flags);
    closure->add_option("--permutation-out", permutation_out,
                        "Write the block permutation to this path");

    auto* gram = app.add_subcommand("gram", "Gram matrix of an ensemble");
    std::string gram_input;
    std::string gram_out;
    gram->add_option("ensemble", gram_input, "EnsembleFile path or -")->required();
    gram->add_option("--out", gram_out, "Output path (default stdout)");

    DecisionFlags reconstruct_flags;
    auto* reconstruct =
        app.add_subcommand("reconstruct", "Member path of check, writing the witness");
    std::string reconstruct_input;
    std::string reconstruct_out;
    reconstruct->add_option("matrix", reconstruct_input, "MatrixFile path or -")
        ->required();
    reconstruct->add_option("--out", reconstruct_out, "Witness ensemble path")->required();
    add_decision_flags(reconstruct, reconstruct_flags);

    auto* approx = app.add_subcommand("approx", "Marker-mode block-diagonal assembly");
    std::vector<std::string> approx_blocks;
    std::string approx_out;
    double approx_a = 0.0;
    double approx_eps = 0.0;
    approx->add_option("--blocks", approx_blocks, "Block EnsembleFile paths")
        ->required()
        ->expected(-1);
    auto* a_opt = approx->add_option("--A", approx_a, "Marker amplitude");
    auto* eps_opt =
        approx->add_option("--eps", approx_eps, "Target inter-block error (picks A)");
    approx->add_option("--out", approx_out, "Output ensemble path")->required();

    DecisionFlags edm_flags;
    auto* edm = app.add_subcommand("edm", "Distance-matrix test on a real matrix");
    std::string edm_input;
    edm->add_option("matrix", edm_input, "MatrixFile path or -")->required();
    add_tolerance_flags(edm, edm_flags);

    DecisionFlags edm_exp_flags;
    auto* edm_exp = app.add_subcommand(
        "edm-exp", "Witness that the entrywise exponential of a distance matrix is PSD");
    std::string edm_exp_input;
    std::string edm_exp_out;
    edm_exp->add_option("matrix", edm_exp_input, "MatrixFile path or -")->required();
    edm_exp->add_option("--out", edm_exp_out, "Witness ensemble path");
    add_tolerance_flags(edm_exp, edm_exp_flags);
    edm_exp->add_option("--witness-out", edm_exp_flags.witness_out,
                        "Alias for --out");

    auto* gen = app.add_subcommand("gen", "Canonical instance generators");
    gen->require_subcommand(1);
    std::string gen_out;
    gen->add_option("--out", gen_out, "Output path (default stdout)");

    // Let --out appear after the generator name as well.
    auto* gen_equi = gen->add_subcommand("equiangular", "Constant off-diagonal Gram");
    gen_equi->fallthrough();
    Index equi_n = 3;
    double equi_r = 0.5;
    gen_equi->add_option("--n", equi_n, "Size")->required();
    gen_equi->add_option("--r", equi_r, "Off-diagonal value")->required();

    auto* gen_mub = gen->add_subcommand("mub", "Standard plus Fourier basis Gram");
    gen_mub->fallthrough();
    Index mub_n = 2;
    gen_mub->add_option("--n", mub_n, "Basis dimension (output is 2n x 2n)")->required();

    auto* gen_random = gen->add_subcommand("random", "Seeded random ensemble");
    gen_random->fallthrough();
    Index rand_n = 3;
    Index rand_modes = 2;
    std::uint64_t rand_seed = 0;
    double rand_scale = 1.0;
    gen_random->add_option("--n", rand_n, "Number of states")->required();
    gen_random->add_option("--modes", rand_modes, "Modes per state")->required();
    gen_random->add_option("--seed", rand_seed, "PRNG seed")->required();
    gen_random->add_option("--scale", rand_scale, "Amplitude bound")
        ->capture_default_str();

    auto* gen_edm = gen->add_subcommand("edm", "Distance matrix of seeded random points");
    gen_edm->fallthrough();
    Index gedm_n = 4;
    Index gedm_k = 2;
    std::uint64_t gedm_seed = 0;
    double gedm_scale = 1.0;
    gen_edm->add_option("--n", gedm_n, "Number of points")->required();
    gen_edm->add_option("--k", gedm_k, "Point dimension")->required();
    gen_edm->add_option("--seed", gedm_seed, "PRNG seed")->required();
    gen_edm->add_option("--scale", gedm_scale, "Coordinate bound")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check->parsed()) return run_check(check_input, check_flags, "check", "");
        if (closure->parsed())
            return run_closure(closure_input, closure_flags, permutation_out);
        if (gram->parsed()) return run_gram(gram_input, gram_out);
        if (reconstruct->parsed())
            return run_check(reconstruct_input, reconstruct_flags, "reconstruct",
                             reconstruct_out);
        if (approx->parsed()) {
            if ((a_opt->count() > 0) == (eps_opt->count() > 0)) {
                std::cerr << "error: exactly one of --A and --eps is required\n";
                return kExitUsage;
            }
            return run_approx(
                approx_blocks,
                a_opt->count() ? std::optional<double>(approx_a) : std::nullopt,
                eps_opt->count() ? std::optional<double>(approx_eps) : std::nullopt,
                approx_out);
        }
        if (edm->parsed()) return run_edm(edm_input, edm_flags);
        if (edm_exp->parsed()) return run_edm_exp(edm_exp_input, edm_exp_flags, edm_exp_out);
        if (gen->parsed()) {
            Json doc;
            if (gen_equi->parsed())
                doc = matrix_to_json(equiangular_gram(equi_n, equi_r).mat);
            if (gen_mub->parsed()) doc = matrix_to_json(mub_gram(mub_n).mat);
            if (gen_random->parsed())
                doc = ensemble_to_json(
                    random_ensemble({rand_seed, rand_n, rand_modes, rand_scale}));
            if (gen_edm->parsed())
                doc = matrix_to_json(
                    random_edm(gedm_seed, gedm_n, gedm_k, gedm_scale).d.cast<Complex>());
            write_text(gen_out, doc.dump(2) + "\n");
            return kExitTrue;
        }
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
