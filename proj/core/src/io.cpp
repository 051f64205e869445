#include "cohgram/io.hpp"

#include <cmath>
#include <istream>

namespace cohgram {

namespace {

double finite_number(const Json& v, const char* what) {
    if (!v.is_number()) throw FormatError(std::string(what) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw FormatError(std::string(what) + " must be finite");
    return x;
}

Complex complex_from_json(const Json& v) {
    if (!v.is_array() || v.size() != 2)
        throw FormatError("complex values must be [re, im] pairs");
    return Complex{finite_number(v[0], "re"), finite_number(v[1], "im")};
}

Json complex_to_json(const Complex& z) {
    return Json::array({z.real(), z.imag()});
}

Index positive_count(const Json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        throw FormatError(std::string("missing integer field \"") + key + "\"");
    const auto v = doc[key].get<std::int64_t>();
    if (v < 1) throw FormatError(std::string("\"") + key + "\" must be positive");
    return static_cast<Index>(v);
}

}  // namespace

Json parse_document(std::istream& in, const std::string& origin) {
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw FormatError(origin + ": document must be a JSON object");
    return doc;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"kind", "matrix"}, {"n", m.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const Json& doc) {
    if (!doc.contains("kind") || doc["kind"] != "matrix")
        throw FormatError("expected a document with kind \"matrix\"");
    const Index n = positive_count(doc, "n");
    if (!doc.contains("entries") || !doc["entries"].is_array() ||
        static_cast<Index>(doc["entries"].size()) != n)
        throw FormatError("\"entries\" must be an array of n rows");
    ComplexMatrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        const Json& row = doc["entries"][static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n)
            throw FormatError("each row must hold n complex values");
        for (Index j = 0; j < n; ++j)
            m(i, j) = complex_from_json(row[static_cast<std::size_t>(j)]);
    }
    return m;
}

RealMatrix real_matrix_from_json(const Json& doc, double tol_imag) {
    const ComplexMatrix m = matrix_from_json(doc);
    RealMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (std::abs(m(i, j).imag()) > tol_imag)
                throw FormatError("matrix must be real for this command");
            out(i, j) = m(i, j).real();
        }
    }
    return out;
}

Json ensemble_to_json(const CoherentEnsemble& e) {
    Json states = Json::array();
    for (const auto& s : e.states) {
        Json amplitude = Json::array();
        for (Index k = 0; k < s.amplitude.size(); ++k)
            amplitude.push_back(complex_to_json(s.amplitude(k)));
        states.push_back(Json{{"phase", s.phase}, {"amplitude", std::move(amplitude)}});
    }
    return Json{{"kind", "ensemble"},
                {"n", e.size()},
                {"modes", e.modes()},
                {"states", std::move(states)}};
}

CoherentEnsemble ensemble_from_json(const Json& doc) {
    if (!doc.contains("kind") || doc["kind"] != "ensemble")
        throw FormatError("expected a document with kind \"ensemble\"");
    const Index n = positive_count(doc, "n");
    const Index modes = positive_count(doc, "modes");
    if (!doc.contains("states") || !doc["states"].is_array() ||
        static_cast<Index>(doc["states"].size()) != n)
        throw FormatError("\"states\" must be an array of n records");
    CoherentEnsemble e;
    e.states.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const Json& rec = doc["states"][static_cast<std::size_t>(i)];
        if (!rec.is_object() || !rec.contains("phase") || !rec.contains("amplitude"))
            throw FormatError("each state needs \"phase\" and \"amplitude\"");
        auto& s = e.states[static_cast<std::size_t>(i)];
        s.phase = finite_number(rec["phase"], "phase");
        const Json& amp = rec["amplitude"];
        if (!amp.is_array() || static_cast<Index>(amp.size()) != modes)
            throw FormatError("every amplitude must have \"modes\" components");
        s.amplitude = ComplexVector(modes);
        for (Index k = 0; k < modes; ++k)
            s.amplitude(k) = complex_from_json(amp[static_cast<std::size_t>(k)]);
    }
    e.validate();
    return e;
}

Json tolerances_to_json(const BranchSpec& branch) {
    Json t{{"tol_zero", branch.tol_zero}, {"tol_herm", branch.tol_herm}};
    if (branch.tol_eig)
        t["tol_eig"] = *branch.tol_eig;
    else
        t["tol_eig"] = nullptr;  // scale-aware default
    return t;
}

Json reason_to_json(const NotMemberReason& reason) {
    Json j{{"kind", to_string(reason.kind)}};
    if (reason.kind == NotMemberReason::Kind::ZeroEntry)
        j["entry"] = Json::array({reason.i, reason.j});
    if (reason.kind == NotMemberReason::Kind::Exhausted)
        j["candidates"] = reason.candidates;
    return j;
}

Json reason_to_json(const ClosureReason& reason) {
    Json j{{"kind", to_string(reason.kind)}};
    if (reason.kind == ClosureReason::Kind::InconsistentZeroPattern)
        j["triple"] = Json::array({reason.triple.i, reason.triple.j, reason.triple.k});
    if (reason.kind == ClosureReason::Kind::BlockNotMember) {
        j["block_index"] = reason.block_index;
        if (reason.block_result && reason.block_result->reason)
            j["inner"] = reason_to_json(*reason.block_result->reason);
    }
    return j;
}

Json membership_report(const std::string& command, const MembershipResult& result,
                       const BranchSpec& branch) {
    Json report{{"command", command},
                {"verdict", result.verdict == Verdict::Member ? "member" : "not-member"},
                {"candidates_examined", result.stats.candidates_examined},
                {"candidates_theoretical", result.stats.candidates_theoretical},
                {"marginal", result.stats.marginal},
                {"tolerances", tolerances_to_json(branch)},
                {"branch_beta", result.stats.beta_used}};
    if (result.witness) {
        report["witness"] = ensemble_to_json(result.witness->ensemble);
        Json n_rows = Json::array();
        for (Index i = 0; i < result.witness->n_matrix.rows(); ++i) {
            Json row = Json::array();
            for (Index j = 0; j < result.witness->n_matrix.cols(); ++j)
                row.push_back(result.witness->n_matrix(i, j));
            n_rows.push_back(std::move(row));
        }
        report["n_matrix"] = std::move(n_rows);
    }
    if (result.reason) report["reason"] = reason_to_json(*result.reason);
    return report;
}

Json closure_report(const std::string& command, const ClosureResult& result,
                    const BranchSpec& branch) {
    std::uint64_t examined = 0;
    for (const auto& block : result.blocks)
        examined += block.membership.stats.candidates_examined;
    Json report{{"command", command},
                {"verdict", result.verdict == Verdict::Member ? "member" : "not-member"},
                {"candidates_examined", examined},
                {"marginal", result.marginal_pattern},
                {"tolerances", tolerances_to_json(branch)},
                {"branch_beta", branch.beta}};
    if (result.verdict == Verdict::Member) {
        Json blocks = Json::array();
        for (const auto& block : result.blocks)
            blocks.push_back(Json{{"indices", block.indices}});
        report["blocks"] = std::move(blocks);
        report["permutation"] = result.permutation;
    }
    if (result.reason) report["reason"] = reason_to_json(*result.reason);
    return report;
}

Json plain_report(const std::string& command, const std::string& verdict,
                  const BranchSpec& branch) {
    return Json{{"command", command},
                {"verdict", verdict},
                {"candidates_examined", 0},
                {"marginal", false},
                {"tolerances", tolerances_to_json(branch)},
                {"branch_beta", branch.beta}};
}

std::string dump_report(const Json& report) {
    return report.dump(2) + "\n";
}

}  // namespace cohgram
