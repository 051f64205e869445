#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cohgram/closure.hpp"
#include "cohgram/membership.hpp"
#include "cohgram/types.hpp"

namespace cohgram {

using Json = nlohmann::json;

// Documents use {"kind": "matrix" | "ensemble", ...} with every complex
// number encoded as a two-element [re, im] array of finite doubles.
// Serialization is value-preserving (floats are written in the shortest
// form that parses back to the same double) and byte-deterministic.

Json parse_document(std::istream& in, const std::string& origin);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& doc);

// Strict variant for distance matrices: imaginary parts must vanish.
RealMatrix real_matrix_from_json(const Json& doc, double tol_imag = 1e-10);

Json ensemble_to_json(const CoherentEnsemble& e);
CoherentEnsemble ensemble_from_json(const Json& doc);

Json tolerances_to_json(const BranchSpec& branch);
Json reason_to_json(const NotMemberReason& reason);
Json reason_to_json(const ClosureReason& reason);

// stdout report for `check` / `reconstruct`.
Json membership_report(const std::string& command, const MembershipResult& result,
                       const BranchSpec& branch);

// stdout report for `closure`.
Json closure_report(const std::string& command, const ClosureResult& result,
                    const BranchSpec& branch);

// Report for commands that only carry a verdict (edm, edm-exp, approx, ...).
Json plain_report(const std::string& command, const std::string& verdict,
                  const BranchSpec& branch);

std::string dump_report(const Json& report);

}  // namespace cohgram
