#include <doctest.h>

#include <sstream>

#include "cohgram/generators.hpp"
#include "cohgram/io.hpp"
#include "test_util.hpp"

using namespace cohgram;
using cohgram::testing::max_abs_diff;

TEST_CASE("matrix documents round-trip exactly") {
    const GramMatrix p = gram_of_ensemble(random_ensemble({3, 4, 2, 1.3}));
    const Json doc = matrix_to_json(p.mat);
    CHECK(doc["kind"] == "matrix");
    CHECK(doc["n"] == 4);
    const ComplexMatrix back = matrix_from_json(doc);
    CHECK(max_abs_diff(back, p.mat) == 0.0);

    // Through text as well: shortest round-trip float formatting.
    std::stringstream ss(doc.dump());
    const ComplexMatrix reparsed = matrix_from_json(parse_document(ss, "test"));
    CHECK(max_abs_diff(reparsed, p.mat) == 0.0);
}

TEST_CASE("ensemble documents round-trip exactly") {
    const CoherentEnsemble e = random_ensemble({11, 3, 3, 0.9});
    const Json doc = ensemble_to_json(e);
    CHECK(doc["kind"] == "ensemble");
    CHECK(doc["modes"] == 3);
    std::stringstream ss(doc.dump());
    const CoherentEnsemble back = ensemble_from_json(parse_document(ss, "test"));
    REQUIRE(back.size() == e.size());
    for (std::size_t i = 0; i < e.states.size(); ++i) {
        CHECK(back.states[i].phase == e.states[i].phase);
        CHECK((back.states[i].amplitude - e.states[i].amplitude).norm() == 0.0);
    }
}

TEST_CASE("malformed documents are rejected with FormatError") {
    auto parse = [](const std::string& text) {
        std::stringstream ss(text);
        return parse_document(ss, "test");
    };
    CHECK_THROWS_AS(parse("not json"), FormatError);
    CHECK_THROWS_AS(parse("[1,2,3]"), FormatError);
    CHECK_THROWS_AS(matrix_from_json(parse(R"({"kind":"ensemble"})")), FormatError);
    CHECK_THROWS_AS(matrix_from_json(parse(R"({"kind":"matrix","n":2,"entries":[]})")),
                    FormatError);
    CHECK_THROWS_AS(
        matrix_from_json(parse(
            R"({"kind":"matrix","n":1,"entries":[[[0.0]]]})")),
        FormatError);
    CHECK_THROWS_AS(
        ensemble_from_json(parse(
            R"({"kind":"ensemble","n":1,"modes":1,"states":[{"phase":0.0}]})")),
        FormatError);
    CHECK_THROWS_AS(
        real_matrix_from_json(parse(
            R"({"kind":"matrix","n":1,"entries":[[[0.0,1.0]]]})")),
        FormatError);
}

TEST_CASE("reports carry the audit fields") {
    const GramMatrix p = equiangular_gram(3, 0.5);
    BranchSpec branch;
    const MembershipResult res = check_membership(p, branch);
    const Json report = membership_report("check", res, branch);
    CHECK(report["verdict"] == "member");
    CHECK(report["command"] == "check");
    CHECK(report.contains("witness"));
    CHECK(report.contains("n_matrix"));
    CHECK(report["tolerances"].contains("tol_zero"));
    CHECK(report["branch_beta"].get<double>() == res.stats.beta_used);
    CHECK(report["candidates_examined"].get<std::uint64_t>() ==
          res.stats.candidates_examined);

    const MembershipResult miss =
        check_membership(GramMatrix::unchecked(ComplexMatrix::Identity(2, 2)), branch);
    const Json miss_report = membership_report("check", miss, branch);
    CHECK(miss_report["verdict"] == "not-member");
    CHECK(miss_report["reason"]["kind"] == "ZeroEntry");
    CHECK_FALSE(miss_report.contains("witness"));

    // Deterministic serialization: same result, same bytes.
    CHECK(dump_report(report) == dump_report(membership_report("check", res, branch)));
}
