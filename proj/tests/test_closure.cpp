#include <doctest.h>

#include <cmath>

#include "cohgram/closure.hpp"
#include "cohgram/generators.hpp"
#include "test_util.hpp"

using namespace cohgram;
using cohgram::testing::max_abs_diff;
using cohgram::testing::state;

TEST_CASE("overlap_distance_bounds") {
    SUBCASE("coincident amplitudes give a degenerate interval") {
        const DistanceBounds b = overlap_distance_bounds(1.0, 1.0);
        CHECK(b.lower == 0.0);
        CHECK(b.upper == 0.0);
    }
    SUBCASE("one unit-distance overlap collapses both bounds") {
        const DistanceBounds b = overlap_distance_bounds(1.0, std::exp(-0.5));
        CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("random coherent triples respect the bounds") {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const CoherentEnsemble e = random_ensemble({seed, 3, 3, 1.5});
            const auto& a = e.states[0];
            const auto& b = e.states[1];
            const auto& g = e.states[2];
            const double p_ab = std::abs(coherent_overlap(a, b));
            const double p_ag = std::abs(coherent_overlap(a, g));
            const DistanceBounds bounds = overlap_distance_bounds(p_ab, p_ag);
            const double dist = (b.amplitude - g.amplitude).norm();
            CHECK(dist >= bounds.lower - 1e-9);
            CHECK(dist <= bounds.upper + 1e-9);
        }
    }
    SUBCASE("out-of-range overlaps are rejected") {
        CHECK_THROWS_AS(overlap_distance_bounds(0.0, 0.5), InvalidArgument);
        CHECK_THROWS_AS(overlap_distance_bounds(0.5, 1.5), InvalidArgument);
    }
}

TEST_CASE("zero_pattern_blocks") {
    SUBCASE("identity splits into singletons") {
        const BlockPartition part = zero_pattern_blocks(
            GramMatrix::unchecked(ComplexMatrix::Identity(4, 4)), 1e-10);
        CHECK_FALSE(part.violation.has_value());
        REQUIRE(part.blocks.size() == 4);
        for (std::size_t b = 0; b < 4; ++b) {
            CHECK(part.blocks[b].size() == 1);
            CHECK(part.blocks[b][0] == static_cast<Index>(b));
        }
    }
    SUBCASE("a chain with a missing edge is inconsistent") {
        ComplexMatrix m = ComplexMatrix::Identity(3, 3);
        m(0, 1) = Complex{0.3, 0.1};
        m(1, 0) = std::conj(m(0, 1));
        m(1, 2) = Complex{0.2, -0.4};
        m(2, 1) = std::conj(m(1, 2));
        const BlockPartition part =
            zero_pattern_blocks(GramMatrix::unchecked(m), 1e-10);
        REQUIRE(part.violation.has_value());
        const auto& v = *part.violation;
        CHECK(std::abs(m(v.i, v.k)) > 1e-10);
        CHECK(std::abs(m(v.k, v.j)) > 1e-10);
        CHECK(std::abs(m(v.i, v.j)) <= 1e-10);
    }
    SUBCASE("block-diagonal structure survives a permutation") {
        // Blocks {0,2} and {1,3,4} after interleaving.
        ComplexMatrix m = ComplexMatrix::Identity(5, 5);
        auto link = [&](Index a, Index b, Complex z) {
            m(a, b) = z;
            m(b, a) = std::conj(z);
        };
        link(0, 2, Complex{0.4, 0.0});
        link(1, 3, Complex{0.5, 0.1});
        link(1, 4, Complex{0.3, -0.2});
        link(3, 4, Complex{0.6, 0.0});
        const BlockPartition part =
            zero_pattern_blocks(GramMatrix::unchecked(m), 1e-10);
        CHECK_FALSE(part.violation.has_value());
        REQUIRE(part.blocks.size() == 2);
        CHECK(part.blocks[0] == std::vector<Index>{0, 2});
        CHECK(part.blocks[1] == std::vector<Index>{1, 3, 4});
    }
}

TEST_CASE("check_closure_membership") {
    SUBCASE("identity is in the closure but not in the set") {
        for (Index n = 2; n <= 5; ++n) {
            const GramMatrix p = GramMatrix::unchecked(ComplexMatrix::Identity(n, n));
            const ClosureResult closure = check_closure_membership(p);
            CHECK(closure.verdict == Verdict::Member);
            CHECK(closure.blocks.size() == static_cast<std::size_t>(n));
            const MembershipResult direct = check_membership(p);
            CHECK(direct.verdict == Verdict::NotMember);
            CHECK(direct.reason->kind == NotMemberReason::Kind::ZeroEntry);
        }
    }
    SUBCASE("MUB Gram matrices are rejected with a violating triple") {
        for (Index n : {2, 3}) {
            const ClosureResult res = check_closure_membership(mub_gram(n));
            CHECK(res.verdict == Verdict::NotMember);
            REQUIRE(res.reason.has_value());
            CHECK(res.reason->kind == ClosureReason::Kind::InconsistentZeroPattern);
        }
    }
    SUBCASE("permuted block-diagonal assemblies are members") {
        const CoherentEnsemble e1 = random_ensemble({5, 2, 2, 1.0});
        const CoherentEnsemble e2 = random_ensemble({6, 3, 2, 1.0});
        const GramMatrix g1 = gram_of_ensemble(e1);
        const GramMatrix g2 = gram_of_ensemble(e2);
        ComplexMatrix block = ComplexMatrix::Zero(5, 5);
        block.topLeftCorner(2, 2) = g1.mat;
        block.bottomRightCorner(3, 3) = g2.mat;
        const Permutation pi{3, 0, 4, 1, 2};
        const GramMatrix shuffled = rearrange(GramMatrix::unchecked(block), pi);

        const ClosureResult res = check_closure_membership(shuffled);
        REQUIRE(res.verdict == Verdict::Member);
        REQUIRE(res.blocks.size() == 2);
        std::vector<std::size_t> sizes{res.blocks[0].indices.size(),
                                       res.blocks[1].indices.size()};
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<std::size_t>{2, 3});

        // Applying the reported permutation yields a block-diagonal matrix
        // whose blocks carry the member witnesses.
        const GramMatrix rebuilt = rearrange(shuffled, res.permutation);
        Index offset = 0;
        for (const auto& blk : res.blocks) {
            const Index m = static_cast<Index>(blk.indices.size());
            const ComplexMatrix sub = rebuilt.mat.block(offset, offset, m, m);
            CHECK(max_abs_diff(gram_of_ensemble(blk.membership.witness->ensemble).mat,
                               sub) < 1e-8);
            offset += m;
        }
        // Off-block entries vanish after the rearrangement.
        offset = 0;
        for (const auto& blk : res.blocks) {
            const Index m = static_cast<Index>(blk.indices.size());
            for (Index i = offset; i < offset + m; ++i)
                for (Index j = 0; j < 5; ++j)
                    if (j < offset || j >= offset + m)
                        CHECK(std::abs(rebuilt.mat(i, j)) <= 1e-10);
            offset += m;
        }
    }
    SUBCASE("set membership implies closure membership") {
        for (std::uint64_t seed = 60; seed < 66; ++seed) {
            const GramMatrix p = gram_of_ensemble(random_ensemble({seed, 3, 2, 1.0}));
            REQUIRE(check_membership(p, {}, 1ull << 40).verdict == Verdict::Member);
            ClosureOptions opts;
            opts.max_candidates = 1ull << 40;
            CHECK(check_closure_membership(p, {}, opts).verdict == Verdict::Member);
        }
    }
    SUBCASE("the verdict is invariant under rearrangement") {
        const GramMatrix p = gram_of_ensemble(random_ensemble({70, 4, 2, 1.0}));
        ClosureOptions opts;
        opts.max_candidates = 1ull << 40;
        const ClosureResult base = check_closure_membership(p, {}, opts);
        SplitMix64 rng(71);
        for (int it = 0; it < 5; ++it) {
            Permutation pi{0, 1, 2, 3};
            for (std::size_t k = pi.size(); k > 1; --k)
                std::swap(pi[k - 1], pi[rng.next() % k]);
            CHECK(check_closure_membership(rearrange(p, pi), {}, opts).verdict ==
                  base.verdict);
        }
    }
    SUBCASE("structural defects short-circuit") {
        ComplexMatrix indef(2, 2);
        indef << Complex{1, 0}, Complex{2, 0}, Complex{2, 0}, Complex{1, 0};
        CHECK(check_closure_membership(GramMatrix::unchecked(indef)).reason->kind ==
              ClosureReason::Kind::NotPsdGram);
        ComplexMatrix diag(2, 2);
        diag << Complex{2, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0};
        CHECK(check_closure_membership(GramMatrix::unchecked(diag)).reason->kind ==
              ClosureReason::Kind::BadDiagonal);
    }
    SUBCASE("per-block budget errors propagate") {
        // Entries just above tol_zero blow up the winding range; a 5x5
        // block then exceeds the default candidate budget.
        const GramMatrix p = equiangular_gram(5, 1e-9);
        CHECK_THROWS_AS(check_closure_membership(p), BudgetExceededError);
    }
    SUBCASE("a block failing membership is reported") {
        ComplexMatrix m = ComplexMatrix::Identity(4, 4);
        m.topLeftCorner(3, 3) = equiangular_gram(3, -0.5).mat;
        const ClosureResult res =
            check_closure_membership(GramMatrix::unchecked(m));
        CHECK(res.verdict == Verdict::NotMember);
        REQUIRE(res.reason.has_value());
        CHECK(res.reason->kind == ClosureReason::Kind::BlockNotMember);
        CHECK(res.reason->block_index == 0);
        REQUIRE(res.reason->block_result.has_value());
        CHECK(res.reason->block_result->reason->kind ==
              NotMemberReason::Kind::Exhausted);
    }
}

TEST_CASE("approximate_block_diagonal") {
    SUBCASE("two vacuum blocks at A=2 overlap at e^-4") {
        CoherentEnsemble vac;
        vac.states.push_back(state(0.0, {Complex{0.0, 0.0}}));
        const CoherentEnsemble joined = approximate_block_diagonal({vac, vac}, 2.0);
        const GramMatrix g = gram_of_ensemble(joined);
        CHECK(std::abs(g.mat(0, 1)) == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
    }
    SUBCASE("A=0 degenerates to the raw padded overlap") {
        CoherentEnsemble vac;
        vac.states.push_back(state(0.0, {Complex{0.0, 0.0}}));
        const CoherentEnsemble joined = approximate_block_diagonal({vac, vac}, 0.0);
        const GramMatrix g = gram_of_ensemble(joined);
        CHECK(std::abs(g.mat(0, 1) - Complex{1.0, 0.0}) < 1e-14);
    }
    SUBCASE("random blocks approach the block-diagonal target") {
        const CoherentEnsemble b1 = random_ensemble({81, 2, 2, 0.8});
        const CoherentEnsemble b2 = random_ensemble({82, 3, 1, 0.8});
        ComplexMatrix target = ComplexMatrix::Zero(5, 5);
        target.topLeftCorner(2, 2) = gram_of_ensemble(b1).mat;
        target.bottomRightCorner(3, 3) = gram_of_ensemble(b2).mat;

        const CoherentEnsemble joined = approximate_block_diagonal({b1, b2}, 4.0);
        CHECK(joined.modes() == b1.modes() + b2.modes() + 2);
        const GramMatrix g = gram_of_ensemble(joined);
        CHECK(max_abs_diff(g.mat, target) <= std::exp(-16.0));
    }
    SUBCASE("intra-block overlaps are preserved exactly") {
        const CoherentEnsemble b1 = random_ensemble({83, 3, 2, 1.0});
        const CoherentEnsemble b2 = random_ensemble({84, 2, 3, 1.0});
        const CoherentEnsemble joined = approximate_block_diagonal({b1, b2}, 1.5);
        const GramMatrix g = gram_of_ensemble(joined);
        CHECK(max_abs_diff(g.mat.topLeftCorner(3, 3), gram_of_ensemble(b1).mat) < 1e-15);
        CHECK(max_abs_diff(g.mat.bottomRightCorner(2, 2), gram_of_ensemble(b2).mat) <
              1e-15);
    }
    SUBCASE("empty block lists are rejected") {
        CHECK_THROWS_AS(approximate_block_diagonal({}, 1.0), InvalidArgument);
    }
}

TEST_CASE("displacement_for_epsilon inverts the marker bound") {
    CHECK(displacement_for_epsilon(std::exp(-4.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(displacement_for_epsilon(std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(displacement_for_epsilon(0.999999) < 1.1e-3);
    CHECK_THROWS_AS(displacement_for_epsilon(0.0), InvalidArgument);
    CHECK_THROWS_AS(displacement_for_epsilon(1.0), InvalidArgument);
}
