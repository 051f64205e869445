#pragma once

#include <optional>
#include <vector>

#include "cohgram/membership.hpp"
#include "cohgram/types.hpp"

namespace cohgram {

// Triangle-inequality bounds on the amplitude distance ||beta - gamma|| of two
// coherent states given their overlap magnitudes with a common third
// state: lower = |sqrt(-2 log p_ag) - sqrt(-2 log p_ab)|,
//        upper =  sqrt(-2 log p_ag) + sqrt(-2 log p_ab).
struct DistanceBounds {
    double lower = 0.0;
    double upper = 0.0;
};

DistanceBounds overlap_distance_bounds(double p_ab, double p_ag);

// Zero/nonzero structure of a Gram matrix.
struct ZeroPattern {
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> nonzero;

    Index size() const { return nonzero.rows(); }
};

ZeroPattern zero_pattern(const GramMatrix& p, double tol_zero);

// Triple violating the transitivity a consistent pattern must obey:
// P_ik != 0 and P_kj != 0 but P_ij = 0.
struct ZeroPatternViolation {
    Index i = -1;
    Index j = -1;
    Index k = -1;
};

// Connected components of the nonzero graph.  Components are ordered by
// their smallest member and indices inside a component keep their
// original order.  `violation` is set (and `blocks` left empty) when some
// component contains a zero pair.  `marginal` warns that an entry sits
// within a factor of 10 of tol_zero, where the zero/nonzero dichotomy is
// numerically fragile.
struct BlockPartition {
    std::vector<std::vector<Index>> blocks;
    std::optional<ZeroPatternViolation> violation;
    bool marginal = false;
};

BlockPartition zero_pattern_blocks(const GramMatrix& p, double tol_zero);

struct ClosureBlock {
    std::vector<Index> indices;  // original indices, ascending
    MembershipResult membership;
};

struct ClosureReason {
    enum class Kind { InconsistentZeroPattern, BlockNotMember, NotPsdGram, BadDiagonal };
    Kind kind = Kind::InconsistentZeroPattern;
    ZeroPatternViolation triple;
    std::size_t block_index = 0;
    std::optional<MembershipResult> block_result;
};

const char* to_string(ClosureReason::Kind kind);

struct ClosureResult {
    Verdict verdict = Verdict::NotMember;
    Permutation permutation;  // rearrange(P, permutation) is block-diagonal
    std::vector<ClosureBlock> blocks;
    std::optional<ClosureReason> reason;
    bool marginal_pattern = false;
};

struct ClosureOptions {
    enum class Centering { FirstState, Mean };
    Centering centering = Centering::FirstState;
    std::uint64_t max_candidates = 1000000;
};

// Membership in the closure of the coherent-state Gram matrices: true iff
// the zero pattern splits P into blocks with all-nonzero entries and
// every block passes check_membership.  Per-block budget errors
// propagate.
ClosureResult check_closure_membership(const GramMatrix& p, const BranchSpec& branch = {},
                                       const ClosureOptions& opts = {});

// Embeds per-block ensembles into a common mode space with one extra
// marker mode per block carrying amplitude A, so intra-block overlaps are
// preserved exactly while inter-block overlap magnitudes drop to at most
// exp(-A^2).  Output mode count is (sum of block modes) + number of
// blocks.
CoherentEnsemble approximate_block_diagonal(const std::vector<CoherentEnsemble>& blocks,
                                            double marker_amplitude);

// Smallest A with exp(-A^2) <= eps, i.e. sqrt(log(1/eps)).
double displacement_for_epsilon(double eps);

}  // namespace cohgram
