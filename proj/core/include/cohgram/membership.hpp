#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cohgram/hadamard.hpp"
#include "cohgram/types.hpp"

namespace cohgram {

// Integer matrix N of 2pi winding numbers reconciling the entrywise log of
// a Gram matrix with phase differences.  Zero diagonal; off-diagonal
// entries live in the interval returned by n_entry_range.
using IntegerPhaseMatrix = Eigen::MatrixXi;

// Minimum of |P_ij| over all pairs, diagonal included.
double delta_min_abs(const GramMatrix& p);

// Closed integer interval {lo..hi}; never empty for valid inputs.
struct IntegerRange {
    long long lo = 0;
    long long hi = 0;

    long long count() const { return hi - lo + 1; }
    bool contains(long long v) const { return v >= lo && v <= hi; }
};

// Integers in the half-open interval
//   [beta/2pi - |log delta|/pi - 1, beta/2pi + |log delta|/pi + 2).
// Boundaries within 1e-9 of an integer are resolved as that integer.
// Throws InvalidArgument for delta <= 0.
IntegerRange n_entry_range(double beta, double delta);

// Lazy stream of valid integer phase matrices in lexicographic order over
// the strictly-upper-triangular entries (row-major).  The lower triangle
// is derived from the Hermiticity constraint
//   N_ji = round((Im L_ij + Im L_ji) / 2pi) - N_ij,
// and assignments whose derived entry falls outside the range are
// skipped.  If the rounding above misses an integer by more than 1e-6 for
// some pair, no candidate exists at all.
class NCandidateStream {
public:
    NCandidateStream(const BranchedLogMatrix& log_p, double delta);

    // Next candidate, or nullopt when exhausted.
    std::optional<IntegerPhaseMatrix> next();

    // (range size)^(n(n-1)/2), before Hermiticity filtering.
    double theoretical_count() const { return theoretical_; }

    const IntegerRange& range() const { return range_; }

private:
    Index n_ = 0;
    IntegerRange range_;
    std::vector<std::pair<Index, Index>> pairs_;
    std::vector<long long> t_;    // Hermiticity coupling integer per pair
    std::vector<long long> cur_;  // odometer over upper-triangular entries
    bool started_ = false;
    bool exhausted_ = false;
    double theoretical_ = 1.0;

    bool advance();
    bool derived_in_range() const;
    IntegerPhaseMatrix materialize() const;
};

// Collects the stream into a vector; throws BudgetExceededError when more
// than `limit` candidates exist.
std::vector<IntegerPhaseMatrix> enumerate_n_candidates(const BranchedLogMatrix& log_p,
                                                       double delta,
                                                       std::uint64_t limit = 1000000);

// Centering vectors s with <u, s> = 1.  e_1 matches the explicit
// reconstruction algorithm; u/n yields a rank-(n-1) witness.
ComplexVector centering_e1(Index n);
ComplexVector centering_mean(Index n);

// True iff the smallest eigenvalue of (1 - u s^dagger) Q (1 - s u^dagger)
// is >= -tol_eig; the projected matrix is Hermitized before the
// eigensolve.  Q must be Hermitian with zero diagonal within tolerance
// and s must satisfy <u, s> = 1 within 1e-12.
bool q_psd_projected(const ComplexMatrix& q, const ComplexVector& s,
                     const BranchSpec& branch = {});

// x := 1/2 (s^dagger Q s) u - Q s.  When the projected matrix is PSD,
// Q + x u^dagger + u x^dagger is PSD as well.
ComplexVector x_from_s(const ComplexMatrix& q, const ComplexVector& s);

enum class Verdict { Member, NotMember };

struct NotMemberReason {
    enum class Kind { ZeroEntry, NotHermitian, BadDiagonal, NotPsdGram, Exhausted };
    Kind kind = Kind::Exhausted;
    Index i = -1;                   // ZeroEntry location
    Index j = -1;
    std::uint64_t candidates = 0;   // Exhausted: PSD tests performed
};

const char* to_string(NotMemberReason::Kind kind);

struct MembershipWitness {
    CoherentEnsemble ensemble;
    IntegerPhaseMatrix n_matrix;
    ComplexVector centering;
};

// Search metadata carried by every decision, Member or not.
struct SearchStats {
    double candidates_theoretical = 0.0;  // (range size)^(n(n-1)/2)
    std::uint64_t candidates_examined = 0;
    bool marginal = false;  // decisive |lambda_min| < 10 tol_eig
    double beta_used = -kPi;
    double lambda_min = 0.0;  // decisive projected eigenvalue
};

struct MembershipResult {
    Verdict verdict = Verdict::NotMember;
    std::optional<MembershipWitness> witness;
    std::optional<NotMemberReason> reason;
    SearchStats stats;
};

// Recover an ensemble realizing P for a given winding matrix.  Builds
//   X := (1 - u s^dagger) (log P - 2pi i N) (1 - s u^dagger),
// takes amplitudes from the columns of the Hermitian square root of X
// (eigenvalues in [-tol_eig, 0] clamped; below that throws NotPsdError)
// and phases phi_i = -Im log P_i1 when s = e_1, otherwise phi_i = Im x_i
// with x = x_from_s.
CoherentEnsemble reconstruct_ensemble(const GramMatrix& p, const IntegerPhaseMatrix& n_matrix,
                                      const BranchSpec& branch, const ComplexVector& s);

// Decision procedure for P in G(C).  Scans winding matrices in the
// canonical lexicographic order and reports the first feasible one
// together with its reconstructed ensemble.  The scan prunes subtrees
// with necessary conditions that can never reject a feasible candidate,
// so the reported N is exactly the one the plain scan would find.
//
// Throws BudgetExceededError when the theoretical candidate count exceeds
// max_candidates (the decision is not attempted).  If an entry argument
// sits within 1e-9 of the branch cut, the branch start is shifted by
// +1e-3 (up to three times) before deciding; stats.beta_used records the
// branch actually used.
MembershipResult check_membership(const GramMatrix& p, const BranchSpec& branch,
                                  const ComplexVector& s, std::uint64_t max_candidates = 1000000);
MembershipResult check_membership(const GramMatrix& p, const BranchSpec& branch = {},
                                  std::uint64_t max_candidates = 1000000);

// Small-angle approximation: amplitudes are the columns of the Hermitian
// square root of P, phases zero.  The resulting Gram matrix matches P up
// to O(|P_ij - 1|^2) entrywise; exact only when all entries are 1.
CoherentEnsemble small_angle_embedding(const GramMatrix& p, const BranchSpec& branch = {});

}  // namespace cohgram
