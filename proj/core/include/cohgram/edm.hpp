#pragma once

#include "cohgram/membership.hpp"
#include "cohgram/types.hpp"

namespace cohgram {

// Candidate Euclidean distance matrix in the signed convention used
// throughout this library: D_ij = -1/2 ||p_i - p_j||^2, so entries are
// nonpositive and the diagonal is zero.  This is NOT the squared-distance
// convention common elsewhere; convert at the I/O boundary if needed.
struct EdmCandidate {
    RealMatrix d;

    Index size() const { return d.rows(); }

    // Validates symmetry, zero diagonal and nonpositivity within a
    // scale-aware slack.
    static EdmCandidate checked(RealMatrix m);
    static EdmCandidate unchecked(RealMatrix m);
};

// Gower's double-centering test: true iff the smallest eigenvalue of
// (1 - uu^T/n) D (1 - uu^T/n) is >= -tol_eig.
bool is_edm(const EdmCandidate& d, const BranchSpec& branch = {});

// Point recovery via the square root of the centered matrix.  Column i of
// the result is p_i in R^n with -1/2 ||p_i - p_j||^2 = D_ij; trailing
// coordinates may be (near) zero and can be truncated by the caller.
// Throws NotEdmError when the centered matrix has an eigenvalue below
// -tol_eig.
RealMatrix edm_points(const EdmCandidate& d, const BranchSpec& branch = {});

// Necessary membership condition: [log|P_ij|] must be a Euclidean
// distance matrix.  False certifies P is not a coherent-state Gram
// matrix; true is inconclusive.  Throws ZeroEntryError when some
// |P_ij| <= tol_zero.
bool edm_necessary_check(const GramMatrix& p, const BranchSpec& branch = {});

// Fast decision for matrices with real positive entries, where the
// necessary condition above is also sufficient: P is a member iff
// log of P entrywise is a Euclidean distance matrix, and the recovered
// points serve directly as real amplitudes with zero phases.
// Throws NotRealPositiveError if some entry is negative, complex beyond
// tol_herm, or zero.
MembershipResult check_membership_real_positive(const GramMatrix& p,
                                                const BranchSpec& branch = {});

// Constructive certificate that the Hadamard exponential of a Euclidean
// distance matrix is PSD: returns an ensemble whose Gram matrix equals
// exp of D entrywise.
CoherentEnsemble hadamard_exp_edm_witness(const EdmCandidate& d,
                                          const BranchSpec& branch = {});

}  // namespace cohgram
