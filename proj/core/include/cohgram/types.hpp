#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "cohgram/errors.hpp"

namespace cohgram {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Permutation = std::vector<Index>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Branch [beta, beta+2pi) of the complex logarithm plus the numeric
// tolerances shared across the toolkit.  tol_eig unset means the
// scale-aware default 1e-9 * n * max|entry| of the matrix under test.
struct BranchSpec {
    double beta = -kPi;
    std::optional<double> tol_eig;
    double tol_zero = 1e-10;
    double tol_herm = 1e-10;

    double effective_tol_eig(const ComplexMatrix& m) const;
    double effective_tol_eig(const RealMatrix& m) const;

    void validate() const;
};

// Hermitian unit-diagonal matrix under test.  `checked` validates
// Hermiticity, the diagonal and positive semidefiniteness within the given
// tolerances; `unchecked` adopts any square matrix so the decision
// procedures can classify invalid inputs instead of refusing them.
struct GramMatrix {
    ComplexMatrix mat;

    Index size() const { return mat.rows(); }

    static GramMatrix checked(ComplexMatrix m, const BranchSpec& branch = {});
    static GramMatrix unchecked(ComplexMatrix m);
};

// One multi-mode coherent state: global phase (radians) and complex
// amplitude vector, one component per mode.
struct CoherentState {
    double phase = 0.0;
    ComplexVector amplitude;
};

struct CoherentEnsemble {
    std::vector<CoherentState> states;

    Index size() const { return static_cast<Index>(states.size()); }
    Index modes() const { return states.empty() ? 0 : states.front().amplitude.size(); }

    void validate() const;
};

// --- shared linear-algebra helpers -----------------------------------------

// All-ones vector u.
ComplexVector ones_vector(Index n);

// (m + m^dagger) / 2.
ComplexMatrix hermitize(const ComplexMatrix& m);

// Smallest eigenvalue of the Hermitized matrix.
double min_eigenvalue(const ComplexMatrix& m);

// max_ij |m_ij - conj(m_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

// Hermitian square root with eigenvalues in [-tol_eig, 0] clamped to zero.
// Throws NotPsdError below -tol_eig.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol_eig);
RealMatrix psd_sqrt(const RealMatrix& m, double tol_eig);

// --- operations -------------------------------------------------------------

// Overlap <a, b> of two multi-mode coherent states,
//
//   exp(-1/2 (||alpha_a||^2 + ||alpha_b||^2 - 2 <alpha_a, alpha_b>)
//       + i (phi_b - phi_a)).
//
// The complex inner product <.,.> is conjugate-linear in the FIRST
// argument throughout this library (Eigen's dot follows the same
// convention).  Libraries differ on this; callers porting data from
// physics codes should double-check.
Complex coherent_overlap(const CoherentState& a, const CoherentState& b);

// Gram matrix of an ensemble.  Hermitian by construction and the diagonal
// is pinned to exactly 1 (the overlap of a state with itself is 1
// analytically, so this costs nothing and avoids tolerance erosion
// downstream).
GramMatrix gram_of_ensemble(const CoherentEnsemble& e);

// Shift the ensemble so the first state becomes the vacuum:
// alpha_i' = alpha_i - alpha_1, phi_i' = phi_i - Im<alpha_i, alpha_1>.
// Preserves the Gram matrix entrywise.
CoherentEnsemble normalize_first_to_vacuum(const CoherentEnsemble& e);

// Conjugation by the permutation matrix of pi: entry (i,j) of the result
// is P(pi^-1(i), pi^-1(j)).  pi maps old index -> new index, 0-based.
GramMatrix rearrange(const GramMatrix& p, const Permutation& pi);

// Throws InvalidArgument unless pi is a bijection on {0..n-1}.
void validate_permutation(const Permutation& pi, Index n);
Permutation invert_permutation(const Permutation& pi);

}  // namespace cohgram
