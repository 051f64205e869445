#pragma once

#include "cohgram/types.hpp"

namespace cohgram {

// Entrywise logarithm of a matrix with every imaginary part mapped into
// the branch [beta, beta+2pi).
struct BranchedLogMatrix {
    ComplexMatrix matrix;
    BranchSpec branch;
};

// Argument of z shifted into [beta, beta+2pi).  Arguments within 1e-12 of
// the cut are mapped to the beta end so results are reproducible.
double arg_on_branch(Complex z, double beta);

// log_ij = log|m_ij| + i arg_beta(m_ij).  Throws ZeroEntryError when some
// |m_ij| <= tol_zero; such a matrix cannot be an overlap matrix of
// coherent states, whose inner products are never zero.
BranchedLogMatrix hadamard_log(const ComplexMatrix& m, const BranchSpec& branch = {});

// Entrywise exponential; left-inverse of hadamard_log on its range.
ComplexMatrix hadamard_exp(const ComplexMatrix& m);

}  // namespace cohgram
