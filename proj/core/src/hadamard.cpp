#include "cohgram/hadamard.hpp"

#include <cmath>

namespace cohgram {

namespace {
constexpr double kArgCutTol = 1e-12;
}

double arg_on_branch(Complex z, double beta) {
    // atan2 first, then shift by whole turns; subtracting the shift from
    // the raw angle avoids cancellation near the cut.
    const double raw = std::atan2(z.imag(), z.real());
    double shifted = raw - kTwoPi * std::floor((raw - beta) / kTwoPi);
    if (shifted < beta) shifted += kTwoPi;
    if (shifted >= beta + kTwoPi) shifted -= kTwoPi;
    // Half-open interval: values at the top of the window belong to beta.
    if (std::abs(shifted - (beta + kTwoPi)) <= kArgCutTol) shifted = beta;
    if (std::abs(shifted - beta) <= kArgCutTol) shifted = beta;
    return shifted;
}

BranchedLogMatrix hadamard_log(const ComplexMatrix& m, const BranchSpec& branch) {
    branch.validate();
    ComplexMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            const double mag = std::abs(m(i, j));
            if (mag <= branch.tol_zero) throw ZeroEntryError(i, j);
            out(i, j) = Complex{std::log(mag), arg_on_branch(m(i, j), branch.beta)};
        }
    }
    return BranchedLogMatrix{std::move(out), branch};
}

ComplexMatrix hadamard_exp(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out(i, j) = std::exp(m(i, j));
    return out;
}

}  // namespace cohgram
