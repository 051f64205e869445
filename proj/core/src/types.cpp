#include "cohgram/types.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cohgram {

double BranchSpec::effective_tol_eig(const ComplexMatrix& m) const {
    if (tol_eig) return *tol_eig;
    const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
    return 1e-9 * static_cast<double>(m.rows()) * scale;
}

double BranchSpec::effective_tol_eig(const RealMatrix& m) const {
    if (tol_eig) return *tol_eig;
    const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
    return 1e-9 * static_cast<double>(m.rows()) * scale;
}

void BranchSpec::validate() const {
    if (!std::isfinite(beta)) throw InvalidArgument("branch beta must be finite");
    if (tol_eig && (!std::isfinite(*tol_eig) || *tol_eig < 0.0))
        throw InvalidArgument("tol_eig must be nonnegative and finite");
    if (!std::isfinite(tol_zero) || tol_zero < 0.0)
        throw InvalidArgument("tol_zero must be nonnegative and finite");
    if (!std::isfinite(tol_herm) || tol_herm < 0.0)
        throw InvalidArgument("tol_herm must be nonnegative and finite");
}

GramMatrix GramMatrix::checked(ComplexMatrix m, const BranchSpec& branch) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch("Gram matrix must be square and nonempty");
    if (hermiticity_defect(m) > branch.tol_herm)
        throw InvalidArgument("matrix is not Hermitian within tol_herm");
    for (Index i = 0; i < m.rows(); ++i) {
        if (std::abs(m(i, i) - Complex{1.0, 0.0}) > branch.tol_herm)
            throw InvalidArgument("diagonal entry differs from 1 beyond tolerance");
    }
    const double lmin = min_eigenvalue(m);
    if (lmin < -branch.effective_tol_eig(m)) throw NotPsdError(lmin);
    return GramMatrix{std::move(m)};
}

GramMatrix GramMatrix::unchecked(ComplexMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch("Gram matrix must be square and nonempty");
    return GramMatrix{std::move(m)};
}

void CoherentEnsemble::validate() const {
    if (states.empty()) throw InvalidArgument("ensemble must contain at least one state");
    const Index m = states.front().amplitude.size();
    for (const auto& s : states) {
        if (s.amplitude.size() != m)
            throw DimensionMismatch("all amplitude vectors must have identical length");
        if (!std::isfinite(s.phase))
            throw InvalidArgument("state phase must be finite");
        for (Index k = 0; k < s.amplitude.size(); ++k) {
            if (!std::isfinite(s.amplitude[k].real()) || !std::isfinite(s.amplitude[k].imag()))
                throw InvalidArgument("amplitude entries must be finite");
        }
    }
}

ComplexVector ones_vector(Index n) {
    return ComplexVector::Constant(n, Complex{1.0, 0.0});
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint().eval());
}

double min_eigenvalue(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m),
                                                        Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol_eig) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
    RealVector lambda = solver.eigenvalues();
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < -tol_eig) throw NotPsdError(lambda[i]);
        if (lambda[i] < 0.0) lambda[i] = 0.0;
    }
    return solver.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
           solver.eigenvectors().adjoint();
}

RealMatrix psd_sqrt(const RealMatrix& m, double tol_eig) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(0.5 * (m + m.transpose()));
    RealVector lambda = solver.eigenvalues();
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < -tol_eig) throw NotPsdError(lambda[i]);
        if (lambda[i] < 0.0) lambda[i] = 0.0;
    }
    return solver.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
           solver.eigenvectors().transpose();
}

Complex coherent_overlap(const CoherentState& a, const CoherentState& b) {
    if (a.amplitude.size() != b.amplitude.size())
        throw DimensionMismatch("overlap of states with different mode counts");
    const Complex ip = a.amplitude.dot(b.amplitude);  // conjugate-linear in a
    const Complex exponent =
        -0.5 * (a.amplitude.squaredNorm() + b.amplitude.squaredNorm() - 2.0 * ip) +
        Complex{0.0, b.phase - a.phase};
    return std::exp(exponent);
}

GramMatrix gram_of_ensemble(const CoherentEnsemble& e) {
    e.validate();
    const Index n = e.size();
    ComplexMatrix g(n, n);
    for (Index i = 0; i < n; ++i) {
        g(i, i) = Complex{1.0, 0.0};
        for (Index j = i + 1; j < n; ++j) {
            g(i, j) = coherent_overlap(e.states[i], e.states[j]);
            g(j, i) = std::conj(g(i, j));
        }
    }
    return GramMatrix::unchecked(std::move(g));
}

CoherentEnsemble normalize_first_to_vacuum(const CoherentEnsemble& e) {
    e.validate();
    const ComplexVector alpha1 = e.states.front().amplitude;
    CoherentEnsemble out;
    out.states.reserve(e.states.size());
    for (const auto& s : e.states) {
        CoherentState t;
        t.amplitude = s.amplitude - alpha1;
        t.phase = s.phase - std::imag(s.amplitude.dot(alpha1));
        out.states.push_back(std::move(t));
    }
    return out;
}

void validate_permutation(const Permutation& pi, Index n) {
    if (static_cast<Index>(pi.size()) != n)
        throw InvalidArgument("permutation length does not match matrix size");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Index v : pi) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw InvalidArgument("not a permutation of {0..n-1}");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation invert_permutation(const Permutation& pi) {
    Permutation inv(pi.size());
    for (std::size_t k = 0; k < pi.size(); ++k)
        inv[static_cast<std::size_t>(pi[k])] = static_cast<Index>(k);
    return inv;
}

GramMatrix rearrange(const GramMatrix& p, const Permutation& pi) {
    const Index n = p.size();
    validate_permutation(pi, n);
    const Permutation inv = invert_permutation(pi);
    ComplexMatrix out(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            out(i, j) = p.mat(inv[static_cast<std::size_t>(i)],
                              inv[static_cast<std::size_t>(j)]);
    return GramMatrix::unchecked(std::move(out));
}

}  // namespace cohgram
