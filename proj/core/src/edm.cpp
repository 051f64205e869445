#include "cohgram/edm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cohgram {

namespace {

RealMatrix double_center(const RealMatrix& d) {
    const Index n = d.rows();
    const RealMatrix j = RealMatrix::Identity(n, n) -
                         RealMatrix::Constant(n, n, 1.0 / static_cast<double>(n));
    RealMatrix m = j * d * j;
    return 0.5 * (m + m.transpose().eval());
}

CoherentEnsemble ensemble_from_points(const RealMatrix& points) {
    CoherentEnsemble out;
    const Index n = points.cols();
    out.states.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        out.states[static_cast<std::size_t>(i)].phase = 0.0;
        out.states[static_cast<std::size_t>(i)].amplitude =
            points.col(i).cast<Complex>();
    }
    return out;
}

}  // namespace

EdmCandidate EdmCandidate::checked(RealMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch("distance matrix must be square and nonempty");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double slack = 1e-9 * scale;
    if ((m - m.transpose().eval()).cwiseAbs().maxCoeff() > slack)
        throw InvalidArgument("distance matrix must be symmetric");
    for (Index i = 0; i < m.rows(); ++i) {
        if (std::abs(m(i, i)) > slack)
            throw InvalidArgument("distance matrix diagonal must be zero");
        for (Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) > slack)
                throw InvalidArgument("distance matrix entries must be nonpositive");
        }
    }
    return EdmCandidate{std::move(m)};
}

EdmCandidate EdmCandidate::unchecked(RealMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch("distance matrix must be square and nonempty");
    return EdmCandidate{std::move(m)};
}

bool is_edm(const EdmCandidate& d, const BranchSpec& branch) {
    const RealMatrix centered = double_center(d.d);
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(centered, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -branch.effective_tol_eig(d.d);
}

RealMatrix edm_points(const EdmCandidate& d, const BranchSpec& branch) {
    const RealMatrix centered = double_center(d.d);
    const double tau = branch.effective_tol_eig(d.d);
    try {
        // Centered matrix is the Gram matrix of the centered points, so
        // its square root delivers them column by column.
        return psd_sqrt(centered, tau);
    } catch (const NotPsdError& e) {
        throw NotEdmError(e.lambda_min);
    }
}

bool edm_necessary_check(const GramMatrix& p, const BranchSpec& branch) {
    const Index n = p.size();
    RealMatrix r(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double mag = std::abs(p.mat(i, j));
            if (mag <= branch.tol_zero) throw ZeroEntryError(i, j);
            r(i, j) = std::log(mag);
        }
    }
    return is_edm(EdmCandidate::unchecked(std::move(r)), branch);
}

MembershipResult check_membership_real_positive(const GramMatrix& p,
                                                const BranchSpec& branch) {
    branch.validate();
    const Index n = p.size();
    RealMatrix r(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const Complex z = p.mat(i, j);
            if (std::abs(z.imag()) > branch.tol_herm)
                throw NotRealPositiveError("entry has a nonreal part beyond tolerance");
            if (z.real() <= branch.tol_zero)
                throw NotRealPositiveError("entry is not strictly positive");
            r(i, j) = std::log(std::abs(z));
        }
    }

    MembershipResult res;
    res.stats.beta_used = branch.beta;
    const EdmCandidate cand = EdmCandidate::unchecked(std::move(r));
    const RealMatrix centered = double_center(cand.d);
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(centered, Eigen::EigenvaluesOnly);
    const double lambda_min = solver.eigenvalues().minCoeff();
    const double tau = branch.effective_tol_eig(cand.d);
    res.stats.lambda_min = lambda_min;
    res.stats.marginal = std::abs(lambda_min) < 10.0 * tau;

    if (lambda_min >= -tau) {
        res.verdict = Verdict::Member;
        MembershipWitness witness;
        witness.ensemble = ensemble_from_points(edm_points(cand, branch));
        witness.n_matrix = IntegerPhaseMatrix::Zero(n, n);
        witness.centering = centering_mean(n);
        res.witness = std::move(witness);
    } else {
        res.reason = NotMemberReason{NotMemberReason::Kind::Exhausted, -1, -1, 0};
    }
    return res;
}

CoherentEnsemble hadamard_exp_edm_witness(const EdmCandidate& d,
                                          const BranchSpec& branch) {
    return ensemble_from_points(edm_points(d, branch));
}

}  // namespace cohgram
