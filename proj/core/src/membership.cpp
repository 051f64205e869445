#include "cohgram/membership.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace cohgram {

namespace {

constexpr double kCenteringTol = 1e-12;
constexpr double kCutCollisionTol = 1e-9;
constexpr double kCouplingIntTol = 1e-6;
constexpr double kRangeBoundaryTol = 1e-9;

void validate_centering(const ComplexVector& s, Index n) {
    if (s.size() != n) throw DimensionMismatch("centering vector length mismatch");
    const Complex ip = ones_vector(n).dot(s);
    if (std::abs(ip - Complex{1.0, 0.0}) > kCenteringTol)
        throw InvalidArgument("centering vector must satisfy <u, s> = 1");
}

bool is_exact_e1(const ComplexVector& s) {
    if (s(0) != Complex{1.0, 0.0}) return false;
    for (Index i = 1; i < s.size(); ++i)
        if (s(i) != Complex{0.0, 0.0}) return false;
    return true;
}

ComplexMatrix centering_projector(const ComplexVector& s) {
    const Index n = s.size();
    return ComplexMatrix::Identity(n, n) - ones_vector(n) * s.adjoint();
}

// Scale-aware eigenvalue slack for matrices derived from logs, guarded
// below so an exactly-zero matrix still tolerates roundoff.
double derived_tol_eig(const BranchSpec& branch, Index n, double scale) {
    if (branch.tol_eig) return *branch.tol_eig;
    return 1e-9 * static_cast<double>(n) * std::max(1.0, scale);
}

bool has_cut_collision(const ComplexMatrix& p, double beta) {
    for (Index i = 0; i < p.rows(); ++i) {
        for (Index j = 0; j < p.cols(); ++j) {
            const double a = arg_on_branch(p(i, j), beta);
            if (std::min(a - beta, beta + kTwoPi - a) < kCutCollisionTol) return true;
        }
    }
    return false;
}

// Lexicographic search over winding matrices.  Pairs are the
// strictly-upper-triangular entries in row-major order; the value of a
// later pair (i,j) with i >= 1 is confined by anchors a < i through
//
//   |Im Q_ij - Im Q_ia - Im Q_aj| <= sqrt((-2 Re Q_ia)(-2 Re Q_aj)),
//
// a consequence of the 2x2 compression of the projected matrix onto
// span{e_i - e_a, e_j - e_a} (both orthogonal to u).  With the slack
// below the bound holds for every candidate that could pass the full
// eigenvalue test, so pruning never changes the reported winner.
struct LexSearch {
    Index n = 0;
    IntegerRange range;
    struct Pair {
        Index i;
        Index j;
        long long t;  // N_ji = t - N_ij
        double base;  // Im Qhat_ij = base - 2pi N_ij
    };
    std::vector<Pair> pairs;
    RealMatrix re_q;  // Re Qhat, fixed by the input
    RealMatrix im_q;  // Im Qhat for already-assigned pairs (upper triangle)
    std::vector<long long> values;
    ComplexMatrix projector;  // 1 - u s^dagger
    double tol_eig = 0.0;
    double prune_slack = 0.0;

    std::uint64_t examined = 0;
    double best_lambda = -std::numeric_limits<double>::infinity();
    double winner_margin = 0.0;
    IntegerPhaseMatrix winner;
    bool found = false;

    bool run() { return descend(0); }

    bool descend(std::size_t pk) {
        if (pk == pairs.size()) return test_leaf();
        const Pair& pd = pairs[pk];
        long long lo = std::max(range.lo, pd.t - range.hi);
        long long hi = std::min(range.hi, pd.t - range.lo);
        for (Index a = 0; a < pd.i && lo <= hi; ++a) {
            const double c = im_q(a, pd.j) - im_q(a, pd.i);
            const double w =
                std::sqrt(std::max(0.0, -2.0 * re_q(a, pd.i) + 2.0 * tol_eig) *
                          std::max(0.0, -2.0 * re_q(a, pd.j) + 2.0 * tol_eig)) +
                tol_eig + prune_slack;
            lo = std::max(lo, static_cast<long long>(
                                  std::ceil((pd.base - c - w) / kTwoPi - kRangeBoundaryTol)));
            hi = std::min(hi, static_cast<long long>(
                                  std::floor((pd.base - c + w) / kTwoPi + kRangeBoundaryTol)));
        }
        for (long long v = lo; v <= hi; ++v) {
            im_q(pd.i, pd.j) = pd.base - kTwoPi * static_cast<double>(v);
            values[pk] = v;
            if (descend(pk + 1)) return true;
        }
        return false;
    }

    bool test_leaf() {
        ComplexMatrix q = ComplexMatrix::Zero(n, n);
        for (const Pair& pd : pairs) {
            q(pd.i, pd.j) = Complex{re_q(pd.i, pd.j), im_q(pd.i, pd.j)};
            q(pd.j, pd.i) = std::conj(q(pd.i, pd.j));
        }
        const ComplexMatrix m = hermitize(projector * q * projector.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
        const RealVector lambda = solver.eigenvalues();
        ++examined;
        best_lambda = std::max(best_lambda, lambda(0));
        if (lambda(0) < -tol_eig) return false;
        // The projector forces s into the kernel, so the margin of a
        // member is the smallest eigenvalue orthogonal to that kernel.
        // For n = 1 the projected matrix is identically zero and the
        // verdict cannot flip.
        winner_margin = n >= 2 ? lambda(1) : std::numeric_limits<double>::infinity();
        winner = IntegerPhaseMatrix::Zero(n, n);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            winner(pairs[k].i, pairs[k].j) = static_cast<int>(values[k]);
            winner(pairs[k].j, pairs[k].i) = static_cast<int>(pairs[k].t - values[k]);
        }
        found = true;
        return true;
    }
};

}  // namespace

double delta_min_abs(const GramMatrix& p) {
    return p.mat.cwiseAbs().minCoeff();
}

IntegerRange n_entry_range(double beta, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw InvalidArgument("delta must be positive");
    const double spread = std::abs(std::log(delta)) / kPi;
    const double lower = beta / kTwoPi - spread - 1.0;
    const double upper = beta / kTwoPi + spread + 2.0;
    IntegerRange r;
    r.lo = static_cast<long long>(std::ceil(lower - kRangeBoundaryTol));
    r.hi = static_cast<long long>(std::ceil(upper - kRangeBoundaryTol)) - 1;
    return r;
}

NCandidateStream::NCandidateStream(const BranchedLogMatrix& log_p, double delta)
    : n_(log_p.matrix.rows()), range_(n_entry_range(log_p.branch.beta, delta)) {
    const Index k_free = n_ * (n_ - 1) / 2;
    theoretical_ = std::pow(static_cast<double>(range_.count()),
                            static_cast<double>(k_free));
    pairs_.reserve(static_cast<std::size_t>(k_free));
    t_.reserve(static_cast<std::size_t>(k_free));
    for (Index i = 0; i < n_; ++i) {
        for (Index j = i + 1; j < n_; ++j) {
            const double t_real =
                (std::imag(log_p.matrix(i, j)) + std::imag(log_p.matrix(j, i))) / kTwoPi;
            const long long t = std::llround(t_real);
            if (std::abs(t_real - static_cast<double>(t)) > kCouplingIntTol) {
                exhausted_ = true;  // no N can make the pair Hermitian
            }
            pairs_.emplace_back(i, j);
            t_.push_back(t);
        }
    }
    cur_.assign(pairs_.size(), range_.lo);
}

bool NCandidateStream::advance() {
    if (!started_) {
        started_ = true;
        return true;
    }
    for (std::size_t k = cur_.size(); k-- > 0;) {
        if (++cur_[k] <= range_.hi) return true;
        cur_[k] = range_.lo;
    }
    return false;
}

bool NCandidateStream::derived_in_range() const {
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        if (!range_.contains(t_[k] - cur_[k])) return false;
    }
    return true;
}

IntegerPhaseMatrix NCandidateStream::materialize() const {
    IntegerPhaseMatrix out = IntegerPhaseMatrix::Zero(n_, n_);
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        out(pairs_[k].first, pairs_[k].second) = static_cast<int>(cur_[k]);
        out(pairs_[k].second, pairs_[k].first) = static_cast<int>(t_[k] - cur_[k]);
    }
    return out;
}

std::optional<IntegerPhaseMatrix> NCandidateStream::next() {
    while (!exhausted_) {
        if (!advance()) {
            exhausted_ = true;
            break;
        }
        if (derived_in_range()) return materialize();
    }
    return std::nullopt;
}

std::vector<IntegerPhaseMatrix> enumerate_n_candidates(const BranchedLogMatrix& log_p,
                                                       double delta, std::uint64_t limit) {
    NCandidateStream stream(log_p, delta);
    std::vector<IntegerPhaseMatrix> out;
    while (auto cand = stream.next()) {
        if (out.size() >= limit)
            throw BudgetExceededError(stream.theoretical_count(), limit);
        out.push_back(std::move(*cand));
    }
    return out;
}

ComplexVector centering_e1(Index n) {
    ComplexVector s = ComplexVector::Zero(n);
    s(0) = Complex{1.0, 0.0};
    return s;
}

ComplexVector centering_mean(Index n) {
    return ComplexVector::Constant(n, Complex{1.0 / static_cast<double>(n), 0.0});
}

bool q_psd_projected(const ComplexMatrix& q, const ComplexVector& s,
                     const BranchSpec& branch) {
    if (q.rows() != q.cols()) throw DimensionMismatch("Q must be square");
    validate_centering(s, q.rows());
    if (hermiticity_defect(q) > branch.tol_herm)
        throw InvalidArgument("Q is not Hermitian within tol_herm");
    for (Index i = 0; i < q.rows(); ++i)
        if (std::abs(q(i, i)) > branch.tol_herm)
            throw InvalidArgument("Q diagonal is not zero within tolerance");
    const ComplexMatrix j = centering_projector(s);
    const ComplexMatrix m = hermitize(j * q * j.adjoint());
    const double tau = derived_tol_eig(branch, q.rows(), q.cwiseAbs().maxCoeff());
    return min_eigenvalue(m) >= -tau;
}

ComplexVector x_from_s(const ComplexMatrix& q, const ComplexVector& s) {
    if (q.rows() != q.cols()) throw DimensionMismatch("Q must be square");
    validate_centering(s, q.rows());
    const Complex quad = s.dot(q * s);
    return 0.5 * quad * ones_vector(q.rows()) - q * s;
}

CoherentEnsemble reconstruct_ensemble(const GramMatrix& p, const IntegerPhaseMatrix& n_matrix,
                                      const BranchSpec& branch, const ComplexVector& s) {
    branch.validate();
    const Index n = p.size();
    validate_centering(s, n);
    if (n_matrix.rows() != n || n_matrix.cols() != n)
        throw DimensionMismatch("winding matrix size mismatch");

    const BranchedLogMatrix log_p = hadamard_log(p.mat, branch);
    ComplexMatrix q = log_p.matrix -
                      Complex{0.0, kTwoPi} * n_matrix.cast<Complex>();
    // arg(1) is 2pi on branches not containing 0; forcing the diagonal to
    // zero absorbs that shift (only phase differences enter the overlap).
    q.diagonal().setZero();
    // A winding matrix off the valid candidate set leaves a defect of
    // order 2pi; valid candidates sit below the coupling rounding slack.
    if (hermiticity_defect(q) > std::max(branch.tol_herm, kTwoPi * 1e-6))
        throw InvalidArgument("winding matrix does not make log P - 2 pi i N Hermitian");
    q = hermitize(q);

    const ComplexMatrix j = centering_projector(s);
    const ComplexMatrix x = hermitize(j * q * j.adjoint());
    const double tau = derived_tol_eig(branch, n, x.cwiseAbs().maxCoeff());
    const ComplexMatrix w = psd_sqrt(x, tau);

    CoherentEnsemble out;
    out.states.resize(static_cast<std::size_t>(n));
    if (is_exact_e1(s)) {
        for (Index i = 0; i < n; ++i) {
            out.states[static_cast<std::size_t>(i)].phase = -std::imag(log_p.matrix(i, 0));
            out.states[static_cast<std::size_t>(i)].amplitude = w.col(i);
        }
    } else {
        const ComplexVector xv = x_from_s(q, s);
        for (Index i = 0; i < n; ++i) {
            out.states[static_cast<std::size_t>(i)].phase = std::imag(xv(i));
            out.states[static_cast<std::size_t>(i)].amplitude = w.col(i);
        }
    }
    return out;
}

const char* to_string(NotMemberReason::Kind kind) {
    switch (kind) {
        case NotMemberReason::Kind::ZeroEntry: return "ZeroEntry";
        case NotMemberReason::Kind::NotHermitian: return "NotHermitian";
        case NotMemberReason::Kind::BadDiagonal: return "BadDiagonal";
        case NotMemberReason::Kind::NotPsdGram: return "NotPSDGram";
        case NotMemberReason::Kind::Exhausted: return "Exhausted";
    }
    return "";
}

MembershipResult check_membership(const GramMatrix& p, const BranchSpec& branch,
                                  const ComplexVector& s, std::uint64_t max_candidates) {
    branch.validate();
    const Index n = p.size();
    validate_centering(s, n);

    MembershipResult res;
    res.stats.beta_used = branch.beta;

    if (hermiticity_defect(p.mat) > branch.tol_herm) {
        res.reason = NotMemberReason{NotMemberReason::Kind::NotHermitian};
        return res;
    }
    for (Index i = 0; i < n; ++i) {
        if (std::abs(p.mat(i, i) - Complex{1.0, 0.0}) > branch.tol_herm) {
            res.reason = NotMemberReason{NotMemberReason::Kind::BadDiagonal, i, i};
            return res;
        }
    }
    const double lambda_p = min_eigenvalue(p.mat);
    if (lambda_p < -branch.effective_tol_eig(p.mat)) {
        res.reason = NotMemberReason{NotMemberReason::Kind::NotPsdGram};
        res.stats.lambda_min = lambda_p;
        return res;
    }

    const double delta = delta_min_abs(p);
    if (delta <= branch.tol_zero) {
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                if (std::abs(p.mat(i, j)) <= branch.tol_zero) {
                    res.reason = NotMemberReason{NotMemberReason::Kind::ZeroEntry, i, j};
                    return res;
                }
            }
        }
    }

    // Choose a branch whose cut avoids every entry argument so the
    // entrywise log is continuous at the data.
    BranchSpec eff = branch;
    for (int retry = 0; retry < 3 && has_cut_collision(p.mat, eff.beta); ++retry)
        eff.beta += 1e-3;
    res.stats.beta_used = eff.beta;

    const BranchedLogMatrix log_p = hadamard_log(p.mat, eff);
    const IntegerRange range = n_entry_range(eff.beta, delta);
    const Index k_free = n * (n - 1) / 2;
    const double theoretical = std::pow(static_cast<double>(range.count()),
                                        static_cast<double>(k_free));
    res.stats.candidates_theoretical = theoretical;
    if (theoretical > static_cast<double>(max_candidates))
        throw BudgetExceededError(theoretical, max_candidates);

    const double range_abs = static_cast<double>(
        std::max(std::llabs(range.lo), std::llabs(range.hi)));
    const double q_scale = log_p.matrix.cwiseAbs().maxCoeff() + kTwoPi * range_abs;
    const double tau = derived_tol_eig(branch, n, q_scale);

    LexSearch search;
    search.n = n;
    search.range = range;
    search.re_q = RealMatrix::Zero(n, n);
    search.im_q = RealMatrix::Zero(n, n);
    search.values.assign(static_cast<std::size_t>(k_free), 0);
    search.projector = centering_projector(s);
    search.tol_eig = tau;
    search.prune_slack = 1e-7 * (1.0 + q_scale);

    bool coupling_ok = true;
    for (Index i = 0; i < n && coupling_ok; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double im_ij = std::imag(log_p.matrix(i, j));
            const double im_ji = std::imag(log_p.matrix(j, i));
            const double t_real = (im_ij + im_ji) / kTwoPi;
            const long long t = std::llround(t_real);
            if (std::abs(t_real - static_cast<double>(t)) > kCouplingIntTol) {
                coupling_ok = false;
                break;
            }
            LexSearch::Pair pd;
            pd.i = i;
            pd.j = j;
            pd.t = t;
            pd.base = 0.5 * (im_ij - im_ji) + kPi * static_cast<double>(t);
            search.pairs.push_back(pd);
            search.re_q(i, j) = search.re_q(j, i) =
                0.5 * (std::real(log_p.matrix(i, j)) + std::real(log_p.matrix(j, i)));
        }
    }

    bool found = false;
    if (coupling_ok) found = search.run();
    res.stats.candidates_examined = search.examined;

    if (found) {
        res.verdict = Verdict::Member;
        BranchSpec recon = eff;
        recon.tol_eig = tau;
        MembershipWitness witness;
        witness.n_matrix = search.winner;
        witness.centering = s;
        witness.ensemble = reconstruct_ensemble(p, witness.n_matrix, recon, s);
        res.witness = std::move(witness);
        res.stats.lambda_min = search.winner_margin;
        res.stats.marginal = std::abs(search.winner_margin) < 10.0 * tau;
    } else {
        res.reason = NotMemberReason{NotMemberReason::Kind::Exhausted, -1, -1, search.examined};
        res.stats.lambda_min = search.best_lambda;
        res.stats.marginal =
            search.examined > 0 && std::abs(search.best_lambda) < 10.0 * tau;
    }
    return res;
}

MembershipResult check_membership(const GramMatrix& p, const BranchSpec& branch,
                                  std::uint64_t max_candidates) {
    return check_membership(p, branch, centering_e1(p.size()), max_candidates);
}

CoherentEnsemble small_angle_embedding(const GramMatrix& p, const BranchSpec& branch) {
    branch.validate();
    const Index n = p.size();
    if (hermiticity_defect(p.mat) > branch.tol_herm)
        throw InvalidArgument("matrix is not Hermitian within tol_herm");
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const Complex z = p.mat(i, j);
            if (std::abs(z.imag()) <= branch.tol_herm && z.real() <= 0.0)
                throw InvalidArgument("entry on the negative real axis");
        }
    }
    const ComplexMatrix b = psd_sqrt(p.mat, branch.effective_tol_eig(p.mat));
    CoherentEnsemble out;
    out.states.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        out.states[static_cast<std::size_t>(i)].phase = 0.0;
        out.states[static_cast<std::size_t>(i)].amplitude = b.col(i);
    }
    return out;
}

}  // namespace cohgram
