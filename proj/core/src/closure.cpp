#include "cohgram/closure.hpp"

#include <cmath>
#include <deque>

namespace cohgram {

DistanceBounds overlap_distance_bounds(double p_ab, double p_ag) {
    if (!(p_ab > 0.0) || p_ab > 1.0 || !(p_ag > 0.0) || p_ag > 1.0)
        throw InvalidArgument("overlap magnitudes must lie in (0, 1]");
    const double da = std::sqrt(-2.0 * std::log(p_ab));
    const double dg = std::sqrt(-2.0 * std::log(p_ag));
    return DistanceBounds{std::abs(dg - da), dg + da};
}

ZeroPattern zero_pattern(const GramMatrix& p, double tol_zero) {
    const Index n = p.size();
    ZeroPattern out;
    out.nonzero.resize(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            out.nonzero(i, j) = std::abs(p.mat(i, j)) > tol_zero;
    return out;
}

BlockPartition zero_pattern_blocks(const GramMatrix& p, double tol_zero) {
    const Index n = p.size();
    const ZeroPattern pattern = zero_pattern(p, tol_zero);

    BlockPartition out;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (i != j) {
                const double mag = std::abs(p.mat(i, j));
                if (mag > 0.1 * tol_zero && mag <= 10.0 * tol_zero) out.marginal = true;
            }

    std::vector<Index> component(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<Index>> blocks;
    for (Index start = 0; start < n; ++start) {
        if (component[static_cast<std::size_t>(start)] >= 0) continue;
        const Index id = static_cast<Index>(blocks.size());
        blocks.emplace_back();
        std::deque<Index> queue{start};
        component[static_cast<std::size_t>(start)] = id;
        while (!queue.empty()) {
            const Index v = queue.front();
            queue.pop_front();
            blocks.back().push_back(v);
            for (Index w = 0; w < n; ++w) {
                if (w != v && pattern.nonzero(v, w) &&
                    component[static_cast<std::size_t>(w)] < 0) {
                    component[static_cast<std::size_t>(w)] = id;
                    queue.push_back(w);
                }
            }
        }
        std::sort(blocks.back().begin(), blocks.back().end());
    }

    // A consistent pattern makes every component a clique.  A vertex at
    // graph distance exactly two from some i yields the violating triple.
    for (const auto& block : blocks) {
        for (Index i : block) {
            std::vector<Index> dist(static_cast<std::size_t>(n), -1);
            std::vector<Index> parent(static_cast<std::size_t>(n), -1);
            std::deque<Index> queue{i};
            dist[static_cast<std::size_t>(i)] = 0;
            while (!queue.empty()) {
                const Index v = queue.front();
                queue.pop_front();
                if (dist[static_cast<std::size_t>(v)] >= 2) continue;
                for (Index w = 0; w < n; ++w) {
                    if (w == v || !pattern.nonzero(v, w)) continue;
                    if (dist[static_cast<std::size_t>(w)] >= 0) continue;
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    parent[static_cast<std::size_t>(w)] = v;
                    if (dist[static_cast<std::size_t>(w)] == 2) {
                        out.violation = ZeroPatternViolation{
                            i, w, parent[static_cast<std::size_t>(w)]};
                        return out;
                    }
                    queue.push_back(w);
                }
            }
        }
    }

    out.blocks = std::move(blocks);
    return out;
}

const char* to_string(ClosureReason::Kind kind) {
    switch (kind) {
        case ClosureReason::Kind::InconsistentZeroPattern: return "InconsistentZeroPattern";
        case ClosureReason::Kind::BlockNotMember: return "BlockNotMember";
        case ClosureReason::Kind::NotPsdGram: return "NotPSDGram";
        case ClosureReason::Kind::BadDiagonal: return "BadDiagonal";
    }
    return "";
}

ClosureResult check_closure_membership(const GramMatrix& p, const BranchSpec& branch,
                                       const ClosureOptions& opts) {
    branch.validate();
    const Index n = p.size();

    ClosureResult res;
    for (Index i = 0; i < n; ++i) {
        if (std::abs(p.mat(i, i) - Complex{1.0, 0.0}) > branch.tol_herm) {
            ClosureReason reason;
            reason.kind = ClosureReason::Kind::BadDiagonal;
            res.reason = reason;
            return res;
        }
    }
    // Closure members are Hermitian PSD; a non-Hermitian input is a
    // fortiori no PSD Gram matrix.
    if (hermiticity_defect(p.mat) > branch.tol_herm ||
        min_eigenvalue(p.mat) < -branch.effective_tol_eig(p.mat)) {
        ClosureReason reason;
        reason.kind = ClosureReason::Kind::NotPsdGram;
        res.reason = reason;
        return res;
    }

    BlockPartition partition = zero_pattern_blocks(p, branch.tol_zero);
    res.marginal_pattern = partition.marginal;
    if (partition.violation) {
        ClosureReason reason;
        reason.kind = ClosureReason::Kind::InconsistentZeroPattern;
        reason.triple = *partition.violation;
        res.reason = reason;
        return res;
    }

    std::vector<ClosureBlock> blocks;
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        const auto& indices = partition.blocks[b];
        const Index m = static_cast<Index>(indices.size());
        ComplexMatrix sub(m, m);
        for (Index r = 0; r < m; ++r)
            for (Index c = 0; c < m; ++c)
                sub(r, c) = p.mat(indices[static_cast<std::size_t>(r)],
                                  indices[static_cast<std::size_t>(c)]);
        const ComplexVector s = opts.centering == ClosureOptions::Centering::FirstState
                                    ? centering_e1(m)
                                    : centering_mean(m);
        MembershipResult inner = check_membership(GramMatrix::unchecked(std::move(sub)),
                                                  branch, s, opts.max_candidates);
        if (inner.verdict != Verdict::Member) {
            ClosureReason reason;
            reason.kind = ClosureReason::Kind::BlockNotMember;
            reason.block_index = b;
            reason.block_result = std::move(inner);
            res.reason = reason;
            return res;
        }
        blocks.push_back(ClosureBlock{indices, std::move(inner)});
    }

    res.verdict = Verdict::Member;
    res.blocks = std::move(blocks);
    res.permutation.assign(static_cast<std::size_t>(n), 0);
    Index next = 0;
    for (const auto& block : res.blocks)
        for (Index idx : block.indices)
            res.permutation[static_cast<std::size_t>(idx)] = next++;
    return res;
}

CoherentEnsemble approximate_block_diagonal(const std::vector<CoherentEnsemble>& blocks,
                                            double marker_amplitude) {
    if (blocks.empty()) throw InvalidArgument("at least one block is required");
    if (!std::isfinite(marker_amplitude) || marker_amplitude < 0.0)
        throw InvalidArgument("marker amplitude must be nonnegative and finite");

    const Index k = static_cast<Index>(blocks.size());
    Index total_modes = 0;
    std::vector<Index> offsets;
    offsets.reserve(blocks.size());
    for (const auto& block : blocks) {
        block.validate();
        offsets.push_back(total_modes);
        total_modes += block.modes();
    }
    const Index marker_base = total_modes;
    total_modes += k;

    CoherentEnsemble out;
    for (Index b = 0; b < k; ++b) {
        const auto& block = blocks[static_cast<std::size_t>(b)];
        for (const auto& state : block.states) {
            CoherentState s;
            s.phase = state.phase;
            s.amplitude = ComplexVector::Zero(total_modes);
            s.amplitude.segment(offsets[static_cast<std::size_t>(b)],
                                state.amplitude.size()) = state.amplitude;
            s.amplitude(marker_base + b) = Complex{marker_amplitude, 0.0};
            out.states.push_back(std::move(s));
        }
    }
    return out;
}

double displacement_for_epsilon(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw InvalidArgument("epsilon must lie in (0, 1)");
    return std::sqrt(std::log(1.0 / eps));
}

}  // namespace cohgram
