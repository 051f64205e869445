#include "cohgram/generators.hpp"

#include <cmath>

namespace cohgram {

GramMatrix equiangular_gram(Index n, double r) {
    if (n < 1) throw InvalidArgument("n must be positive");
    if (!std::isfinite(r) || r < -1.0 || r > 1.0)
        throw InvalidArgument("r must lie in [-1, 1]");
    if (n >= 2 && r < -1.0 / static_cast<double>(n - 1) - 1e-12)
        throw InvalidArgument("r below -1/(n-1) makes the matrix indefinite");
    ComplexMatrix m = ComplexMatrix::Constant(n, n, Complex{r, 0.0});
    m.diagonal().setConstant(Complex{1.0, 0.0});
    return GramMatrix::unchecked(std::move(m));
}

GramMatrix mub_gram(Index n) {
    if (n < 2) throw InvalidArgument("n must be at least 2");
    ComplexMatrix g = ComplexMatrix::Zero(2 * n, 2 * n);
    g.topLeftCorner(n, n).setIdentity();
    g.bottomRightCorner(n, n).setIdentity();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            // <e_i, f_j> = exp(2 pi i * ij / n) / sqrt(n)
            const double angle =
                kTwoPi * static_cast<double>(i) * static_cast<double>(j) /
                static_cast<double>(n);
            const Complex z = scale * Complex{std::cos(angle), std::sin(angle)};
            g(i, n + j) = z;
            g(n + j, i) = std::conj(z);
        }
    }
    return GramMatrix::unchecked(std::move(g));
}

CoherentEnsemble random_ensemble(const RandomSpec& spec) {
    if (spec.n < 1 || spec.m < 1) throw InvalidArgument("n and m must be positive");
    if (!(spec.scale >= 0.0) || !std::isfinite(spec.scale))
        throw InvalidArgument("scale must be nonnegative and finite");
    SplitMix64 rng(spec.seed);
    CoherentEnsemble out;
    out.states.resize(static_cast<std::size_t>(spec.n));
    for (auto& state : out.states) {
        state.phase = kTwoPi * rng.next_double();
        state.amplitude = ComplexVector(spec.m);
        for (Index k = 0; k < spec.m; ++k) {
            const double re = rng.next_symmetric(spec.scale);
            const double im = rng.next_symmetric(spec.scale);
            state.amplitude(k) = Complex{re, im};
        }
    }
    return out;
}

EdmCandidate random_edm(std::uint64_t seed, Index n, Index k, double scale) {
    if (n < 1 || k < 1) throw InvalidArgument("n and k must be positive");
    if (!(scale >= 0.0) || !std::isfinite(scale))
        throw InvalidArgument("scale must be nonnegative and finite");
    SplitMix64 rng(seed);
    RealMatrix points(k, n);
    for (Index i = 0; i < n; ++i)
        for (Index c = 0; c < k; ++c) points(c, i) = rng.next_symmetric(scale);
    RealMatrix d = RealMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            d(i, j) = d(j, i) = -0.5 * (points.col(i) - points.col(j)).squaredNorm();
        }
    }
    return EdmCandidate::unchecked(std::move(d));
}

}  // namespace cohgram
