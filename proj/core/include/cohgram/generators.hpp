#pragma once

#include <cstdint>

#include "cohgram/edm.hpp"
#include "cohgram/types.hpp"

namespace cohgram {

// Platform-stable 64-bit generator (SplitMix64).  The same seed produces
// the same stream on every platform; the algorithm is part of the file
// format contract and must not change silently.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 bits of mantissa.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [-scale, scale].
    double next_symmetric(double scale) { return scale * (2.0 * next_double() - 1.0); }

private:
    std::uint64_t state_;
};

struct RandomSpec {
    std::uint64_t seed = 0;
    Index n = 1;
    Index m = 1;
    double scale = 1.0;
};

// P_ii = 1, P_ij = r.  Throws InvalidArgument when r makes the matrix
// indefinite (r < -1/(n-1) for n >= 2) or |r| > 1.
GramMatrix equiangular_gram(Index n, double r);

// 2n x 2n Gram matrix of the standard basis of C^n joined with its
// Fourier basis: identity within each basis block, cross-block entries of
// magnitude 1/sqrt(n).  Mutually unbiased bases are sometimes stated with
// cross overlap 1/n instead; the standard+Fourier pair realizes 1/sqrt(n),
// and the closure analysis only needs the zero/nonzero pattern, which is
// the same either way.
GramMatrix mub_gram(Index n);

// Deterministic ensemble: per state, one phase draw uniform in [0, 2pi),
// then per mode the real and imaginary amplitude parts uniform in
// [-scale, scale], in that order.
CoherentEnsemble random_ensemble(const RandomSpec& spec);

// Distance matrix of n points drawn uniformly from [-scale, scale]^k;
// passes is_edm by construction.  Coordinates are drawn point by point.
EdmCandidate random_edm(std::uint64_t seed, Index n, Index k, double scale);

}  // namespace cohgram
