#pragma once

#include <doctest.h>

#include "cohgram/generators.hpp"
#include "cohgram/types.hpp"

namespace cohgram::testing {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    return (a - b).cwiseAbs().maxCoeff();
}

inline CoherentState state(double phase, std::initializer_list<Complex> amps) {
    CoherentState s;
    s.phase = phase;
    s.amplitude = ComplexVector(static_cast<Index>(amps.size()));
    Index k = 0;
    for (const Complex& a : amps) s.amplitude(k++) = a;
    return s;
}

inline ComplexMatrix matrix2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace cohgram::testing
