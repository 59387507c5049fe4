#pragma once

#include <initializer_list>

#include <doctest.h>

#include "qsegre/random.hpp"
#include "qsegre/state.hpp"

namespace qsegre::testing {

inline StateVector make_state(std::initializer_list<Complex> amps, bool normalize = true) {
    Vector v(static_cast<Index>(amps.size()));
    Index i = 0;
    for (const Complex& a : amps) v[i++] = a;
    return StateVector::from_amplitudes(v, normalize);
}

inline StateVector eps_state() {
    return make_state({1, 0, 0, 1});
}

inline StateVector ghz_state() {
    return make_state({1, 0, 0, 0, 0, 0, 0, 1});
}

inline StateVector w_state() {
    return make_state({0, 1, 1, 0, 1, 0, 0, 0});
}

inline void check_amps_equal(const StateVector& a, const StateVector& b, double tol = 1e-12) {
    REQUIRE(a.dim() == b.dim());
    CHECK((a.amps() - b.amps()).cwiseAbs().maxCoeff() < tol);
}

} // namespace qsegre::testing
