#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qsegre {

using Real = double;
using Complex = std::complex<Real>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

/// Exact log2 of a power of two.
inline int log2_exact(std::uint64_t x) {
    int n = 0;
    while (x > 1) {
        x >>= 1;
        ++n;
    }
    return n;
}

} // namespace qsegre
