#pragma once

#include <span>
#include <vector>

#include "qsegre/errors.hpp"
#include "qsegre/types.hpp"

namespace qsegre {

/// Normalized pure state of n qubits.
///
/// Amplitude index i encodes the basis ket |i1 ... in> by the binary expansion
/// of i with i1 the most significant bit, so |011> sits at index 3 and the
/// amplitudes are listed in lexicographic ket order. The stored vector always
/// has unit norm.
class StateVector {
public:
    /// Builds a state from raw amplitudes.
    ///
    /// The length must be a power of two >= 2. With normalize the vector is
    /// rescaled to unit norm; without it, a norm off by more than 1e-12 is
    /// rejected with NotNormalizedError.
    static StateVector from_amplitudes(const Vector& raw, bool normalize);

    /// Computational basis state |index> on n qubits.
    static StateVector basis(int qubits, std::uint64_t index);

    int qubits() const { return qubits_; }
    Index dim() const { return amps_.size(); }
    const Vector& amps() const { return amps_; }

private:
    StateVector(Vector amps, int qubits) : amps_(std::move(amps)), qubits_(qubits) {}

    Vector amps_;
    int qubits_;
};

/// Point of a complex projective space, stored as homogeneous coordinates.
/// Two points are the same exactly when their coordinates are proportional;
/// use projective_distance / approx_equal for comparisons.
class ProjectivePoint {
public:
    explicit ProjectivePoint(Vector coords);

    const Vector& coords() const { return coords_; }
    Index dim() const { return coords_.size() - 1; } // projective dimension

    /// Representative with unit Euclidean norm.
    Vector unit() const { return coords_ / coords_.norm(); }

private:
    Vector coords_;
};

/// Scale-invariant separation: 1 - |<p,q>| / (|p| |q|). Zero iff proportional.
double projective_distance(const ProjectivePoint& p, const ProjectivePoint& q);

bool approx_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tolerance = 1e-10);

/// Reduced density matrix of a leading block of qubits.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix entries);

    Index dim() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }

    /// True when Hermitian and unit-trace within `tolerance` and all
    /// eigenvalues are >= -tolerance.
    bool is_valid(double tolerance = 1e-10) const;

private:
    Matrix entries_;
};

/// Homogeneous coordinates of [psi]: the amplitudes, up to scale.
ProjectivePoint projective_point(const StateVector& psi);

/// <psi| s_{i1} (x) ... (x) s_{il} (x) I |psi> for Pauli indices in {0,1,2,3}
/// acting on the leading qubits.
///
/// Each factor is applied through bit-indexed strides in O(2^n); the full
/// 2^n x 2^n operator is never formed. The operator is Hermitian, so an
/// imaginary residue beyond 1e-10 signals numerical corruption and throws.
double pauli_string_expectation(const StateVector& psi, std::span<const int> indices);

/// Partial trace over the trailing n-ell qubits: the 2^ell x 2^ell marginal
/// of the leading block. Requires 1 <= ell <= n-1.
DensityMatrix reduced_density_matrix(const StateVector& psi, int ell);

/// Tr(rho^2). Equals the squared Frobenius norm for Hermitian input.
double purity(const DensityMatrix& rho);

/// Row-major reshape of the amplitudes into a 2^ell x 2^(n-ell) matrix:
/// row j holds the amplitude block whose leading ell bits spell j.
Matrix amplitude_matrix(const StateVector& psi, int ell);

} // namespace qsegre
