#include "qsegre/state.hpp"

#include <cmath>
#include <cstdlib>

namespace qsegre {

StateVector StateVector::from_amplitudes(const Vector& raw, bool normalize) {
    const auto len = static_cast<std::uint64_t>(raw.size());
    if (len < 2 || !is_power_of_two(len)) {
        throw NotPowerOfTwoError(static_cast<std::size_t>(raw.size()));
    }
    const double norm = raw.norm();
    if (norm == 0.0 || norm < 1e-100) {
        throw ZeroVectorError();
    }
    if (!normalize && std::abs(norm - 1.0) > 1e-12) {
        throw NotNormalizedError(norm);
    }
    return StateVector(raw / norm, log2_exact(len));
}

StateVector StateVector::basis(int qubits, std::uint64_t index) {
    Vector amps = Vector::Zero(Index{1} << qubits);
    amps[static_cast<Index>(index)] = Complex{1.0, 0.0};
    return StateVector(std::move(amps), qubits);
}

ProjectivePoint::ProjectivePoint(Vector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 1 || coords_.norm() == 0.0) {
        throw ZeroVectorError();
    }
}

double projective_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p.coords().size() != q.coords().size()) {
        throw ShapeMismatchError("projective points live in different spaces");
    }
    const double overlap = std::abs(p.coords().dot(q.coords()));
    return 1.0 - overlap / (p.coords().norm() * q.coords().norm());
}

bool approx_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tolerance) {
    return projective_distance(p, q) < tolerance;
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw ShapeMismatchError("density matrix must be square");
    }
}

bool DensityMatrix::is_valid(double tolerance) const {
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tolerance) return false;
    if (std::abs(entries_.trace() - Complex{1.0, 0.0}) > tolerance) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tolerance;
}

ProjectivePoint projective_point(const StateVector& psi) { return ProjectivePoint(psi.amps()); }

namespace {

// One strided sweep applying a single Pauli factor at bit position `bit`
// (counted from the least significant end).
void apply_pauli(Vector& amps, int bit, int pauli) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const std::uint64_t low = mask - 1;
    const std::uint64_t half = static_cast<std::uint64_t>(amps.size()) >> 1;
    constexpr Complex kI{0.0, 1.0};
    for (std::uint64_t k = 0; k < half; ++k) {
        const auto i0 = static_cast<Index>(((k & ~low) << 1) | (k & low));
        const auto i1 = static_cast<Index>(static_cast<std::uint64_t>(i0) | mask);
        const Complex a = amps[i0];
        const Complex b = amps[i1];
        switch (pauli) {
        case 1:
            amps[i0] = b;
            amps[i1] = a;
            break;
        case 2:
            amps[i0] = -kI * b;
            amps[i1] = kI * a;
            break;
        case 3:
            amps[i1] = -b;
            break;
        default:
            break;
        }
    }
}

} // namespace

double pauli_string_expectation(const StateVector& psi, std::span<const int> indices) {
    const int n = psi.qubits();
    const int ell = static_cast<int>(indices.size());
    if (ell < 1 || ell > n) {
        throw BadPauliIndexError("Pauli string length " + std::to_string(ell) +
                                 " out of range for " + std::to_string(n) + " qubits");
    }
    for (int idx : indices) {
        if (idx < 0 || idx > 3) {
            throw BadPauliIndexError("Pauli index " + std::to_string(idx) +
                                     " outside {0,1,2,3}");
        }
    }
    Vector work = psi.amps();
    for (int pos = 0; pos < ell; ++pos) {
        if (indices[pos] == 0) continue;
        apply_pauli(work, n - 1 - pos, indices[pos]); // qubit pos+1 = bit n-1-pos
    }
    const Complex value = psi.amps().dot(work);
    if (std::abs(value.imag()) >= 1e-10) {
        throw ImaginaryResidueError(std::abs(value.imag()));
    }
    return value.real();
}

Matrix amplitude_matrix(const StateVector& psi, int ell) {
    const int n = psi.qubits();
    if (ell < 1 || ell > n - 1) {
        throw BadCutError(ell, n);
    }
    const Index rows = Index{1} << ell;
    const Index cols = Index{1} << (n - ell);
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Eigen::Map<const RowMajor>(psi.amps().data(), rows, cols);
}

DensityMatrix reduced_density_matrix(const StateVector& psi, int ell) {
    const Matrix block = amplitude_matrix(psi, ell);
    return DensityMatrix(block * block.adjoint());
}

double purity(const DensityMatrix& rho) { return rho.entries().squaredNorm(); }

} // namespace qsegre
