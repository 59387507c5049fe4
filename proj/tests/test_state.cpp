#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsegre/observables.hpp"
#include "qsegre/random.hpp"
#include "qsegre/state.hpp"

#include "helpers.hpp"

using namespace qsegre;
using namespace qsegre::testing;

namespace {

// Dense 2x2 Paulis and their Kronecker products: the brute-force oracle the
// strided implementation is checked against.
Matrix pauli(int i) {
    Matrix m(2, 2);
    const Complex I{0, 1};
    switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Matrix kron_dense(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double dense_pauli_expectation(const StateVector& psi, const std::vector<int>& indices) {
    Matrix op = pauli(indices.front());
    for (std::size_t i = 1; i < indices.size(); ++i) op = kron_dense(op, pauli(indices[i]));
    const int rest = psi.qubits() - static_cast<int>(indices.size());
    if (rest > 0) op = kron_dense(op, Matrix::Identity(Index{1} << rest, Index{1} << rest));
    const Complex value = psi.amps().dot(op * psi.amps());
    REQUIRE(std::abs(value.imag()) < 1e-10);
    return value.real();
}

// Partial trace over the trailing qubits via the full outer product: the
// O(4^n) reference for reduced_density_matrix.
Matrix dense_partial_trace(const StateVector& psi, int ell) {
    const Index keep = Index{1} << ell;
    const Index drop = psi.dim() / keep;
    const Matrix full = psi.amps() * psi.amps().adjoint();
    Matrix out = Matrix::Zero(keep, keep);
    for (Index j = 0; j < keep; ++j) {
        for (Index k = 0; k < keep; ++k) {
            for (Index m = 0; m < drop; ++m) out(j, k) += full(j * drop + m, k * drop + m);
        }
    }
    return out;
}

} // namespace

TEST_CASE("from_amplitudes validates and normalizes") {
    const StateVector zero2 = make_state({1, 0, 0, 0}, false);
    CHECK(zero2.qubits() == 2);
    CHECK(zero2.amps()[0] == Complex{1, 0});

    const StateVector eps = eps_state(); // (1,0,0,1) with normalize on
    CHECK(std::abs(eps.amps()[0].real() - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(eps.amps()[3].real() - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(eps.amps().norm() - 1.0) < 1e-15);

    Vector zeros = Vector::Zero(8);
    CHECK_THROWS_AS(StateVector::from_amplitudes(zeros, true), ZeroVectorError);
    Vector three(3);
    three << 1, 0, 0;
    CHECK_THROWS_AS(StateVector::from_amplitudes(three, true), NotPowerOfTwoError);
    Vector one(1);
    one << 1;
    CHECK_THROWS_AS(StateVector::from_amplitudes(one, true), NotPowerOfTwoError);
    Vector unnormalized(2);
    unnormalized << 1, 1;
    CHECK_THROWS_AS(StateVector::from_amplitudes(unnormalized, false), NotNormalizedError);

    // single qubit is a legal state; the cut operations reject it
    const StateVector q1 = make_state({1, 1});
    CHECK(q1.qubits() == 1);
    CHECK_THROWS_AS(reduced_density_matrix(q1, 1), BadCutError);
    CHECK_THROWS_AS(amplitude_matrix(q1, 1), BadCutError);
}

TEST_CASE("leading qubit is the most significant bit") {
    // |011> must sit at amplitude index 3
    const StateVector psi = StateVector::basis(3, 3);
    CHECK(psi.amps()[3] == Complex{1, 0});
    // first qubit 0 -> row 0 of the cut-1 reshape, remaining bits 11 -> column 3
    CHECK(amplitude_matrix(psi, 1)(0, 3) == Complex{1, 0});
}

TEST_CASE("projective_point is scale invariant") {
    const ProjectivePoint eps = projective_point(eps_state());
    Vector raw(4);
    raw << 1, 0, 0, 1;
    CHECK(approx_equal(eps, ProjectivePoint(raw)));

    Vector ghz_coords(8);
    ghz_coords << 1, 0, 0, 0, 0, 0, 0, 1;
    CHECK(approx_equal(projective_point(ghz_state()), ProjectivePoint(ghz_coords)));

    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = haar_state(3, rng);
        const Complex lambda{0.3 + trial * 0.1, -1.7};
        CHECK(approx_equal(projective_point(psi), ProjectivePoint(lambda * psi.amps())));
    }
    CHECK_THROWS_AS(ProjectivePoint(Vector::Zero(4)), ZeroVectorError);
}

TEST_CASE("pauli_string_expectation matches the dense oracle") {
    // frozen oracle values first
    CHECK(dense_pauli_expectation(eps_state(), {1, 1}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pauli_string_expectation(make_state({1, 0, 0, 0}), std::vector<int>{3, 3}) ==
          doctest::Approx(1.0));
    CHECK(pauli_string_expectation(eps_state(), std::vector<int>{1, 1}) ==
          doctest::Approx(1.0).epsilon(1e-14));

    Rng rng(29);
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const StateVector psi = haar_state(n, rng);
            const int ell = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
            std::vector<int> indices(static_cast<std::size_t>(ell));
            for (int& idx : indices) idx = static_cast<int>(rng() % 4);
            const double direct = pauli_string_expectation(psi, indices);
            CHECK(std::abs(direct - dense_pauli_expectation(psi, indices)) < 1e-12);
        }
    }
}

TEST_CASE("pauli_string_expectation rejects bad strings") {
    const StateVector psi = eps_state();
    CHECK_THROWS_AS(pauli_string_expectation(psi, std::vector<int>{4}), BadPauliIndexError);
    CHECK_THROWS_AS(pauli_string_expectation(psi, std::vector<int>{-1, 0}), BadPauliIndexError);
    CHECK_THROWS_AS(pauli_string_expectation(psi, std::vector<int>{}), BadPauliIndexError);
    CHECK_THROWS_AS(pauli_string_expectation(psi, std::vector<int>{0, 0, 0}), BadPauliIndexError);
}

TEST_CASE("all-identity string returns 1 for every normalized state") {
    Rng rng(5);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 30; ++trial) {
            const StateVector psi = haar_state(n, rng);
            std::vector<int> identity(static_cast<std::size_t>(n), 0);
            CHECK(std::abs(pauli_string_expectation(psi, identity) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("reduced_density_matrix agrees with the outer-product oracle") {
    // frozen example values
    const Matrix eps_rho = reduced_density_matrix(eps_state(), 1).entries();
    CHECK(std::abs(eps_rho(0, 0).real() - 0.5) < 1e-14);
    CHECK(std::abs(eps_rho(1, 1).real() - 0.5) < 1e-14);
    CHECK(std::abs(eps_rho(0, 1)) < 1e-14);

    const Matrix sep_rho = reduced_density_matrix(make_state({1, 0, 0, 0}), 1).entries();
    CHECK(std::abs(sep_rho(0, 0).real() - 1.0) < 1e-14);
    CHECK(std::abs(sep_rho(1, 1)) < 1e-14);

    const Matrix ghz2 = reduced_density_matrix(ghz_state(), 2).entries();
    const Matrix ghz2_oracle = dense_partial_trace(ghz_state(), 2);
    CHECK((ghz2 - ghz2_oracle).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(ghz2(0, 0).real() - 0.5) < 1e-14);
    CHECK(std::abs(ghz2(3, 3).real() - 0.5) < 1e-14);
    CHECK(std::abs(ghz2(1, 1)) < 1e-14);
    CHECK(std::abs(ghz2(2, 2)) < 1e-14);

    Rng rng(17);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector psi = haar_state(n, rng);
            for (int ell = 1; ell <= n - 1; ++ell) {
                const Matrix fast = reduced_density_matrix(psi, ell).entries();
                CHECK((fast - dense_partial_trace(psi, ell)).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(reduced_density_matrix(ghz_state(), 0), BadCutError);
    CHECK_THROWS_AS(reduced_density_matrix(ghz_state(), 3), BadCutError);
}

TEST_CASE("marginals are Hermitian, unit-trace and PSD") {
    Rng rng(23);
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const StateVector psi = haar_state(n, rng);
            for (int ell = 1; ell <= n - 1; ++ell) {
                CHECK(reduced_density_matrix(psi, ell).is_valid(1e-10));
            }
        }
    }
}

TEST_CASE("purity of the W marginal cross-checked two ways") {
    Matrix pure(2, 2);
    pure << 1, 0, 0, 0;
    CHECK(purity(DensityMatrix(pure)) == doctest::Approx(1.0));
    Matrix mixed(2, 2);
    mixed << 0.5, 0, 0, 0.5;
    CHECK(purity(DensityMatrix(mixed)) == doctest::Approx(0.5));

    const DensityMatrix rho_w = reduced_density_matrix(w_state(), 1);
    // direct matrix square
    const double direct = (rho_w.entries() * rho_w.entries()).trace().real();
    CHECK(std::abs(direct - 5.0 / 9.0) < 1e-12);
    CHECK(std::abs(purity(rho_w) - 5.0 / 9.0) < 1e-12);
    // via the minor-sum observable: purity = 1 - J/2 with J(W) = 8/9
    CHECK(std::abs(purity(rho_w) - (1.0 - observable_minors(w_state(), 1) / 2.0)) < 1e-12);
}

TEST_CASE("amplitude_matrix follows the block layout and round-trips") {
    const Matrix ghz_block = amplitude_matrix(ghz_state(), 1);
    const double s = 1 / std::sqrt(2.0);
    CHECK(std::abs(ghz_block(0, 0).real() - s) < 1e-14);
    CHECK(std::abs(ghz_block(1, 3).real() - s) < 1e-14);
    CHECK(std::abs(ghz_block(0, 1)) + std::abs(ghz_block(0, 2)) + std::abs(ghz_block(0, 3)) +
              std::abs(ghz_block(1, 0)) + std::abs(ghz_block(1, 1)) + std::abs(ghz_block(1, 2)) <
          1e-14);

    // B1 = (|000> + |011>)/sqrt(2): index-arithmetic oracle for every entry
    const StateVector b1 = make_state({1, 0, 0, 1, 0, 0, 0, 0});
    const Matrix b1_block = amplitude_matrix(b1, 1);
    for (Index j = 0; j < b1_block.rows(); ++j) {
        for (Index m = 0; m < b1_block.cols(); ++m) {
            CHECK(b1_block(j, m) == b1.amps()[j * b1_block.cols() + m]);
        }
    }
    CHECK(std::abs(b1_block(0, 0).real() - s) < 1e-14);
    CHECK(std::abs(b1_block(0, 3).real() - s) < 1e-14);
    CHECK(b1_block.row(1).norm() < 1e-14);

    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const StateVector psi = haar_state(n, rng);
        for (int ell = 1; ell <= n - 1; ++ell) {
            const Matrix block = amplitude_matrix(psi, ell);
            CHECK(std::abs(block.norm() - 1.0) < 1e-12); // unit Frobenius norm
            Index flat = 0;
            bool round_trip = true;
            for (Index j = 0; j < block.rows(); ++j) {
                for (Index m = 0; m < block.cols(); ++m) {
                    round_trip = round_trip && block(j, m) == psi.amps()[flat++];
                }
            }
            CHECK(round_trip);
        }
    }
}

TEST_CASE("twice the marginal deficit equals the minor sum") {
    Rng rng(41);
    int states = 0;
    for (int n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 150; ++trial) {
            const StateVector psi = haar_state(n, rng);
            ++states;
            bool all_match = true;
            for (int ell = 1; ell <= n - 1; ++ell) {
                const double via_purity = 2.0 * (1.0 - purity(reduced_density_matrix(psi, ell)));
                all_match = all_match && std::abs(via_purity - observable_minors(psi, ell)) < 1e-9;
            }
            CHECK(all_match);
        }
    }
    CHECK(states >= 1000);
}
