#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <array>
#include <thread>

#include "qsegre/analysis.hpp"
#include "qsegre/ket.hpp"
#include "qsegre/observables.hpp"
#include "qsegre/random.hpp"
#include "qsegre/segre.hpp"

#include "helpers.hpp"

using namespace qsegre;
using namespace qsegre::testing;

namespace {

// Test-local minor sum built from scratch on index arithmetic (no
// amplitude_matrix): 4 * sum over row pairs and column pairs.
double minor_sum_oracle(const StateVector& psi, int ell) {
    const Index rows = Index{1} << ell;
    const Index cols = psi.dim() / rows;
    auto at = [&](Index j, Index m) { return psi.amps()[j * cols + m]; };
    double sum = 0.0;
    for (Index j = 0; j < rows; ++j) {
        for (Index k = j + 1; k < rows; ++k) {
            for (Index s = 0; s < cols; ++s) {
                for (Index t = s + 1; t < cols; ++t) {
                    sum += std::norm(at(j, s) * at(k, t) - at(j, t) * at(k, s));
                }
            }
        }
    }
    return 4.0 * sum;
}

StateVector catalog(const std::string& label) {
    return evaluate(parse(state_expression(label)), true);
}

} // namespace

TEST_CASE("pauli-sum engine on the reference states") {
    CHECK(observable_pauli(eps_state(), 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(observable_pauli(make_state({1, 0, 0, 0}), 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(observable_pauli(w_state(), 1) == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK_THROWS_AS(observable_pauli(eps_state(), 2), BadCutError);
}

TEST_CASE("minor-sum engine against the index-arithmetic oracle") {
    const StateVector b1 = make_state({1, 0, 0, 1, 0, 0, 0, 0});
    CHECK(minor_sum_oracle(b1, 1) == doctest::Approx(0.0));
    CHECK(observable_minors(b1, 1) == doctest::Approx(0.0));
    CHECK(observable_minors(b1, 2) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(observable_minors(ghz_state(), 1) == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(101);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const StateVector psi = haar_state(n, rng);
            for (int ell = 1; ell <= n - 1; ++ell) {
                CHECK(std::abs(observable_minors(psi, ell) - minor_sum_oracle(psi, ell)) < 1e-12);
            }
        }
    }
}

TEST_CASE("Schmidt angle law") {
    for (int k = 0; k < 64; ++k) {
        const double theta = (3.14159265358979323846 / 4.0) * k / 63.0;
        const StateVector psi = make_state({std::cos(theta), 0, 0, std::sin(theta)}, false);
        const double expected = 4.0 * std::pow(std::cos(theta) * std::sin(theta), 2);
        CHECK(std::abs(observable_minors(psi, 1) - expected) < 1e-12);
        CHECK(std::abs(observable_purity(psi, 1) - expected) < 1e-12);
        CHECK(std::abs(observable_pauli(psi, 1) - expected) < 1e-12);
    }
}

TEST_CASE("purity engine on the reference states") {
    CHECK(observable_purity(eps_state(), 1) == doctest::Approx(1.0).epsilon(1e-12));
    const StateVector d42 = catalog("D(4,2)");
    for (int ell = 1; ell <= 3; ++ell) {
        CHECK(observable_purity(d42, ell) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(observable_purity(catalog("D(5,2)"), 2) ==
          doctest::Approx(27.0 / 25.0).epsilon(1e-12));
}

TEST_CASE("report aggregates all cuts") {
    const ObservableReport ghz = observable_report(ghz_state(), Engine::purity, 1e-9);
    CHECK(ghz.values.size() == 2);
    CHECK(ghz.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ghz.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ghz.average == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ghz.q == 1);

    const ObservableReport sep = observable_report(StateVector::basis(5, 0), Engine::minors, 1e-9);
    CHECK(sep.q == 5);
    for (double v : sep.values) CHECK(std::abs(v) < 1e-15);

    const ObservableReport bssb5 = observable_report(catalog("BSSB5"), Engine::purity, 1e-9);
    CHECK(bssb5.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bssb5.values[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(bssb5.values[2] == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(bssb5.values[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bssb5.average == doctest::Approx(19.0 / 16.0).epsilon(1e-12));
    CHECK(bssb5.q == 1);

    CHECK_THROWS_AS(engine_from_name("bogus"), BadEngineError);
    CHECK_THROWS_AS(observable_report(StateVector::basis(1, 0), Engine::purity, 1e-9),
                    BadCutError);
}

TEST_CASE("report invariants on random states") {
    Rng rng(7);
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const StateVector psi = haar_state(n, rng);
            const ObservableReport rep = observable_report(psi, Engine::purity, 1e-9);
            double total = 0.0;
            for (std::size_t i = 0; i < rep.values.size(); ++i) {
                const int ell = static_cast<int>(i) + 1;
                const int smaller = std::min(ell, n - ell);
                CHECK(rep.values[i] > -1e-9);
                CHECK(rep.values[i] < 2.0 + 1e-9);
                CHECK(rep.values[i] <= 2.0 * (1.0 - std::pow(2.0, -smaller)) + 1e-9);
                total += rep.values[i];
            }
            CHECK(std::abs(rep.average - total / static_cast<double>(n - 1)) < 1e-12);
            CHECK(rep.q >= 1);
            CHECK(rep.q <= n);
        }
    }
}

TEST_CASE("engines agree on random states") {
    Rng rng(61);
    double worst_pm = 0.0, worst_mu = 0.0;
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            const StateVector psi = haar_state(n, rng);
            for (int ell = 1; ell <= n - 1; ++ell) {
                const double p = observable_pauli(psi, ell);
                const double m = observable_minors(psi, ell);
                const double u = observable_purity(psi, ell);
                worst_pm = std::max(worst_pm, std::abs(p - m));
                worst_mu = std::max(worst_mu, std::abs(m - u));
            }
        }
    }
    CHECK(worst_pm < 1e-8);
    CHECK(worst_mu < 1e-9);
}

TEST_CASE("global phase leaves the report unchanged") {
    Rng rng(83);
    std::uniform_real_distribution<double> angle(0.0, 6.28318530717958648);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const StateVector psi = haar_state(n, rng);
        const Complex phase = std::polar(1.0, angle(rng));
        const StateVector rotated = StateVector::from_amplitudes(phase * psi.amps(), true);
        const ObservableReport a = observable_report(psi, Engine::purity, 1e-9);
        const ObservableReport b = observable_report(rotated, Engine::purity, 1e-9);
        CHECK(a.q == b.q);
        CHECK(a.vanishing == b.vanishing);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(std::abs(a.values[i] - b.values[i]) < 1e-12);
        }
    }
}

TEST_CASE("local unitaries at the cut leave the observable unchanged") {
    Rng rng(89);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const StateVector psi = haar_state(n, rng);
        for (int ell = 1; ell <= n - 1; ++ell) {
            const Matrix u = haar_unitary(Index{1} << ell, rng);
            const Matrix v = haar_unitary(Index{1} << (n - ell), rng);
            // (U (x) V) psi through the block reshape: U * M * V^T
            const Matrix block = amplitude_matrix(psi, ell);
            const Matrix rotated_block = u * block * v.transpose();
            Vector amps(psi.dim());
            Index flat = 0;
            for (Index r = 0; r < rotated_block.rows(); ++r) {
                for (Index c = 0; c < rotated_block.cols(); ++c) {
                    amps[flat++] = rotated_block(r, c);
                }
            }
            const StateVector rotated = StateVector::from_amplitudes(amps, true);
            CHECK(std::abs(observable_purity(rotated, ell) - observable_purity(psi, ell)) < 1e-9);
        }
    }
}

TEST_CASE("products across the cut have vanishing observable") {
    Rng rng(131);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int ell = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        const StateVector left = haar_state(ell, rng);
        const StateVector right = haar_state(n - ell, rng);
        const StateVector product = tensor_product({left, right});
        CHECK(observable_purity(product, ell) < 1e-10);
        CHECK(observable_minors(product, ell) < 1e-10);
    }
}

TEST_CASE("observables are safe to evaluate concurrently") {
    Rng rng(197);
    const StateVector psi = haar_state(6, rng);
    std::vector<double> expected;
    for (int ell = 1; ell <= 5; ++ell) expected.push_back(observable_purity(psi, ell));

    std::vector<std::thread> workers;
    std::array<bool, 8> ok{};
    for (std::size_t w = 0; w < ok.size(); ++w) {
        workers.emplace_back([&, w] {
            bool good = true;
            for (int repeat = 0; repeat < 20; ++repeat) {
                for (int ell = 1; ell <= 5; ++ell) {
                    good = good &&
                           observable_purity(psi, ell) == expected[static_cast<std::size_t>(ell - 1)];
                }
            }
            ok[w] = good;
        });
    }
    for (std::thread& t : workers) t.join();
    for (bool good : ok) CHECK(good);
}
