#pragma once

#include <string>
#include <vector>

#include "qsegre/state.hpp"

namespace qsegre {

/// The three independent algorithms that compute the cut observable.
enum class Engine { pauli, minors, purity };

Engine engine_from_name(const std::string& name);
std::string engine_name(Engine engine);

/// Observable for the bipartite cut after qubit `ell`: zero exactly when the
/// state factors into (leading ell qubits) x (rest), positive otherwise, and
/// equal to twice the Tsallis-2 entropy of the leading marginal.
///
/// Pauli-sum engine: 2 - 2^(1-ell) * sum over all 4^ell Pauli strings on the
/// leading block of the squared expectation values. O(4^ell * 2^n * ell).
double observable_pauli(const StateVector& psi, int ell);

/// Minor-sum engine: 4 * sum of squared moduli of every 2x2 minor of the
/// 2^ell x 2^(n-ell) amplitude matrix. Reference engine, O(4^n) worst case.
double observable_minors(const StateVector& psi, int ell);

/// Purity engine: 2 * (1 - Tr rho^2) of the marginal at the cut. The trace is
/// taken on the smaller side of the cut (both sides share a spectrum), so the
/// cost is O(2^(n + min(ell, n-ell))). Default engine.
double observable_purity(const StateVector& psi, int ell);

double observable(const StateVector& psi, int ell, Engine engine);

/// Cut observables for every ell, their average, and the inferred partition
/// count q = 1 + #{ell : value < epsilon}.
struct ObservableReport {
    int n = 0;
    std::vector<double> values;  // values[ell-1] for ell = 1..n-1
    double average = 0.0;
    std::vector<bool> vanishing; // value < epsilon
    int q = 1;
    Engine engine = Engine::purity;
};

/// Computes all n-1 cuts. The cuts are independent and evaluated
/// concurrently; results are assembled in cut order, so the output is
/// deterministic. The default vanishing threshold is 1e-9.
ObservableReport observable_report(const StateVector& psi, Engine engine = Engine::purity,
                                   double epsilon = 1e-9);

/// Largest engine disagreement over seeded Haar-random states.
struct EngineDeviation {
    double pauli_vs_minors = 0.0;
    double minors_vs_purity = 0.0;
};

EngineDeviation max_engine_deviation(int n, int trials, std::uint64_t seed);

} // namespace qsegre
