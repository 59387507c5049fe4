#include "qsegre/observables.hpp"

#include <cmath>
#include <future>

#include "qsegre/random.hpp"

namespace qsegre {

Engine engine_from_name(const std::string& name) {
    if (name == "pauli") return Engine::pauli;
    if (name == "minors") return Engine::minors;
    if (name == "purity") return Engine::purity;
    throw BadEngineError("unknown engine '" + name + "' (expected pauli, minors or purity)");
}

std::string engine_name(Engine engine) {
    switch (engine) {
    case Engine::pauli: return "pauli";
    case Engine::minors: return "minors";
    case Engine::purity: return "purity";
    }
    throw BadEngineError("unknown engine value");
}

namespace {

void check_cut(const StateVector& psi, int ell) {
    if (ell < 1 || ell > psi.qubits() - 1) throw BadCutError(ell, psi.qubits());
}

} // namespace

double observable_pauli(const StateVector& psi, int ell) {
    check_cut(psi, ell);
    std::vector<int> indices(static_cast<std::size_t>(ell), 0);
    double sum = 0.0;
    const std::uint64_t strings = std::uint64_t{1} << (2 * ell);
    for (std::uint64_t code = 0; code < strings; ++code) {
        std::uint64_t rest = code;
        for (int pos = 0; pos < ell; ++pos) {
            indices[static_cast<std::size_t>(pos)] = static_cast<int>(rest & 3U);
            rest >>= 2;
        }
        const double value = pauli_string_expectation(psi, indices);
        sum += value * value;
    }
    return 2.0 - sum / static_cast<double>(std::uint64_t{1} << (ell - 1));
}

double observable_minors(const StateVector& psi, int ell) {
    check_cut(psi, ell);
    const Matrix block = amplitude_matrix(psi, ell);
    double sum = 0.0;
    for (Index j = 0; j + 1 < block.rows(); ++j) {
        for (Index k = j + 1; k < block.rows(); ++k) {
            for (Index s = 0; s + 1 < block.cols(); ++s) {
                for (Index t = s + 1; t < block.cols(); ++t) {
                    const Complex minor = block(j, s) * block(k, t) - block(j, t) * block(k, s);
                    sum += std::norm(minor);
                }
            }
        }
    }
    return 4.0 * sum;
}

double observable_purity(const StateVector& psi, int ell) {
    check_cut(psi, ell);
    const int n = psi.qubits();
    if (ell <= n - ell) {
        return 2.0 * (1.0 - purity(reduced_density_matrix(psi, ell)));
    }
    // Both marginals of a pure state share a spectrum; trace the smaller one.
    const Matrix block = amplitude_matrix(psi, ell);
    return 2.0 * (1.0 - (block.adjoint() * block).squaredNorm());
}

double observable(const StateVector& psi, int ell, Engine engine) {
    switch (engine) {
    case Engine::pauli: return observable_pauli(psi, ell);
    case Engine::minors: return observable_minors(psi, ell);
    case Engine::purity: return observable_purity(psi, ell);
    }
    throw BadEngineError("unknown engine value");
}

ObservableReport observable_report(const StateVector& psi, Engine engine, double epsilon) {
    const int n = psi.qubits();
    if (n < 2) throw BadCutError(1, n);
    if (epsilon <= 0.0) throw Error("vanishing threshold must be positive");

    ObservableReport report;
    report.n = n;
    report.engine = engine;
    report.values.resize(static_cast<std::size_t>(n - 1));

    std::vector<std::future<double>> futures;
    futures.reserve(static_cast<std::size_t>(n - 1));
    for (int ell = 1; ell <= n - 1; ++ell) {
        futures.push_back(std::async(std::launch::async,
                                     [&psi, ell, engine] { return observable(psi, ell, engine); }));
    }
    double total = 0.0;
    for (int ell = 1; ell <= n - 1; ++ell) {
        const double value = futures[static_cast<std::size_t>(ell - 1)].get();
        report.values[static_cast<std::size_t>(ell - 1)] = value;
        total += value;
    }
    report.average = total / static_cast<double>(n - 1);
    report.vanishing.resize(report.values.size());
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        report.vanishing[i] = report.values[i] < epsilon;
        report.q += report.vanishing[i] ? 1 : 0;
    }
    return report;
}

EngineDeviation max_engine_deviation(int n, int trials, std::uint64_t seed) {
    Rng rng(seed);
    EngineDeviation dev;
    for (int trial = 0; trial < trials; ++trial) {
        const StateVector psi = haar_state(n, rng);
        for (int ell = 1; ell <= n - 1; ++ell) {
            const double p = observable_pauli(psi, ell);
            const double m = observable_minors(psi, ell);
            const double u = observable_purity(psi, ell);
            dev.pauli_vs_minors = std::max(dev.pauli_vs_minors, std::abs(p - m));
            dev.minors_vs_purity = std::max(dev.minors_vs_purity, std::abs(m - u));
        }
    }
    return dev;
}

} // namespace qsegre
