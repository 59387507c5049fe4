#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsegre/observables.hpp"
#include "qsegre/segre.hpp"
#include "qsegre/state.hpp"

namespace qsegre {

std::string format_double(double v, int significant_digits = 17);
std::string format_complex(const Complex& c, int significant_digits = 17);

/// Full analysis of one input expression: observables, average, inferred q,
/// and the factorization when the state separates.
struct AnalysisDocument {
    std::string input;
    std::string order;            // permutation echo ("" when none)
    std::vector<int> permutation; // resolved (new position per original qubit)
    int n = 0;
    std::string engine;
    double epsilon = 1e-9;
    std::vector<double> values;
    double average = 0.0;
    int q = 1;
    std::vector<std::pair<int, int>> spans;
    std::vector<StateVector> factors;
    Complex phase{1.0, 0.0};
    double residual = 0.0;
    std::map<std::string, double> timings; // seconds per engine used
};

/// Turns an order word ("ACB": slot j shows original qubit word[j]) or an
/// explicit comma-separated slot list ("1,3,2") into the permutation format
/// permute_qubits expects. Empty input means no reordering.
std::vector<int> resolve_order(const std::string& order, int n);

AnalysisDocument analyze_expression(const std::string& expression, const std::string& order,
                                    Engine engine, double epsilon);

std::string document_text(const AnalysisDocument& doc);
std::string document_json(const AnalysisDocument& doc);

/// Equal-weight superposition of all n-bit kets with exactly k ones, written
/// out in the input grammar.
std::string dicke_expression(int n, int k);

/// The named reference states the table suites use.
const std::vector<std::pair<std::string, std::string>>& named_states();
std::string state_expression(const std::string& label);

// ---------------------------------------------------------------------------
// Reference tables
// ---------------------------------------------------------------------------

struct TableColumn {
    std::string label;
    std::string expression;
    std::vector<double> expected;
    double expected_average = 0.0;
    std::vector<double> computed;
    double computed_average = 0.0;
    bool pass = false;
};

struct Table {
    std::string title;
    std::vector<int> permutation; // applied before analysis (empty: none)
    std::string footnote;
    std::vector<TableColumn> columns;
    bool pass = false;
};

/// Recomputes every reference table from scratch and compares against the
/// frozen expected values at the given tolerance.
std::vector<Table> reference_tables(double tolerance = 1e-9);

std::string tables_text(const std::vector<Table>& tables);
std::string tables_json(const std::vector<Table>& tables);
bool tables_pass(const std::vector<Table>& tables);

// ---------------------------------------------------------------------------
// Engine benchmark
// ---------------------------------------------------------------------------

struct BenchReport {
    int n = 0, ell = 0, reps = 0;
    double value_purity = 0.0, value_pauli = 0.0, value_minors = 0.0;
    bool has_minors = false;
    double seconds_purity = 0.0, seconds_pauli = 0.0, seconds_minors = 0.0;
    double speedup = 0.0; // pauli seconds / purity seconds (reps > 0)
    double max_disagreement = 0.0;
    bool agree = false; // within 1e-8
};

/// Times the engines on one seeded Haar-random state after asserting they
/// agree. reps == 0 runs the validation only.
BenchReport run_bench(int n, int ell, int reps, std::uint64_t seed);

} // namespace qsegre
