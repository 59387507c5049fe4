#include "qsegre/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qsegre/ket.hpp"
#include "qsegre/random.hpp"

namespace qsegre {

using nlohmann::json;

std::string format_double(double v, int significant_digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, v);
    return buffer;
}

std::string format_complex(const Complex& c, int significant_digits) {
    if (c.imag() == 0.0) return format_double(c.real(), significant_digits);
    std::string out = format_double(c.real(), significant_digits);
    out += c.imag() < 0.0 ? "-" : "+";
    out += format_double(std::abs(c.imag()), significant_digits);
    out += "i";
    return out;
}

std::vector<int> resolve_order(const std::string& order, int n) {
    if (order.empty()) return {};
    std::vector<int> slots; // slots[j-1] = original qubit shown at slot j
    const bool alphabetic = std::all_of(order.begin(), order.end(), [](unsigned char c) {
        return std::isalpha(c) != 0;
    });
    if (alphabetic) {
        for (char c : order) {
            slots.push_back(std::toupper(static_cast<unsigned char>(c)) - 'A' + 1);
        }
    } else {
        std::string token;
        std::istringstream in(order);
        while (std::getline(in, token, ',')) {
            std::size_t used = 0;
            int value = 0;
            try {
                value = std::stoi(token, &used);
            } catch (const std::exception&) {
                throw BadPermutationError("order entry '" + token + "' is not an integer");
            }
            if (used != token.size()) {
                throw BadPermutationError("order entry '" + token + "' is not an integer");
            }
            slots.push_back(value);
        }
    }
    if (static_cast<int>(slots.size()) != n) {
        throw BadPermutationError("order names " + std::to_string(slots.size()) +
                                  " qubits, state has " + std::to_string(n));
    }
    std::vector<int> perm(slots.size(), 0);
    for (int j = 1; j <= n; ++j) {
        const int original = slots[static_cast<std::size_t>(j - 1)];
        if (original < 1 || original > n || perm[static_cast<std::size_t>(original - 1)] != 0) {
            throw BadPermutationError("order '" + order + "' is not a permutation of 1.." +
                                      std::to_string(n));
        }
        perm[static_cast<std::size_t>(original - 1)] = j;
    }
    return perm;
}

AnalysisDocument analyze_expression(const std::string& expression, const std::string& order,
                                    Engine engine, double epsilon) {
    AnalysisDocument doc;
    doc.input = expression;
    doc.order = order;
    doc.engine = engine_name(engine);
    doc.epsilon = epsilon;

    StateVector psi = evaluate(parse(expression), true);
    doc.permutation = resolve_order(order, psi.qubits());
    if (!doc.permutation.empty()) psi = permute_qubits(psi, doc.permutation);
    doc.n = psi.qubits();

    const auto start = std::chrono::steady_clock::now();
    const ObservableReport report = observable_report(psi, engine, epsilon);
    const auto stop = std::chrono::steady_clock::now();
    doc.timings[doc.engine] = std::chrono::duration<double>(stop - start).count();

    doc.values = report.values;
    doc.average = report.average;
    doc.q = report.q;
    if (report.q > 1) {
        const Classification cls = classify(psi, epsilon);
        if (cls.tree) {
            doc.spans = cls.tree->spans;
            doc.factors = cls.tree->factors;
            doc.phase = cls.tree->phase;
            doc.residual = cls.tree->residual;
        }
    }
    return doc;
}

namespace {

std::string bits_of(std::uint64_t index, int n) {
    std::string out(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k) {
        if ((index >> (n - 1 - k)) & 1U) out[static_cast<std::size_t>(k)] = '1';
    }
    return out;
}

std::string format_state_amplitudes(const StateVector& psi, int significant_digits = 17) {
    std::string out;
    for (Index i = 0; i < psi.dim(); ++i) {
        const Complex a = psi.amps()[i];
        if (std::abs(a) < 1e-15) continue;
        if (!out.empty()) out += " + ";
        const bool plain = a.imag() == 0.0 && a.real() > 0.0;
        const std::string coeff = format_complex(a, significant_digits);
        out += (plain ? coeff : "(" + coeff + ")") + "|" +
               bits_of(static_cast<std::uint64_t>(i), psi.qubits()) + ">";
    }
    return out.empty() ? "0" : out;
}

} // namespace

std::string document_text(const AnalysisDocument& doc) {
    std::ostringstream out;
    out << "input:    " << doc.input << "\n";
    if (!doc.order.empty()) out << "order:    " << doc.order << "\n";
    out << "qubits:   " << doc.n << "\n";
    out << "engine:   " << doc.engine << "\n";
    out << "epsilon:  " << format_double(doc.epsilon) << "\n";
    for (std::size_t i = 0; i < doc.values.size(); ++i) {
        out << "cut " << i + 1 << ":    " << format_double(doc.values[i]) << "\n";
    }
    out << "average:  " << format_double(doc.average) << "\n";
    out << "q:        " << doc.q << (doc.q == 1 ? " (entangled)" : "") << "\n";
    if (!doc.spans.empty()) {
        out << "factorization:\n";
        for (std::size_t i = 0; i < doc.spans.size(); ++i) {
            out << "  qubits " << doc.spans[i].first << ".." << doc.spans[i].second << ":  "
                << format_state_amplitudes(doc.factors[i]) << "\n";
        }
        out << "  phase:    " << format_complex(doc.phase) << "\n";
        out << "  residual: " << format_double(doc.residual) << "\n";
    }
    for (const auto& [engine, seconds] : doc.timings) {
        out << "time:     " << engine << " " << format_double(seconds) << " s\n";
    }
    return out.str();
}

std::string document_json(const AnalysisDocument& doc) {
    json j;
    j["input"] = doc.input;
    j["order"] = doc.order;
    j["n"] = doc.n;
    j["engine"] = doc.engine;
    j["epsilon"] = doc.epsilon;
    j["values"] = doc.values;
    j["average"] = doc.average;
    j["q"] = doc.q;
    j["spans"] = json::array();
    for (const auto& [first, last] : doc.spans) j["spans"].push_back({first, last});
    j["factors"] = json::array();
    for (std::size_t i = 0; i < doc.factors.size(); ++i) {
        json f;
        f["span"] = {doc.spans[i].first, doc.spans[i].second};
        json amps = json::array();
        for (Index k = 0; k < doc.factors[i].dim(); ++k) {
            const Complex a = doc.factors[i].amps()[k];
            amps.push_back({a.real(), a.imag()});
        }
        f["amplitudes"] = std::move(amps);
        j["factors"].push_back(std::move(f));
    }
    j["residual"] = doc.residual;
    if (doc.q > 1) j["phase"] = {doc.phase.real(), doc.phase.imag()};
    j["timings"] = doc.timings;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Named states and Dicke expressions
// ---------------------------------------------------------------------------

std::string dicke_expression(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw Error("Dicke parameters out of range");
    std::uint64_t binom = 1;
    for (int i = 1; i <= k; ++i) {
        binom = binom * static_cast<std::uint64_t>(n - i + 1) / static_cast<std::uint64_t>(i);
    }
    std::string sum;
    for (std::uint64_t mask = (std::uint64_t{1} << n); mask-- > 0;) {
        if (std::popcount(mask) != k) continue;
        if (!sum.empty()) sum += "+";
        sum += "|" + bits_of(mask, n) + ">";
    }
    if (binom == 1) return sum;
    return "1/sqrt(" + std::to_string(binom) + ")(" + sum + ")";
}

const std::vector<std::pair<std::string, std::string>>& named_states() {
    static const std::vector<std::pair<std::string, std::string>> states = {
        {"Sep", "|000>"},
        {"B1", "1/sqrt(2)(|000>+|011>)"},
        {"B2", "1/sqrt(2)(|000>+|101>)"},
        {"B3", "1/sqrt(2)(|000>+|110>)"},
        {"W", "1/sqrt(3)(|100>+|010>+|001>)"},
        {"GHZ", "1/sqrt(2)(|000>+|111>)"},
        {"EPS", "1/sqrt(2)(|00>+|11>)"},
        {"S4", "1/sqrt(2)(|0000>+|1111>)"},
        {"S5", "1/sqrt(2)(|00000>+|11111>)"},
        {"D(4,1)", dicke_expression(4, 1)},
        {"D(4,2)", dicke_expression(4, 2)},
        {"D(4,3)", dicke_expression(4, 3)},
        {"D(5,1)", dicke_expression(5, 1)},
        {"D(5,2)", dicke_expression(5, 2)},
        {"D(5,3)", dicke_expression(5, 3)},
        {"D(5,4)", dicke_expression(5, 4)},
        {"HS", "1/sqrt(6)(|1100>+|0011>+w|1001>+w|0110>+w^2|1010>+w^2|0101>)"},
        {"BSSB4", "1/2(|0000>+|+>|011>+|0101>+|->|110>)"},
        {"BSSB5", "1/2((|01>-|10>)|000>+(|00>-|11>)|001>+(|01>+|10>)|100>+(|00>+|11>)|111>)"},
    };
    return states;
}

std::string state_expression(const std::string& label) {
    for (const auto& [name, expression] : named_states()) {
        if (name == label) return expression;
    }
    throw Error("unknown state label '" + label + "'");
}

// ---------------------------------------------------------------------------
// Reference tables
// ---------------------------------------------------------------------------

namespace {

struct ExpectedColumn {
    std::string label;
    std::vector<double> values;
    double average;
};

Table build_table(const std::string& title, const std::vector<int>& permutation,
                  const std::string& footnote, const std::vector<ExpectedColumn>& expected,
                  double tolerance) {
    Table table;
    table.title = title;
    table.permutation = permutation;
    table.footnote = footnote;
    table.pass = true;
    for (const ExpectedColumn& column : expected) {
        TableColumn out;
        out.label = column.label;
        out.expression = state_expression(column.label);
        out.expected = column.values;
        out.expected_average = column.average;

        StateVector psi = evaluate(parse(out.expression), true);
        if (!permutation.empty()) psi = permute_qubits(psi, permutation);
        const ObservableReport report = observable_report(psi, Engine::purity, 1e-9);
        out.computed = report.values;
        out.computed_average = report.average;

        out.pass = out.computed.size() == out.expected.size();
        if (out.pass) {
            for (std::size_t i = 0; i < out.expected.size(); ++i) {
                out.pass = out.pass && std::abs(out.computed[i] - out.expected[i]) < tolerance;
            }
            out.pass = out.pass && std::abs(out.computed_average - out.expected_average) < tolerance;
        }
        table.pass = table.pass && out.pass;
        table.columns.push_back(std::move(out));
    }
    return table;
}

} // namespace

std::vector<Table> reference_tables(double tolerance) {
    // B1 = |0>(x)Bell splits exactly at the first cut, so its cut-1 observable
    // is 0 and its cut-2 observable is 1; B3 = Bell(x)|0> is the mirror case.
    const std::string b_note =
        "note: B1 splits at cut 1 (leading qubit factors out) and B3 at cut 2, so their "
        "rows read (0,1) and (1,0); the averages are unaffected.";

    std::vector<Table> tables;
    tables.push_back(build_table(
        "three-particle observables, basis order ABC", {}, b_note,
        {{"Sep", {0, 0}, 0},
         {"B1", {0, 1}, 0.5},
         {"B2", {1, 1}, 1},
         {"B3", {1, 0}, 0.5},
         {"W", {8.0 / 9, 8.0 / 9}, 8.0 / 9},
         {"GHZ", {1, 1}, 1}},
        tolerance));
    tables.push_back(build_table(
        "three-particle observables, basis order ACB", resolve_order("ACB", 3),
        "note: reordering to ACB exchanges the roles of B2 and B3.",
        {{"Sep", {0, 0}, 0},
         {"B1", {0, 1}, 0.5},
         {"B2", {1, 0}, 0.5},
         {"B3", {1, 1}, 1},
         {"W", {8.0 / 9, 8.0 / 9}, 8.0 / 9},
         {"GHZ", {1, 1}, 1}},
        tolerance));
    tables.push_back(build_table(
        "four-particle Dicke states", {}, "",
        {{"D(4,1)", {0.75, 1, 0.75}, 5.0 / 6},
         {"D(4,2)", {1, 1, 1}, 1},
         {"D(4,3)", {0.75, 1, 0.75}, 5.0 / 6}},
        tolerance));
    tables.push_back(build_table(
        "five-particle Dicke states", {}, "",
        {{"D(5,1)", {16.0 / 25, 24.0 / 25, 24.0 / 25, 16.0 / 25}, 0.8},
         {"D(5,2)", {24.0 / 25, 27.0 / 25, 27.0 / 25, 24.0 / 25}, 51.0 / 50},
         {"D(5,3)", {24.0 / 25, 27.0 / 25, 27.0 / 25, 24.0 / 25}, 51.0 / 50},
         {"D(5,4)", {16.0 / 25, 24.0 / 25, 24.0 / 25, 16.0 / 25}, 0.8}},
        tolerance));
    tables.push_back(build_table(
        "four-particle reference states", {}, "",
        {{"S4", {1, 1, 1}, 1},
         {"D(4,2)", {1, 1, 1}, 1},
         {"BSSB4", {0.75, 1.25, 1}, 1},
         {"HS", {1, 4.0 / 3, 1}, 10.0 / 9}},
        tolerance));
    tables.push_back(build_table(
        "five-particle reference states", {}, "",
        {{"S5", {1, 1, 1, 1}, 1},
         {"D(5,2)", {24.0 / 25, 27.0 / 25, 27.0 / 25, 24.0 / 25}, 51.0 / 50},
         {"BSSB5", {1, 1.5, 1.25, 1}, 19.0 / 16}},
        tolerance));
    return tables;
}

namespace {

std::string joined_values(const std::vector<double>& values, double average) {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i], 10);
    }
    out += ") avg " + format_double(average, 10);
    return out;
}

} // namespace

std::string tables_text(const std::vector<Table>& tables) {
    std::ostringstream out;
    for (const Table& table : tables) {
        out << "== " << table.title << " ==\n";
        std::size_t width = 8;
        for (const TableColumn& c : table.columns) width = std::max(width, c.label.size() + 2);
        std::size_t value_width = 30;
        for (const TableColumn& c : table.columns) {
            value_width = std::max(value_width,
                                   joined_values(c.computed, c.computed_average).size() + 2);
        }
        auto pad = [](const std::string& s, std::size_t w) {
            return s + std::string(s.size() < w ? w - s.size() : 1, ' ');
        };
        out << pad("state", width) << pad("computed", value_width)
            << pad("expected", value_width) << "status\n";
        for (const TableColumn& c : table.columns) {
            out << pad(c.label, width)
                << pad(joined_values(c.computed, c.computed_average), value_width)
                << pad(joined_values(c.expected, c.expected_average), value_width)
                << (c.pass ? "PASS" : "FAIL") << "\n";
        }
        if (!table.footnote.empty()) out << table.footnote << "\n";
        out << "\n";
    }
    out << (tables_pass(tables) ? "all tables PASS" : "some tables FAIL") << "\n";
    return out.str();
}

std::string tables_json(const std::vector<Table>& tables) {
    json root;
    root["tables"] = json::array();
    for (const Table& table : tables) {
        json t;
        t["title"] = table.title;
        t["order"] = table.permutation;
        t["footnote"] = table.footnote;
        t["pass"] = table.pass;
        t["columns"] = json::array();
        for (const TableColumn& c : table.columns) {
            json col;
            col["state"] = c.label;
            col["expression"] = c.expression;
            col["computed"] = c.computed;
            col["computed_average"] = c.computed_average;
            col["expected"] = c.expected;
            col["expected_average"] = c.expected_average;
            col["pass"] = c.pass;
            t["columns"].push_back(std::move(col));
        }
        root["tables"].push_back(std::move(t));
    }
    root["pass"] = tables_pass(tables);
    return root.dump(2);
}

bool tables_pass(const std::vector<Table>& tables) {
    for (const Table& table : tables) {
        if (!table.pass) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Engine benchmark
// ---------------------------------------------------------------------------

BenchReport run_bench(int n, int ell, int reps, std::uint64_t seed) {
    if (n < 2 || ell < 1 || ell > n - 1) throw BadCutError(ell, n);
    if (n > 24) throw TooLargeError("purity engine benchmark is guarded to n <= 24");
    if (2 * ell + n > 34) {
        throw TooLargeError("pauli engine benchmark is guarded to 4^ell * 2^n <= 2^34");
    }
    if (reps < 0) throw Error("reps must be nonnegative");

    Rng rng(seed);
    const StateVector psi = haar_state(n, rng);

    BenchReport report;
    report.n = n;
    report.ell = ell;
    report.reps = reps;
    report.value_purity = observable_purity(psi, ell);
    report.value_pauli = observable_pauli(psi, ell);
    report.max_disagreement = std::abs(report.value_purity - report.value_pauli);
    // Minor enumeration explodes quadratically in both block sizes; only time
    // it when the count stays reasonable.
    const double minor_terms = minor_count((1 << ell) - 1, (1 << (n - ell)) - 1);
    report.has_minors = minor_terms <= double(1 << 26);
    if (report.has_minors) {
        report.value_minors = observable_minors(psi, ell);
        report.max_disagreement = std::max(report.max_disagreement,
                                           std::abs(report.value_minors - report.value_purity));
    }
    report.agree = report.max_disagreement < 1e-8;

    if (reps > 0 && report.agree) {
        volatile double sink = 0.0;
        auto time_engine = [&](Engine engine) {
            const auto start = std::chrono::steady_clock::now();
            for (int r = 0; r < reps; ++r) sink = sink + observable(psi, ell, engine);
            const auto stop = std::chrono::steady_clock::now();
            return std::chrono::duration<double>(stop - start).count();
        };
        report.seconds_purity = time_engine(Engine::purity);
        report.seconds_pauli = time_engine(Engine::pauli);
        if (report.has_minors) report.seconds_minors = time_engine(Engine::minors);
        report.speedup = report.seconds_pauli / report.seconds_purity;
    }
    return report;
}

} // namespace qsegre
