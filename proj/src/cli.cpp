#include "qsegre/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qsegre/analysis.hpp"
#include "qsegre/ket.hpp"
#include "qsegre/observables.hpp"
#include "qsegre/segre.hpp"

namespace qsegre::cli {

namespace {

struct AnalyzeOptions {
    std::string state;
    std::string file;
    std::string order;
    std::string engine = "purity";
    double epsilon = 1e-9;
    bool json = false;
};

int do_analyze(const AnalyzeOptions& opts, std::ostream& out) {
    std::vector<std::string> expressions;
    if (!opts.file.empty()) {
        std::ifstream in(opts.file);
        if (!in) throw Error("cannot open file '" + opts.file + "'");
        std::string line;
        while (std::getline(in, line)) {
            const auto head = line.find_first_not_of(" \t\r");
            if (head == std::string::npos || line[head] == '#') continue;
            expressions.push_back(line);
        }
        if (expressions.empty()) throw Error("file '" + opts.file + "' holds no expressions");
    } else {
        expressions.push_back(opts.state);
    }

    std::vector<AnalysisDocument> docs;
    docs.reserve(expressions.size());
    for (const std::string& expression : expressions) {
        docs.push_back(analyze_expression(expression, opts.order,
                                          engine_from_name(opts.engine), opts.epsilon));
    }
    if (opts.json) {
        if (docs.size() == 1) {
            out << document_json(docs.front()) << "\n";
        } else {
            out << "[\n";
            for (std::size_t i = 0; i < docs.size(); ++i) {
                std::istringstream lines(document_json(docs[i]));
                std::string line;
                while (std::getline(lines, line)) out << "  " << line << "\n";
                if (i + 1 < docs.size()) out << ",\n";
            }
            out << "]\n";
        }
    } else {
        for (std::size_t i = 0; i < docs.size(); ++i) {
            if (i) out << "\n";
            out << document_text(docs[i]);
        }
    }
    return 0;
}

int do_tables(bool json, std::ostream& out) {
    const std::vector<Table> tables = reference_tables(1e-9);
    out << (json ? tables_json(tables) : tables_text(tables));
    if (json) out << "\n";
    return tables_pass(tables) ? 0 : 1;
}

int do_verify(int n, int trials, std::uint64_t seed, std::ostream& out) {
    if (n < 2 || n > 8) throw TooLargeError("verify is guarded to 2 <= n <= 8");
    if (trials < 1) throw Error("trials must be positive");
    bool pass = true;

    const EngineDeviation dev = max_engine_deviation(n, trials, seed);
    const bool engines_ok = dev.pauli_vs_minors < 1e-8 && dev.minors_vs_purity < 1e-9;
    pass = pass && engines_ok;
    out << "engine equivalence      n=" << n << " trials=" << trials
        << ": max |pauli-minors| = " << format_double(dev.pauli_vs_minors, 3)
        << ", max |minors-purity| = " << format_double(dev.minors_vs_purity, 3) << "  "
        << (engines_ok ? "PASS" : "FAIL") << "\n";

    if (n <= 5) {
        const AgreementReport agreement = classify_agreement(n, trials, seed);
        const bool agree_ok = agreement.disagreements == 0;
        pass = pass && agree_ok;
        out << "classify vs exhaustive  n=" << n << " trials/shape=" << trials << ": states="
            << agreement.states_tested << " disagreements=" << agreement.disagreements << "  "
            << (agree_ok ? "PASS" : "FAIL") << "\n";
    } else {
        out << "classify vs exhaustive  n=" << n << ": skipped (guarded to n <= 5)\n";
    }

    const TripleIntersectionReport triple = triple_intersection_check(trials, {1, 1, 1}, seed);
    pass = pass && triple.ok();
    out << "triple intersection     dims=(1,1,1) trials=" << trials << ": products "
        << triple.product_pass << "/" << triple.trials << ", one-sided " << triple.one_sided_pass
        << "/" << triple.trials << ", intersection " << triple.intersection_pass << "/"
        << triple.intersection_detected << "  " << (triple.ok() ? "PASS" : "FAIL") << "\n";

    out << (pass ? "verify PASS" : "verify FAIL") << "\n";
    return pass ? 0 : 1;
}

int do_bench(int n, int ell, int reps, std::uint64_t seed, std::ostream& out) {
    const BenchReport report = run_bench(n, ell, reps, seed);
    out << "bench n=" << n << " ell=" << ell << " reps=" << reps << "\n";
    auto line = [&](const char* name, double value, double seconds) {
        out << "  " << name << "  value=" << format_double(value);
        if (report.reps > 0 && report.agree) {
            out << "  time=" << format_double(seconds, 6) << " s"
                << "  ops/sec=" << format_double(report.reps / seconds, 6);
        }
        out << "\n";
    };
    line("purity", report.value_purity, report.seconds_purity);
    line("pauli ", report.value_pauli, report.seconds_pauli);
    if (report.has_minors) line("minors", report.value_minors, report.seconds_minors);
    out << "  agreement: max |delta| = " << format_double(report.max_disagreement, 3)
        << " (tolerance 1e-8)  " << (report.agree ? "PASS" : "FAIL") << "\n";
    if (report.reps > 0 && report.agree) {
        out << "  speedup purity vs pauli: " << format_double(report.speedup, 4) << "x\n";
    }
    return report.agree ? 0 : 1;
}

int do_embed(const std::vector<std::string>& expressions, std::ostream& out) {
    std::vector<StateVector> states;
    std::vector<ProjectivePoint> points;
    std::vector<int> dims;
    for (const std::string& expression : expressions) {
        states.push_back(evaluate(parse(expression), true));
        points.push_back(projective_point(states.back()));
        dims.push_back(static_cast<int>(states.back().dim()) - 1);
    }
    const ProjectivePoint image = generalized_segre_embed(points, SegreShape(dims));
    out << "[";
    for (Index i = 0; i < image.coords().size(); ++i) {
        if (i) out << " : ";
        out << format_complex(image.coords()[i]);
    }
    out << "]\n";

    const StateVector product = tensor_product(states);
    const ObservableReport report = observable_report(product, Engine::purity, 1e-9);
    bool boundaries_vanish = true;
    int boundary = 0;
    std::string cut_list;
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
        boundary += states[i].qubits();
        boundaries_vanish =
            boundaries_vanish && report.vanishing[static_cast<std::size_t>(boundary - 1)];
        if (!cut_list.empty()) cut_list += ",";
        cut_list += std::to_string(boundary);
    }
    out << "image: n=" << product.qubits() << " q=" << report.q << " boundary cuts {" << cut_list
        << "} vanish: " << (boundaries_vanish ? "yes" : "NO") << "\n";
    return boundaries_vanish ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entanglement structure of pure n-qubit states"};
    app.require_subcommand(1);

    AnalyzeOptions analyze_opts;
    CLI::App* analyze = app.add_subcommand("analyze", "cut observables and factorization");
    analyze->add_option("--state", analyze_opts.state, "state expression, e.g. \"1/sqrt(2)(|00>+|11>)\"");
    analyze->add_option("--file", analyze_opts.file, "file with one expression per line, # comments");
    analyze->add_option("--order", analyze_opts.order, "basis order word (ACB) or slot list (1,3,2)");
    analyze->add_option("--engine", analyze_opts.engine, "pauli|minors|purity")
        ->check(CLI::IsMember({"pauli", "minors", "purity"}));
    analyze->add_option("--epsilon", analyze_opts.epsilon, "vanishing threshold");
    analyze->add_flag("--json", analyze_opts.json, "machine-readable output");

    bool tables_json_flag = false;
    CLI::App* tables = app.add_subcommand("tables", "recompute the reference tables");
    tables->add_flag("--json", tables_json_flag, "machine-readable output");

    int verify_n = 0, verify_trials = 0;
    std::uint64_t verify_seed = 0;
    CLI::App* verify = app.add_subcommand("verify", "randomized self-checks");
    verify->add_option("--n", verify_n, "qubit count")->required();
    verify->add_option("--trials", verify_trials, "trials per suite")->required();
    verify->add_option("--seed", verify_seed, "random seed")->required();

    int bench_n = 0, bench_ell = 0, bench_reps = 0;
    std::uint64_t bench_seed = 0;
    CLI::App* bench = app.add_subcommand("bench", "time the engines against each other");
    bench->add_option("--n", bench_n, "qubit count")->required();
    bench->add_option("--ell", bench_ell, "cut position")->required();
    bench->add_option("--reps", bench_reps, "timed repetitions (0: validate only)")->required();
    bench->add_option("--seed", bench_seed, "random seed")->required();

    std::vector<std::string> embed_exprs;
    CLI::App* embed = app.add_subcommand("embed", "coordinate products of states");
    embed->add_option("expressions", embed_exprs, "state expressions")->required();

    std::vector<const char*> argv;
    argv.push_back("qsegre");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (app.got_subcommand(analyze)) {
            if (analyze_opts.state.empty() == analyze_opts.file.empty()) {
                err << "usage error: analyze needs exactly one of --state or --file\n";
                return 3;
            }
            return do_analyze(analyze_opts, out);
        }
        if (app.got_subcommand(tables)) return do_tables(tables_json_flag, out);
        if (app.got_subcommand(verify)) return do_verify(verify_n, verify_trials, verify_seed, out);
        if (app.got_subcommand(bench)) {
            return do_bench(bench_n, bench_ell, bench_reps, bench_seed, out);
        }
        if (app.got_subcommand(embed)) return do_embed(embed_exprs, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ImaginaryResidueError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 3;
}

} // namespace qsegre::cli
