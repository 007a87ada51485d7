#include <sstl/sstl.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using sstl::Json;
using sstl::Rational;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sstl::Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --formula accepts either a file path or inline formula text.
std::string formula_source(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return slurp(arg);
    return arg;
}

Rational parse_dt(const std::string& text) {
    Rational dt = Rational::from_decimal(text);
    if (dt.num() <= 0) throw sstl::Error("--dt must be positive, got '" + text + "'");
    return dt;
}

// With dt the formula is real-time STL and gets its intervals projected to
// ticks; without it the text must already be in the tick dialect.
sstl::FormulaPtr prepare_formula(const std::string& source, const std::optional<Rational>& dt,
                                 const std::optional<std::vector<std::string>>& known_signals) {
    if (dt) {
        sstl::FormulaPtr phi =
            sstl::parse_formula(source, sstl::Dialect::STL, sstl::kDefaultFactor, known_signals);
        return sstl::discretize_formula(phi, *dt);
    }
    return sstl::parse_formula(source, sstl::Dialect::SSTL, sstl::kDefaultFactor, known_signals);
}

sstl::Encoding parse_encoding(const std::string& s) {
    return s == "conceptual" ? sstl::Encoding::Conceptual : sstl::Encoding::Impl;
}

sstl::TransitionSystem load_model(const std::string& arg) {
    if (std::optional<sstl::TransitionSystem> m = sstl::builtin_model(arg)) return *m;
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return sstl::parse_model(slurp(arg));
    throw sstl::Error("unknown model '" + arg +
                      "': not a built-in name or a readable file; built-ins are "
                      "traffic_light, pedestrian_crossing, heart_healthy, heart_av_block, "
                      "heart_lbb_block, heart_rbb_block");
}

Json json_or_null(const std::optional<std::string>& v) {
    return v ? Json(*v) : Json(nullptr);
}

void emit(const sstl::RunReport& report) { std::cout << report.to_json().dump(2) << "\n"; }

struct CheckOpts {
    std::string formula;
    std::string trace;
    std::optional<std::string> dt;
    std::optional<long long> tick;
    std::optional<std::string> dump_eval;
    bool json = false;
};

int run_check(const CheckOpts& o) {
    std::optional<Rational> dt;
    if (o.dt) dt = parse_dt(*o.dt);
    sstl::DiscreteTrace trace = sstl::load_trace(o.trace, dt.value_or(Rational(1)));
    sstl::FormulaPtr phi = prepare_formula(formula_source(o.formula), dt, trace.signals);

    std::vector<sstl::Verdict> all = sstl::eval_all(phi, trace);
    if (o.dump_eval) {
        std::ofstream out(*o.dump_eval);
        if (!out) throw sstl::Error("cannot open '" + *o.dump_eval + "' for writing");
        out << "tick,verdict\n";
        for (std::size_t j = 0; j < all.size(); ++j)
            out << j << "," << sstl::verdict_text(all[j]) << "\n";
    }

    std::size_t lo = 0;
    std::size_t hi = all.size();
    if (o.tick) {
        if (*o.tick < 0 || static_cast<std::size_t>(*o.tick) >= all.size())
            throw sstl::Error("--tick " + std::to_string(*o.tick) + " out of range, trace has " +
                              std::to_string(all.size()) + " ticks");
        lo = static_cast<std::size_t>(*o.tick);
        hi = lo + 1;
    }

    bool all_true = true;
    for (std::size_t j = lo; j < hi; ++j) all_true = all_true && all[j] == sstl::Verdict::True;

    if (o.json) {
        sstl::RunReport report;
        report.command = "check";
        report.inputs = {{"formula", o.formula},
                         {"trace", o.trace},
                         {"dt", json_or_null(o.dt)},
                         {"tick", o.tick ? Json(*o.tick) : Json(nullptr)},
                         {"dump_eval", json_or_null(o.dump_eval)}};
        Json verdicts = Json::array();
        for (std::size_t j = lo; j < hi; ++j)
            verdicts.push_back({{"tick", j}, {"verdict", sstl::verdict_text(all[j])}});
        report.results = {{"formula", sstl::to_string(phi)}, {"verdicts", std::move(verdicts)}};
        emit(report);
    } else {
        std::cout << "formula: " << sstl::to_string(phi) << "\n";
        for (std::size_t j = lo; j < hi; ++j)
            std::cout << "tick " << j << ": " << sstl::verdict_text(all[j]) << "\n";
    }
    return all_true ? 0 : 1;
}

struct TranslateOpts {
    std::string formula;
    std::optional<std::string> dt;
    std::string encoding = "impl";
    bool json = false;
};

int run_translate(const TranslateOpts& o) {
    std::optional<Rational> dt;
    if (o.dt) dt = parse_dt(*o.dt);
    sstl::FormulaPtr phi = prepare_formula(formula_source(o.formula), dt, std::nullopt);

    sstl::ObligationRegistry reg;
    sstl::FormulaPtr psi = parse_encoding(o.encoding) == sstl::Encoding::Conceptual
                               ? sstl::translate(phi, reg)
                               : sstl::translate_impl(phi, reg);

    if (o.json) {
        sstl::RunReport report;
        report.command = "translate";
        report.inputs = {{"formula", o.formula},
                         {"dt", json_or_null(o.dt)},
                         {"encoding", o.encoding}};
        report.results = {{"input", sstl::to_string(phi)},
                          {"ltlp", sstl::to_string(psi)},
                          {"registry", sstl::to_json(reg)}};
        emit(report);
    } else {
        std::cout << "input: " << sstl::to_string(phi) << "\n";
        std::cout << "ltlp:  " << sstl::to_string(psi) << "\n";
        for (const sstl::Obligation& ob : reg) {
            std::cout << "obligation " << ob.id << ": window [" << ob.a << ","
                      << (ob.b ? std::to_string(*ob.b) : std::string("inf")) << (ob.b ? "]" : ")")
                      << " width " << ob.width() << " counter cap " << ob.counter_cap() << "\n";
        }
        std::cout << "total counter width: " << reg.total_width() << "\n";
    }
    return 0;
}

struct VerifyOpts {
    std::string model;
    std::string formula;
    std::optional<std::string> dt;
    std::string encoding = "impl";
    long long max_states = sstl::SearchLimits{}.max_states;
    long long max_depth = sstl::SearchLimits{}.max_depth;
    std::optional<std::string> ce_out;
    bool json = false;
};

int exit_code_for(sstl::VerifyStatus status) {
    switch (status) {
        case sstl::VerifyStatus::Satisfied: return 0;
        case sstl::VerifyStatus::Violated: return 1;
        case sstl::VerifyStatus::ResourceLimit: return 3;
    }
    return 2;
}

int run_verify(const VerifyOpts& o) {
    sstl::TransitionSystem sys = load_model(o.model);
    std::optional<Rational> dt;
    if (o.dt) dt = parse_dt(*o.dt);
    sstl::FormulaPtr phi = prepare_formula(formula_source(o.formula), dt, sys.signal_names());

    auto t0 = std::chrono::steady_clock::now();
    sstl::VerifyResult res = sstl::verify(sys, phi, parse_encoding(o.encoding),
                                          sstl::SearchLimits{o.max_states, o.max_depth});
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (res.counterexample && o.ce_out) {
        std::ofstream out(*o.ce_out);
        if (!out) throw sstl::Error("cannot open '" + *o.ce_out + "' for writing");
        out << res.counterexample->to_text();
    }

    if (o.json) {
        sstl::RunReport report;
        report.command = "verify";
        report.wall_seconds = wall;
        report.inputs = {{"model", o.model},          {"formula", o.formula},
                         {"dt", json_or_null(o.dt)},  {"encoding", o.encoding},
                         {"max_states", o.max_states}, {"max_depth", o.max_depth}};
        report.results = sstl::to_json(res);
        if (res.counterexample && o.ce_out) report.results["counterexample_path"] = *o.ce_out;
        emit(report);
    } else {
        std::cout << "formula: " << sstl::to_string(phi) << "\n";
        std::cout << "status: " << sstl::verify_status_text(res.status) << "\n";
        std::cout << "states explored: " << res.states_explored << "\n";
        if (!res.message.empty()) std::cout << "note: " << res.message << "\n";
        if (res.counterexample) {
            std::cout << "counterexample:\n" << res.counterexample->to_text();
            if (o.ce_out) std::cout << "written to " << *o.ce_out << "\n";
        }
        std::cout << std::fixed << std::setprecision(3) << "wall: " << wall << "s\n";
    }
    return exit_code_for(res.status);
}

struct SimulateOpts {
    std::string model;
    long long ticks = 100;
    std::uint64_t seed = 0;
    std::optional<std::string> dt;
    std::optional<std::string> out;
    bool json = false;
};

int run_simulate(const SimulateOpts& o) {
    if (o.ticks <= 0) throw sstl::Error("--ticks must be positive");
    if (o.json && !o.out) throw sstl::Error("simulate --json needs --out for the trace itself");
    sstl::TransitionSystem sys = load_model(o.model);
    Rational dt = o.dt ? parse_dt(*o.dt) : Rational(1);
    sstl::DiscreteTrace trace =
        sstl::simulate(sys, static_cast<std::size_t>(o.ticks), o.seed, dt);
    if (o.out)
        sstl::save_trace(*o.out, trace);
    else
        sstl::write_trace_csv(std::cout, trace);

    if (o.json) {
        sstl::RunReport report;
        report.command = "simulate";
        report.inputs = {{"model", o.model},
                         {"ticks", o.ticks},
                         {"seed", o.seed},
                         {"dt", json_or_null(o.dt)}};
        report.results = {{"out", *o.out},
                          {"signals", trace.signals},
                          {"ticks", trace.length()}};
        emit(report);
    }
    return 0;
}

struct TableOpts {
    std::string encoding = "impl";
    long long max_states = sstl::SearchLimits{}.max_states;
    long long max_depth = sstl::SearchLimits{}.max_depth;
    bool json = false;
};

int run_table(const TableOpts& o) {
    struct Row {
        std::string model;
        std::string property;
        std::string expected;
        std::string actual;
        long long states;
    };

    std::vector<sstl::BuiltinCase> cases = sstl::builtin_cases();
    for (sstl::BuiltinCase& c : sstl::disease_cases()) cases.push_back(std::move(c));

    auto t0 = std::chrono::steady_clock::now();
    std::vector<Row> rows;
    bool any_violated = false;
    bool any_limit = false;
    for (const sstl::BuiltinCase& c : cases) {
        sstl::TransitionSystem sys = sstl::parse_model(c.spec_text);
        std::vector<std::string> known = sys.signal_names();
        for (const sstl::BuiltinProperty& p : c.properties) {
            sstl::FormulaPtr phi = prepare_formula(p.formula, c.dt, known);
            sstl::VerifyResult res = sstl::verify(sys, phi, parse_encoding(o.encoding),
                                                  sstl::SearchLimits{o.max_states, o.max_depth});
            any_violated = any_violated || res.status == sstl::VerifyStatus::Violated;
            any_limit = any_limit || res.status == sstl::VerifyStatus::ResourceLimit;
            rows.push_back({c.model_name, p.name,
                            p.expected_satisfied ? "Satisfied" : "Violated",
                            sstl::verify_status_text(res.status), res.states_explored});
        }
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::size_t matching = 0;
    for (const Row& r : rows)
        if (r.expected == r.actual) ++matching;

    if (o.json) {
        sstl::RunReport report;
        report.command = "table";
        report.wall_seconds = wall;
        report.inputs = {{"encoding", o.encoding},
                         {"max_states", o.max_states},
                         {"max_depth", o.max_depth}};
        Json jrows = Json::array();
        for (const Row& r : rows)
            jrows.push_back({{"model", r.model},
                             {"property", r.property},
                             {"expected", r.expected},
                             {"actual", r.actual},
                             {"states", r.states}});
        report.results = {{"rows", std::move(jrows)},
                          {"matching", matching},
                          {"total", rows.size()}};
        emit(report);
    } else {
        std::cout << std::left << std::setw(22) << "model" << std::setw(26) << "property"
                  << std::setw(12) << "expected" << std::setw(15) << "actual" << std::right
                  << std::setw(9) << "states" << "\n";
        for (const Row& r : rows) {
            std::cout << std::left << std::setw(22) << r.model << std::setw(26) << r.property
                      << std::setw(12) << r.expected << std::setw(15) << r.actual << std::right
                      << std::setw(9) << r.states << (r.expected == r.actual ? "" : "  <- mismatch")
                      << "\n";
        }
        std::cout << "rows matching expectation: " << matching << "/" << rows.size() << "\n";
        std::cout << std::fixed << std::setprecision(2) << "wall: " << wall << "s\n";
    }
    if (any_limit) return 3;
    return any_violated ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SSTL toolkit: monitor traces, translate tick windows to guard automata, "
                 "verify transition systems"};
    app.require_subcommand(1);

    CheckOpts check;
    CLI::App* c = app.add_subcommand("check", "Evaluate a formula over a trace CSV");
    c->add_option("--formula", check.formula, "Formula file or inline text")->required();
    c->add_option("--trace", check.trace, "Trace CSV path")->required();
    c->add_option("--dt", check.dt, "Tick length in seconds; marks the formula as real-time");
    c->add_option("--tick", check.tick, "Report only the verdict at this tick");
    c->add_option("--dump-eval", check.dump_eval, "Write per-tick verdicts to this CSV");
    c->add_flag("--json", check.json, "Machine-readable report on stdout");

    TranslateOpts translate;
    CLI::App* t = app.add_subcommand("translate", "Rewrite bounded operators into guard form");
    t->add_option("--formula", translate.formula, "Formula file or inline text")->required();
    t->add_option("--dt", translate.dt, "Tick length in seconds; marks the formula as real-time");
    t->add_option("--encoding", translate.encoding, "Guard encoding")
        ->check(CLI::IsMember({"conceptual", "impl"}));
    t->add_flag("--json", translate.json, "Machine-readable report on stdout");

    VerifyOpts verify;
    CLI::App* v = app.add_subcommand("verify", "Model-check a formula against a model");
    v->add_option("--model", verify.model, "Built-in model name or model file path")->required();
    v->add_option("--formula", verify.formula, "Formula file or inline text")->required();
    v->add_option("--dt", verify.dt, "Tick length in seconds; marks the formula as real-time");
    v->add_option("--encoding", verify.encoding, "Guard encoding")
        ->check(CLI::IsMember({"conceptual", "impl"}));
    v->add_option("--max-states", verify.max_states, "Product state budget");
    v->add_option("--max-depth", verify.max_depth, "Search stack depth budget");
    v->add_option("--ce-out", verify.ce_out, "Write the counterexample lasso to this file");
    v->add_flag("--json", verify.json, "Machine-readable report on stdout");

    SimulateOpts simulate;
    CLI::App* s = app.add_subcommand("simulate", "Random walk a model and emit a trace CSV");
    s->add_option("--model", simulate.model, "Built-in model name or model file path")->required();
    s->add_option("--ticks", simulate.ticks, "Trace length in ticks");
    s->add_option("--seed", simulate.seed, "Random walk seed");
    s->add_option("--dt", simulate.dt, "Tick length recorded in the trace");
    s->add_option("--out", simulate.out, "Trace CSV output path, default stdout");
    s->add_flag("--json", simulate.json, "Machine-readable report on stdout");

    TableOpts table;
    CLI::App* tb = app.add_subcommand("table", "Verify every built-in model/property pair");
    tb->add_option("--encoding", table.encoding, "Guard encoding")
        ->check(CLI::IsMember({"conceptual", "impl"}));
    tb->add_option("--max-states", table.max_states, "Product state budget per pair");
    tb->add_option("--max-depth", table.max_depth, "Search stack depth budget per pair");
    tb->add_flag("--json", table.json, "Machine-readable report on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c->parsed()) return run_check(check);
        if (t->parsed()) return run_translate(translate);
        if (v->parsed()) return run_verify(verify);
        if (s->parsed()) return run_simulate(simulate);
        if (tb->parsed()) return run_table(table);
    } catch (const sstl::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const sstl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
