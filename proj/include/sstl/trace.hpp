#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sstl/error.hpp"
#include "sstl/quantize.hpp"
#include "sstl/rational.hpp"

namespace sstl {

// Finite discrete-time trace: one integer vector per tick, values scaled by
// the quantization factor. dt records the real-time length of a tick for
// dense-time interpretation; tick-level evaluation never touches it.
struct DiscreteTrace {
    Rational dt;
    std::vector<std::string> signals;
    std::vector<std::vector<std::int64_t>> values;  // [tick][signal], scaled
    std::int64_t factor = kDefaultFactor;

    std::size_t length() const { return values.size(); }

    std::size_t signal_index(const std::string& name) const {
        for (std::size_t i = 0; i < signals.size(); ++i)
            if (signals[i] == name) return i;
        throw EvalError("unknown signal name '" + name + "'");
    }

    std::int64_t at(std::size_t tick, std::size_t signal) const { return values[tick][signal]; }
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        std::size_t b = cell.find_first_not_of(" \t\r");
        std::size_t e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace detail

inline DiscreteTrace parse_trace_csv(std::istream& in, const Rational& dt, std::int64_t factor) {
    if (!(dt > Rational(0))) throw Error("trace dt must be positive");
    DiscreteTrace trace;
    trace.dt = dt;
    trace.factor = factor;

    std::string line;
    int line_no = 0;
    bool header_done = false;
    std::int64_t expected_tick = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = detail::split_csv_row(line);
        if (!header_done) {
            if (cells.size() < 2 || cells[0] != "tick")
                throw ParseError("trace header must be 'tick,SIG1,...'", line_no, 1);
            trace.signals.assign(cells.begin() + 1, cells.end());
            header_done = true;
            continue;
        }
        if (cells.size() != trace.signals.size() + 1)
            throw ParseError("ragged row: expected " + std::to_string(trace.signals.size() + 1) +
                                 " cells, got " + std::to_string(cells.size()),
                             line_no, 1);
        std::int64_t tick;
        try {
            Rational t = Rational::from_decimal(cells[0]);
            if (!t.is_integer()) throw Error("tick is not an integer");
            tick = t.num();
        } catch (const Error&) {
            throw ParseError("unparseable tick '" + cells[0] + "'", line_no, 1);
        }
        if (tick != expected_tick)
            throw ParseError("missing tick " + std::to_string(expected_tick) + ": rows must be " +
                                 "consecutive from 0, got tick " + std::to_string(tick),
                             line_no, 1);
        ++expected_tick;
        std::vector<std::int64_t> row;
        row.reserve(trace.signals.size());
        for (std::size_t i = 1; i < cells.size(); ++i) {
            try {
                row.push_back(quantize_text(cells[i], factor));
            } catch (const Error&) {
                throw ParseError("unparseable number '" + cells[i] + "'", line_no,
                                 static_cast<int>(i + 1));
            }
        }
        trace.values.push_back(std::move(row));
    }
    if (!header_done) throw ParseError("empty trace file", line_no, 1);
    if (trace.values.empty()) throw ParseError("trace has no rows", line_no, 1);
    return trace;
}

inline DiscreteTrace load_trace(const std::string& path, const Rational& dt,
                                std::int64_t factor = kDefaultFactor) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open trace file '" + path + "'");
    return parse_trace_csv(in, dt, factor);
}

inline void write_trace_csv(std::ostream& out, const DiscreteTrace& trace) {
    out << "tick";
    for (const auto& s : trace.signals) out << "," << s;
    out << "\n";
    for (std::size_t t = 0; t < trace.values.size(); ++t) {
        out << t;
        for (std::int64_t v : trace.values[t]) out << "," << Rational(v, trace.factor).to_string();
        out << "\n";
    }
}

inline void save_trace(const std::string& path, const DiscreteTrace& trace) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_trace_csv(out, trace);
}

}  // namespace sstl
