#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "sstl/monitor.hpp"
#include "sstl/product.hpp"
#include "sstl/translate.hpp"

namespace sstl {

using Json = nlohmann::json;

// nlohmann::json keeps object keys sorted, so dumps of these structures are
// byte-stable across runs with identical inputs.

inline Json to_json(const Counterexample& ce) {
    Json j;
    j["signals"] = ce.signals;
    j["loop_start"] = ce.prefix.size();
    auto rows = [&](const std::vector<ProductState>& part, std::size_t base) {
        Json arr = Json::array();
        for (std::size_t k = 0; k < part.size(); ++k) {
            const ProductState& ps = part[k];
            Json values = Json::object();
            for (std::size_t i = 0; i < ce.signals.size(); ++i) values[ce.signals[i]] = ps.sys[i];
            arr.push_back(Json{{"tick", base + k},
                               {"values", std::move(values)},
                               {"automaton_state", ps.aut},
                               {"counters", ps.counters}});
        }
        return arr;
    };
    j["prefix"] = rows(ce.prefix, 0);
    j["cycle"] = rows(ce.cycle, ce.prefix.size());
    return j;
}

inline Json to_json(const VerifyResult& r) {
    Json j;
    j["status"] = verify_status_text(r.status);
    j["states_explored"] = r.states_explored;
    if (!r.message.empty()) j["message"] = r.message;
    if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
    return j;
}

inline Json to_json(const ObligationRegistry& reg) {
    Json arr = Json::array();
    for (const Obligation& o : reg) {
        Json row{{"id", o.id}, {"lo", o.a}, {"width", o.width()}, {"counter_cap", o.counter_cap()}};
        if (o.b) row["hi"] = *o.b;
        arr.push_back(std::move(row));
    }
    return Json{{"obligations", std::move(arr)}, {"total_width", reg.total_width()}};
}

// One CLI invocation's outcome. Wall time is tracked for the human-readable
// output only; the JSON form must be byte-stable across runs, so dumping
// deliberately leaves it out.
struct RunReport {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    double wall_seconds = 0.0;

    Json to_json() const {
        return Json{{"command", command}, {"inputs", inputs}, {"results", results}};
    }
};

}  // namespace sstl
