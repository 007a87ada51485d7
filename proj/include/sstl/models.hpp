#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sstl/rational.hpp"
#include "sstl/system.hpp"

namespace sstl {

// ---------------------------------------------------------------------------
// Built-in case studies. Each model is a ModelSpec text parsed through the
// regular front end, so the shipped systems exercise the same path as user
// models.
// ---------------------------------------------------------------------------

// Two-road signal controller. A single phase counter drives the lamps:
// phases 0-2 NS green, 3-5 NS yellow, 6-8 EW green, 9-11 EW yellow. At the
// end of EW yellow the controller either restarts the cycle or takes an
// EW-priority branch (phase 12) that holds EW green forever; that branch is
// what breaks recurring NS service while every safety property still holds.
inline const char* kTrafficLightSpec = R"(
var phase in [0..12] init 0;
var NS_green in [0..1] init 1;
var NS_yellow in [0..1] init 0;
var NS_red in [0..1] init 0;
var EW_green in [0..1] init 0;
var EW_yellow in [0..1] init 0;
var EW_red in [0..1] init 1;

trans cycle: choose {
  guard phase <= 1 -> updates { phase := phase + 1 }
| guard phase = 2 -> updates { phase := 3, NS_green := 0, NS_yellow := 1 }
| guard phase >= 3 && phase <= 4 -> updates { phase := phase + 1 }
| guard phase = 5 -> updates { phase := 6, NS_yellow := 0, NS_red := 1, EW_red := 0, EW_green := 1 }
| guard phase >= 6 && phase <= 7 -> updates { phase := phase + 1 }
| guard phase = 8 -> updates { phase := 9, EW_green := 0, EW_yellow := 1 }
| guard phase >= 9 && phase <= 10 -> updates { phase := phase + 1 }
| guard phase = 11 -> updates { phase := 0, EW_yellow := 0, EW_red := 1, NS_red := 0, NS_green := 1 }
| guard phase = 11 -> updates { phase := 12, EW_yellow := 0, EW_green := 1 }
| guard phase = 12 -> updates { }
};
)";

// Pedestrian crossing. While cars have green the controller may idle, admit
// an arriving pedestrian (queue capped at 5), or grant the walk signal; the
// walk phase lasts three ticks and clears the queue. Granting is never
// forced, and the run that pumps the queue to 2 and then idles forever is
// the starvation branch behind both Not-Satisfied verdicts.
inline const char* kPedestrianCrossingSpec = R"(
var cars_green in [0..1] init 1;
var walk_signal in [0..1] init 0;
var waiting_peds in [0..5] init 0;
var walk_timer in [0..2] init 0;

trans crossing: choose {
  guard cars_green = 1 -> updates { }
| guard cars_green = 1 && waiting_peds < 5 -> updates { waiting_peds := waiting_peds + 1 }
| guard cars_green = 1 -> updates { cars_green := 0, walk_signal := 1, walk_timer := 0 }
| guard walk_signal = 1 && walk_timer < 2 -> updates { walk_timer := walk_timer + 1 }
| guard walk_signal = 1 && walk_timer = 2 -> updates { walk_signal := 0, cars_green := 1, waiting_peds := 0, walk_timer := 0 }
};
)";

// Abstract heart, healthy conduction. One beat is 800 ticks of 1ms. The
// atrial electrogram pulses to 100 (above the 80 threshold) at the start of
// each beat, the ventricular electrogram d ticks later, and d is re-drawn
// nondeterministically from {180, 210, 240} at every beat boundary.
inline const char* kHeartHealthySpec = R"(
var t in [0..799] init 0;
var d in [180..240] init 210;
var A_EGM in [0..100] init 100;
var V_EGM in [0..100] init 0;

trans beat: choose {
  guard t = 799 -> updates { t := 0, A_EGM := 100, V_EGM := 0, d := 180 }
| guard t = 799 -> updates { t := 0, A_EGM := 100, V_EGM := 0, d := 210 }
| guard t = 799 -> updates { t := 0, A_EGM := 100, V_EGM := 0, d := 240 }
| guard t = d - 1 -> updates { t := t + 1, A_EGM := 0, V_EGM := 100 }
| guard t < 799 && t != d - 1 -> updates { t := t + 1, A_EGM := 0, V_EGM := 0 }
};
)";

// Atrioventricular block: conduction is fully suppressed, so the atria and
// ventricles run on independent clocks (800 vs 900 tick periods). The A
// pulse at tick 0 is followed by no V pulse inside [180, 240], which is the
// branch violating the conduction property; the 900-tick V-V spacing keeps
// the refractory and liveness properties satisfied.
inline const char* kHeartAvBlockSpec = R"(
var tA in [0..799] init 0;
var tV in [0..899] init 0;
var A_EGM in [0..100] init 100;
var V_EGM in [0..100] init 100;

trans atrial: choose {
  guard tA = 799 -> updates { tA := 0, A_EGM := 100 }
| guard tA < 799 -> updates { tA := tA + 1, A_EGM := 0 }
};

trans ventricular: choose {
  guard tV = 899 -> updates { tV := 0, V_EGM := 100 }
| guard tV < 899 -> updates { tV := tV + 1, V_EGM := 0 }
};
)";

// Left bundle branch block: conduction survives but is slowed to a fixed
// 300-tick delay, outside the healthy [180, 240] window, so every beat
// violates the conduction property while the 800-tick V-V spacing keeps
// the rest satisfied.
inline const char* kHeartLbbBlockSpec = R"(
var t in [0..799] init 0;
var A_EGM in [0..100] init 100;
var V_EGM in [0..100] init 0;

trans beat: choose {
  guard t = 799 -> updates { t := 0, A_EGM := 100, V_EGM := 0 }
| guard t = 299 -> updates { t := 300, A_EGM := 0, V_EGM := 100 }
| guard t < 799 && t != 299 -> updates { t := t + 1, A_EGM := 0, V_EGM := 0 }
};
)";

// Right bundle branch block: like the left-side block with a 280-tick
// delay, still past the 240-tick window edge.
inline const char* kHeartRbbBlockSpec = R"(
var t in [0..799] init 0;
var A_EGM in [0..100] init 100;
var V_EGM in [0..100] init 0;

trans beat: choose {
  guard t = 799 -> updates { t := 0, A_EGM := 100, V_EGM := 0 }
| guard t = 279 -> updates { t := 280, A_EGM := 0, V_EGM := 100 }
| guard t < 799 && t != 279 -> updates { t := t + 1, A_EGM := 0, V_EGM := 0 }
};
)";

enum class HeartConfig { Healthy, AvBlock, LbbBlock, RbbBlock };

inline TransitionSystem traffic_light() { return parse_model(kTrafficLightSpec); }
inline TransitionSystem pedestrian_crossing() { return parse_model(kPedestrianCrossingSpec); }

inline TransitionSystem heart_abstract(HeartConfig config) {
    switch (config) {
        case HeartConfig::Healthy: return parse_model(kHeartHealthySpec);
        case HeartConfig::AvBlock: return parse_model(kHeartAvBlockSpec);
        case HeartConfig::LbbBlock: return parse_model(kHeartLbbBlockSpec);
        case HeartConfig::RbbBlock: return parse_model(kHeartRbbBlockSpec);
    }
    throw ModelError("unknown heart configuration");
}

// ---------------------------------------------------------------------------
// Built-in property table. Traffic light and pedestrian properties are tick
// dialect; heart properties are written in seconds and discretized at
// dt = 0.001 (1ms ticks).
// ---------------------------------------------------------------------------
struct BuiltinProperty {
    std::string name;
    std::string formula;
    bool expected_satisfied;
};

struct BuiltinCase {
    std::string model_name;
    std::string spec_text;
    std::optional<Rational> dt;  // set → formulas are STL seconds
    std::vector<BuiltinProperty> properties;
};

inline std::vector<BuiltinCase> builtin_cases() {
    std::vector<BuiltinCase> out;

    BuiltinCase traffic;
    traffic.model_name = "traffic_light";
    traffic.spec_text = kTrafficLightSpec;
    traffic.properties = {
        {"phi_mutex", "G !(NS_green = 1 && EW_green = 1)", true},
        {"phi_NS_safe", "G (NS_green = 1 -> EW_red = 1)", true},
        {"phi_EW_safe", "G (EW_green = 1 -> NS_red = 1)", true},
        {"phi_fairness", "G F (NS_green = 1)", false},
        {"phi_liveness_NS", "F (NS_green = 1)", true},
        {"phi_response_NS_yellow", "G (NS_green = 1 -> F (NS_yellow = 1))", true},
        {"phi_bounded_NS_yellow", "G (NS_green = 1 -> F[3,5] (NS_yellow = 1))", true},
    };
    out.push_back(std::move(traffic));

    BuiltinCase ped;
    ped.model_name = "pedestrian_crossing";
    ped.spec_text = kPedestrianCrossingSpec;
    ped.properties = {
        {"phi_no_conflict", "G !(cars_green = 1 && walk_signal = 1)", true},
        {"phi_queue_bounded", "G (waiting_peds <= 5 && waiting_peds >= 0)", true},
        {"phi_threshold_walk", "G (waiting_peds >= 2 -> F (walk_signal = 1))", false},
        {"phi_bounded_wait",
         "G ((cars_green = 1 && waiting_peds >= 2) -> F[2,5] (walk_signal = 1))", false},
    };
    out.push_back(std::move(ped));

    BuiltinCase heart;
    heart.model_name = "heart_healthy";
    heart.spec_text = kHeartHealthySpec;
    heart.dt = Rational(1, 1000);
    heart.properties = {
        {"phi_AV", "G (A_EGM >= 80 -> F[0.180,0.240] (V_EGM >= 80))", true},
        {"phi_VV", "G (V_EGM >= 80 -> F[0.6,1.00] (V_EGM > 80))", true},
        {"phi_liveness_A", "F (A_EGM > 80)", true},
        {"phi_liveness_V", "F (V_EGM > 80)", true},
    };
    out.push_back(std::move(heart));

    return out;
}

inline std::vector<BuiltinCase> disease_cases() {
    std::vector<BuiltinCase> out;
    const std::vector<std::pair<std::string, const char*>> variants = {
        {"heart_av_block", kHeartAvBlockSpec},
        {"heart_lbb_block", kHeartLbbBlockSpec},
        {"heart_rbb_block", kHeartRbbBlockSpec},
    };
    for (const auto& [name, spec] : variants) {
        BuiltinCase c;
        c.model_name = name;
        c.spec_text = spec;
        c.dt = Rational(1, 1000);
        c.properties = {
            {"phi_AV", "G (A_EGM >= 80 -> F[0.180,0.240] (V_EGM >= 80))", false},
            {"phi_VV", "G (V_EGM >= 80 -> F[0.6,1.00] (V_EGM > 80))", true},
            {"phi_liveness_A", "F (A_EGM > 80)", true},
            {"phi_liveness_V", "F (V_EGM > 80)", true},
        };
        out.push_back(std::move(c));
    }
    return out;
}

// Looks up a built-in model by name, for the CLI's --model flag.
inline std::optional<TransitionSystem> builtin_model(const std::string& name) {
    if (name == "traffic_light") return traffic_light();
    if (name == "pedestrian_crossing") return pedestrian_crossing();
    if (name == "heart_healthy") return heart_abstract(HeartConfig::Healthy);
    if (name == "heart_av_block") return heart_abstract(HeartConfig::AvBlock);
    if (name == "heart_lbb_block") return heart_abstract(HeartConfig::LbbBlock);
    if (name == "heart_rbb_block") return heart_abstract(HeartConfig::RbbBlock);
    return std::nullopt;
}

}  // namespace sstl
