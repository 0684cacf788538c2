// config.hpp: run configuration for the command-line front end
//
// JSON layout (every key optional, unknown keys rejected):
//
//   {
//     "preset": "experimental",
//     "units": {"g": "2pi*750 MHz"},
//     "params": {"omega0": 0.2, "tf": "96 ns", "gamma": "2pi*2.62 MHz",
//                "branching": {"to_go": 0.3333, ...}, "deviation": {"g": 0.05, ...}},
//     "schedule": "tqd", "open": false, "phase_fix": false,
//     "solver": {"steps": 20000, "record_every": 100},
//     "observables": ["fidelity", "leakage"],
//     "scenario": {"name": "fig6", "resolution": 41, "overrides": {"delta": 3.0},
//                  "axes": [{"axis": "tf", "lo": 10, "hi": 150, "n": 41}]},
//     "output": {"dir": "out", "format": "csv"},
//     "threads": 0
//   }
//
// Numbers are in units of g (frequencies) and 1/g (times). Strings carry a
// physical unit: "[2pi*]<number> <Hz|kHz|MHz|GHz|s|ms|us|ns>". Converting
// them needs units.g (the preset sets it to 2pi x 750 MHz).

#pragma once

#include "ghz/experiments.hpp"
#include "ghz/observables.hpp"
#include "ghz/params.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ghz {

struct RunConfig {
    SystemParams params;
    std::optional<double> unit_g;  // angular frequency of g in rad/s
    ScheduleKind schedule = ScheduleKind::tqd;
    bool open = false;
    bool phase_fix = false;
    int steps = 20000;
    int record_every = 100;
    std::vector<Observable> observables{Observable::fidelity};
    std::string scenario;
    int resolution = 41;
    std::map<std::string, double> overrides;
    std::vector<AxisSpec> axes;
    std::string output_dir = ".";
    std::string format = "csv";
    int threads = 0;

    // One "key: message" entry per violated invariant.
    std::vector<std::string> violations() const;
    // Throws Error(config) listing every violation.
    void validate() const;

    ScenarioOptions scenario_options() const;

    bool operator==(const RunConfig&) const = default;
};

// Defaults, with the output directory taken from GHZSIM_OUTPUT_DIR if set.
RunConfig default_config();

// Frequencies or times with a physical unit, converted with `unit_g`
// (rad/s). Plain numbers are returned unchanged.
enum class Dimension { frequency, time, none };
double parse_quantity(const std::string& text, Dimension dim, std::optional<double> unit_g, const std::string& key);

Dimension param_dimension(const std::string& key);

// Applies a JSON document on top of `base`. Every problem found (unknown
// keys, bad types, bad units, violated invariants) is reported in a single
// Error(config).
RunConfig parse_config(const nlohmann::json& doc, RunConfig base = default_config());
RunConfig load_config(const std::string& path, RunConfig base = default_config());

// Sets one parameter from text that may carry a unit.
void set_param_text(RunConfig& config, const std::string& key, const std::string& text);

void apply_experimental_preset(RunConfig& config);

// Complete, explicit serialization; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

} // namespace ghz
