// experiments.hpp: single runs, named scenarios and parameter sweeps

#pragma once

#include "ghz/dynamics.hpp"
#include "ghz/model.hpp"
#include "ghz/observables.hpp"
#include "ghz/params.hpp"
#include "ghz/pulses.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ghz {

struct SimulationSettings {
    ScheduleKind schedule = ScheduleKind::tqd;
    bool open = false;
    int steps = 20000;
    int record_every = 0;  // 0: record only the endpoints
    std::vector<int> record_steps;
    // Drive atom N with -i Omega instead of Omega.
    bool phase_fix = false;
    SolverTolerances tolerances;
};

struct Simulation {
    ChainModel model;
    Trajectory trajectory;
    ScheduleKind schedule = ScheduleKind::tqd;
    SystemParams params;

    ObservableEvaluator evaluator() const { return {*model.space, params, schedule}; }
    double final_value(Observable o) const { return evaluator().final_value(o, trajectory); }
};

// H(t) for a schedule: H_c (+ H_d for tqd) plus the two laser drives.
DrivenHamiltonian make_hamiltonian(const ChainModel& model, const PulseSchedule& schedule, bool phase_fix = false);

// Evolves the initial chain state from 0 to tf (1 + deviation.duration).
// Closed runs use kets, open runs density matrices.
Simulation simulate(const SystemParams& params, const SimulationSettings& settings);

enum class Axis {
    omega0,
    tf,
    delta,
    gamma,
    kappa_c,
    kappa_f,
    dg,
    dv,
    domega0,
    dT,
    atoms,
    time,      // fraction of the evolution, sampled along one trajectory
    schedule,  // 0 adiabatic, 1 tqd
    channel,   // 0 gamma, 1 kappa_c, 2 kappa_f; selects what `rate` sets
    rate,
};

std::string to_string(Axis a);
Axis axis_from_string(const std::string& name);

struct AxisSpec {
    Axis axis = Axis::omega0;
    std::vector<double> values;

    bool operator==(const AxisSpec&) const = default;
};

// n uniform points on [lo, hi].
AxisSpec linear_axis(Axis axis, double lo, double hi, int n);
// n points j/n, j = 1..n, for the time axis.
AxisSpec time_axis(int n);

struct Scenario {
    std::string name;
    std::string description;
    SystemParams base;
    ScheduleKind schedule = ScheduleKind::tqd;
    bool open = false;
    int steps = 20000;
    std::vector<AxisSpec> axes;  // at most two; a time axis must come last
    std::vector<Observable> observables;

    // Throws Error(config) on malformed axes.
    void validate() const;
};

struct ScenarioOptions {
    int resolution = 41;  // points per continuous axis
    std::optional<int> steps;
    std::map<std::string, double> overrides;  // keyed as set_param
    std::optional<ScheduleKind> schedule;
    std::optional<bool> open;
    std::vector<AxisSpec> axes;  // replaces the registered axes when non-empty
    std::optional<std::vector<Observable>> observables;
};

const std::vector<std::string>& scenario_names();
// Throws Error(unknown_scenario) listing the registered names.
Scenario make_scenario(const std::string& name, const ScenarioOptions& options = {});

struct CellResult {
    std::vector<double> coords;  // one entry per axis
    std::vector<double> values;  // one per observable; NaN on error
    SolverDiagnostics diagnostics;
    std::string error;
};

struct SweepResult {
    Scenario scenario;
    std::vector<CellResult> cells;
    std::string provenance;  // canonical JSON of everything that defines the run
    std::uint64_t hash = 0;  // FNV-1a of `provenance`

    std::size_t failures() const;
    std::string hash_hex() const;
};

// One simulation per point of the non-time axes, distributed over `threads`
// workers (0: hardware concurrency). Results do not depend on the thread
// count. A failing cell records its error and the sweep continues.
SweepResult run_scenario(const Scenario& scenario, int threads = 0);

// Writes <name>-<hash>.csv (axis1,axis2,observable,value) and a .json
// sidecar with provenance and per-cell diagnostics. Returns the CSV path.
std::filesystem::path write_sweep(const SweepResult& result, const std::filesystem::path& dir);

std::uint64_t fnv1a(const std::string& data);

} // namespace ghz
