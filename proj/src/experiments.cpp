#include "ghz/experiments.hpp"

#include "ghz/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

namespace ghz {

using nlohmann::json;

DrivenHamiltonian make_hamiltonian(const ChainModel& model, const PulseSchedule& schedule, bool phase_fix) {
    Operator fixed = model.coupling;
    if (schedule.kind() == ScheduleKind::tqd) fixed = fixed + model.detuning;
    fixed.assert_hermitian();
    auto amplitudes = [schedule, phase_fix](double t, std::span<cplx> out) {
        const auto [first, last] = schedule.drive(t);
        out[0] = first;
        out[1] = phase_fix ? cplx{0.0, -last} : cplx{last, 0.0};
    };
    return DrivenHamiltonian(fixed, {model.drive_first, model.drive_last}, amplitudes);
}

Simulation simulate(const SystemParams& params, const SimulationSettings& settings) {
    params.validate();
    PulseSchedule schedule(settings.schedule, params);
    schedule.validate();
    auto model = build_chain_model(params, settings.open);
    const auto h = make_hamiltonian(model, schedule, settings.phase_fix);

    TimeGrid grid;
    grid.t_end = params.evolution_time();
    grid.steps = settings.steps;
    grid.record_every = settings.record_every > 0 ? settings.record_every : settings.steps;
    grid.record_steps = settings.record_steps;

    const auto& space = *model.space;
    const Eigen::VectorXcd psi0 = basis_vector(space, space.index(chain_layout(params.atoms).initial));
    Trajectory traj = settings.open
                          ? evolve_lindblad(h, model.jumps, psi0 * psi0.adjoint(), grid, settings.tolerances)
                          : evolve_schrodinger(h, psi0, grid, settings.tolerances);
    traj.params = params;
    traj.schedule = settings.schedule;
    return Simulation{std::move(model), std::move(traj), settings.schedule, params};
}

namespace {

const std::vector<std::pair<Axis, const char*>>& axis_names() {
    static const std::vector<std::pair<Axis, const char*>> names = {
        {Axis::omega0, "omega0"}, {Axis::tf, "tf"},           {Axis::delta, "delta"},
        {Axis::gamma, "gamma"},   {Axis::kappa_c, "kappa_c"}, {Axis::kappa_f, "kappa_f"},
        {Axis::dg, "dg"},         {Axis::dv, "dv"},           {Axis::domega0, "domega0"},
        {Axis::dT, "dT"},         {Axis::atoms, "N"},         {Axis::time, "time"},
        {Axis::schedule, "schedule"}, {Axis::channel, "channel"}, {Axis::rate, "rate"},
    };
    return names;
}

bool integral_axis(Axis a) { return a == Axis::atoms || a == Axis::schedule || a == Axis::channel; }

} // namespace

std::string to_string(Axis a) {
    for (const auto& [axis, name] : axis_names())
        if (axis == a) return name;
    return "?";
}

Axis axis_from_string(const std::string& name) {
    std::string known;
    for (const auto& [axis, n] : axis_names()) {
        if (name == n) return axis;
        known += (known.empty() ? "" : ", ") + std::string(n);
    }
    throw Error(ErrorCode::config, "unknown sweep axis '" + name + "' (known: " + known + ")");
}

AxisSpec linear_axis(Axis axis, double lo, double hi, int n) {
    if (n < 1) throw Error(ErrorCode::config, "axis " + to_string(axis) + ": needs at least one point");
    AxisSpec spec{axis, {}};
    if (n == 1) {
        spec.values.push_back(lo);
        return spec;
    }
    for (int i = 0; i < n; ++i) spec.values.push_back(lo + (hi - lo) * i / (n - 1));
    return spec;
}

AxisSpec time_axis(int n) {
    if (n < 1) throw Error(ErrorCode::config, "axis time: needs at least one point");
    AxisSpec spec{Axis::time, {}};
    for (int j = 1; j <= n; ++j) spec.values.push_back(static_cast<double>(j) / n);
    return spec;
}

void Scenario::validate() const {
    std::vector<std::string> errors;
    if (axes.size() > 2) errors.push_back("axes: at most two sweep axes");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const auto& a = axes[i];
        const std::string key = "axes." + to_string(a.axis);
        if (a.values.empty()) errors.push_back(key + ": grid is empty");
        for (std::size_t k = 1; k < a.values.size(); ++k)
            if (!(a.values[k] > a.values[k - 1])) {
                errors.push_back(key + ": grid must be strictly increasing");
                break;
            }
        if (a.axis == Axis::time) {
            if (i + 1 != axes.size()) errors.push_back(key + ": the time axis must be the last axis");
            for (double x : a.values)
                if (!(x >= 0.0 && x <= 1.0)) {
                    errors.push_back(key + ": time fractions must lie in [0, 1]");
                    break;
                }
        }
        if (integral_axis(a.axis))
            for (double x : a.values)
                if (x != std::floor(x)) {
                    errors.push_back(key + ": values must be integers");
                    break;
                }
        if (a.axis == Axis::schedule || a.axis == Axis::channel) {
            const double top = a.axis == Axis::schedule ? 1.0 : 2.0;
            for (double x : a.values)
                if (x < 0.0 || x > top) {
                    errors.push_back(key + ": value out of range");
                    break;
                }
        }
        if (a.axis == Axis::channel &&
            std::none_of(axes.begin(), axes.end(), [](const AxisSpec& s) { return s.axis == Axis::rate; }))
            errors.push_back(key + ": needs a rate axis");
    }
    if (axes.size() == 2 && axes[0].axis == axes[1].axis) errors.push_back("axes: the two axes must differ");
    if (observables.empty()) errors.push_back("observables: nothing to record");
    if (steps < 1000) errors.push_back("steps: must be >= 1000");
    if (!errors.empty()) {
        std::string msg = "scenario " + name + " is invalid:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw Error(ErrorCode::config, msg);
    }
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"fig4",  "fig5",  "fig6",   "fig7",   "fig8a",    "fig8b", "fig9a",
                                                   "fig9b", "fig10a", "fig10b", "headline", "natom"};
    return names;
}

namespace {

SystemParams adiabatic_comparison_point() {
    SystemParams p;
    p.tf = 153.0;
    p.omega0 = 0.5;
    return p;
}

Scenario registered(const std::string& name, int r) {
    using O = Observable;
    Scenario s;
    s.name = name;
    s.observables = {O::fidelity};
    if (name == "fig4") {
        s.description = "adiabatic fidelity versus pulse amplitude and time fraction";
        s.schedule = ScheduleKind::adiabatic;
        s.base.tf = 400.0;
        s.axes = {linear_axis(Axis::omega0, 0.3 / r, 0.3, r), time_axis(r)};
    } else if (name == "fig5") {
        s.description = "adiabatic populations and fidelity versus time";
        s.schedule = ScheduleKind::adiabatic;
        s.base.tf = 400.0;
        s.axes = {time_axis(200)};
        s.observables = {O::pop_phi1, O::pop_phi_last, O::pop_bright, O::fidelity, O::leakage};
    } else if (name == "fig6") {
        s.description = "transitionless fidelity versus duration and detuning";
        s.axes = {linear_axis(Axis::tf, 10.0, 150.0, r), linear_axis(Axis::delta, 0.5, 4.0, r)};
    } else if (name == "fig7") {
        s.description = "transitionless and adiabatic time series at tf = 72";
        s.axes = {AxisSpec{Axis::schedule, {0.0, 1.0}}, time_axis(200)};
        s.observables = {O::pop_phi1, O::pop_phi_last, O::pop_bright, O::fidelity, O::leakage};
    } else if (name == "fig8a" || name == "fig8b") {
        s.description = "fidelity versus each decay rate";
        s.open = true;
        if (name == "fig8b") {
            s.schedule = ScheduleKind::adiabatic;
            s.base = adiabatic_comparison_point();
            s.observables = {O::fidelity, O::leakage};
        }
        s.axes = {AxisSpec{Axis::channel, {0.0, 1.0, 2.0}}, linear_axis(Axis::rate, 0.0, 0.01, r)};
    } else if (name == "fig9a" || name == "fig9b") {
        s.description = "fidelity versus atomic and cavity decay";
        s.open = true;
        if (name == "fig9b") {
            s.schedule = ScheduleKind::adiabatic;
            s.base = adiabatic_comparison_point();
        }
        s.axes = {linear_axis(Axis::gamma, 0.0, 0.01, r), linear_axis(Axis::kappa_c, 0.0, 0.01, r)};
    } else if (name == "fig10a") {
        s.description = "transitionless fidelity versus coupling deviations";
        s.axes = {linear_axis(Axis::dg, -0.1, 0.1, r), linear_axis(Axis::dv, -0.1, 0.1, r)};
    } else if (name == "fig10b") {
        s.description = "transitionless fidelity versus duration and amplitude deviations";
        s.axes = {linear_axis(Axis::dT, -0.1, 0.1, r), linear_axis(Axis::domega0, -0.1, 0.1, r)};
    } else if (name == "headline") {
        s.description = "transitionless fidelity with the experimental decay rates";
        s.open = true;
        apply_experimental_rates(s.base);
        s.observables = {O::fidelity, O::leakage};
    } else if (name == "natom") {
        s.description = "transitionless fidelity versus chain length at tf = 72";
        s.axes = {AxisSpec{Axis::atoms, {3.0, 5.0, 7.0}}};
        s.observables = {O::fidelity, O::leakage};
    } else {
        std::string known;
        for (const auto& n : scenario_names()) known += (known.empty() ? "" : ", ") + n;
        throw Error(ErrorCode::unknown_scenario, "unknown scenario '" + name + "' (known: " + known + ")");
    }
    return s;
}

} // namespace

Scenario make_scenario(const std::string& name, const ScenarioOptions& options) {
    if (options.resolution < 2) throw Error(ErrorCode::config, "resolution: must be >= 2");
    Scenario s = registered(name, options.resolution);
    for (const auto& [key, value] : options.overrides) set_param(s.base, key, value);
    if (options.steps) s.steps = *options.steps;
    if (options.schedule) s.schedule = *options.schedule;
    if (options.open) s.open = *options.open;
    if (!options.axes.empty()) s.axes = options.axes;
    if (options.observables) s.observables = *options.observables;
    s.validate();
    return s;
}

std::size_t SweepResult::failures() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const CellResult& c) { return !c.error.empty(); }));
}

std::string SweepResult::hash_hex() const {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << hash;
    return os.str();
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

json params_json(const SystemParams& p) {
    json j = json::object();
    for (const auto& key : param_keys()) j[key] = get_param(p, key);
    return j;
}

json provenance_json(const Scenario& s) {
    json axes = json::array();
    for (const auto& a : s.axes) axes.push_back({{"axis", to_string(a.axis)}, {"values", a.values}});
    json obs = json::array();
    for (auto o : s.observables) obs.push_back(to_string(o));
    return {{"scenario", s.name},
            {"schedule", to_string(s.schedule)},
            {"open", s.open},
            {"base", params_json(s.base)},
            {"axes", axes},
            {"observables", obs},
            {"solver", {{"method", "rk4"}, {"steps", s.steps}}}};
}

struct Job {
    std::vector<double> coords;  // non-time axes
    SystemParams params;
    ScheduleKind schedule;
};

void apply_axis(Axis axis, double x, Job& job, int& channel) {
    auto& p = job.params;
    switch (axis) {
    case Axis::omega0: p.omega0 = x; break;
    case Axis::tf: p.tf = x; break;
    case Axis::delta: p.delta = x; break;
    case Axis::gamma: p.gamma = x; break;
    case Axis::kappa_c: p.kappa_c = x; break;
    case Axis::kappa_f: p.kappa_f = x; break;
    case Axis::dg: p.deviation.g = x; break;
    case Axis::dv: p.deviation.v = x; break;
    case Axis::domega0: p.deviation.omega0 = x; break;
    case Axis::dT: p.deviation.duration = x; break;
    case Axis::atoms: p.atoms = static_cast<int>(x); break;
    case Axis::schedule: job.schedule = x == 0.0 ? ScheduleKind::adiabatic : ScheduleKind::tqd; break;
    case Axis::channel: channel = static_cast<int>(x); break;
    case Axis::rate:
    case Axis::time: break;
    }
}

std::vector<Job> expand(const Scenario& s, const std::vector<const AxisSpec*>& outer) {
    std::vector<std::vector<double>> points{{}};
    for (const auto* a : outer) {
        std::vector<std::vector<double>> next;
        for (const auto& prefix : points)
            for (double x : a->values) {
                auto p = prefix;
                p.push_back(x);
                next.push_back(std::move(p));
            }
        points = std::move(next);
    }
    std::vector<Job> jobs;
    for (auto& coords : points) {
        Job job{coords, s.base, s.schedule};
        int channel = 0;
        std::optional<double> rate;
        for (std::size_t i = 0; i < outer.size(); ++i) {
            apply_axis(outer[i]->axis, coords[i], job, channel);
            if (outer[i]->axis == Axis::rate) rate = coords[i];
        }
        if (rate) {
            if (channel == 0) job.params.gamma = *rate;
            else if (channel == 1) job.params.kappa_c = *rate;
            else job.params.kappa_f = *rate;
        }
        jobs.push_back(std::move(job));
    }
    return jobs;
}

std::vector<CellResult> run_job(const Scenario& s, const Job& job, const AxisSpec* time) {
    const std::size_t n_obs = s.observables.size();
    const std::size_t n_cells = time ? time->values.size() : 1;
    std::vector<CellResult> cells(n_cells);
    for (std::size_t k = 0; k < n_cells; ++k) {
        cells[k].coords = job.coords;
        if (time) cells[k].coords.push_back(time->values[k]);
        cells[k].values.assign(n_obs, std::numeric_limits<double>::quiet_NaN());
    }
    try {
        SimulationSettings settings;
        settings.schedule = job.schedule;
        settings.open = s.open;
        settings.steps = s.steps;
        std::vector<int> steps_at;
        if (time) {
            for (double x : time->values) steps_at.push_back(static_cast<int>(std::lround(x * s.steps)));
            settings.record_steps = steps_at;
        }
        const auto sim = simulate(job.params, settings);
        const auto eval = sim.evaluator();
        const auto recorded = sim.trajectory.grid.recorded_steps();
        for (std::size_t k = 0; k < n_cells; ++k) {
            std::size_t sample = sim.trajectory.size() - 1;
            if (time)
                sample = static_cast<std::size_t>(std::lower_bound(recorded.begin(), recorded.end(), steps_at[k]) -
                                                  recorded.begin());
            for (std::size_t o = 0; o < n_obs; ++o) cells[k].values[o] = eval(s.observables[o], sim.trajectory, sample);
            cells[k].diagnostics = sim.trajectory.diagnostics;
        }
    } catch (const std::exception& e) {
        for (auto& c : cells) c.error = e.what();
    }
    return cells;
}

} // namespace

SweepResult run_scenario(const Scenario& scenario, int threads) {
    scenario.validate();
    SweepResult result;
    result.scenario = scenario;
    result.provenance = provenance_json(scenario).dump();
    result.hash = fnv1a(result.provenance);

    const AxisSpec* time = nullptr;
    std::vector<const AxisSpec*> outer;
    for (const auto& a : scenario.axes) {
        if (a.axis == Axis::time) time = &a;
        else outer.push_back(&a);
    }
    const auto jobs = expand(scenario, outer);
    std::vector<std::vector<CellResult>> out(jobs.size());

    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) out[i] = run_job(scenario, jobs[i], time);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& cells : out)
        for (auto& c : cells) result.cells.push_back(std::move(c));
    return result;
}

std::filesystem::path write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::string stem = result.scenario.name + "-" + result.hash_hex();
    const auto csv_path = dir / (stem + ".csv");
    const auto json_path = dir / (stem + ".json");

    std::ofstream csv(csv_path);
    if (!csv) throw Error(ErrorCode::config, "cannot write " + csv_path.string());
    csv << std::setprecision(12);
    csv << "axis1,axis2,observable,value\n";
    const auto& obs = result.scenario.observables;
    for (const auto& c : result.cells) {
        for (std::size_t o = 0; o < obs.size(); ++o) {
            if (c.coords.size() > 0) csv << c.coords[0];
            csv << ',';
            if (c.coords.size() > 1) csv << c.coords[1];
            csv << ',' << to_string(obs[o]) << ',';
            if (std::isnan(c.values[o])) csv << "nan";
            else csv << c.values[o];
            csv << '\n';
        }
    }

    json cells = json::array();
    for (const auto& c : result.cells) {
        json cell = {{"coords", c.coords},
                     {"diagnostics",
                      {{"steps", c.diagnostics.steps},
                       {"dt", c.diagnostics.dt},
                       {"max_norm_drift", c.diagnostics.max_norm_drift},
                       {"max_trace_drift", c.diagnostics.max_trace_drift},
                       {"max_hermiticity_drift", c.diagnostics.max_hermiticity_drift},
                       {"min_eigenvalue", c.diagnostics.min_eigenvalue}}}};
        if (!c.error.empty()) cell["error"] = c.error;
        cells.push_back(std::move(cell));
    }
    json axes = json::array();
    for (const auto& a : result.scenario.axes) axes.push_back(to_string(a.axis));
    json sidecar = {{"scenario", result.scenario.name},
                    {"description", result.scenario.description},
                    {"hash", result.hash_hex()},
                    {"csv", csv_path.filename().string()},
                    {"columns", {{"axis1", axes.size() > 0 ? axes[0] : json(nullptr)},
                                 {"axis2", axes.size() > 1 ? axes[1] : json(nullptr)}}},
                    {"provenance", json::parse(result.provenance)},
                    {"failures", result.failures()},
                    {"cells", cells}};
    std::ofstream js(json_path);
    if (!js) throw Error(ErrorCode::config, "cannot write " + json_path.string());
    js << sidecar.dump(2) << '\n';
    return csv_path;
}

} // namespace ghz
