// ghzsim: command-line front end for the cavity-chain GHZ simulator.
//
// Precedence: built-in defaults < GHZSIM_OUTPUT_DIR < --preset < --config
// file < individual flags.

#include "ghz/config.hpp"
#include "ghz/error.hpp"
#include "ghz/experiments.hpp"
#include "ghz/model.hpp"
#include "ghz/pulses.hpp"
#include "ghz/zeno.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

struct Flags {
    std::string config_path;
    std::string preset;
    std::map<std::string, std::string> params;  // key -> text
    std::string schedule;
    bool open = false;
    bool phase_fix = false;
    int steps = 0;
    int record_every = 0;
    std::string observables;
    int resolution = 0;
    std::string output_dir;
    int threads = -1;
    std::string out_file;
    int samples = 1001;
    std::string scenario;
    std::vector<std::string> axes;
    std::vector<std::string> overrides;
};

// CLI flag name -> parameter key
const std::vector<std::pair<std::string, std::string>>& param_flags() {
    static const std::vector<std::pair<std::string, std::string>> f = {
        {"--g", "g"},
        {"--v", "v"},
        {"--omega0", "omega0"},
        {"--tf", "tf"},
        {"--t0-ratio", "t0_ratio"},
        {"--tc-ratio", "tc_ratio"},
        {"--delta", "delta"},
        {"--alpha", "alpha"},
        {"--gamma", "gamma"},
        {"--kappa-c", "kappa_c"},
        {"--kappa-f", "kappa_f"},
        {"-N,--atoms", "atoms"},
        {"--dg", "deviation.g"},
        {"--dv", "deviation.v"},
        {"--domega0", "deviation.omega0"},
        {"--dT", "deviation.duration"},
    };
    return f;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
    return out;
}

ghz::RunConfig resolve(const Flags& f, CLI::App& app) {
    auto c = ghz::default_config();
    if (!f.preset.empty()) {
        if (f.preset != "experimental") throw ghz::Error(ghz::ErrorCode::config, "--preset: only 'experimental' is defined");
        ghz::apply_experimental_preset(c);
    }
    if (!f.config_path.empty()) c = ghz::load_config(f.config_path, c);
    for (const auto& [key, text] : f.params) ghz::set_param_text(c, key, text);
    if (!f.schedule.empty()) c.schedule = ghz::schedule_from_string(f.schedule);
    if (app.count("--open")) c.open = f.open;
    if (app.count("--phase-fix")) c.phase_fix = f.phase_fix;
    if (app.count("--steps")) c.steps = f.steps;
    if (app.count("--record-every")) c.record_every = f.record_every;
    if (!f.observables.empty()) c.observables = ghz::parse_observables(f.observables);
    if (app.count("--resolution")) c.resolution = f.resolution;
    if (!f.output_dir.empty()) c.output_dir = f.output_dir;
    if (app.count("--threads")) c.threads = f.threads;
    if (!f.scenario.empty()) c.scenario = f.scenario;
    for (const auto& o : f.overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw ghz::Error(ghz::ErrorCode::config, "--set: expected key=value, got '" + o + "'");
        const auto key = o.substr(0, eq);
        c.overrides[key] = ghz::parse_quantity(o.substr(eq + 1), ghz::param_dimension(key), c.unit_g, key);
    }
    if (!f.axes.empty()) {
        c.axes.clear();
        for (const auto& a : f.axes) {
            const auto parts = split(a, ':');
            const auto kind = ghz::axis_from_string(parts.at(0));
            if (parts.size() == 2 && kind == ghz::Axis::time) c.axes.push_back(ghz::time_axis(std::stoi(parts[1])));
            else if (parts.size() == 4)
                c.axes.push_back(ghz::linear_axis(kind, std::stod(parts[1]), std::stod(parts[2]), std::stoi(parts[3])));
            else
                throw ghz::Error(ghz::ErrorCode::config, "--axis: expected name:lo:hi:n (or time:n), got '" + a + "'");
        }
    }
    c.validate();
    return c;
}

void emit(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

std::ostream& output_stream(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ghz::Error(ghz::ErrorCode::config, "cannot write " + path);
    return file;
}

int cmd_basis(const ghz::RunConfig& c) {
    const auto space = c.open ? ghz::open_space(c.params.atoms) : ghz::closed_space(c.params.atoms);
    std::cout << "index,atoms";
    for (const auto& m : space->modes()) std::cout << ',' << m.label();
    std::cout << ",decay_product\n";
    for (std::size_t i = 0; i < space->dim(); ++i) {
        std::cout << i + 1 << ',' << space->atom_label(i);
        for (int n : space->state(i).photons) std::cout << ',' << n;
        std::cout << ',' << (i >= space->hamiltonian_dim() ? 1 : 0) << '\n';
    }
    return 0;
}

int cmd_hamiltonian(const ghz::RunConfig& c) {
    const auto space = ghz::closed_space(c.params.atoms);
    const auto h = ghz::coupling_hamiltonian(space, c.params);
    const auto m = h.dense();
    std::cout << std::setprecision(12) << "row,col,re,im\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != ghz::cplx{}) std::cout << i + 1 << ',' << j + 1 << ',' << m(i, j).real() << ',' << m(i, j).imag() << '\n';
    return 0;
}

int cmd_eigen(const ghz::RunConfig& c) {
    if (c.params.atoms != 3)
        throw ghz::Error(ghz::ErrorCode::config, "eigen: the closed-form eigensystem exists for N = 3 only");
    const double g = c.params.actual_g(), v = c.params.actual_v();
    const auto analytic = ghz::analytic_eigensystem(g, v);
    const auto numeric = ghz::numeric_eigensystem(ghz::coupling_hamiltonian(ghz::closed_space(3), c.params));
    const auto cmp = ghz::compare_spectra(analytic, numeric);
    std::cout << std::setprecision(12) << "index,analytic,numeric,abs_error\n";
    for (Eigen::Index i = 0; i < cmp.analytic.size(); ++i)
        std::cout << i + 1 << ',' << cmp.analytic(i) << ',' << cmp.numeric(i) << ','
                  << std::abs(cmp.analytic(i) - cmp.numeric(i)) << '\n';
    emit(std::cerr, {{"max_eigenvalue_error", cmp.max_eigenvalue_error}, {"max_principal_angle", cmp.max_principal_angle}});
    return 0;
}

int cmd_pulses(const ghz::RunConfig& c, const Flags& f) {
    ghz::PulseSchedule schedule(c.schedule, c.params);
    schedule.validate();
    std::ofstream file;
    auto& os = output_stream(f.out_file, file);
    os << std::setprecision(12) << "t,omega1,omega3,theta,theta_dot,omega_bar\n";
    for (const auto& s : schedule.table(f.samples - 1))
        os << s.t << ',' << s.omega1 << ',' << s.omega3 << ',' << s.theta << ',' << s.theta_dot << ',' << s.omega_bar << '\n';
    const auto report = schedule.adiabaticity();
    emit(std::cerr, {{"schedule", ghz::to_string(c.schedule)},
                     {"max_adiabaticity_ratio", report.max_ratio},
                     {"at_time", report.at_time}});
    return 0;
}

int cmd_simulate(const ghz::RunConfig& c, const Flags& f) {
    ghz::SimulationSettings s;
    s.schedule = c.schedule;
    s.open = c.open;
    s.steps = c.steps;
    s.record_every = c.record_every;
    s.phase_fix = c.phase_fix;
    const auto sim = ghz::simulate(c.params, s);
    const auto eval = sim.evaluator();
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    for (auto o : c.observables) {
        names.push_back(ghz::to_string(o));
        std::vector<double> col;
        for (std::size_t i = 0; i < sim.trajectory.size(); ++i) col.push_back(eval(o, sim.trajectory, i));
        columns.push_back(std::move(col));
    }
    std::ofstream file;
    auto& os = output_stream(f.out_file, file);
    ghz::write_trajectory_csv(os, sim.trajectory.times, names, columns);
    const auto& d = sim.trajectory.diagnostics;
    json summary = {{"schedule", ghz::to_string(c.schedule)},
                    {"open", c.open},
                    {"dimension", sim.model.space->dim()},
                    {"steps", d.steps},
                    {"max_norm_drift", d.max_norm_drift},
                    {"max_trace_drift", d.max_trace_drift},
                    {"min_eigenvalue", d.min_eigenvalue}};
    for (std::size_t k = 0; k < names.size(); ++k) summary["final"][names[k]] = columns[k].back();
    emit(std::cerr, summary);
    return 0;
}

int run_and_report(const ghz::Scenario& scenario, const ghz::RunConfig& c) {
    const auto result = ghz::run_scenario(scenario, c.threads);
    const auto csv = ghz::write_sweep(result, c.output_dir);
    auto sidecar = csv;
    sidecar.replace_extension(".json");
    json summary = {{"scenario", scenario.name},
                    {"csv", csv.string()},
                    {"json", sidecar.string()},
                    {"cells", result.cells.size()},
                    {"failures", result.failures()}};
    if (result.cells.size() == 1 && result.failures() == 0)
        for (std::size_t o = 0; o < scenario.observables.size(); ++o)
            summary["values"][ghz::to_string(scenario.observables[o])] = result.cells[0].values[o];
    emit(std::cout, summary);
    return result.failures() == 0 ? 0 : 3;
}

int cmd_scenario(const ghz::RunConfig& c, CLI::App& sub) {
    if (c.scenario.empty()) throw ghz::Error(ghz::ErrorCode::config, "scenario: a scenario name is required");
    auto options = c.scenario_options();
    if (sub.count("--steps")) options.steps = c.steps;
    if (sub.count("--observables")) options.observables = c.observables;
    return run_and_report(ghz::make_scenario(c.scenario, options), c);
}

int cmd_sweep(const ghz::RunConfig& c) {
    if (c.axes.empty()) throw ghz::Error(ghz::ErrorCode::config, "sweep: at least one --axis is required");
    ghz::Scenario s;
    s.name = "sweep";
    s.description = "user-defined sweep";
    s.base = c.params;
    for (const auto& [key, value] : c.overrides) ghz::set_param(s.base, key, value);
    s.schedule = c.schedule;
    s.open = c.open;
    s.steps = c.steps;
    s.axes = c.axes;
    s.observables = c.observables;
    return run_and_report(s, c);
}

void report_error(const std::string& code, const std::string& message) {
    emit(std::cerr, {{"error", code}, {"message", message}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for GHZ-state generation in fiber-coupled cavity chains"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;

    app.add_option("-c,--config", f.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--preset", f.preset, "parameter preset (experimental)");
    for (const auto& [flag, key] : param_flags()) {
        const std::string k = key;
        std::string help = "parameter " + k;
        switch (ghz::param_dimension(k)) {
        case ghz::Dimension::frequency: help += " (in units of g, or a frequency such as '2pi*3.5 MHz')"; break;
        case ghz::Dimension::time: help += " (in units of 1/g, or a time such as '15 ns')"; break;
        case ghz::Dimension::none: help += " (dimensionless)"; break;
        }
        app.add_option_function<std::string>(flag, [&f, k](const std::string& text) { f.params[k] = text; }, help);
    }
    app.add_option("--schedule", f.schedule, "adiabatic | tqd");
    app.add_flag("--open,!--closed", f.open, "include dissipation");
    app.add_flag("--phase-fix", f.phase_fix, "drive the last atom with -i Omega");
    app.add_option("--steps", f.steps, "RK4 steps");
    app.add_option("--record-every", f.record_every, "record every n-th step");
    app.add_option("--observables", f.observables, "comma list: pop:phi1, pop:phiLast, pop:bright, fidelity, leakage");
    app.add_option("--resolution", f.resolution, "points per continuous sweep axis");
    app.add_option("-o,--output-dir", f.output_dir, "directory for sweep outputs (default $GHZSIM_OUTPUT_DIR or .)");
    app.add_option("--threads", f.threads, "worker threads for sweeps (0: all cores)");

    auto* basis = app.add_subcommand("basis", "list the reachable basis");
    auto* hamiltonian = app.add_subcommand("hamiltonian", "print the nonzero entries of H_c");
    auto* eigen = app.add_subcommand("eigen", "compare the closed-form and numeric spectra of H_c");
    auto* pulses = app.add_subcommand("pulses", "tabulate the pulse schedule");
    pulses->add_option("--samples", f.samples, "number of samples")->check(CLI::Range(2, 10000000));
    pulses->add_option("--out", f.out_file, "output file (default stdout)");
    auto* simulate = app.add_subcommand("simulate", "evolve once and write a trajectory CSV");
    simulate->add_option("--out", f.out_file, "output file (default stdout)");
    auto* scenario = app.add_subcommand("scenario", "run a registered scenario");
    scenario->add_option("name", f.scenario, "scenario name")->required();
    scenario->add_option("--set", f.overrides, "parameter override key=value");
    scenario->add_option("--axis", f.axes, "replace axes: name:lo:hi:n or time:n");
    auto* sweep = app.add_subcommand("sweep", "sweep up to two axes around the configured parameters");
    sweep->add_option("--axis", f.axes, "name:lo:hi:n or time:n")->required();
    sweep->add_option("--set", f.overrides, "parameter override key=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return 2;
    }

    try {
        const auto c = resolve(f, app);
        if (*basis) return cmd_basis(c);
        if (*hamiltonian) return cmd_hamiltonian(c);
        if (*eigen) return cmd_eigen(c);
        if (*pulses) return cmd_pulses(c, f);
        if (*simulate) return cmd_simulate(c, f);
        if (*scenario) return cmd_scenario(c, app);
        if (*sweep) return cmd_sweep(c);
    } catch (const ghz::Error& e) {
        report_error(std::string(ghz::to_string(e.code())), e.what());
        return 1;
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return 1;
    }
    return 0;
}
