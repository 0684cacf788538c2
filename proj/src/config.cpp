#include "ghz/config.hpp"

#include "ghz/error.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <regex>

namespace ghz {

using nlohmann::json;

std::vector<std::string> RunConfig::violations() const {
    auto out = params.violations();
    if (unit_g && !(std::isfinite(*unit_g) && *unit_g > 0.0)) out.push_back("units.g: must be > 0");
    if (steps < 1000) out.push_back("solver.steps: must be >= 1000");
    if (record_every < 1) out.push_back("solver.record_every: must be >= 1");
    if (observables.empty()) out.push_back("observables: at least one observable is required");
    if (!scenario.empty()) {
        const auto& names = scenario_names();
        if (std::find(names.begin(), names.end(), scenario) == names.end())
            out.push_back("scenario.name: unknown scenario '" + scenario + "'");
    }
    if (resolution < 2) out.push_back("scenario.resolution: must be >= 2");
    for (const auto& [key, value] : overrides) {
        const auto& keys = param_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            out.push_back("scenario.overrides." + key + ": unknown parameter");
        else if (!std::isfinite(value))
            out.push_back("scenario.overrides." + key + ": must be finite");
    }
    if (axes.size() > 2) out.push_back("scenario.axes: at most two axes");
    for (const auto& a : axes) {
        if (a.values.empty()) out.push_back("scenario.axes." + to_string(a.axis) + ": grid is empty");
        for (std::size_t k = 1; k < a.values.size(); ++k)
            if (!(a.values[k] > a.values[k - 1])) {
                out.push_back("scenario.axes." + to_string(a.axis) + ": grid must be strictly increasing");
                break;
            }
    }
    if (output_dir.empty()) out.push_back("output.dir: must not be empty");
    if (format != "csv") out.push_back("output.format: only 'csv' is supported");
    if (threads < 0) out.push_back("threads: must be >= 0");
    return out;
}

void RunConfig::validate() const {
    const auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid configuration:";
    for (const auto& s : v) msg += "\n  " + s;
    throw Error(ErrorCode::config, msg);
}

ScenarioOptions RunConfig::scenario_options() const {
    ScenarioOptions o;
    o.resolution = resolution;
    o.overrides = overrides;
    o.axes = axes;
    return o;
}

RunConfig default_config() {
    RunConfig c;
    if (const char* dir = std::getenv("GHZSIM_OUTPUT_DIR"); dir && *dir) c.output_dir = dir;
    return c;
}

Dimension param_dimension(const std::string& key) {
    if (key == "tf") return Dimension::time;
    for (const char* k : {"g", "v", "omega0", "delta", "gamma", "kappa_c", "kappa_f"})
        if (key == k) return Dimension::frequency;
    return Dimension::none;
}

double parse_quantity(const std::string& text, Dimension dim, std::optional<double> unit_g, const std::string& key) {
    static const std::regex pattern(R"(^\s*(2\s*pi\s*\*?\s*)?([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*([A-Za-z]*)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw Error(ErrorCode::config, key + ": cannot parse quantity '" + text + "'");
    double x = std::stod(m[2].str());
    const bool two_pi = m[1].matched;
    const std::string unit = m[3].str();
    if (unit.empty()) {
        if (two_pi) x *= 2.0 * std::numbers::pi;
        return x;
    }
    static const std::map<std::string, std::pair<Dimension, double>> units = {
        {"Hz", {Dimension::frequency, 1.0}},  {"kHz", {Dimension::frequency, 1e3}}, {"MHz", {Dimension::frequency, 1e6}},
        {"GHz", {Dimension::frequency, 1e9}}, {"s", {Dimension::time, 1.0}},       {"ms", {Dimension::time, 1e-3}},
        {"us", {Dimension::time, 1e-6}},      {"ns", {Dimension::time, 1e-9}},
    };
    auto it = units.find(unit);
    if (it == units.end()) throw Error(ErrorCode::config, key + ": unknown unit '" + unit + "'");
    if (dim == Dimension::none) throw Error(ErrorCode::config, key + ": dimensionless, unit '" + unit + "' not allowed");
    if (it->second.first != dim)
        throw Error(ErrorCode::config, key + ": unit '" + unit + "' has the wrong dimension");
    if (!unit_g) throw Error(ErrorCode::config, key + ": physical units need units.g (or the experimental preset)");
    if (dim == Dimension::time && two_pi) throw Error(ErrorCode::config, key + ": 2pi prefix on a time");
    x *= it->second.second;
    if (two_pi) x *= 2.0 * std::numbers::pi;
    return dim == Dimension::frequency ? x / *unit_g : x * *unit_g;
}

void set_param_text(RunConfig& config, const std::string& key, const std::string& text) {
    set_param(config.params, key, parse_quantity(text, param_dimension(key), config.unit_g, key));
}

void apply_experimental_preset(RunConfig& config) {
    config.unit_g = ExperimentalRates::g_hz;
    apply_experimental_rates(config.params);
}

namespace {

class Parser {
public:
    explicit Parser(RunConfig& c) : c_(c) {}

    std::vector<std::string> errors;

    void run(const json& doc) {
        if (!doc.is_object()) {
            errors.push_back("<root>: must be a JSON object");
            return;
        }
        static const std::vector<std::string> top = {"preset", "units",  "params", "schedule",    "open",   "phase_fix",
                                                     "solver", "observables", "scenario", "output", "threads"};
        unknown(doc, top, "");
        if (doc.contains("preset")) {
            const auto& p = doc["preset"];
            if (p.is_string() && p.get<std::string>() == "experimental") apply_experimental_preset(c_);
            else errors.push_back("preset: only \"experimental\" is defined");
        }
        if (doc.contains("units")) units(doc["units"]);
        if (doc.contains("params")) params(doc["params"]);
        if (doc.contains("schedule")) {
            guard("schedule", [&] { c_.schedule = schedule_from_string(doc["schedule"].get<std::string>()); });
        }
        if (doc.contains("open")) guard("open", [&] { c_.open = doc["open"].get<bool>(); });
        if (doc.contains("phase_fix")) guard("phase_fix", [&] { c_.phase_fix = doc["phase_fix"].get<bool>(); });
        if (doc.contains("solver")) solver(doc["solver"]);
        if (doc.contains("observables")) {
            guard("observables", [&] {
                std::vector<Observable> obs;
                for (const auto& o : doc["observables"]) obs.push_back(observable_from_string(o.get<std::string>()));
                c_.observables = obs;
            });
        }
        if (doc.contains("scenario")) scenario(doc["scenario"]);
        if (doc.contains("output")) output(doc["output"]);
        if (doc.contains("threads")) guard("threads", [&] { c_.threads = integer(doc["threads"]); });
    }

private:
    RunConfig& c_;

    template <class F>
    void guard(const std::string& key, F&& f) {
        try {
            f();
        } catch (const Error& e) {
            const std::string what = e.what();
            errors.push_back(what.rfind(key, 0) == 0 ? what : key + ": " + what);
        } catch (const json::exception&) {
            errors.push_back(key + ": wrong type");
        }
    }

    static int integer(const json& j) {
        if (!j.is_number_integer()) throw Error(ErrorCode::config, "must be an integer");
        return j.get<int>();
    }

    void unknown(const json& obj, const std::vector<std::string>& allowed, const std::string& prefix) {
        for (const auto& [k, _] : obj.items())
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                errors.push_back(prefix + k + ": unknown key");
    }

    bool object(const json& j, const std::string& key) {
        if (j.is_object()) return true;
        errors.push_back(key + ": must be an object");
        return false;
    }

    void units(const json& u) {
        if (!object(u, "units")) return;
        unknown(u, {"g"}, "units.");
        if (!u.contains("g")) return;
        guard("units.g", [&] {
            const auto& g = u["g"];
            if (g.is_null()) c_.unit_g.reset();
            else if (g.is_number()) c_.unit_g = g.get<double>();
            else {
                const double hz = parse_quantity(g.get<std::string>(), Dimension::frequency, 1.0, "units.g");
                c_.unit_g = hz;
            }
        });
    }

    void value(const std::string& key, const json& j) {
        guard(key, [&] {
            if (key == "atoms") {
                set_param(c_.params, key, integer(j));
            } else if (j.is_number()) {
                set_param(c_.params, key, j.get<double>());
            } else if (j.is_string()) {
                set_param_text(c_, key, j.get<std::string>());
            } else {
                throw Error(ErrorCode::config, "must be a number or a quantity string");
            }
        });
    }

    void params(const json& p) {
        if (!object(p, "params")) return;
        for (const auto& [k, j] : p.items()) {
            if (k == "branching" || k == "deviation") {
                if (!object(j, k)) continue;
                for (const auto& [sub, jj] : j.items()) {
                    const std::string key = k + "." + sub;
                    const auto& keys = param_keys();
                    if (std::find(keys.begin(), keys.end(), key) == keys.end()) errors.push_back("params." + key + ": unknown key");
                    else value(key, jj);
                }
                continue;
            }
            const auto& keys = param_keys();
            if (std::find(keys.begin(), keys.end(), k) == keys.end() || k.find('.') != std::string::npos)
                errors.push_back("params." + k + ": unknown key");
            else
                value(k, j);
        }
    }

    void solver(const json& s) {
        if (!object(s, "solver")) return;
        unknown(s, {"steps", "record_every"}, "solver.");
        if (s.contains("steps")) guard("solver.steps", [&] { c_.steps = integer(s["steps"]); });
        if (s.contains("record_every")) guard("solver.record_every", [&] { c_.record_every = integer(s["record_every"]); });
    }

    void scenario(const json& s) {
        if (!object(s, "scenario")) return;
        unknown(s, {"name", "resolution", "overrides", "axes"}, "scenario.");
        if (s.contains("name")) guard("scenario.name", [&] { c_.scenario = s["name"].get<std::string>(); });
        if (s.contains("resolution")) guard("scenario.resolution", [&] { c_.resolution = integer(s["resolution"]); });
        if (s.contains("overrides") && object(s["overrides"], "scenario.overrides")) {
            for (const auto& [k, j] : s["overrides"].items()) {
                guard("scenario.overrides." + k, [&] {
                    if (j.is_number()) c_.overrides[k] = j.get<double>();
                    else c_.overrides[k] = parse_quantity(j.get<std::string>(), param_dimension(k), c_.unit_g, k);
                });
            }
        }
        if (s.contains("axes")) {
            guard("scenario.axes", [&] {
                std::vector<AxisSpec> axes;
                for (const auto& a : s["axes"]) axes.push_back(axis(a));
                c_.axes = axes;
            });
        }
    }

    AxisSpec axis(const json& a) {
        if (!a.is_object()) throw Error(ErrorCode::config, "each axis must be an object");
        for (const auto& [k, _] : a.items())
            if (k != "axis" && k != "values" && k != "lo" && k != "hi" && k != "n")
                throw Error(ErrorCode::config, "unknown axis key '" + k + "'");
        const Axis kind = axis_from_string(a.at("axis").get<std::string>());
        if (a.contains("values")) return AxisSpec{kind, a["values"].get<std::vector<double>>()};
        const int n = integer(a.at("n"));
        if (kind == Axis::time && !a.contains("lo")) return time_axis(n);
        return linear_axis(kind, a.at("lo").get<double>(), a.at("hi").get<double>(), n);
    }

    void output(const json& o) {
        if (!object(o, "output")) return;
        unknown(o, {"dir", "format"}, "output.");
        if (o.contains("dir")) guard("output.dir", [&] { c_.output_dir = o["dir"].get<std::string>(); });
        if (o.contains("format")) guard("output.format", [&] { c_.format = o["format"].get<std::string>(); });
    }
};

} // namespace

RunConfig parse_config(const json& doc, RunConfig base) {
    Parser p(base);
    p.run(doc);
    auto errors = p.errors;
    for (auto& v : base.violations())
        if (std::find(errors.begin(), errors.end(), v) == errors.end()) errors.push_back(v);
    if (!errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw Error(ErrorCode::config, msg);
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::config, "cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::config, path + ": " + e.what());
    }
    return parse_config(doc, std::move(base));
}

json to_json(const RunConfig& c) {
    json params = json::object();
    for (const auto& key : param_keys()) {
        const double x = get_param(c.params, key);
        const auto dot = key.find('.');
        json value = key == "atoms" ? json(c.params.atoms) : json(x);
        if (dot == std::string::npos) params[key] = value;
        else params[key.substr(0, dot)][key.substr(dot + 1)] = value;
    }
    json obs = json::array();
    for (auto o : c.observables) obs.push_back(to_string(o));
    json axes = json::array();
    for (const auto& a : c.axes) axes.push_back({{"axis", to_string(a.axis)}, {"values", a.values}});
    json overrides = json::object();
    for (const auto& [k, v] : c.overrides) overrides[k] = v;
    return {{"units", {{"g", c.unit_g ? json(*c.unit_g) : json(nullptr)}}},
            {"params", params},
            {"schedule", to_string(c.schedule)},
            {"open", c.open},
            {"phase_fix", c.phase_fix},
            {"solver", {{"steps", c.steps}, {"record_every", c.record_every}}},
            {"observables", obs},
            {"scenario", {{"name", c.scenario}, {"resolution", c.resolution}, {"overrides", overrides}, {"axes", axes}}},
            {"output", {{"dir", c.output_dir}, {"format", c.format}}},
            {"threads", c.threads}};
}

} // namespace ghz
