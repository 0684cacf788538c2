#include "ghz/params.hpp"

#include "ghz/error.hpp"

#include <cmath>
#include <sstream>

namespace ghz {

std::string to_string(ScheduleKind kind) {
    return kind == ScheduleKind::adiabatic ? "adiabatic" : "tqd";
}

ScheduleKind schedule_from_string(const std::string& name) {
    if (name == "adiabatic") return ScheduleKind::adiabatic;
    if (name == "tqd") return ScheduleKind::tqd;
    throw Error(ErrorCode::config, "schedule: expected 'adiabatic' or 'tqd', got '" + name + "'");
}

std::vector<std::string> SystemParams::violations() const {
    std::vector<std::string> out;
    auto non_negative = [&](const char* key, double x) {
        if (!std::isfinite(x) || x < 0.0) out.push_back(std::string(key) + ": must be a finite value >= 0");
    };
    auto positive = [&](const char* key, double x) {
        if (!std::isfinite(x) || x <= 0.0) out.push_back(std::string(key) + ": must be > 0");
    };
    positive("g", g);
    positive("v", v);
    non_negative("omega0", omega0);
    positive("tf", tf);
    non_negative("t0_ratio", t0_ratio);
    positive("tc_ratio", tc_ratio);
    non_negative("delta", delta);
    if (!std::isfinite(alpha)) out.push_back("alpha: must be finite");
    non_negative("gamma", gamma);
    non_negative("kappa_c", kappa_c);
    non_negative("kappa_f", kappa_f);
    if (atoms < 3) out.push_back("atoms: at least 3 atoms are required");
    if (atoms % 2 == 0)
        out.push_back("atoms: N must be odd (the chain scheme is defined for N = 2l + 1 only)");
    non_negative("branching.to_go", branching.to_go);
    non_negative("branching.to_gl", branching.to_gl);
    non_negative("branching.to_gr", branching.to_gr);
    const double total = branching.to_go + branching.to_gl + branching.to_gr;
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "branching: fractions must sum to 1 (got " << total << ")";
        out.push_back(os.str());
    }
    auto deviation_ok = [&](const char* key, double d) {
        if (!std::isfinite(d) || d <= -1.0) out.push_back(std::string(key) + ": deviation must be > -1");
    };
    deviation_ok("deviation.g", deviation.g);
    deviation_ok("deviation.v", deviation.v);
    deviation_ok("deviation.omega0", deviation.omega0);
    deviation_ok("deviation.duration", deviation.duration);
    return out;
}

void SystemParams::validate() const {
    const auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid parameters:";
    for (const auto& s : v) msg += "\n  " + s;
    throw Error(ErrorCode::config, msg);
}

void apply_experimental_rates(SystemParams& params) {
    params.gamma = ExperimentalRates::gamma;
    params.kappa_c = ExperimentalRates::kappa_c;
    params.kappa_f = ExperimentalRates::kappa_f;
}

namespace {

double* slot(SystemParams& p, const std::string& key) {
    if (key == "g") return &p.g;
    if (key == "v") return &p.v;
    if (key == "omega0") return &p.omega0;
    if (key == "tf") return &p.tf;
    if (key == "t0_ratio") return &p.t0_ratio;
    if (key == "tc_ratio") return &p.tc_ratio;
    if (key == "delta") return &p.delta;
    if (key == "alpha") return &p.alpha;
    if (key == "gamma") return &p.gamma;
    if (key == "kappa_c") return &p.kappa_c;
    if (key == "kappa_f") return &p.kappa_f;
    if (key == "branching.to_go") return &p.branching.to_go;
    if (key == "branching.to_gl") return &p.branching.to_gl;
    if (key == "branching.to_gr") return &p.branching.to_gr;
    if (key == "deviation.g") return &p.deviation.g;
    if (key == "deviation.v") return &p.deviation.v;
    if (key == "deviation.omega0") return &p.deviation.omega0;
    if (key == "deviation.duration") return &p.deviation.duration;
    return nullptr;
}

} // namespace

void set_param(SystemParams& params, const std::string& key, double value) {
    if (key == "atoms") {
        if (value != std::floor(value)) throw Error(ErrorCode::config, "atoms: must be an integer");
        params.atoms = static_cast<int>(value);
        return;
    }
    double* s = slot(params, key);
    if (!s) throw Error(ErrorCode::config, "unknown parameter key '" + key + "'");
    *s = value;
}

double get_param(const SystemParams& params, const std::string& key) {
    if (key == "atoms") return params.atoms;
    double* s = slot(const_cast<SystemParams&>(params), key);
    if (!s) throw Error(ErrorCode::config, "unknown parameter key '" + key + "'");
    return *s;
}

const std::vector<std::string>& param_keys() {
    static const std::vector<std::string> keys = {
        "g", "v", "omega0", "tf", "t0_ratio", "tc_ratio", "delta", "alpha", "gamma", "kappa_c", "kappa_f", "atoms",
        "branching.to_go", "branching.to_gl", "branching.to_gr", "deviation.g", "deviation.v", "deviation.omega0",
        "deviation.duration"};
    return keys;
}

} // namespace ghz
