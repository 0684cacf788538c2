// params.hpp: physical parameters of the fiber-coupled cavity chain
//
// Every frequency is expressed in units of the atom-cavity coupling g of the
// nominal design, every time in units of 1/g.

#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace ghz {

enum class ScheduleKind { adiabatic, tqd };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_from_string(const std::string& name);

// Fractional deviations x' = x (1 + d) of the experimental parameters.
struct Deviations {
    double g = 0.0;
    double v = 0.0;
    double omega0 = 0.0;    // scales every delivered laser amplitude
    double duration = 0.0;  // evolution stops at tf (1 + d)

    bool operator==(const Deviations&) const = default;
};

// Spontaneous-emission branching from |e> into the three ground levels.
struct Branching {
    double to_go = 1.0 / 3.0;
    double to_gl = 1.0 / 3.0;
    double to_gr = 1.0 / 3.0;

    bool operator==(const Branching&) const = default;
};

struct SystemParams {
    double g = 1.0;
    double v = 1.0;
    double omega0 = 0.2;
    double tf = 72.0;
    double t0_ratio = 0.14;  // pulse offset t0 = t0_ratio * tf
    double tc_ratio = 0.19;  // pulse width  tc = tc_ratio * tf
    double delta = 2.3;
    double alpha = std::numbers::pi / 4.0;
    double gamma = 0.0;
    double kappa_c = 0.0;
    double kappa_f = 0.0;
    int atoms = 3;
    Branching branching;
    Deviations deviation;

    double t0() const { return t0_ratio * tf; }
    double tc() const { return tc_ratio * tf; }

    // Couplings actually present in the hardware (nominal times deviation).
    double actual_g() const { return g * (1.0 + deviation.g); }
    double actual_v() const { return v * (1.0 + deviation.v); }
    double evolution_time() const { return tf * (1.0 + deviation.duration); }

    bool dissipative() const { return gamma > 0.0 || kappa_c > 0.0 || kappa_f > 0.0; }

    // One human-readable entry per violated invariant, prefixed by the key.
    std::vector<std::string> violations() const;

    // Throws Error(config) listing every violation.
    void validate() const;

    bool operator==(const SystemParams&) const = default;
};

// Rates of the experimental parameter set in units of g = 2pi x 750 MHz.
struct ExperimentalRates {
    static constexpr double g_hz = 2.0 * std::numbers::pi * 750e6;
    static constexpr double gamma = 2.0 * std::numbers::pi * 2.62e6 / g_hz;
    static constexpr double kappa_c = 2.0 * std::numbers::pi * 3.5e6 / g_hz;
    static constexpr double kappa_f = 1.52e5 / g_hz;
};

void apply_experimental_rates(SystemParams& params);

// Keyed access used by configuration files and sweep axes. Keys: g, v, omega0,
// tf, t0_ratio, tc_ratio, delta, alpha, gamma, kappa_c, kappa_f, atoms,
// branching.to_go|to_gl|to_gr, deviation.g|v|omega0|duration.
// Unknown keys throw Error(config).
void set_param(SystemParams& params, const std::string& key, double value);
double get_param(const SystemParams& params, const std::string& key);
const std::vector<std::string>& param_keys();

} // namespace ghz
