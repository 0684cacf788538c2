// pulses.hpp: fractional STIRAP pulse pair and the counter-diabatic pulse
//
// Omega_1(t) = sin(alpha) Omega_0 G(t - t0 - tf/2)
// Omega_3(t) = Omega_0 G(t + t0 - tf/2) + cos(alpha) Omega_0 G(t - t0 - tf/2)
// with G(x) = exp(-x^2 / tc^2), tan(theta) = Omega_1 / Omega_3 and the
// transitionless pulse Omega_bar = sqrt(N Delta dtheta/dt) on both lasers.

#pragma once

#include "ghz/params.hpp"

#include <utility>
#include <vector>

namespace ghz {

struct PulseSample {
    double t = 0.0;
    double omega1 = 0.0;
    double omega3 = 0.0;
    double theta = 0.0;
    double theta_dot = 0.0;
    double omega_bar = 0.0;  // zero for the adiabatic schedule
};

struct StirapPair {
    double omega1 = 0.0;
    double omega3 = 0.0;
    double omega1_dot = 0.0;
    double omega3_dot = 0.0;
};

StirapPair stirap_pair(double t, const SystemParams& params);

struct MixingAngle {
    double theta = 0.0;
    double theta_dot = 0.0;
};

// Analytic derivative; throws Error(undefined_angle) where Omega = 0.
MixingAngle mixing_angle(double t, const SystemParams& params);

// Negative dtheta/dt within 1e-12 Omega_0 / tf is clamped to zero; anything
// more negative throws Error(schedule).
double tqd_pulse(double t, const SystemParams& params);

// Same, from an already computed dtheta/dt.
double tqd_pulse_from_rate(double theta_dot, const SystemParams& params);

struct AdiabaticityReport {
    double max_ratio = 0.0;  // max |<eta_0|d_t eta_pm>| / |eta_pm|
    double at_time = 0.0;
};

class PulseSchedule {
public:
    PulseSchedule(ScheduleKind kind, SystemParams params);

    ScheduleKind kind() const noexcept { return kind_; }
    const SystemParams& params() const noexcept { return params_; }

    PulseSample sample(double t) const;

    // Amplitudes delivered to atom 1 and atom N, including the amplitude
    // deviation.
    std::pair<double, double> drive(double t) const;

    // Evaluates the schedule on `samples` uniform points over [0, tf] and
    // throws on the first invalid one.
    void validate(int samples = 10000) const;

    AdiabaticityReport adiabaticity(int samples = 10000) const;

    std::vector<PulseSample> table(int samples) const;

private:
    ScheduleKind kind_;
    SystemParams params_;
};

} // namespace ghz
