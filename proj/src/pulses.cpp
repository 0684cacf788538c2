#include "ghz/pulses.hpp"

#include "ghz/error.hpp"
#include "ghz/zeno.hpp"

#include <cmath>
#include <sstream>

namespace ghz {

StirapPair stirap_pair(double t, const SystemParams& params) {
    const double tc2 = params.tc() * params.tc();
    const double x_late = t - params.t0() - params.tf / 2.0;
    const double x_early = t + params.t0() - params.tf / 2.0;
    const double late = std::exp(-x_late * x_late / tc2);
    const double early = std::exp(-x_early * x_early / tc2);
    const double late_dot = -2.0 * x_late / tc2 * late;
    const double early_dot = -2.0 * x_early / tc2 * early;
    const double s = std::sin(params.alpha);
    const double c = std::cos(params.alpha);
    const double a = params.omega0;
    return {s * a * late, a * early + c * a * late, s * a * late_dot, a * early_dot + c * a * late_dot};
}

MixingAngle mixing_angle(double t, const SystemParams& params) {
    const auto p = stirap_pair(t, params);
    const double omega2 = p.omega1 * p.omega1 + p.omega3 * p.omega3;
    if (!(omega2 > 0.0)) {
        std::ostringstream os;
        os << "mixing angle undefined at t = " << t << ": Omega_1 = Omega_3 = 0";
        throw Error(ErrorCode::undefined_angle, os.str());
    }
    return {std::atan2(p.omega1, p.omega3), (p.omega1_dot * p.omega3 - p.omega1 * p.omega3_dot) / omega2};
}

double tqd_pulse_from_rate(double theta_dot, const SystemParams& params) {
    if (!(params.delta > 0.0)) throw Error(ErrorCode::schedule, "tqd pulse requires a positive detuning Delta");
    const double eps = 1e-12 * params.omega0 / params.tf;
    if (theta_dot < -eps) {
        std::ostringstream os;
        os << "tqd schedule invalid: dtheta/dt = " << theta_dot
           << " < 0; the counter-diabatic pulse needs a monotone mixing angle";
        throw Error(ErrorCode::schedule, os.str());
    }
    return std::sqrt(params.atoms * params.delta * std::max(theta_dot, 0.0));
}

double tqd_pulse(double t, const SystemParams& params) {
    return tqd_pulse_from_rate(mixing_angle(t, params).theta_dot, params);
}

PulseSchedule::PulseSchedule(ScheduleKind kind, SystemParams params) : kind_(kind), params_(std::move(params)) {}

PulseSample PulseSchedule::sample(double t) const {
    const auto p = stirap_pair(t, params_);
    const auto angle = mixing_angle(t, params_);
    PulseSample s{t, p.omega1, p.omega3, angle.theta, angle.theta_dot, 0.0};
    if (kind_ == ScheduleKind::tqd) s.omega_bar = tqd_pulse_from_rate(angle.theta_dot, params_);
    return s;
}

std::pair<double, double> PulseSchedule::drive(double t) const {
    const double scale = 1.0 + params_.deviation.omega0;
    if (kind_ == ScheduleKind::tqd) {
        const double bar = tqd_pulse(t, params_) * scale;
        return {bar, bar};
    }
    const auto p = stirap_pair(t, params_);
    return {p.omega1 * scale, p.omega3 * scale};
}

void PulseSchedule::validate(int samples) const {
    for (int i = 0; i <= samples; ++i) (void)sample(params_.tf * i / samples);
}

AdiabaticityReport PulseSchedule::adiabaticity(int samples) const {
    const double n1 = bright_normalizer(params_.g, params_.v, params_.atoms);
    AdiabaticityReport r;
    for (int i = 0; i <= samples; ++i) {
        const double t = params_.tf * i / samples;
        const auto p = stirap_pair(t, params_);
        const double omega = std::hypot(p.omega1, p.omega3);
        const double ratio = std::abs(mixing_angle(t, params_).theta_dot) / std::sqrt(2.0) / (n1 * omega);
        if (ratio > r.max_ratio) r = {ratio, t};
    }
    return r;
}

std::vector<PulseSample> PulseSchedule::table(int samples) const {
    if (samples < 1) throw Error(ErrorCode::config, "pulse table needs at least one interval");
    std::vector<PulseSample> out;
    out.reserve(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) out.push_back(sample(params_.tf * i / samples));
    return out;
}

} // namespace ghz
