#include "ghz/error.hpp"
#include "ghz/pulses.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ghz;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::unknown_scenario;
}

} // namespace

TEST(Pulses, StirapPairShapes) {
    SystemParams p;
    const double tf = p.tf;
    // Peaks: Omega_3's early lobe at tf/2 - t0, Omega_1 at tf/2 + t0.
    const auto early = stirap_pair(tf / 2 - p.t0(), p);
    const auto late = stirap_pair(tf / 2 + p.t0(), p);
    EXPECT_NEAR(late.omega1, std::sin(p.alpha) * p.omega0, 1e-15);
    EXPECT_NEAR(late.omega1_dot, 0.0, 1e-15);
    EXPECT_GT(early.omega3, p.omega0);
    const double gap = 2 * p.t0() / p.tc();
    EXPECT_NEAR(early.omega1, std::sin(p.alpha) * p.omega0 * std::exp(-gap * gap), 1e-15);
    EXPECT_LT(early.omega1, 0.1 * early.omega3);
}

TEST(Pulses, DerivativesMatchFiniteDifferences) {
    SystemParams p;
    const double h = 1e-4;
    for (double frac : {0.1, 0.3, 0.45, 0.5, 0.62, 0.8, 0.95}) {
        const double t = frac * p.tf;
        const auto s = stirap_pair(t, p);
        const auto plus = stirap_pair(t + h, p), minus = stirap_pair(t - h, p);
        EXPECT_NEAR(s.omega1_dot, (plus.omega1 - minus.omega1) / (2 * h), 1e-9);
        EXPECT_NEAR(s.omega3_dot, (plus.omega3 - minus.omega3) / (2 * h), 1e-9);
        const double fd = (mixing_angle(t + h, p).theta - mixing_angle(t - h, p).theta) / (2 * h);
        EXPECT_NEAR(mixing_angle(t, p).theta_dot, fd, 1e-8 * std::max(1.0, std::abs(fd))) << frac;
    }
}

TEST(Pulses, MixingAngleRunsFromZeroToAlpha) {
    SystemParams p;
    EXPECT_NEAR(mixing_angle(0.0, p).theta, 0.0, 1e-3);
    EXPECT_NEAR(mixing_angle(p.tf, p).theta, p.alpha, 1e-3);
    // The integral of dtheta/dt recovers the net rotation.
    PulseSchedule s(ScheduleKind::tqd, p);
    const auto table = s.table(20000);
    double area = 0.0;
    for (std::size_t i = 1; i < table.size(); ++i)
        area += 0.5 * (table[i].theta_dot + table[i - 1].theta_dot) * (table[i].t - table[i - 1].t);
    EXPECT_NEAR(area, table.back().theta - table.front().theta, 1e-8);
}

TEST(Pulses, CounterDiabaticAmplitude) {
    SystemParams p;
    for (double t : {10.0, 36.0, 50.0}) {
        const double rate = mixing_angle(t, p).theta_dot;
        EXPECT_NEAR(tqd_pulse(t, p), std::sqrt(3.0 * p.delta * rate), 1e-15);
    }
    p.atoms = 5;
    EXPECT_NEAR(tqd_pulse_from_rate(0.01, p), std::sqrt(5.0 * p.delta * 0.01), 1e-15);
    EXPECT_EQ(tqd_pulse_from_rate(-1e-20, p), 0.0);
}

TEST(Pulses, InvalidSchedules) {
    SystemParams p;
    p.delta = 0.0;
    EXPECT_EQ(code_of([&] { tqd_pulse(36.0, p); }), ErrorCode::schedule);
    SystemParams reversed;
    reversed.alpha = -std::numbers::pi / 4;
    EXPECT_EQ(code_of([&] { PulseSchedule(ScheduleKind::tqd, reversed).validate(); }), ErrorCode::schedule);
    EXPECT_NO_THROW(PulseSchedule(ScheduleKind::adiabatic, reversed).validate());
    SystemParams dark;
    dark.omega0 = 0.0;
    EXPECT_EQ(code_of([&] { mixing_angle(10.0, dark); }), ErrorCode::undefined_angle);
}

TEST(Pulses, DriveAppliesTheAmplitudeDeviation) {
    SystemParams p;
    p.deviation.omega0 = 0.1;
    SystemParams nominal;
    for (auto kind : {ScheduleKind::adiabatic, ScheduleKind::tqd}) {
        const auto a = PulseSchedule(kind, p).drive(30.0);
        const auto b = PulseSchedule(kind, nominal).drive(30.0);
        EXPECT_NEAR(a.first, 1.1 * b.first, 1e-15);
        EXPECT_NEAR(a.second, 1.1 * b.second, 1e-15);
    }
    const auto tqd = PulseSchedule(ScheduleKind::tqd, nominal).drive(30.0);
    EXPECT_EQ(tqd.first, tqd.second);
}

TEST(Pulses, CounterDiabaticPulseIgnoresOverallAmplitude) {
    SystemParams a, b;
    b.omega0 = 0.5;
    for (double t : {20.0, 36.0, 52.0}) EXPECT_NEAR(tqd_pulse(t, a), tqd_pulse(t, b), 1e-14);
}

TEST(Pulses, AdiabaticityImprovesWithDuration) {
    SystemParams fast, slow;
    slow.tf = 400.0;
    const auto rf = PulseSchedule(ScheduleKind::adiabatic, fast).adiabaticity();
    const auto rs = PulseSchedule(ScheduleKind::adiabatic, slow).adiabaticity();
    EXPECT_LT(rs.max_ratio, rf.max_ratio);
    EXPECT_GE(rf.at_time, 0.0);
    EXPECT_LE(rf.at_time, fast.tf);
}

TEST(Pulses, TableSamples) {
    PulseSchedule s(ScheduleKind::adiabatic, SystemParams{});
    const auto t = s.table(4);
    ASSERT_EQ(t.size(), 5u);
    EXPECT_EQ(t.front().t, 0.0);
    EXPECT_EQ(t.back().t, 72.0);
    EXPECT_EQ(t[2].omega_bar, 0.0);
    EXPECT_THROW(s.table(0), Error);
}
