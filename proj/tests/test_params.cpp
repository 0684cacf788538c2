#include "ghz/error.hpp"
#include "ghz/params.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ghz;

TEST(Params, DefaultsAreTheOperatingPoint) {
    SystemParams p;
    EXPECT_EQ(p.g, 1.0);
    EXPECT_EQ(p.v, 1.0);
    EXPECT_EQ(p.omega0, 0.2);
    EXPECT_EQ(p.delta, 2.3);
    EXPECT_DOUBLE_EQ(p.t0(), 0.14 * 72.0);
    EXPECT_DOUBLE_EQ(p.tc(), 0.19 * 72.0);
    EXPECT_DOUBLE_EQ(p.alpha, std::numbers::pi / 4.0);
    EXPECT_EQ(p.atoms, 3);
    EXPECT_TRUE(p.violations().empty());
    EXPECT_FALSE(p.dissipative());
}

TEST(Params, ValidationListsEveryViolation) {
    SystemParams p;
    p.g = -1.0;
    p.tf = 0.0;
    p.gamma = -0.1;
    p.atoms = 4;
    const auto v = p.violations();
    EXPECT_EQ(v.size(), 4u);
    try {
        p.validate();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::config);
        const std::string msg = e.what();
        for (const char* key : {"g:", "tf:", "gamma:", "atoms:"}) EXPECT_NE(msg.find(key), std::string::npos) << key;
        EXPECT_NE(msg.find("odd"), std::string::npos);
    }
}

TEST(Params, BranchingMustSumToOne) {
    SystemParams p;
    p.branching.to_go = 0.5;
    EXPECT_FALSE(p.violations().empty());
}

TEST(Params, DeviationsAreRelative) {
    SystemParams p;
    p.g = 2.0;
    p.deviation.g = 0.1;
    p.deviation.v = -0.05;
    p.deviation.duration = 0.1;
    EXPECT_DOUBLE_EQ(p.actual_g(), 2.2);
    EXPECT_DOUBLE_EQ(p.actual_v(), 0.95);
    EXPECT_DOUBLE_EQ(p.evolution_time(), 79.2);
}

TEST(Params, ExperimentalRatesInUnitsOfG) {
    SystemParams p;
    apply_experimental_rates(p);
    EXPECT_NEAR(p.gamma, 2.62 / 750.0, 1e-15);
    EXPECT_NEAR(p.kappa_c, 3.5 / 750.0, 1e-15);
    EXPECT_NEAR(p.kappa_f, 1.52e5 / (2.0 * std::numbers::pi * 7.5e8), 1e-18);
}

TEST(Params, KeyedAccessRoundTrips) {
    SystemParams p;
    double x = 0.5;
    for (const auto& key : param_keys()) {
        if (key == "atoms") continue;
        set_param(p, key, x);
        EXPECT_EQ(get_param(p, key), x) << key;
        x += 0.01;
    }
    set_param(p, "atoms", 5);
    EXPECT_EQ(p.atoms, 5);
    EXPECT_THROW(set_param(p, "atoms", 5.5), Error);
    EXPECT_THROW(set_param(p, "nope", 1.0), Error);
}

TEST(Params, ScheduleNames) {
    EXPECT_EQ(schedule_from_string("tqd"), ScheduleKind::tqd);
    EXPECT_EQ(schedule_from_string(to_string(ScheduleKind::adiabatic)), ScheduleKind::adiabatic);
    EXPECT_THROW(schedule_from_string("fast"), Error);
}
