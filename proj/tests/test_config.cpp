#include "ghz/config.hpp"
#include "ghz/error.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <numbers>

using namespace ghz;
using nlohmann::json;

namespace {

std::string failure(const json& doc) {
    try {
        parse_config(doc);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::config);
        return e.what();
    }
    return {};
}

} // namespace

TEST(Config, EmptyConfigGivesTheOperatingPoint) {
    unsetenv("GHZSIM_OUTPUT_DIR");
    const auto c = parse_config(json::object());
    EXPECT_EQ(c.params, SystemParams{});
    EXPECT_EQ(c.params.atoms, 3);
    EXPECT_FALSE(c.open);
    EXPECT_EQ(c.schedule, ScheduleKind::tqd);
    EXPECT_EQ(c.steps, 20000);
    EXPECT_EQ(c.output_dir, ".");
}

TEST(Config, PresetConvertsPhysicalUnits) {
    const auto c = parse_config(json{{"preset", "experimental"}});
    EXPECT_NEAR(c.params.gamma, 2.62 / 750.0, 1e-15);
    EXPECT_NEAR(c.params.kappa_c, 3.5 / 750.0, 1e-15);
    EXPECT_NEAR(c.params.kappa_f, 1.52e5 / (2 * std::numbers::pi * 7.5e8), 1e-18);
    EXPECT_NEAR(*c.unit_g, 2 * std::numbers::pi * 750e6, 1e-3);
}

TEST(Config, QuantityStrings) {
    const json doc = {{"units", {{"g", "2pi*750 MHz"}}},
                      {"params", {{"gamma", "2pi*2.62 MHz"}, {"kappa_f", "1.52e5 Hz"}, {"tf", "15.28 ns"}, {"omega0", "0.2"}}}};
    const auto c = parse_config(doc);
    EXPECT_NEAR(c.params.gamma, 2.62 / 750.0, 1e-15);
    EXPECT_NEAR(c.params.kappa_f, 1.52e5 / (2 * std::numbers::pi * 7.5e8), 1e-18);
    EXPECT_NEAR(c.params.tf, 15.28e-9 * 2 * std::numbers::pi * 750e6, 1e-9);
    EXPECT_EQ(c.params.omega0, 0.2);
    EXPECT_NEAR(parse_quantity("2pi*1", Dimension::none, std::nullopt, "x"), 2 * std::numbers::pi, 1e-15);
    EXPECT_THROW(parse_quantity("3 MHz", Dimension::frequency, std::nullopt, "gamma"), Error);
    EXPECT_THROW(parse_quantity("3 ns", Dimension::frequency, 1.0, "gamma"), Error);
    EXPECT_THROW(parse_quantity("3 furlongs", Dimension::frequency, 1.0, "gamma"), Error);
    EXPECT_THROW(parse_quantity("0.1 MHz", Dimension::none, 1.0, "deviation.g"), Error);
    EXPECT_THROW(parse_quantity("fast", Dimension::time, 1.0, "tf"), Error);
}

TEST(Config, EvenChainRejected) {
    const auto msg = failure(json{{"params", {{"atoms", 4}}}});
    EXPECT_NE(msg.find("atoms"), std::string::npos);
    EXPECT_NE(msg.find("odd"), std::string::npos);
}

TEST(Config, UnknownKeysRejected) {
    const auto msg = failure(json{{"params", {{"omega", 0.1}, {"deviation", {{"T", 0.1}}}}}, {"colour", "red"}});
    EXPECT_NE(msg.find("params.omega"), std::string::npos);
    EXPECT_NE(msg.find("params.deviation.T"), std::string::npos);
    EXPECT_NE(msg.find("colour"), std::string::npos);
}

TEST(Config, EveryViolationIsListed) {
    const json doc = {{"params", {{"g", -1.0}, {"tf", 0.0}, {"atoms", 6}}},
                      {"solver", {{"steps", 10}}},
                      {"schedule", "fast"},
                      {"threads", -2},
                      {"observables", {"purity"}}};
    const auto msg = failure(doc);
    for (const char* key : {"g:", "tf:", "atoms:", "solver.steps", "schedule", "threads", "observables"})
        EXPECT_NE(msg.find(key), std::string::npos) << key << "\n" << msg;
}

TEST(Config, WrongTypesReported) {
    const auto msg = failure(json{{"open", "yes"}, {"params", {{"atoms", 3.5}}}});
    EXPECT_NE(msg.find("open"), std::string::npos);
    EXPECT_NE(msg.find("atoms"), std::string::npos);
}

TEST(Config, RoundTrip) {
    RunConfig c = default_config();
    apply_experimental_preset(c);
    c.params.omega0 = 0.5;
    c.params.tf = 153.0;
    c.params.deviation.g = 0.05;
    c.params.branching = {0.5, 0.25, 0.25};
    c.schedule = ScheduleKind::adiabatic;
    c.open = true;
    c.steps = 40000;
    c.record_every = 7;
    c.observables = {Observable::fidelity, Observable::leakage};
    c.scenario = "fig9b";
    c.resolution = 11;
    c.overrides = {{"delta", 3.1}};
    c.axes = {linear_axis(Axis::gamma, 0, 0.01, 5)};
    c.output_dir = "/tmp/x";
    c.threads = 3;
    const auto back = parse_config(to_json(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(parse_config(to_json(default_config())), default_config());
}

TEST(Config, AxesAndScenarioSection) {
    const json doc = {{"scenario",
                       {{"name", "fig6"},
                        {"resolution", 5},
                        {"overrides", {{"delta", 3.0}}},
                        {"axes", {{{"axis", "tf"}, {"lo", 10}, {"hi", 50}, {"n", 3}}, {{"axis", "time"}, {"n", 2}}}}}}};
    const auto c = parse_config(doc);
    EXPECT_EQ(c.scenario, "fig6");
    ASSERT_EQ(c.axes.size(), 2u);
    EXPECT_EQ(c.axes[0].values, (std::vector<double>{10, 30, 50}));
    EXPECT_EQ(c.axes[1].values, (std::vector<double>{0.5, 1.0}));
    const auto s = make_scenario(c.scenario, c.scenario_options());
    EXPECT_EQ(s.base.delta, 3.0);
    EXPECT_NE(failure(json{{"scenario", {{"name", "fig99"}}}}).find("fig99"), std::string::npos);
}

TEST(Config, OutputDirectoryFromEnvironment) {
    setenv("GHZSIM_OUTPUT_DIR", "/tmp/ghz-env", 1);
    EXPECT_EQ(default_config().output_dir, "/tmp/ghz-env");
    EXPECT_EQ(parse_config(json{{"output", {{"dir", "here"}}}}).output_dir, "here");
    unsetenv("GHZSIM_OUTPUT_DIR");
    EXPECT_EQ(default_config().output_dir, ".");
}

TEST(Config, TextParameters) {
    RunConfig c = default_config();
    set_param_text(c, "tf", "100");
    EXPECT_EQ(c.params.tf, 100.0);
    EXPECT_THROW(set_param_text(c, "gamma", "1 MHz"), Error);
    apply_experimental_preset(c);
    set_param_text(c, "gamma", "2pi*7.5 MHz");
    EXPECT_NEAR(c.params.gamma, 0.01, 1e-15);
}
