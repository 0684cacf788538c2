#include "ghz/error.hpp"
#include "ghz/model.hpp"
#include "ghz/observables.hpp"
#include "ghz/zeno.hpp"

#include <gtest/gtest.h>

using namespace ghz;

TEST(Observables, Populations) {
    const auto space = closed_space(3);
    const Eigen::VectorXcd phi1 = basis_vector(*space, 0);
    EXPECT_EQ(population(Eigen::MatrixXcd(phi1 * phi1.adjoint()), phi1), 1.0);
    const Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(11, 11) / 11.0;
    for (std::size_t i = 0; i < 11; ++i) EXPECT_NEAR(population(mixed, basis_vector(*space, i)), 1.0 / 11.0, 1e-15);
    const Eigen::VectorXcd short_vector = Eigen::VectorXcd::Ones(3);
    EXPECT_THROW(population(mixed, short_vector), Error);
    EXPECT_THROW(population(phi1, short_vector), Error);
}

TEST(Observables, TargetStates) {
    for (int n : {3, 5}) {
        const auto space = closed_space(n);
        const auto adiabatic = target_state(*space, ScheduleKind::adiabatic);
        const auto tqd = target_state(*space, ScheduleKind::tqd);
        const auto last = space->dim() - 1;
        const double r = 1.0 / std::sqrt(2.0);
        EXPECT_NEAR(adiabatic.vector(0).real(), r, 1e-15);
        EXPECT_NEAR(adiabatic.vector(last).real(), -r, 1e-15);
        EXPECT_NEAR(tqd.vector(last).imag(), r, 1e-15);
        EXPECT_NEAR(tqd.vector.norm(), 1.0, 1e-15);
        EXPECT_EQ(tqd.atoms, n);
    }
    // In the open space the target lives on the chain states, not the decay products.
    const auto open = open_space(3);
    const auto t = target_state(*open, ScheduleKind::tqd);
    EXPECT_EQ(t.vector.size(), 16);
    EXPECT_NEAR(std::abs(t.vector(10)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Observables, FidelityOfTheTargetIsOne) {
    const auto space = closed_space(3);
    const auto t = target_state(*space, ScheduleKind::tqd);
    EXPECT_NEAR(ghz_fidelity(t.vector, t, ScheduleKind::tqd), 1.0, 1e-15);
    EXPECT_NEAR(ghz_fidelity(Eigen::MatrixXcd(t.vector * t.vector.adjoint()), t, ScheduleKind::tqd), 1.0, 1e-15);
    // The other method's target is orthogonal up to the relative phase: |1 + i|^2 / 4.
    const auto a = target_state(*space, ScheduleKind::adiabatic);
    EXPECT_NEAR(ghz_fidelity(a.vector, t, ScheduleKind::tqd), 0.5, 1e-15);
}

TEST(Observables, MethodMismatchIsAnError) {
    const auto space = closed_space(3);
    const auto t = target_state(*space, ScheduleKind::tqd);
    try {
        ghz_fidelity(t.vector, t, ScheduleKind::adiabatic);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::mismatch);
    }
}

TEST(Observables, GlobalPhaseInvarianceAndPureEquality) {
    const auto space = closed_space(3);
    auto t = target_state(*space, ScheduleKind::adiabatic);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(11);
    psi(0) = 0.8;
    psi(5) = cplx{0.0, 0.36};
    psi(10) = cplx{-0.3, 0.2};
    psi.normalize();
    const double f = ghz_fidelity(psi, t, ScheduleKind::adiabatic);
    const double f_rho = ghz_fidelity(Eigen::MatrixXcd(psi * psi.adjoint()), t, ScheduleKind::adiabatic);
    EXPECT_NEAR(f, f_rho, 1e-12);
    t.vector *= std::polar(1.0, 0.77);
    EXPECT_NEAR(ghz_fidelity(psi, t, ScheduleKind::adiabatic), f, 1e-12);
}

TEST(Observables, Names) {
    for (auto o : {Observable::pop_phi1, Observable::pop_phi_last, Observable::pop_bright, Observable::fidelity,
                   Observable::leakage})
        EXPECT_EQ(observable_from_string(to_string(o)), o);
    EXPECT_EQ(to_string(Observable::pop_phi_last), "pop:phiLast");
    EXPECT_EQ(parse_observables("fidelity, pop:phi1"),
              (std::vector<Observable>{Observable::fidelity, Observable::pop_phi1}));
    EXPECT_THROW(observable_from_string("purity"), Error);
}

TEST(Observables, EvaluatorOnASyntheticTrajectory) {
    const auto space = closed_space(3);
    SystemParams p;
    ObservableEvaluator eval(*space, p, ScheduleKind::tqd);
    Trajectory traj;
    traj.times = {0.0, 1.0};
    traj.kets = {basis_vector(*space, 0), eval.target().vector};
    EXPECT_EQ(eval(Observable::pop_phi1, traj, 0), 1.0);
    EXPECT_NEAR(eval.final_value(Observable::fidelity, traj), 1.0, 1e-15);
    EXPECT_NEAR(eval.final_value(Observable::pop_phi_last, traj), 0.5, 1e-15);
    EXPECT_NEAR(eval.final_value(Observable::leakage, traj), 0.0, 1e-15);
    traj.kets[1] = basis_vector(*space, 4);
    EXPECT_NEAR(eval.final_value(Observable::leakage, traj), 1.0, 1e-15);
    traj.kets[1] = bright_state(1.0, 1.0, 3);
    EXPECT_NEAR(eval.final_value(Observable::pop_bright, traj), 1.0, 1e-15);
}
