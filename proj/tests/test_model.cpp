#include "ghz/error.hpp"
#include "ghz/model.hpp"

#include <gtest/gtest.h>

using namespace ghz;

TEST(Model, CouplingHamiltonianIsTheTridiagonalChain) {
    SystemParams p;
    p.g = 0.7;
    p.v = 1.3;
    const auto h = coupling_hamiltonian(closed_space(3), p).dense();
    // phi_2 .. phi_10 form a chain with hoppings g, v, v, g, g, v, v, g.
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(11, 11);
    const double hop[] = {p.g, p.v, p.v, p.g, p.g, p.v, p.v, p.g};
    for (int k = 0; k < 8; ++k) expected(k + 1, k + 2) = expected(k + 2, k + 1) = hop[k];
    EXPECT_LT((h - expected).norm(), 1e-15);
}

TEST(Model, CouplingUsesDeviatedValues) {
    SystemParams p;
    p.deviation.g = 0.1;
    p.deviation.v = -0.1;
    const auto h = coupling_hamiltonian(closed_space(3), p);
    EXPECT_NEAR(h.element(2, 1).real(), 1.1, 1e-15);
    EXPECT_NEAR(h.element(3, 2).real(), 0.9, 1e-15);
}

TEST(Model, CouplingConservesExcitations) {
    for (int n : {3, 5, 7}) {
        SystemParams p;
        p.atoms = n;
        const auto space = closed_space(n);
        const auto h = coupling_hamiltonian(space, p);
        const auto x = excitation_operator(space);
        EXPECT_LT(((h * x) - (x * h)).dense().norm(), 1e-14) << n;
        EXPECT_TRUE(h.hermitian_flag());
    }
}

TEST(Model, LaserAndDetuning) {
    SystemParams p;
    const auto space = closed_space(3);
    const auto hl = laser_hamiltonian(space, p, 0.3, 0.4, false);
    EXPECT_EQ(hl.element(1, 0), cplx(0.3, 0.0));
    EXPECT_EQ(hl.element(9, 10), cplx(0.4, 0.0));
    EXPECT_EQ(hl.element(10, 9), cplx(0.4, 0.0));
    const auto fixed = laser_hamiltonian(space, p, 0.3, 0.4, true);
    EXPECT_EQ(fixed.element(9, 10), cplx(0.0, -0.4));
    EXPECT_EQ(fixed.element(10, 9), cplx(0.0, 0.4));
    const auto hd = detuning_hamiltonian(space, p);
    for (std::size_t i : {1u, 5u, 9u}) EXPECT_EQ(hd.element(i, i), cplx(2.3, 0.0));
    EXPECT_EQ(hd.dense().cwiseAbs().sum(), 3 * 2.3);
}

TEST(Model, JumpOperatorsOnTheOpenSpace) {
    SystemParams p;
    p.gamma = 0.03;
    p.kappa_c = 0.02;
    p.kappa_f = 0.01;
    const auto jumps = jump_operators(open_space(3), p);
    ASSERT_EQ(jumps.size(), 15u);
    int atomic = 0, cavity = 0, fiber = 0;
    for (const auto& j : jumps) {
        if (j.label.rfind("sigma", 0) == 0) {
            ++atomic;
            EXPECT_NEAR(j.rate, 0.01, 1e-15);
        } else if (j.label[0] == 'C') {
            ++cavity;
            EXPECT_EQ(j.rate, 0.02);
        } else {
            ++fiber;
            EXPECT_EQ(j.rate, 0.01);
        }
    }
    EXPECT_EQ(atomic, 9);
    EXPECT_EQ(cavity, 4);
    EXPECT_EQ(fiber, 2);
}

TEST(Model, JumpOperatorsNeedDecayProducts) {
    try {
        jump_operators(closed_space(3), SystemParams{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::dimension);
        EXPECT_NE(std::string(e.what()).find("open_space"), std::string::npos);
    }
}

TEST(Model, EvenAndTooShortChainsRejected) {
    for (int n : {1, 2, 4, 6}) {
        try {
            chain_layout(n);
            FAIL() << n;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::config);
            EXPECT_NE(std::string(e.what()).find("odd"), std::string::npos);
        }
    }
}

TEST(Model, AtomCountMismatch) {
    SystemParams p;
    p.atoms = 5;
    EXPECT_THROW(coupling_hamiltonian(closed_space(3), p), Error);
}

TEST(Model, ChainLayoutAlternatesPolarization) {
    const auto layout = chain_layout(5);
    // Cavity 1: left only; interior cavities: both; cavity 5: right only.
    int cavities = 0;
    for (const auto& m : layout.modes)
        if (m.kind != ModeKind::fiber) ++cavities;
    EXPECT_EQ(cavities, 2 * 5 - 2);
    EXPECT_EQ(layout.modes.front().label(), "C1L");
    EXPECT_EQ(layout.initial.atoms[3], AtomLevel::g_l);
    EXPECT_EQ(layout.initial.atoms[4], AtomLevel::g_r);
}

TEST(Model, BuildChainModel) {
    SystemParams p;
    const auto closed = build_chain_model(p, false);
    EXPECT_EQ(closed.space->dim(), 11u);
    EXPECT_TRUE(closed.jumps.empty());
    const auto open = build_chain_model(p, true);
    EXPECT_EQ(open.space->dim(), 16u);
    EXPECT_EQ(open.jumps.size(), 15u);
    EXPECT_EQ(open.drive_last.element(9, 10), cplx(1.0, 0.0));
}
