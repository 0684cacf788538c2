#include "ghz/error.hpp"
#include "ghz/model.hpp"
#include "ghz/zeno.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace ghz;

namespace {

Operator hc(double g, double v, int atoms = 3) {
    SystemParams p;
    p.g = g;
    p.v = v;
    p.atoms = atoms;
    return coupling_hamiltonian(closed_space(atoms), p);
}

} // namespace

TEST(Zeno, AnalyticMatchesNumericForRandomCouplings) {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double g = dist(rng), v = dist(rng);
        const auto cmp = compare_spectra(analytic_eigensystem(g, v), numeric_eigensystem(hc(g, v)));
        EXPECT_LE(cmp.max_eigenvalue_error, 1e-9) << g << " " << v;
        EXPECT_LE(cmp.max_principal_angle, 1e-8) << g << " " << v;
    }
}

TEST(Zeno, AnalyticVectorsAreOrthonormalEigenvectors) {
    for (auto [g, v] : {std::pair{1.0, 1.0}, std::pair{0.6, 1.7}, std::pair{1.9, 0.55}}) {
        const auto eig = analytic_eigensystem(g, v);
        const Eigen::MatrixXcd h = hc(g, v).dense();
        const Eigen::MatrixXcd& u = eig.vectors;
        EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(11, 11)).norm(), 1e-12);
        for (int k = 1; k <= 9; ++k) {
            const Eigen::MatrixXcd z = eig.subspace(k);
            EXPECT_LT((h * z - eig.subspace_eigenvalue(k) * z).norm(), 1e-12) << "Z_" << k;
        }
        EXPECT_EQ(eig.subspace(1).cols(), 3);
        EXPECT_EQ(eig.subspace_eigenvalue(1), 0.0);
    }
}

TEST(Zeno, SpectrumIsSymmetric) {
    // H_c is bipartite (a hopping chain), so its spectrum is symmetric about 0.
    const auto s = analytic_eigensystem(1.3, 0.8).spectrum();
    for (Eigen::Index i = 0; i < s.size(); ++i) EXPECT_NEAR(s(i), -s(s.size() - 1 - i), 1e-12);
}

TEST(Zeno, BrightStateIsDarkToCoupling) {
    for (int n : {3, 5, 7})
        for (auto [g, v] : {std::pair{1.0, 1.0}, std::pair{0.7, 1.4}}) {
            const Eigen::VectorXcd b = bright_state(g, v, n);
            EXPECT_NEAR(b.norm(), 1.0, 1e-14);
            EXPECT_LT((hc(g, v, n).dense() * b).norm(), 1e-13);
            EXPECT_NEAR(b(0).real(), 0.0, 0.0);
            EXPECT_NEAR(b(1).real(), bright_normalizer(g, v, n), 0.0);
        }
    const auto eig = analytic_eigensystem(0.7, 1.4);
    const Eigen::VectorXcd b = bright_state(0.7, 1.4, 3);
    EXPECT_NEAR(std::abs(eig.vectors.col(1).dot(b)), 1.0, 1e-13);
    EXPECT_THROW(bright_normalizer(1, 1, 4), Error);
}

TEST(Zeno, ProjectorsResolveTheIdentity) {
    const auto space = closed_space(3);
    const auto eig = analytic_eigensystem(1.1, 0.9);
    const Eigen::MatrixXcd h = hc(1.1, 0.9).dense();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(11, 11);
    for (int k = 1; k <= 9; ++k) {
        const Eigen::MatrixXcd p = zeno_projector(space, eig, k).dense();
        EXPECT_LT((p * p - p).norm(), 1e-12);
        EXPECT_LT((p * h - h * p).norm(), 1e-12);
        sum += p;
    }
    EXPECT_LT((sum - Eigen::MatrixXcd::Identity(11, 11)).norm(), 1e-12);
    EXPECT_THROW(zeno_projector(open_space(3), eig, 1), Error);
}

TEST(Zeno, NumericRejectsNonHermitian) {
    const auto s = atomic_op(closed_space(3), 0, AtomLevel::e, AtomLevel::g_o);
    try {
        numeric_eigensystem(s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::non_hermitian);
    }
}

TEST(Zeno, NumericBlocksGroupDegeneracies) {
    const auto num = numeric_eigensystem(hc(1.0, 1.0));
    std::size_t total = 0;
    bool zero_block = false;
    for (const auto& b : num.blocks) {
        total += static_cast<std::size_t>(b.basis.cols());
        if (std::abs(b.eigenvalue) < 1e-10) zero_block = b.basis.cols() == 3;
    }
    EXPECT_EQ(total, 11u);
    EXPECT_TRUE(zero_block);
}

TEST(Zeno, PrincipalAngles) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 1), b = Eigen::MatrixXcd::Zero(3, 1);
    a(0, 0) = 1.0;
    b(1, 0) = 1.0;
    EXPECT_NEAR(max_principal_angle(a, b), std::numbers::pi / 2, 1e-12);
    b(0, 0) = cplx{0.0, 2.0};
    b(1, 0) = 0.0;
    EXPECT_NEAR(max_principal_angle(a, b), 0.0, 1e-12);
    Eigen::VectorXcd v(2), r(2);
    v << cplx{0.0, 1.0}, 1.0;
    r << -1.0, 0.0;
    const auto aligned = align_phase(v, r, 0);
    EXPECT_NEAR(aligned(0).real(), -1.0, 1e-15);
    EXPECT_NEAR(aligned(0).imag(), 0.0, 1e-15);
}

TEST(Zeno, ResonantEffectiveModel) {
    SystemParams p;
    const auto m = effective_hamiltonian(p, 0.1, 0.2, EffectiveVariant::resonant);
    const double n1 = 1.0 / std::sqrt(5.0);
    EXPECT_NEAR(m.bright_norm, n1, 1e-15);
    EXPECT_NEAR(m.hamiltonian(1, 0).real(), 0.1 * n1, 1e-15);
    EXPECT_NEAR(m.hamiltonian(2, 1).real(), 0.2 * n1, 1e-15);
    EXPECT_EQ(m.hamiltonian(1, 1), cplx{});
    EXPECT_THROW(adiabatic_eliminate(m), Error);
    EXPECT_THROW(effective_hamiltonian(p, 0.1, 0.2, EffectiveVariant::eliminated), Error);
}

TEST(Zeno, EliminationGivesTheCounterDiabaticCoupling) {
    // Equal drives Omega on both ends: Omega_x = -Omega^2 / (N Delta), no Stark
    // shifts left on the diagonal.
    for (int n : {3, 5, 7}) {
        SystemParams p;
        p.atoms = n;
        const double omega = 0.3;
        const auto m = effective_hamiltonian(p, omega, omega, EffectiveVariant::detuned);
        EXPECT_NEAR(m.hamiltonian(1, 1).real(), n * p.delta * m.bright_norm * m.bright_norm, 1e-15);
        const auto r = adiabatic_eliminate(m);
        EXPECT_NEAR(r.coupling.real(), -omega * omega / (n * p.delta), 1e-15);
        EXPECT_EQ(r.model.hamiltonian(0, 0), cplx{});
        EXPECT_EQ(r.model.hamiltonian(1, 1), cplx{});
    }
}

TEST(Zeno, UnequalDrivesKeepStarkShifts) {
    SystemParams p;
    const auto m = effective_hamiltonian(p, 0.1, 0.3, EffectiveVariant::detuned);
    const auto r = adiabatic_eliminate(m);
    const double e = m.hamiltonian(1, 1).real();
    EXPECT_NEAR(r.model.hamiltonian(0, 0).real(), -0.01 / 5.0 / e, 1e-15);
    EXPECT_NEAR(r.model.hamiltonian(1, 1).real(), -0.09 / 5.0 / e, 1e-15);
}

TEST(Zeno, SecondOrderEliminationTracksTheExactSplitting) {
    // Exact: the two lowest eigenvalues of the 3x3 detuned model split by
    // about 2|Omega_x| for large detuning.
    SystemParams p;
    p.delta = 50.0;
    const double omega = 0.2;
    const auto m = effective_hamiltonian(p, omega, omega, EffectiveVariant::detuned);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.hamiltonian);
    const double split = es.eigenvalues()(1) - es.eigenvalues()(0);
    const auto r = adiabatic_eliminate(m);
    EXPECT_NEAR(split, 2.0 * std::abs(r.coupling), 1e-3 * split);
    EXPECT_TRUE(r.large_detuning);
}
