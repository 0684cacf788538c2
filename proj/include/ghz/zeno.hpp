// zeno.hpp: spectrum of the coupling Hamiltonian and the Zeno-subspace models
//
// For three atoms H_c has the closed-form eigensystem listed in
// analytic_eigensystem(). The zero eigenvalue is triply degenerate, spanned
// by |phi_1>, the bright state |psi_1> and |phi_11>; that block carries the
// effective three-level dynamics used by both pulse schemes.

#pragma once

#include "ghz/hilbert.hpp"
#include "ghz/params.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace ghz {

struct ZenoCoefficients {
    double A = 0.0;  // sqrt(g^4 + 4 v^4)
    double eps1 = 0, eta1 = 0, chi1 = 0, mu1 = 0, zeta1 = 0, delta1 = 0, theta1 = 0;
    double eps2 = 0, eta2 = 0, chi2 = 0, mu2 = 0, zeta2 = 0, delta2 = 0, theta2 = 0;
};

struct ZenoEigensystem {
    double g = 1.0;
    double v = 1.0;
    ZenoCoefficients coeff;
    std::array<double, 9> lambda{};      // lambda_1 .. lambda_9 in listing order
    std::array<double, 9> normalizer{};  // N_1 .. N_9
    // 11 x 11, unit columns: |phi_1>, |psi_1>, |phi_11>, |psi_2> .. |psi_9>
    Eigen::MatrixXcd vectors;

    // Columns spanning Z_k (k = 1 .. 9); Z_1 is three-dimensional.
    Eigen::MatrixXcd subspace(int k) const;
    double subspace_eigenvalue(int k) const;

    // Ascending eigenvalues with multiplicity (eleven entries).
    Eigen::VectorXd spectrum() const;
};

// Closed forms; requires g, v > 0.
ZenoEigensystem analytic_eigensystem(double g, double v);

struct EigenBlock {
    double eigenvalue = 0.0;
    Eigen::MatrixXcd basis;  // orthonormal columns
};

struct NumericEigensystem {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXcd vectors;     // matching columns
    std::vector<EigenBlock> blocks;  // degenerate groups, ascending
};

// Dense Hermitian diagonalization; throws Error(non_hermitian).
NumericEigensystem numeric_eigensystem(const Operator& h, double degeneracy_tol = 1e-8);

// Largest principal angle between two column spaces of equal dimension.
double max_principal_angle(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Multiplies `v` by the unit phase that makes v(pivot) real with the sign of
// reference(pivot).
Eigen::VectorXcd align_phase(const Eigen::VectorXcd& v, const Eigen::VectorXcd& reference, Eigen::Index pivot);

struct SpectrumComparison {
    double max_eigenvalue_error = 0.0;
    double max_principal_angle = 0.0;
    Eigen::VectorXd analytic;  // ascending
    Eigen::VectorXd numeric;   // ascending
};

// Matches every analytic Zeno subspace to the numeric eigenspace at the same
// eigenvalue and reports the worst deviations.
SpectrumComparison compare_spectra(const ZenoEigensystem& analytic, const NumericEigensystem& numeric);

// 1 / sqrt(N + (N - 1) (g / v)^2)
double bright_normalizer(double g, double v, int atoms);

// Zero-eigenvalue bright state over the closed chain basis (dimension 4N-1).
Eigen::VectorXcd bright_state(double g, double v, int atoms);

enum class EffectiveVariant { resonant, detuned, eliminated };

struct EffectiveModel {
    EffectiveVariant variant = EffectiveVariant::resonant;
    int atoms = 3;
    double bright_norm = 0.0;  // N_1 (N_1' for N atoms)
    double delta = 0.0;
    // 3 x 3 over (|phi_1>, |psi_1>, |phi_last>), or 2 x 2 over
    // (|phi_1>, |phi_last>) for the eliminated variant.
    Eigen::MatrixXcd hamiltonian;
};

// Resonant or detuned three-level model. The detuned variant carries the
// bright-state energy <psi_1|H_d|psi_1> = N Delta N_1^2 on its diagonal.
EffectiveModel effective_hamiltonian(const SystemParams& params, cplx omega_first, cplx omega_last,
                                     EffectiveVariant variant);

struct EliminationResult {
    EffectiveModel model;       // eliminated variant
    cplx coupling{0.0, 0.0};    // <phi_1|H|phi_last> after elimination (Omega_x)
    double detuning_ratio = 0;  // (bright energy / N_1) / max |Omega|; >= 1 is the large-detuning regime
    bool large_detuning = true;
};

// Second-order elimination of |psi_1>. Equal amplitudes produce equal Stark
// shifts, which are dropped; unequal ones are kept. A failed large-detuning
// check logs a warning and still returns the model.
EliminationResult adiabatic_eliminate(const EffectiveModel& model);

// P_k = sum of |beta><beta| over Z_k, as an operator on the 11-state space.
Operator zeno_projector(const SpacePtr& space, const ZenoEigensystem& eig, int k);

} // namespace ghz
