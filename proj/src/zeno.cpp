#include "ghz/zeno.hpp"

#include "ghz/error.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

namespace ghz {

namespace {

constexpr int kChainDim = 11;

Eigen::VectorXcd unit(const std::array<double, kChainDim>& c) {
    Eigen::VectorXcd v(kChainDim);
    for (int i = 0; i < kChainDim; ++i) v(i) = c[static_cast<std::size_t>(i)];
    return v;
}

} // namespace

Eigen::MatrixXcd ZenoEigensystem::subspace(int k) const {
    if (k < 1 || k > 9) throw Error(ErrorCode::out_of_range, "Zeno subspace index must be in 1..9");
    if (k == 1) return vectors.leftCols(3);
    return vectors.col(k + 1);
}

double ZenoEigensystem::subspace_eigenvalue(int k) const {
    if (k < 1 || k > 9) throw Error(ErrorCode::out_of_range, "Zeno subspace index must be in 1..9");
    return lambda[static_cast<std::size_t>(k - 1)];
}

Eigen::VectorXd ZenoEigensystem::spectrum() const {
    Eigen::VectorXd s(kChainDim);
    s(0) = s(1) = 0.0;
    for (int k = 0; k < 9; ++k) s(k + 2) = lambda[static_cast<std::size_t>(k)];
    std::sort(s.data(), s.data() + s.size());
    return s;
}

ZenoEigensystem analytic_eigensystem(double g, double v) {
    if (!(g > 0.0) || !(v > 0.0)) throw Error(ErrorCode::config, "analytic_eigensystem: g and v must be positive");
    const double g2 = g * g;
    const double v2 = v * v;
    const double A = std::sqrt(g2 * g2 + 4.0 * v2 * v2);
    const double s2 = std::sqrt(2.0);

    ZenoEigensystem z;
    z.g = g;
    z.v = v;
    auto& c = z.coeff;
    c.A = A;
    const double r1 = std::sqrt(g2 + 2.0 * v2 - A);
    const double r2 = std::sqrt(3.0 * g2 + 2.0 * v2 - A);
    const double r3 = std::sqrt(g2 + 2.0 * v2 + A);
    const double r4 = std::sqrt(3.0 * g2 + 2.0 * v2 + A);
    c.eps1 = r1 / (s2 * g);
    c.eta1 = (-g2 + 2.0 * v2 - A) / (2.0 * g * v);
    c.chi1 = r1 * (g2 + A) / (2.0 * s2 * g * v2);
    c.mu1 = r2 / (s2 * g);
    c.zeta1 = (-g2 - 2.0 * v2 + A) / (2.0 * g * v);
    c.delta1 = r2 * (-g2 + A) / (2.0 * s2 * g * v2);
    c.theta1 = (-g2 + A) / v2;
    c.eps2 = r3 / (s2 * g);
    c.eta2 = (-g2 + 2.0 * v2 + A) / (2.0 * g * v);
    c.chi2 = r3 * (-g2 + A) / (2.0 * s2 * g * v2);
    c.mu2 = r4 / (s2 * g);
    c.zeta2 = (g2 + 2.0 * v2 + A) / (2.0 * g * v);
    c.delta2 = r4 * (g2 + A) / (2.0 * s2 * g * v2);
    c.theta2 = (g2 + A) / v2;

    z.lambda = {0.0, -r1 / s2, r1 / s2, -r2 / s2, r2 / s2, -r3 / s2, r3 / s2, -r4 / s2, r4 / s2};

    const double q = g / v;
    // Unnormalized expansions over |phi_1> .. |phi_11>.
    const std::array<std::array<double, kChainDim>, 9> psi = {{
        {0, 1, 0, -q, 0, 1, 0, -q, 0, 1, 0},
        {0, -1, c.eps1, -c.eta1, -c.chi1, 0, c.chi1, c.eta1, -c.eps1, 1, 0},
        {0, -1, -c.eps1, -c.eta1, c.chi1, 0, -c.chi1, c.eta1, c.eps1, 1, 0},
        {0, 1, -c.mu1, -c.zeta1, c.delta1, -c.theta1, c.delta1, -c.zeta1, -c.mu1, 1, 0},
        {0, 1, c.mu1, -c.zeta1, -c.delta1, -c.theta1, -c.delta1, -c.zeta1, c.mu1, 1, 0},
        {0, -1, c.eps2, -c.eta2, c.chi2, 0, -c.chi2, c.eta2, -c.eps2, 1, 0},
        {0, -1, -c.eps2, -c.eta2, -c.chi2, 0, c.chi2, c.eta2, c.eps2, 1, 0},
        {0, 1, -c.mu2, c.zeta2, -c.delta2, c.theta2, -c.delta2, c.zeta2, -c.mu2, 1, 0},
        {0, 1, c.mu2, c.zeta2, c.delta2, c.theta2, c.delta2, c.zeta2, c.mu2, 1, 0},
    }};

    z.vectors = Eigen::MatrixXcd::Zero(kChainDim, kChainDim);
    z.vectors(0, 0) = 1.0;
    z.vectors(kChainDim - 1, 2) = 1.0;
    for (int w = 0; w < 9; ++w) {
        Eigen::VectorXcd x = unit(psi[static_cast<std::size_t>(w)]);
        const double norm = x.norm();
        z.normalizer[static_cast<std::size_t>(w)] = 1.0 / norm;
        z.vectors.col(w == 0 ? 1 : w + 2) = x / norm;
    }
    return z;
}

NumericEigensystem numeric_eigensystem(const Operator& h, double degeneracy_tol) {
    const double herm = h.hermiticity_error();
    if (herm > 1e-12) throw Error(ErrorCode::non_hermitian, "numeric_eigensystem: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::dimension, "numeric_eigensystem: eigensolver failed");

    NumericEigensystem out;
    out.eigenvalues = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    const Eigen::Index n = out.eigenvalues.size();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && out.eigenvalues(end) - out.eigenvalues(end - 1) <= degeneracy_tol) ++end;
        EigenBlock b;
        b.eigenvalue = out.eigenvalues.segment(start, end - start).mean();
        b.basis = out.vectors.middleCols(start, end - start);
        out.blocks.push_back(std::move(b));
        start = end;
    }
    return out;
}

double max_principal_angle(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::dimension, "max_principal_angle: subspaces must have equal shape");
    auto orthonormal = [](const Eigen::MatrixXcd& m) -> Eigen::MatrixXcd {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
        return qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    };
    const Eigen::MatrixXcd qa = orthonormal(a);
    const Eigen::MatrixXcd qb = orthonormal(b);
    // Largest singular value of the residual of qa outside span(qb) is sin(theta_max).
    const Eigen::MatrixXcd residual = qa - qb * (qb.adjoint() * qa);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(residual);
    const double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return std::asin(std::min(1.0, s));
}

Eigen::VectorXcd align_phase(const Eigen::VectorXcd& v, const Eigen::VectorXcd& reference, Eigen::Index pivot) {
    const cplx x = v(pivot);
    const cplx r = reference(pivot);
    if (std::abs(x) == 0.0 || std::abs(r) == 0.0) return v;
    return v * ((r / std::abs(r)) * (std::conj(x) / std::abs(x)));
}

SpectrumComparison compare_spectra(const ZenoEigensystem& analytic, const NumericEigensystem& numeric) {
    if (numeric.eigenvalues.size() != kChainDim)
        throw Error(ErrorCode::dimension, "compare_spectra: numeric system is not 11-dimensional");
    SpectrumComparison out;
    out.analytic = analytic.spectrum();
    out.numeric = numeric.eigenvalues;
    out.max_eigenvalue_error = (out.analytic - out.numeric).cwiseAbs().maxCoeff();

    for (int k = 1; k <= 9; ++k) {
        const Eigen::MatrixXcd za = analytic.subspace(k);
        const double lam = analytic.subspace_eigenvalue(k);
        std::vector<Eigen::Index> order(kChainDim);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto i, auto j) {
            return std::abs(numeric.eigenvalues(i) - lam) < std::abs(numeric.eigenvalues(j) - lam);
        });
        Eigen::MatrixXcd zn(kChainDim, za.cols());
        for (Eigen::Index c = 0; c < za.cols(); ++c) zn.col(c) = numeric.vectors.col(order[static_cast<std::size_t>(c)]);
        out.max_principal_angle = std::max(out.max_principal_angle, max_principal_angle(za, zn));
    }
    return out;
}

double bright_normalizer(double g, double v, int atoms) {
    if (atoms < 3 || atoms % 2 == 0)
        throw Error(ErrorCode::config, "bright state: N = " + std::to_string(atoms) + " rejected; N must be odd and >= 3");
    const double q = g / v;
    return 1.0 / std::sqrt(atoms + (atoms - 1) * q * q);
}

Eigen::VectorXcd bright_state(double g, double v, int atoms) {
    const double n1 = bright_normalizer(g, v, atoms);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4 * atoms - 1);
    for (int i = 1; i <= atoms; ++i) psi(4 * i - 3) = n1;
    for (int i = 1; i < atoms; ++i) psi(4 * i - 1) = -n1 * g / v;
    return psi;
}

EffectiveModel effective_hamiltonian(const SystemParams& params, cplx omega_first, cplx omega_last,
                                     EffectiveVariant variant) {
    if (variant == EffectiveVariant::eliminated)
        throw Error(ErrorCode::mismatch, "effective_hamiltonian: use adiabatic_eliminate() for the eliminated variant");
    EffectiveModel m;
    m.variant = variant;
    m.atoms = params.atoms;
    m.delta = params.delta;
    m.bright_norm = bright_normalizer(params.actual_g(), params.actual_v(), params.atoms);
    m.hamiltonian = Eigen::MatrixXcd::Zero(3, 3);
    m.hamiltonian(1, 0) = m.bright_norm * omega_first;
    m.hamiltonian(1, 2) = m.bright_norm * omega_last;
    m.hamiltonian(0, 1) = std::conj(m.hamiltonian(1, 0));
    m.hamiltonian(2, 1) = std::conj(m.hamiltonian(1, 2));
    if (variant == EffectiveVariant::detuned)
        m.hamiltonian(1, 1) = params.atoms * params.delta * m.bright_norm * m.bright_norm;
    return m;
}

EliminationResult adiabatic_eliminate(const EffectiveModel& model) {
    if (model.variant != EffectiveVariant::detuned)
        throw Error(ErrorCode::mismatch, "adiabatic_eliminate: requires the detuned effective model");
    const double energy = model.hamiltonian(1, 1).real();
    if (!(energy > 0.0))
        throw Error(ErrorCode::mismatch, "adiabatic_eliminate: bright-state detuning must be positive");

    const cplx v1 = model.hamiltonian(1, 0);  // <psi_1|H|phi_1>
    const cplx v3 = model.hamiltonian(1, 2);  // <psi_1|H|phi_last>
    EliminationResult r;
    r.model.variant = EffectiveVariant::eliminated;
    r.model.atoms = model.atoms;
    r.model.bright_norm = model.bright_norm;
    r.model.delta = model.delta;
    r.model.hamiltonian = Eigen::MatrixXcd::Zero(2, 2);
    r.coupling = -std::conj(v1) * v3 / energy;
    r.model.hamiltonian(0, 1) = r.coupling;
    r.model.hamiltonian(1, 0) = std::conj(r.coupling);
    const double a1 = std::abs(v1);
    const double a3 = std::abs(v3);
    if (std::abs(a1 - a3) > 1e-15 * std::max(1.0, std::max(a1, a3))) {
        r.model.hamiltonian(0, 0) = -a1 * a1 / energy;
        r.model.hamiltonian(1, 1) = -a3 * a3 / energy;
    }

    const double peak = std::max(a1, a3) / model.bright_norm;  // max |Omega|
    r.detuning_ratio = peak > 0.0 ? (energy / model.bright_norm) / peak : std::numeric_limits<double>::infinity();
    r.large_detuning = r.detuning_ratio >= 1.0;
    if (!r.large_detuning)
        std::clog << "warning: large-detuning condition not met (N Delta N_1 / Omega = " << r.detuning_ratio
                  << " < 1); elimination is inaccurate\n";
    return r;
}

Operator zeno_projector(const SpacePtr& space, const ZenoEigensystem& eig, int k) {
    if (space->dim() != static_cast<std::size_t>(kChainDim))
        throw Error(ErrorCode::dimension, "zeno_projector: requires the 11-state three-atom space");
    const Eigen::MatrixXcd z = eig.subspace(k);
    const Eigen::MatrixXcd p = z * z.adjoint();
    SparseMatrix m = p.sparseView(1.0, 1e-15);
    return Operator(space, std::move(m));
}

} // namespace ghz
