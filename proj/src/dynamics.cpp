#include "ghz/dynamics.hpp"

#include "ghz/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace ghz {

void TimeGrid::validate() const {
    if (steps < 1000) throw Error(ErrorCode::config, "time grid: steps must be >= 1000 (got " + std::to_string(steps) + ")");
    if (record_every < 1) throw Error(ErrorCode::config, "time grid: record_every must be >= 1");
    if (!(t_end > t_start)) throw Error(ErrorCode::config, "time grid: t_end must exceed t_start");
    for (int s : record_steps)
        if (s < 0 || s > steps) throw Error(ErrorCode::config, "time grid: record step " + std::to_string(s) + " outside [0, steps]");
}

std::vector<int> TimeGrid::recorded_steps() const {
    std::vector<int> out;
    for (int n = 0; n <= steps; n += record_every) out.push_back(n);
    if (out.back() != steps) out.push_back(steps);
    if (!record_steps.empty()) {
        out.insert(out.end(), record_steps.begin(), record_steps.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

DrivenHamiltonian::DrivenHamiltonian(Operator static_part)
    : DrivenHamiltonian(std::move(static_part), {}, nullptr) {}

DrivenHamiltonian::DrivenHamiltonian(Operator static_part, std::vector<Operator> raising, Amplitudes amplitudes)
    : space_(static_part.space_ptr()), static_(static_part.matrix()), amplitudes_(std::move(amplitudes)) {
    if (!static_part.is_hermitian())
        throw Error(ErrorCode::non_hermitian, "DrivenHamiltonian: static part is not Hermitian");
    if (!raising.empty() && !amplitudes_)
        throw Error(ErrorCode::config, "DrivenHamiltonian: drive operators given without amplitudes");
    for (const auto& r : raising) {
        if (r.dim() != dim()) throw Error(ErrorCode::dimension, "DrivenHamiltonian: drive operator size mismatch");
        raising_.push_back(r.matrix());
        lowering_.push_back(SparseMatrix(r.matrix().adjoint()));
    }
}

void DrivenHamiltonian::amplitudes(double t, std::span<cplx> out) const {
    if (out.size() != raising_.size()) throw Error(ErrorCode::dimension, "DrivenHamiltonian: amplitude buffer size");
    if (!raising_.empty()) amplitudes_(t, out);
}

SparseMatrix DrivenHamiltonian::matrix(std::span<const cplx> amps) const {
    SparseMatrix h = static_;
    for (std::size_t i = 0; i < raising_.size(); ++i) h += amps[i] * raising_[i] + std::conj(amps[i]) * lowering_[i];
    return h;
}

Operator DrivenHamiltonian::at(double t) const {
    std::vector<cplx> amps(raising_.size());
    amplitudes(t, amps);
    return Operator(space_, matrix(amps));
}

void DrivenHamiltonian::apply(std::span<const cplx> amps, const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const {
    out.noalias() = static_ * x;
    for (std::size_t i = 0; i < raising_.size(); ++i) {
        if (amps[i] == cplx{}) continue;
        out.noalias() += amps[i] * (raising_[i] * x);
        out.noalias() += std::conj(amps[i]) * (lowering_[i] * x);
    }
}

void DrivenHamiltonian::apply(std::span<const cplx> amps, const Eigen::MatrixXcd& x, Eigen::MatrixXcd& out) const {
    out.noalias() = static_ * x;
    for (std::size_t i = 0; i < raising_.size(); ++i) {
        if (amps[i] == cplx{}) continue;
        out.noalias() += amps[i] * (raising_[i] * x);
        out.noalias() += std::conj(amps[i]) * (lowering_[i] * x);
    }
}

Eigen::MatrixXcd Trajectory::density(std::size_t i) const {
    if (mixed()) return rhos.at(i);
    const auto& k = kets.at(i);
    return k * k.adjoint();
}

namespace {

std::string refinement_hint(const char* what, double drift, double tol, int steps) {
    // RK4 global error scales as steps^-4.
    const double factor = std::pow(drift / tol, 0.25) * 1.25;
    const int needed = static_cast<int>(std::ceil(steps * std::max(2.0, factor)));
    std::ostringstream os;
    os << what << " drift " << drift << " exceeds " << tol << " with " << steps
       << " steps; refine the time grid to at least " << needed << " steps";
    return os.str();
}

struct StageAmplitudes {
    std::vector<cplx> start, mid, end;
};

void stage_amplitudes(const DrivenHamiltonian& h, double t, double dt, StageAmplitudes& a) {
    h.amplitudes(t, a.start);
    h.amplitudes(t + 0.5 * dt, a.mid);
    h.amplitudes(t + dt, a.end);
}

} // namespace

Trajectory evolve_schrodinger(const DrivenHamiltonian& h, const Eigen::VectorXcd& psi0, const TimeGrid& grid,
                              const SolverTolerances& tol) {
    grid.validate();
    if (static_cast<std::size_t>(psi0.size()) != h.dim())
        throw Error(ErrorCode::dimension, "evolve_schrodinger: initial state size mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw Error(ErrorCode::config, "evolve_schrodinger: initial state not normalized");

    Trajectory traj;
    traj.grid = grid;
    const double dt = grid.dt();
    const auto record = grid.recorded_steps();
    traj.times.reserve(record.size());
    traj.kets.reserve(record.size());

    const cplx minus_i{0.0, -1.0};
    const auto n = psi0.size();
    Eigen::VectorXcd psi = psi0, k1(n), k2(n), k3(n), k4(n), tmp(n);
    StageAmplitudes amps{std::vector<cplx>(h.drive_count()), std::vector<cplx>(h.drive_count()),
                         std::vector<cplx>(h.drive_count())};
    double drift = 0.0;
    std::size_t next = 0;
    for (int step = 0;; ++step) {
        const double t = grid.t_start + step * dt;
        if (next < record.size() && record[next] == step) {
            traj.times.push_back(t);
            traj.kets.push_back(psi);
            ++next;
        }
        if (step == grid.steps) break;
        stage_amplitudes(h, t, dt, amps);
        h.apply(amps.start, psi, k1);
        k1 *= minus_i;
        tmp = psi + 0.5 * dt * k1;
        h.apply(amps.mid, tmp, k2);
        k2 *= minus_i;
        tmp = psi + 0.5 * dt * k2;
        h.apply(amps.mid, tmp, k3);
        k3 *= minus_i;
        tmp = psi + dt * k3;
        h.apply(amps.end, tmp, k4);
        k4 *= minus_i;
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        drift = std::max(drift, std::abs(psi.norm() - 1.0));
    }
    traj.diagnostics.steps = grid.steps;
    traj.diagnostics.dt = dt;
    traj.diagnostics.max_norm_drift = drift;
    if (drift > tol.norm_drift) throw Error(ErrorCode::refinement, refinement_hint("norm", drift, tol.norm_drift, grid.steps));
    return traj;
}

Trajectory evolve_lindblad(const DrivenHamiltonian& h, std::span<const JumpOperator> jumps,
                           const Eigen::MatrixXcd& rho0, const TimeGrid& grid, const SolverTolerances& tol) {
    grid.validate();
    const auto n = static_cast<Eigen::Index>(h.dim());
    if (rho0.rows() != n || rho0.cols() != n) throw Error(ErrorCode::dimension, "evolve_lindblad: rho0 size mismatch");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw Error(ErrorCode::config, "evolve_lindblad: rho0 is not Hermitian");
    if (std::abs(rho0.trace() - cplx{1.0, 0.0}) > 1e-10)
        throw Error(ErrorCode::config, "evolve_lindblad: rho0 must have unit trace");
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho0, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-12) throw Error(ErrorCode::config, "evolve_lindblad: rho0 is not positive");
    }

    // Active channels as sqrt(rate)-scaled nonzero lists, and the
    // anti-Hermitian part -i/2 sum r L^dagger L.
    struct Entry {
        Eigen::Index row, col;
        cplx value;
    };
    std::vector<std::vector<Entry>> ls;
    SparseMatrix decay(n, n);
    for (const auto& j : jumps) {
        if (j.rate < 0.0) throw Error(ErrorCode::config, "evolve_lindblad: negative jump rate for " + j.label);
        if (j.op.dim() != h.dim()) throw Error(ErrorCode::dimension, "evolve_lindblad: jump operator size mismatch");
        if (j.rate == 0.0) continue;
        const SparseMatrix l = j.op.matrix() * cplx{std::sqrt(j.rate), 0.0};
        decay += SparseMatrix(SparseMatrix(l.adjoint()) * l);
        std::vector<Entry> entries;
        for (int k = 0; k < l.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(l, k); it; ++it) entries.push_back({it.row(), it.col(), it.value()});
        ls.push_back(std::move(entries));
    }
    const SparseMatrix damping = decay * cplx{0.0, -0.5};

    // With X = -i Heff rho and rho Hermitian, -i(Heff rho - rho Heff^dagger) = X + X^dagger.
    const cplx minus_i{0.0, -1.0};
    const Eigen::MatrixXcd fixed = minus_i * Eigen::MatrixXcd(h.static_part() + damping);
    std::vector<std::vector<Entry>> drives;
    for (std::size_t i = 0; i < h.drive_count(); ++i) {
        std::vector<Entry> entries;
        const auto& r = h.raising(i);
        for (int k = 0; k < r.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(r, k); it; ++it) entries.push_back({it.row(), it.col(), it.value()});
        drives.push_back(std::move(entries));
    }
    Eigen::MatrixXcd heff = fixed, x(n, n);
    auto derivative = [&](std::span<const cplx> amps, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
        heff = fixed;
        for (std::size_t i = 0; i < drives.size(); ++i)
            for (const auto& e : drives[i]) {
                heff(e.row, e.col) += minus_i * amps[i] * e.value;
                heff(e.col, e.row) += minus_i * std::conj(amps[i] * e.value);
            }
        x.noalias() = heff * rho;
        out = x + x.adjoint();
        for (const auto& l : ls)
            for (const auto& a : l)
                for (const auto& b : l) out(a.row, b.row) += a.value * rho(a.col, b.col) * std::conj(b.value);
    };

    Trajectory traj;
    traj.grid = grid;
    const double dt = grid.dt();
    const auto record = grid.recorded_steps();
    Eigen::MatrixXcd rho = rho0, k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
    StageAmplitudes amps{std::vector<cplx>(h.drive_count()), std::vector<cplx>(h.drive_count()),
                         std::vector<cplx>(h.drive_count())};
    auto& d = traj.diagnostics;
    std::size_t next = 0;
    for (int step = 0;; ++step) {
        const double t = grid.t_start + step * dt;
        if (next < record.size() && record[next] == step) {
            traj.times.push_back(t);
            traj.rhos.push_back(rho);
            d.max_hermiticity_drift = std::max(d.max_hermiticity_drift, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
            d.min_eigenvalue = std::min(d.min_eigenvalue, es.eigenvalues().minCoeff());
            ++next;
        }
        if (step == grid.steps) break;
        stage_amplitudes(h, t, dt, amps);
        derivative(amps.start, rho, k1);
        tmp = rho + 0.5 * dt * k1;
        derivative(amps.mid, tmp, k2);
        tmp = rho + 0.5 * dt * k2;
        derivative(amps.mid, tmp, k3);
        tmp = rho + dt * k3;
        derivative(amps.end, tmp, k4);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        d.max_trace_drift = std::max(d.max_trace_drift, std::abs(rho.trace() - cplx{1.0, 0.0}));
    }
    d.steps = grid.steps;
    d.dt = dt;
    if (d.max_trace_drift > tol.trace_drift)
        throw Error(ErrorCode::refinement, refinement_hint("trace", d.max_trace_drift, tol.trace_drift, grid.steps));
    if (d.min_eigenvalue < tol.min_eigenvalue)
        throw Error(ErrorCode::refinement,
                    refinement_hint("positivity", -d.min_eigenvalue, -tol.min_eigenvalue, grid.steps));
    return traj;
}

void write_trajectory_csv(std::ostream& os, std::span<const double> times, std::span<const std::string> names,
                          const std::vector<std::vector<double>>& columns) {
    if (names.size() != columns.size()) throw Error(ErrorCode::dimension, "write_trajectory_csv: names/columns mismatch");
    for (const auto& c : columns)
        if (c.size() != times.size()) throw Error(ErrorCode::dimension, "write_trajectory_csv: column length mismatch");
    const auto old = os.precision();
    os << std::setprecision(12);
    os << "t";
    for (const auto& n : names) os << ',' << n;
    os << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << times[i];
        for (const auto& c : columns) os << ',' << c[i];
        os << '\n';
    }
    os.precision(old);
}

} // namespace ghz
