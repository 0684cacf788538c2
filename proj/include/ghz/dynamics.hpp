// dynamics.hpp: fixed-step RK4 evolution of kets and density matrices
//
// H(t) = S + sum_i (a_i(t) R_i + conj(a_i(t)) R_i^dagger), with a static
// Hermitian part S and a few sparse raising operators R_i driven by closed-form
// amplitudes. The amplitudes are sampled exactly at every RK4 stage.

#pragma once

#include "ghz/hilbert.hpp"
#include "ghz/model.hpp"
#include "ghz/params.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ghz {

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int steps = 20000;
    int record_every = 1;
    // Extra step indices to record, on top of the record_every stride.
    std::vector<int> record_steps;

    // steps >= 1000, record_every >= 1, t_end > t_start
    void validate() const;
    double dt() const { return (t_end - t_start) / steps; }
    // Recorded step indices, ascending: 0, record_every, ..., the extra
    // record_steps, and always `steps`.
    std::vector<int> recorded_steps() const;
};

class DrivenHamiltonian {
public:
    // Fills one complex amplitude per raising operator.
    using Amplitudes = std::function<void(double t, std::span<cplx> out)>;

    explicit DrivenHamiltonian(Operator static_part);
    DrivenHamiltonian(Operator static_part, std::vector<Operator> raising, Amplitudes amplitudes);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(static_.rows()); }
    std::size_t drive_count() const noexcept { return raising_.size(); }
    const SpacePtr& space() const noexcept { return space_; }

    void amplitudes(double t, std::span<cplx> out) const;

    // Full H(t) as an operator.
    Operator at(double t) const;

    // Sparse H(t) for given amplitudes.
    SparseMatrix matrix(std::span<const cplx> amps) const;

    void apply(std::span<const cplx> amps, const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const;
    void apply(std::span<const cplx> amps, const Eigen::MatrixXcd& x, Eigen::MatrixXcd& out) const;

    const SparseMatrix& static_part() const noexcept { return static_; }
    const SparseMatrix& raising(std::size_t i) const { return raising_.at(i); }

private:
    SpacePtr space_;
    SparseMatrix static_;
    std::vector<SparseMatrix> raising_;
    std::vector<SparseMatrix> lowering_;
    Amplitudes amplitudes_;
};

struct SolverTolerances {
    double norm_drift = 1e-6;
    double trace_drift = 1e-6;
    double min_eigenvalue = -1e-6;
};

struct SolverDiagnostics {
    int steps = 0;
    double dt = 0.0;
    double max_norm_drift = 0.0;         // kets
    double max_trace_drift = 0.0;        // density matrices
    double max_hermiticity_drift = 0.0;  // density matrices, at recorded samples
    double min_eigenvalue = 1.0;         // density matrices, at recorded samples
};

struct Trajectory {
    TimeGrid grid;
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> kets;  // closed evolution
    std::vector<Eigen::MatrixXcd> rhos;  // open evolution
    SolverDiagnostics diagnostics;
    std::optional<SystemParams> params;
    std::optional<ScheduleKind> schedule;

    bool mixed() const noexcept { return !rhos.empty(); }
    std::size_t size() const noexcept { return times.size(); }
    Eigen::MatrixXcd density(std::size_t i) const;
};

// i d/dt psi = H(t) psi. No renormalization; norm drift above tolerance
// throws Error(refinement) with a suggested step count.
Trajectory evolve_schrodinger(const DrivenHamiltonian& h, const Eigen::VectorXcd& psi0, const TimeGrid& grid,
                              const SolverTolerances& tol = {});

// d rho/dt = -i[H, rho] + sum_k r_k (L_k rho L_k^dagger - {L_k^dagger L_k, rho} / 2)
Trajectory evolve_lindblad(const DrivenHamiltonian& h, std::span<const JumpOperator> jumps,
                           const Eigen::MatrixXcd& rho0, const TimeGrid& grid, const SolverTolerances& tol = {});

// Header "t,<name>,..." followed by one row per sample, 12 significant digits.
void write_trajectory_csv(std::ostream& os, std::span<const double> times, std::span<const std::string> names,
                          const std::vector<std::vector<double>>& columns);

} // namespace ghz
