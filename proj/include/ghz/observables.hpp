// observables.hpp: populations, GHZ fidelities and target states

#pragma once

#include "ghz/dynamics.hpp"
#include "ghz/hilbert.hpp"
#include "ghz/params.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace ghz {

// Adiabatic passage ends in (|phi_1> - |phi_last>)/sqrt2, transitionless
// driving in (|phi_1> + i|phi_last>)/sqrt2.
struct TargetState {
    ScheduleKind method = ScheduleKind::tqd;
    int atoms = 3;
    Eigen::VectorXcd vector;
};

TargetState target_state(const HilbertSpace& space, ScheduleKind method);

// |<psi|phi>|^2
double population(const Eigen::VectorXcd& state, const Eigen::VectorXcd& psi);
// |<psi|rho|psi>|
double population(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi);

// |<GHZ|rho|GHZ>|; throws Error(mismatch) unless `schedule` is the method the
// target was built for.
double ghz_fidelity(const Eigen::MatrixXcd& rho, const TargetState& target, ScheduleKind schedule);
double ghz_fidelity(const Eigen::VectorXcd& psi, const TargetState& target, ScheduleKind schedule);

enum class Observable { pop_phi1, pop_phi_last, pop_bright, fidelity, leakage };

std::string to_string(Observable o);
Observable observable_from_string(const std::string& name);
std::vector<Observable> parse_observables(const std::string& comma_list);

// Evaluates named observables on trajectory samples of one run.
class ObservableEvaluator {
public:
    ObservableEvaluator(const HilbertSpace& space, const SystemParams& params, ScheduleKind schedule);

    double operator()(Observable o, const Trajectory& traj, std::size_t sample) const;
    double final_value(Observable o, const Trajectory& traj) const { return (*this)(o, traj, traj.size() - 1); }

    const TargetState& target() const noexcept { return target_; }

private:
    double pop(const Trajectory& traj, std::size_t i, const Eigen::VectorXcd& psi) const;

    ScheduleKind schedule_;
    TargetState target_;
    Eigen::VectorXcd first_, last_, bright_;
};

} // namespace ghz
