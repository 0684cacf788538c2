#include "ghz/observables.hpp"

#include "ghz/error.hpp"
#include "ghz/zeno.hpp"

#include <cmath>
#include <sstream>

namespace ghz {

TargetState target_state(const HilbertSpace& space, ScheduleKind method) {
    TargetState t;
    t.method = method;
    t.atoms = space.atoms();
    t.vector = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dim()));
    const auto last = static_cast<Eigen::Index>(space.hamiltonian_dim() - 1);
    const double s = 1.0 / std::sqrt(2.0);
    t.vector(0) = s;
    t.vector(last) = method == ScheduleKind::adiabatic ? cplx{-s, 0.0} : cplx{0.0, s};
    return t;
}

double population(const Eigen::VectorXcd& state, const Eigen::VectorXcd& psi) {
    if (state.size() != psi.size()) throw Error(ErrorCode::dimension, "population: dimension mismatch");
    return std::norm(psi.dot(state));
}

double population(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi) {
    if (rho.rows() != psi.size() || rho.cols() != psi.size())
        throw Error(ErrorCode::dimension, "population: dimension mismatch");
    return std::abs(psi.dot(rho * psi));
}

namespace {

void require_method(const TargetState& target, ScheduleKind schedule) {
    if (target.method != schedule)
        throw Error(ErrorCode::mismatch, "ghz_fidelity: target built for the " + to_string(target.method) +
                                             " method but the state came from the " + to_string(schedule) +
                                             " schedule");
}

} // namespace

double ghz_fidelity(const Eigen::MatrixXcd& rho, const TargetState& target, ScheduleKind schedule) {
    require_method(target, schedule);
    return population(rho, target.vector);
}

double ghz_fidelity(const Eigen::VectorXcd& psi, const TargetState& target, ScheduleKind schedule) {
    require_method(target, schedule);
    return population(psi, target.vector);
}

std::string to_string(Observable o) {
    switch (o) {
    case Observable::pop_phi1: return "pop:phi1";
    case Observable::pop_phi_last: return "pop:phiLast";
    case Observable::pop_bright: return "pop:bright";
    case Observable::fidelity: return "fidelity";
    case Observable::leakage: return "leakage";
    }
    return "?";
}

Observable observable_from_string(const std::string& name) {
    for (auto o : {Observable::pop_phi1, Observable::pop_phi_last, Observable::pop_bright, Observable::fidelity,
                   Observable::leakage})
        if (to_string(o) == name) return o;
    throw Error(ErrorCode::config, "observables: unknown observable '" + name +
                                       "' (expected pop:phi1, pop:phiLast, pop:bright, fidelity, leakage)");
}

std::vector<Observable> parse_observables(const std::string& comma_list) {
    std::vector<Observable> out;
    std::stringstream ss(comma_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        out.push_back(observable_from_string(item.substr(first, last - first + 1)));
    }
    if (out.empty()) throw Error(ErrorCode::config, "observables: empty list");
    return out;
}

ObservableEvaluator::ObservableEvaluator(const HilbertSpace& space, const SystemParams& params, ScheduleKind schedule)
    : schedule_(schedule), target_(target_state(space, schedule)) {
    const auto n = static_cast<Eigen::Index>(space.dim());
    first_ = basis_vector(space, 0);
    last_ = basis_vector(space, space.hamiltonian_dim() - 1);
    bright_ = Eigen::VectorXcd::Zero(n);
    const auto chain = bright_state(params.actual_g(), params.actual_v(), space.atoms());
    bright_.head(chain.size()) = chain;
}

double ObservableEvaluator::pop(const Trajectory& traj, std::size_t i, const Eigen::VectorXcd& psi) const {
    return traj.mixed() ? population(traj.rhos.at(i), psi) : population(traj.kets.at(i), psi);
}

double ObservableEvaluator::operator()(Observable o, const Trajectory& traj, std::size_t i) const {
    switch (o) {
    case Observable::pop_phi1: return pop(traj, i, first_);
    case Observable::pop_phi_last: return pop(traj, i, last_);
    case Observable::pop_bright: return pop(traj, i, bright_);
    case Observable::fidelity:
        return traj.mixed() ? ghz_fidelity(traj.rhos.at(i), target_, schedule_)
                            : ghz_fidelity(traj.kets.at(i), target_, schedule_);
    case Observable::leakage:
        return 1.0 - pop(traj, i, first_) - pop(traj, i, bright_) - pop(traj, i, last_);
    }
    return 0.0;
}

} // namespace ghz
