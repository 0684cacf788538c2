#include "ghz/model.hpp"

#include "ghz/error.hpp"

#include <algorithm>

namespace ghz {

namespace {

void require_atoms(const HilbertSpace& space, const SystemParams& params, const char* who) {
    if (space.atoms() != params.atoms)
        throw Error(ErrorCode::dimension, std::string(who) + ": space built for " + std::to_string(space.atoms()) +
                                              " atoms but parameters specify " + std::to_string(params.atoms));
}

int position(const ChainLayout& layout, ModeId id) {
    auto it = std::find(layout.modes.begin(), layout.modes.end(), id);
    return static_cast<int>(it - layout.modes.begin());
}

bool has_mode(const ChainLayout& layout, ModeId id) {
    return std::find(layout.modes.begin(), layout.modes.end(), id) != layout.modes.end();
}

} // namespace

ChainLayout chain_layout(int atoms) {
    if (atoms < 3 || atoms % 2 == 0)
        throw Error(ErrorCode::config, "atoms: N = " + std::to_string(atoms) +
                                           " is not supported; the scheme requires an odd N >= 3");
    ChainLayout layout;
    layout.atoms = atoms;
    for (int k = 0; k < atoms; ++k) {
        const bool left = k < atoms - 1 && ChainLayout::link_polarization(k) == ModeKind::cavity_left;
        const bool left_in = k > 0 && ChainLayout::link_polarization(k - 1) == ModeKind::cavity_left;
        const bool right = k < atoms - 1 && ChainLayout::link_polarization(k) == ModeKind::cavity_right;
        const bool right_in = k > 0 && ChainLayout::link_polarization(k - 1) == ModeKind::cavity_right;
        if (left || left_in) layout.modes.push_back({ModeKind::cavity_left, k});
        if (right || right_in) layout.modes.push_back({ModeKind::cavity_right, k});
    }
    for (int j = 0; j + 1 < atoms; ++j) layout.modes.push_back({ModeKind::fiber, j});

    layout.initial.atoms.resize(static_cast<std::size_t>(atoms));
    layout.initial.atoms[0] = AtomLevel::g_o;
    for (int k = 1; k < atoms; ++k)
        layout.initial.atoms[static_cast<std::size_t>(k)] = (k % 2 == 1) ? AtomLevel::g_l : AtomLevel::g_r;
    layout.initial.photons.assign(layout.modes.size(), 0);
    return layout;
}

std::vector<Term> coupling_terms(const ChainLayout& layout, double g, double v) {
    std::vector<Term> out;
    for (int k = 0; k < layout.atoms; ++k) {
        for (auto [kind, level] : {std::pair{ModeKind::cavity_left, AtomLevel::g_l},
                                   std::pair{ModeKind::cavity_right, AtomLevel::g_r}}) {
            const ModeId id{kind, k};
            if (!has_mode(layout, id)) continue;
            out.push_back(Term{g, {Ladder{position(layout, id), false}, AtomTransition{k, AtomLevel::e, level}}});
        }
    }
    for (int j = 0; j + 1 < layout.atoms; ++j) {
        const int fiber = position(layout, {ModeKind::fiber, j});
        const ModeKind pol = ChainLayout::link_polarization(j);
        for (int cav : {j, j + 1}) {
            out.push_back(Term{v, {Ladder{fiber, true}, Ladder{position(layout, {pol, cav}), false}}});
        }
    }
    return out;
}

std::vector<Term> laser_terms(const ChainLayout& layout) {
    return {Term{1.0, {AtomTransition{0, AtomLevel::e, AtomLevel::g_o}}},
            Term{1.0, {AtomTransition{layout.atoms - 1, AtomLevel::e, AtomLevel::g_o}}}};
}

std::vector<JumpChannel> jump_channels(const ChainLayout& layout) {
    std::vector<JumpChannel> out;
    for (int k = 0; k < layout.atoms; ++k) {
        for (auto m : {AtomLevel::g_o, AtomLevel::g_l, AtomLevel::g_r}) {
            out.push_back({Term{1.0, {AtomTransition{k, m, AtomLevel::e}}}, JumpKind::atomic,
                           "sigma" + std::to_string(k + 1) + ":" + std::string(to_string(m)), m});
        }
    }
    for (std::size_t p = 0; p < layout.modes.size(); ++p) {
        const auto& id = layout.modes[p];
        out.push_back({Term{1.0, {Ladder{static_cast<int>(p), false}}},
                       id.kind == ModeKind::fiber ? JumpKind::fiber : JumpKind::cavity, id.label(), AtomLevel::g_o});
    }
    return out;
}

namespace {

SpacePtr chain_space(int atoms, bool open) {
    const auto layout = chain_layout(atoms);
    auto terms = coupling_terms(layout, 1.0, 1.0);
    for (auto& t : laser_terms(layout)) terms.push_back(std::move(t));
    std::vector<Term> jumps;
    if (open)
        for (auto& c : jump_channels(layout)) jumps.push_back(std::move(c.term));
    return build_reachable_space(atoms, layout.modes, layout.initial, terms, jumps);
}

} // namespace

SpacePtr closed_space(int atoms) { return chain_space(atoms, false); }

SpacePtr open_space(int atoms) { return chain_space(atoms, true); }

Operator coupling_hamiltonian(const SpacePtr& space, const SystemParams& params) {
    require_atoms(*space, params, "coupling_hamiltonian");
    const auto layout = chain_layout(params.atoms);
    auto terms = coupling_terms(layout, params.actual_g(), params.actual_v());
    const std::size_t n = terms.size();
    for (std::size_t i = 0; i < n; ++i) terms.push_back(terms[i].adjoint());
    auto h = Operator::from_terms(space, terms);
    h.assert_hermitian();
    return h;
}

Operator laser_hamiltonian(const SpacePtr& space, const SystemParams& params, double omega_first,
                           double omega_last, bool phase_fix) {
    require_atoms(*space, params, "laser_hamiltonian");
    auto terms = laser_terms(chain_layout(params.atoms));
    terms[0].coefficient = omega_first;
    terms[1].coefficient = phase_fix ? cplx{0.0, -omega_last} : cplx{omega_last, 0.0};
    terms.push_back(terms[0].adjoint());
    terms.push_back(terms[1].adjoint());
    auto h = Operator::from_terms(space, terms);
    h.assert_hermitian();
    return h;
}

Operator detuning_hamiltonian(const SpacePtr& space, const SystemParams& params) {
    require_atoms(*space, params, "detuning_hamiltonian");
    std::vector<Term> terms;
    for (int k = 0; k < params.atoms; ++k)
        terms.push_back(Term{params.delta, {AtomTransition{k, AtomLevel::e, AtomLevel::e}}});
    auto h = Operator::from_terms(space, terms);
    h.assert_hermitian();
    return h;
}

std::vector<JumpOperator> jump_operators(const SpacePtr& space, const SystemParams& params) {
    require_atoms(*space, params, "jump_operators");
    const auto layout = chain_layout(params.atoms);
    std::vector<JumpOperator> out;
    for (const auto& ch : jump_channels(layout)) {
        for (const auto& s : space->basis()) {
            auto img = apply(ch.term, s, space->cutoff());
            if (img.action == TermAction::mapped && !space->find(img.state))
                throw Error(ErrorCode::dimension,
                            "jump_operators: the space does not contain the decay products of channel " + ch.label +
                                "; build it with open_space() (dissipative generators included)");
        }
        double rate = 0.0;
        switch (ch.kind) {
        case JumpKind::atomic:
            rate = params.gamma * (ch.target == AtomLevel::g_o   ? params.branching.to_go
                                   : ch.target == AtomLevel::g_l ? params.branching.to_gl
                                                                 : params.branching.to_gr);
            break;
        case JumpKind::cavity: rate = params.kappa_c; break;
        case JumpKind::fiber: rate = params.kappa_f; break;
        }
        out.push_back({Operator::from_terms(space, std::span(&ch.term, 1)), rate, ch.label});
    }
    return out;
}

ChainModel build_chain_model(const SystemParams& params, bool open) {
    params.validate();
    auto space = open ? open_space(params.atoms) : closed_space(params.atoms);
    const auto layout = chain_layout(params.atoms);
    const auto lasers = laser_terms(layout);
    ChainModel m{space,
                 coupling_hamiltonian(space, params),
                 detuning_hamiltonian(space, params),
                 Operator::from_terms(space, std::span(&lasers[0], 1)),
                 Operator::from_terms(space, std::span(&lasers[1], 1)),
                 {}};
    if (open) m.jumps = jump_operators(space, params);
    return m;
}

} // namespace ghz
