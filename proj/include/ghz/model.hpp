// model.hpp: Hamiltonians and jump operators of the N-cavity chain
//
// Cavity k holds atom k. Fiber j links cavities j and j+1 through one
// polarization: left-circular for even j (0-based), right-circular for odd j.
// Cavity 1 therefore has only a left mode, cavity N only a right mode, and
// interior cavities both. The initial state is |g_o g_l g_r g_l ... g_r> with
// every mode in vacuum.

#pragma once

#include "ghz/hilbert.hpp"
#include "ghz/params.hpp"

#include <string>
#include <vector>

namespace ghz {

struct ChainLayout {
    int atoms = 3;
    std::vector<ModeId> modes;  // cavities in order (left before right), then fibers
    BasisState initial;

    static ModeKind link_polarization(int link) {
        return link % 2 == 0 ? ModeKind::cavity_left : ModeKind::cavity_right;
    }
};

// Throws Error(config) for even or too small N.
ChainLayout chain_layout(int atoms);

// Excitation-moving halves of H_c (the Hermitian conjugates are implied):
// g a_{k,p} |e><g_p|_k for every cavity mode and v b_j^dagger a for every
// fiber-cavity link.
std::vector<Term> coupling_terms(const ChainLayout& layout, double g, double v);

// Unit-amplitude |e><g_o| on the first and on the last atom.
std::vector<Term> laser_terms(const ChainLayout& layout);

enum class JumpKind { atomic, cavity, fiber };

struct JumpChannel {
    Term term;
    JumpKind kind = JumpKind::atomic;
    std::string label;
    AtomLevel target = AtomLevel::g_o;  // atomic channels only
};

// One channel per (atom, ground level), one per cavity mode, one per fiber mode.
std::vector<JumpChannel> jump_channels(const ChainLayout& layout);

// Hamiltonian-only closure: the 4N-1 chain states in canonical order.
SpacePtr closed_space(int atoms);

// Closure including decay products, appended after the chain states.
SpacePtr open_space(int atoms);

Operator coupling_hamiltonian(const SpacePtr& space, const SystemParams& params);

// Omega_first |e><g_o|_1 + Omega_last' |e><g_o|_N + h.c., where
// Omega_last' = -i Omega_last when phase_fix is set.
Operator laser_hamiltonian(const SpacePtr& space, const SystemParams& params, double omega_first,
                           double omega_last, bool phase_fix);

Operator detuning_hamiltonian(const SpacePtr& space, const SystemParams& params);

struct JumpOperator {
    Operator op;
    double rate = 0.0;
    std::string label;
};

// Requires a space closed under the decay channels (see open_space).
std::vector<JumpOperator> jump_operators(const SpacePtr& space, const SystemParams& params);

// Static pieces of the total Hamiltonian plus the two laser raising parts,
// ready for time evolution.
struct ChainModel {
    SpacePtr space;
    Operator coupling;
    Operator detuning;
    Operator drive_first;  // |e><g_o| on atom 1
    Operator drive_last;   // |e><g_o| on atom N
    std::vector<JumpOperator> jumps;
};

ChainModel build_chain_model(const SystemParams& params, bool open);

} // namespace ghz
