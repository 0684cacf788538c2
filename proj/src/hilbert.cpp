#include "ghz/hilbert.hpp"

#include "ghz/error.hpp"

#include <cmath>
#include <deque>
#include <numeric>

namespace ghz {

std::string_view to_string(AtomLevel level) noexcept {
    switch (level) {
    case AtomLevel::e: return "e";
    case AtomLevel::g_l: return "g_l";
    case AtomLevel::g_o: return "g_o";
    case AtomLevel::g_r: return "g_r";
    }
    return "?";
}

std::string ModeId::label() const {
    const std::string n = std::to_string(index + 1);
    switch (kind) {
    case ModeKind::cavity_left: return "C" + n + "L";
    case ModeKind::cavity_right: return "C" + n + "R";
    case ModeKind::fiber: return "f" + n;
    }
    return "?";
}

int BasisState::excited_atoms() const {
    int n = 0;
    for (auto a : atoms) n += (a == AtomLevel::e);
    return n;
}

int BasisState::photon_count() const {
    return std::accumulate(photons.begin(), photons.end(), 0);
}

Term Term::adjoint() const {
    Term out;
    out.coefficient = std::conj(coefficient);
    out.factors.reserve(factors.size());
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        if (const auto* t = std::get_if<AtomTransition>(&*it)) {
            out.factors.emplace_back(AtomTransition{t->atom, t->ket, t->bra});
        } else {
            const auto& l = std::get<Ladder>(*it);
            out.factors.emplace_back(Ladder{l.mode, !l.raising});
        }
    }
    return out;
}

TermImage apply(const Term& term, const BasisState& ket, int cutoff) {
    TermImage img;
    img.state = ket;
    img.amplitude = term.coefficient;
    bool overflow = false;
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
        if (const auto* t = std::get_if<AtomTransition>(&*it)) {
            auto& level = img.state.atoms.at(static_cast<std::size_t>(t->atom));
            if (level != t->ket) return TermImage{};
            level = t->bra;
        } else {
            const auto& l = std::get<Ladder>(*it);
            int& n = img.state.photons.at(static_cast<std::size_t>(l.mode));
            if (l.raising) {
                // Only an overflow if no later factor annihilates the ket.
                if (n + 1 > cutoff) overflow = true;
                img.amplitude *= std::sqrt(static_cast<double>(n + 1));
                ++n;
            } else {
                if (n == 0) return TermImage{};
                img.amplitude *= std::sqrt(static_cast<double>(n));
                --n;
            }
        }
    }
    img.action = overflow ? TermAction::overflow : TermAction::mapped;
    return img;
}

HilbertSpace::HilbertSpace(int atoms, std::vector<ModeId> modes, std::vector<BasisState> basis,
                           std::size_t hamiltonian_dim, int cutoff)
    : atoms_(atoms), cutoff_(cutoff), modes_(std::move(modes)), basis_(std::move(basis)),
      hamiltonian_dim_(hamiltonian_dim) {
    if (hamiltonian_dim_ > basis_.size())
        throw Error(ErrorCode::dimension, "HilbertSpace: hamiltonian_dim exceeds basis size");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto& s = basis_[i];
        if (s.atoms.size() != static_cast<std::size_t>(atoms_) || s.photons.size() != modes_.size())
            throw Error(ErrorCode::dimension, "HilbertSpace: basis state shape does not match the space");
        if (!index_.emplace(s, i).second)
            throw Error(ErrorCode::config, "HilbertSpace: duplicate basis state at position " + std::to_string(i));
    }
}

std::optional<std::size_t> HilbertSpace::find(const BasisState& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t HilbertSpace::index(const BasisState& s) const {
    if (auto i = find(s)) return *i;
    throw Error(ErrorCode::out_of_range, "HilbertSpace: state is not part of the basis");
}

std::size_t HilbertSpace::mode_position(const ModeId& mode) const {
    for (std::size_t k = 0; k < modes_.size(); ++k)
        if (modes_[k] == mode) return k;
    throw Error(ErrorCode::config, "unknown mode " + mode.label() + " for a " + std::to_string(atoms_) + "-atom space");
}

std::string HilbertSpace::atom_label(std::size_t i) const {
    const auto& s = state(i);
    std::string out = "|";
    for (std::size_t a = 0; a < s.atoms.size(); ++a) {
        if (a) out += ' ';
        out += to_string(s.atoms[a]);
    }
    return out + ">";
}

SpacePtr build_reachable_space(int atoms, std::vector<ModeId> modes, const BasisState& initial,
                               std::span<const Term> hamiltonian, std::span<const Term> dissipative,
                               int cutoff) {
    if (initial.atoms.size() != static_cast<std::size_t>(atoms) || initial.photons.size() != modes.size())
        throw Error(ErrorCode::dimension, "build_reachable_space: initial state shape mismatch");
    for (int n : initial.photons)
        if (n > cutoff) throw Error(ErrorCode::truncation, "build_reachable_space: initial state exceeds the photon cutoff");

    std::vector<Term> coherent(hamiltonian.begin(), hamiltonian.end());
    for (const auto& t : hamiltonian) coherent.push_back(t.adjoint());

    std::vector<BasisState> basis{initial};
    std::map<BasisState, std::size_t> seen{{initial, 0}};

    auto close = [&](std::span<const Term> generators, std::size_t start) {
        for (std::size_t i = start; i < basis.size(); ++i) {
            for (const auto& term : generators) {
                auto img = apply(term, basis[i], cutoff);
                if (img.action == TermAction::overflow)
                    throw Error(ErrorCode::truncation,
                                "build_reachable_space: a generator would create more than " +
                                    std::to_string(cutoff) + " photon(s) in one mode");
                if (img.action != TermAction::mapped) continue;
                if (seen.emplace(img.state, basis.size()).second) basis.push_back(std::move(img.state));
            }
        }
    };

    close(coherent, 0);
    const std::size_t hamiltonian_dim = basis.size();
    if (!dissipative.empty()) {
        std::vector<Term> all = coherent;
        all.insert(all.end(), dissipative.begin(), dissipative.end());
        close(all, 0);
    }
    return std::make_shared<const HilbertSpace>(atoms, std::move(modes), std::move(basis), hamiltonian_dim,
                                                cutoff);
}

Operator::Operator(SpacePtr space, SparseMatrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (!space_) throw Error(ErrorCode::dimension, "Operator: null space");
    const auto n = static_cast<Eigen::Index>(space_->dim());
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw Error(ErrorCode::dimension, "Operator: matrix size does not match the space dimension");
    matrix_.makeCompressed();
}

Operator Operator::zero(SpacePtr space) {
    const auto n = static_cast<Eigen::Index>(space->dim());
    return Operator(std::move(space), SparseMatrix(n, n));
}

Operator Operator::identity(SpacePtr space) {
    const auto n = static_cast<Eigen::Index>(space->dim());
    SparseMatrix m(n, n);
    m.setIdentity();
    return Operator(std::move(space), std::move(m));
}

Operator Operator::from_terms(SpacePtr space, std::span<const Term> terms) {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::size_t j = 0; j < space->dim(); ++j) {
        for (const auto& term : terms) {
            auto img = ghz::apply(term, space->state(j), space->cutoff());
            if (img.action != TermAction::mapped) continue;
            if (auto i = space->find(img.state))
                trip.emplace_back(static_cast<int>(*i), static_cast<int>(j), img.amplitude);
        }
    }
    const auto n = static_cast<Eigen::Index>(space->dim());
    SparseMatrix m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.prune(cplx{0.0, 0.0});
    return Operator(std::move(space), std::move(m));
}

cplx Operator::element(std::size_t row, std::size_t col) const {
    if (row >= dim() || col >= dim()) throw Error(ErrorCode::out_of_range, "Operator::element: index out of range");
    return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

Eigen::VectorXcd Operator::apply(const Eigen::VectorXcd& ket) const {
    if (static_cast<std::size_t>(ket.size()) != dim())
        throw Error(ErrorCode::dimension, "Operator::apply: vector size mismatch");
    return matrix_ * ket;
}

Operator Operator::adjoint() const {
    Operator out(space_, SparseMatrix(matrix_.adjoint()));
    out.hermitian_ = hermitian_;
    return out;
}

double Operator::hermiticity_error() const {
    SparseMatrix diff = matrix_ - SparseMatrix(matrix_.adjoint());
    double worst = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    return worst;
}

Operator& Operator::assert_hermitian(double tol) {
    const double err = hermiticity_error();
    if (err > tol)
        throw Error(ErrorCode::non_hermitian, "operator is not Hermitian: max |H - H^dagger| = " + std::to_string(err));
    hermitian_ = true;
    return *this;
}

void Operator::require_same_space(const Operator& rhs) const {
    if (space_ != rhs.space_ && space_->dim() != rhs.space_->dim())
        throw Error(ErrorCode::dimension, "Operator: operands live on different spaces");
}

Operator Operator::operator+(const Operator& rhs) const {
    require_same_space(rhs);
    return Operator(space_, matrix_ + rhs.matrix_);
}

Operator Operator::operator-(const Operator& rhs) const {
    require_same_space(rhs);
    return Operator(space_, matrix_ - rhs.matrix_);
}

Operator Operator::operator*(const Operator& rhs) const {
    require_same_space(rhs);
    return Operator(space_, SparseMatrix(matrix_ * rhs.matrix_));
}

Operator Operator::operator*(cplx s) const {
    return Operator(space_, matrix_ * s);
}

Eigen::VectorXcd basis_vector(const HilbertSpace& space, std::size_t i) {
    if (i >= space.dim()) throw Error(ErrorCode::out_of_range, "basis_vector: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dim()));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

Operator annihilation(const SpacePtr& space, const ModeId& mode) {
    const auto k = static_cast<int>(space->mode_position(mode));
    const Term t{1.0, {Ladder{k, false}}};
    return Operator::from_terms(space, std::span(&t, 1));
}

Operator creation(const SpacePtr& space, const ModeId& mode) {
    return annihilation(space, mode).adjoint();
}

Operator number_operator(const SpacePtr& space, const ModeId& mode) {
    const auto k = static_cast<int>(space->mode_position(mode));
    const Term t{1.0, {Ladder{k, true}, Ladder{k, false}}};
    return Operator::from_terms(space, std::span(&t, 1));
}

Operator atomic_op(const SpacePtr& space, int atom, AtomLevel bra, AtomLevel ket) {
    if (atom < 0 || atom >= space->atoms())
        throw Error(ErrorCode::out_of_range, "atomic_op: atom index " + std::to_string(atom) + " out of range");
    const Term t{1.0, {AtomTransition{atom, bra, ket}}};
    return Operator::from_terms(space, std::span(&t, 1));
}

Operator excitation_operator(const SpacePtr& space) {
    const auto n = static_cast<Eigen::Index>(space->dim());
    SparseMatrix m(n, n);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::size_t i = 0; i < space->dim(); ++i) {
        const int x = space->state(i).excitations();
        if (x != 0) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), static_cast<double>(x));
    }
    m.setFromTriplets(trip.begin(), trip.end());
    return Operator(space, std::move(m));
}

} // namespace ghz
