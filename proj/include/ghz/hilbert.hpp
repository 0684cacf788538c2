// hilbert.hpp: composite atom/cavity/fiber space, reachable basis and operators
//
// The basis is not the full tensor product. It is the closure of the initial
// state under a set of elementary generator terms (the Hamiltonian couplings
// and, for open systems, the jump operators), which for one excitation gives
// the 4N-1 chain states plus any decay products.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ghz {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

enum class AtomLevel : std::uint8_t { e, g_l, g_o, g_r };

std::string_view to_string(AtomLevel level) noexcept;

enum class ModeKind : std::uint8_t { cavity_left, cavity_right, fiber };

// index is the 0-based cavity number (cavity modes) or fiber number.
struct ModeId {
    ModeKind kind = ModeKind::fiber;
    int index = 0;

    auto operator<=>(const ModeId&) const = default;

    // "C1L", "C2R", "f1" (1-based, as in the physical labelling)
    std::string label() const;
};

// photons[k] is the occupation of the k-th mode of the owning space.
struct BasisState {
    std::vector<AtomLevel> atoms;
    std::vector<int> photons;

    auto operator<=>(const BasisState&) const = default;

    int excited_atoms() const;
    int photon_count() const;
    int excitations() const { return excited_atoms() + photon_count(); }
};

// |bra><ket| acting on one atom.
struct AtomTransition {
    int atom = 0;
    AtomLevel bra = AtomLevel::e;
    AtomLevel ket = AtomLevel::e;
};

// a (raising = false) or a^dagger (raising = true) on a mode position.
struct Ladder {
    int mode = 0;
    bool raising = false;
};

using Factor = std::variant<AtomTransition, Ladder>;

// coefficient * F_1 * F_2 * ... ; factors act right to left.
struct Term {
    cplx coefficient{1.0, 0.0};
    std::vector<Factor> factors;

    Term adjoint() const;
};

enum class TermAction { mapped, annihilated, overflow };

struct TermImage {
    TermAction action = TermAction::annihilated;
    BasisState state;
    cplx amplitude{0.0, 0.0};
};

// Image of a basis ket under a term. `overflow` means a creation operator
// would exceed the photon cutoff.
TermImage apply(const Term& term, const BasisState& ket, int cutoff);

class HilbertSpace {
public:
    HilbertSpace(int atoms, std::vector<ModeId> modes, std::vector<BasisState> basis,
                 std::size_t hamiltonian_dim, int cutoff);

    std::size_t dim() const noexcept { return basis_.size(); }
    int atoms() const noexcept { return atoms_; }
    int cutoff() const noexcept { return cutoff_; }
    const std::vector<ModeId>& modes() const noexcept { return modes_; }
    const std::vector<BasisState>& basis() const noexcept { return basis_; }
    const BasisState& state(std::size_t i) const { return basis_.at(i); }

    // Number of leading basis states reached by Hamiltonian terms alone.
    std::size_t hamiltonian_dim() const noexcept { return hamiltonian_dim_; }
    bool has_decay_products() const noexcept { return basis_.size() > hamiltonian_dim_; }

    std::optional<std::size_t> find(const BasisState& s) const;
    std::size_t index(const BasisState& s) const;

    // Throws Error(config) for a mode the space does not contain.
    std::size_t mode_position(const ModeId& mode) const;

    // e.g. "|g_o g_l g_r>" ; photon occupations are reported separately.
    std::string atom_label(std::size_t i) const;

private:
    int atoms_;
    int cutoff_;
    std::vector<ModeId> modes_;
    std::vector<BasisState> basis_;
    std::size_t hamiltonian_dim_;
    std::map<BasisState, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const HilbertSpace>;

// Breadth-first closure of {initial}. Hamiltonian terms are applied together
// with their adjoints; the states they reach come first, in first-reached
// order. Dissipative terms are then applied (alongside the Hamiltonian ones)
// and their products appended. Throws Error(truncation) on cutoff overflow.
SpacePtr build_reachable_space(int atoms, std::vector<ModeId> modes, const BasisState& initial,
                               std::span<const Term> hamiltonian,
                               std::span<const Term> dissipative = {}, int cutoff = 1);

class Operator {
public:
    Operator(SpacePtr space, SparseMatrix matrix);

    static Operator zero(SpacePtr space);
    static Operator identity(SpacePtr space);

    // Sum of terms restricted to the basis; images outside it are dropped.
    static Operator from_terms(SpacePtr space, std::span<const Term> terms);

    const HilbertSpace& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return space_->dim(); }

    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }
    cplx element(std::size_t row, std::size_t col) const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& ket) const;

    Operator adjoint() const;

    double hermiticity_error() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() <= tol; }

    // Sets the Hermitian flag after verifying it; throws Error(non_hermitian).
    Operator& assert_hermitian(double tol = 1e-12);
    bool hermitian_flag() const noexcept { return hermitian_; }

    Operator operator+(const Operator& rhs) const;
    Operator operator-(const Operator& rhs) const;
    Operator operator*(const Operator& rhs) const;
    Operator operator*(cplx s) const;

private:
    void require_same_space(const Operator& rhs) const;

    SpacePtr space_;
    SparseMatrix matrix_;
    bool hermitian_ = false;
};

Eigen::VectorXcd basis_vector(const HilbertSpace& space, std::size_t i);

Operator annihilation(const SpacePtr& space, const ModeId& mode);
Operator creation(const SpacePtr& space, const ModeId& mode);
Operator number_operator(const SpacePtr& space, const ModeId& mode);

// |bra><ket| on one atom, identity on everything else.
Operator atomic_op(const SpacePtr& space, int atom, AtomLevel bra, AtomLevel ket);

// Sum over atoms of |e><e| plus the total photon number.
Operator excitation_operator(const SpacePtr& space);

} // namespace ghz
