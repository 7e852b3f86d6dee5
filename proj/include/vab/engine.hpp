#pragma once

#include <memory>
#include <tuple>

#include "vab/loop_lie.hpp"

namespace vab {

/// Normal-ordered PBW monomial: creation modes sorted by decreasing degree
/// (ties by generator index), applied to the vacuum or to a fiber basis
/// vector. a(-1) factors sit innermost.
struct Pbw {
    std::vector<Mode> modes;
    int fiber = 0;

    int a_count() const;
    bool operator<(const Pbw& o) const;
    bool operator==(const Pbw& o) const { return modes == o.modes && fiber == o.fiber; }
    std::string str() const;
};

/// Which quotient stage a module represents.
enum class Flavor { VacuumAlgebra, QuotientAlgebra, InducedTwisted, QuotientTwisted, SimpleQuotient };

/// Degree-zero data. For the vacuum flavors dim = 1 and a(-1) acts by
/// creation; for twisted flavors L0 acts through the tables (columns indexed
/// by global C0/C1 basis positions, only sector-0 columns are ever used).
struct Fiber {
    int dim = 1;
    bool vacuum = true;
    Table a_act; // C0 x U -> U
    Table b_act; // C1 x U -> U
};

/// Homogeneous element: degree k/T, coordinates over the slice's monomials,
/// kept in normal form (reduced modulo the slice's relation subspace).
struct State {
    int k = 0;
    SparseVector v;
    bool zero() const { return v.zero(); }
};

State add_states(const State& a, const State& b);
State scale_state(const Rational& c, State s);

/// Degree-truncated induced module over a loop Lie algebra: V_L and V_B when
/// untwisted with the vacuum fiber, M_g(U), M_B(U) and L_g(U) when twisted.
/// Slices are indexed by the degree numerator k (degree k/T), 0 <= k <= N*T.
///
/// Mode actions follow the PBW straightening
///   x (y w) = y (x w) + [x, y] w
/// with creation modes inserted at their canonical spot, modes of degree <= 0
/// pushed onto the fiber, and every bracket taken in the loop algebra. Actions
/// whose target degree exceeds the window (or would exceed the a(-1)-word cap)
/// raise window_error; negative target degrees give zero.
class InducedModule {
public:
    static InducedModule vacuum_algebra(std::shared_ptr<const LoopLie> L, int cap_a);
    static InducedModule induced_twisted(std::shared_ptr<const LoopLie> L, Fiber fiber);

    const LoopLie& L() const { return *L_; }
    std::shared_ptr<const LoopLie> L_ptr() const { return L_; }
    int T() const { return L_->T(); }
    int window() const { return L_->window(); }
    int grid() const { return window() * T(); }
    Flavor flavor() const { return flavor_; }
    const Fiber& fiber() const { return fiber_; }
    int cap_a() const { return cap_a_; }
    bool is_algebra() const { return flavor_ == Flavor::VacuumAlgebra || flavor_ == Flavor::QuotientAlgebra; }

    const std::vector<Pbw>& monos(int k) const;
    int mono_count(int k) const { return static_cast<int>(monos(k).size()); }
    int mono_index(int k, const Pbw& p) const;
    const Subspace& relations(int k) const;
    const std::vector<int>& complement(int k) const;
    /// Quotient dimension of the slice.
    int dim(int k) const { return static_cast<int>(complement(k).size()); }
    std::vector<int> dims() const;

    const std::vector<Mode>& creation_modes() const { return creation_; }
    bool is_creation(const Mode& m) const;

    /// Raw action of a canonical mode on one monomial, as coordinates over the
    /// target slice's monomials (no relation reduction). Memoized.
    const SparseVector& act_mono(const Mode& x, int k, int mi) const;
    SparseVector act_vec(const Mode& x, int k, const SparseVector& v) const;

    /// Action on a normal-form state, reduced modulo relations. Target degree
    /// below zero yields the zero state.
    State act(const Mode& x, const State& s) const;
    State act_comb(const ModeComb& c, const State& s) const;

    SparseVector reduce(int k, SparseVector mono_coords) const;
    State make_state(int k, SparseVector mono_coords) const;
    /// Normal-form coordinates over the slice's quotient basis.
    SparseVector quotient_coords(const State& s) const;
    State state_from_quotient(int k, const SparseVector& q) const;
    State zero_state(int k) const;
    State vacuum_state() const;
    State fiber_state(int u) const;
    /// u(-1) vacuum for a basis generator (algebra flavors).
    State generator_state(bool is_b, int gen) const;
    /// State with the given C0-vector at a(-1) (degree-0 class a(-1)1).
    State c0_state(const SparseVector& a_vec) const;
    State c1_state(const SparseVector& b_vec) const;

    /// Degree numerator reached by x from slice k.
    int target_slice(const Mode& x, int k) const;

    /// Translation operator D (algebra flavors only): D(u(m)w) = -m u(m-1)w + u(m)Dw.
    State translate(const State& s) const;

    void install_relations(std::vector<Subspace> rels, Flavor f);

    std::string mono_str(int k, int mi) const;

private:
    InducedModule() = default;
    void enumerate_monos();
    SparseVector translate_mono(int k, int mi) const;

    std::shared_ptr<const LoopLie> L_;
    Flavor flavor_ = Flavor::VacuumAlgebra;
    Fiber fiber_;
    int cap_a_ = 0;
    std::vector<Mode> creation_;

    struct Slice {
        std::vector<Pbw> monos;
        std::map<Pbw, int> index;
        Subspace rel;
        std::vector<int> complement;
    };
    std::vector<Slice> slices_;
    mutable std::map<std::tuple<Mode, int, int>, SparseVector> cache_;
};

/// E = span{e - 1, a(-1)a' - aa', a(-1)b - ab} inside V_L.
std::vector<State> ideal_generators(const InducedModule& vl, const VertexAlgebroid& b);

/// Two-phase U(L)-closure of per-slice seed spans: close under modes of
/// degree <= 0 first (degrees only decrease, stay >= 0), then under creation
/// modes up to the window, iterated to a fixed point. Actions that leave the
/// window or the a(-1) cap are skipped (they leave the truncated carrier).
std::vector<Subspace> close_under_actions(const InducedModule& m, std::vector<Subspace> seeds);

/// Per-degree truncation of the ideal I_B = U(L) C[D] E.
std::vector<Subspace> ideal_truncation(const InducedModule& vl, const VertexAlgebroid& b);

/// Every relation row stays inside the relation span under every in-window
/// canonical mode action.
CheckReport verify_invariance(const InducedModule& m, const std::vector<Subspace>& rels);

/// Quotient V_B = V_L / I_B. Verifies invariance of the relation subspaces,
/// dim V_B(0) = dim A and dim V_B(1) = dim B with the identification maps
/// bijective; failures raise consistency_error.
InducedModule build_vb(const InducedModule& vl, const VertexAlgebroid& b);

/// Linear map A -> V_B(0) slice coordinates, a |-> class of a(-1)1. Also the
/// B -> V_B(1) analogue.
LinMap slice0_identification(const InducedModule& vb);
LinMap slice1_identification(const InducedModule& vb);

/// Spanning fact: b-only monomials span every slice of degree >= 1.
CheckReport verify_spanning(const InducedModule& vb);

/// e(-1) acts as the identity on every slice (quotient flavors).
CheckReport verify_level_one(const InducedModule& m, int unit_index);

/// Grading-preserving extension of an algebroid endomorphism to the module:
/// fbar(u1(-n1)...uk(-nk) 1) = (f u1)(-n1)...(f uk)(-nk) 1. The descent report
/// verifies fbar maps each relation subspace into itself.
struct ExtendedAutomorphism {
    std::vector<LinMap> slice_maps; // quotient coordinates per slice
    CheckReport descent;
};

ExtendedAutomorphism extend_automorphism(const InducedModule& m, const GradedEndomorphism& f);
State apply_extended(const InducedModule& m, const ExtendedAutomorphism& f, const State& s);

} // namespace vab
