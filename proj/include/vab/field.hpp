#pragma once

#include "vab/engine.hpp"

namespace vab {

/// Evaluates coefficients of twisted fields Y_M(v, x) = sum_q v_q x^{-q-1} for
/// truncated algebra states v acting on a module over the same 1-truncated
/// conformal algebra. The algebra side is always untwisted (V_L or V_B); the
/// module may be twisted.
///
/// Generator states u(-1)1 act by their loop-algebra modes. For a longer
/// monomial v = u(-n) v' the coefficient v_q w is solved out of the component
/// identity obtained by comparing coefficients in the twisted Jacobi identity
/// at p = -n, s = r/T - 1, t = q - s (r the sector of u):
///
///   sum_{m>=0} C(s,m) (u_{p+m} v')_{s+t-m} w
///     = sum_{m>=0} (-1)^m C(p,m) { u_{p+s-m} (v'_{t+m} w)
///                                  - (-1)^p v'_{p+t-m} (u_{s+m} w) }.
///
/// The m = 0 term on the left is v_q w; every other term recurses on states of
/// lower degree or shorter length, and all sums truncate by the grading.
class FieldEngine {
public:
    FieldEngine(const InducedModule* algebra, const InducedModule* module);

    const InducedModule& algebra() const { return *alg_; }
    const InducedModule& module() const { return *mod_; }
    int T() const { return mod_->T(); }

    /// v_q w. Zero when q is off the sector lattice or the target degree is
    /// negative; window_error when the target or an intermediate leaves the
    /// module window.
    State field(const State& v, const Rational& q, const State& w) const;

    /// u(q) w for a single C0/C1 basis generator.
    State gen_mode(bool is_b, int gen, const Rational& q, const State& w) const;

    /// Sector (mod T of the module grading) of an algebra-side monomial.
    int sector_of_mono(int k, int mi) const;
    int sector_of_state(const State& v) const;

private:
    SparseVector field_mono(int kv, int mi, const Rational& q, int kw, int wi) const;
    State field_on_w(int kv, int mi, const Rational& q, const State& w) const;

    const InducedModule* alg_;
    const InducedModule* mod_;
    mutable std::map<std::tuple<int, int, Rational, int, int>, SparseVector> cache_;
};

/// Both sides of the component (coefficient-comparison) identity at one index
/// tuple, evaluated independently through the field engines.
struct JacobiSides {
    State lhs, rhs;
};

JacobiSides eval_jacobi_sides(const FieldEngine& self, const FieldEngine& mod, const State& u, const State& v, long p,
                              const Rational& s, const Rational& t, const State& w);

/// Exact comparison of both sides at one tuple; the difference is reported.
CheckReport verify_jacobi_identity(const FieldEngine& self, const FieldEngine& mod, const State& u, const State& v,
                                   long p, const Rational& s, const Rational& t, const State& w);

/// Grid sweep: p, s-offset, t-offset in [-bound, bound], s and t shifted to
/// the sector lattices of u and v, w over every module basis vector of degree
/// <= w_max_deg. Tuples whose evaluation leaves the window are counted and
/// noted, not failed. Exhaustive by default; when max_tuples > 0 and the grid
/// is larger, a seeded deterministic subsample of that size is swept instead.
CheckReport verify_jacobi_grid(const FieldEngine& self, const FieldEngine& mod, const State& u, const State& v,
                               long bound, const Rational& w_max_deg, long max_tuples = 0, unsigned seed = 0);

/// Twisted commutator transfer on the module: for generator modes x(k), y(l),
///   x(k) y(l) w - y(l) x(k) w = sum_{i=0,1} C(k,i) (x_i y)(k+l-i) w
/// with x_i y taken from the structure tables (the derivative-of-delta term is
/// the i = 1 summand).
CheckReport verify_commutator_transfer(const FieldEngine& mod, const Rational& w_max_deg);

/// Y_M(D v, x) = d/dx Y_M(v, x), as (Dv)_q = -q v_{q-1}, checked on generator
/// states against every module basis vector.
CheckReport verify_derivative_rule(const FieldEngine& mod);

/// For every generator u and basis w, u(q) w = 0 for every in-window q above
/// the grading bound deg w + wt u - 1 (the restriction property, witnessed).
CheckReport verify_restricted(const FieldEngine& mod);

/// g(Y(u,x)v) = Y(g u, x) g v for the extension of an algebroid automorphism,
/// on the algebra's self-action.
CheckReport verify_functoriality(const FieldEngine& self, const ExtendedAutomorphism& f, const Rational& v_max_deg,
                                 const Rational& w_max_deg);

/// Per-degree annihilator of a set of algebra states in the module, with the
/// submodule-invariance verification.
struct AnnihilatorResult {
    std::vector<Subspace> slices; // quotient coordinates per degree
    CheckReport invariance;
};

AnnihilatorResult annihilator_in_module(const FieldEngine& mod, const std::vector<State>& states);

} // namespace vab
