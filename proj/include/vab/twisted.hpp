#pragma once

#include "vab/field.hpp"

namespace vab {

/// Module fiber for the twisted induction: a Lie-algebroid module over
/// B^0/A^0 dA^0 together with its action tables re-indexed over the global
/// C0/C1 bases (only sector-0 columns are populated).
struct TwistedFiber {
    LieAlgebroidModule U;
    Fiber tables;
};

TwistedFiber make_fiber(const FixedSubalgebroid& fx, const QuotientLieAlgebroid& q, const LieAlgebroidModule& u,
                        int dimA, int dimB);

/// Fiber as it appears in input files: action tables over the global A and B
/// bases (sector-0 rows only).
struct FiberSpec {
    int dim = 0;
    Table a_act; // dimA x dim -> dim
    Table b_act; // dimB x dim -> dim
};

/// Turn a raw fiber spec into a module over B^0/A^0 dA^0. The checks verify
/// that only sector-0 rows are populated and that A^0 dA^0 acts as zero (the
/// quotient action is well defined).
struct FiberBuild {
    LieAlgebroidModule U;
    CheckReport checks;
};

FiberBuild fiber_from_spec(const FixedSubalgebroid& fx, const QuotientLieAlgebroid& q, const SectorGrading& g,
                           const FiberSpec& spec);

/// Degree-zero admissibility: (aa') U = 0 and (ab) U = (1 - r/T)(a_0 b) U for
/// a in A^r, a' in A^{T-r}, b in B^{T-r}, 0 < r < T.
CheckReport check_fiber_conditions(const VertexAlgebroid& b, const SectorGrading& g, const TwistedFiber& f);

/// M_g(U): induced from the degree-<= 0 part, U in degree 0.
InducedModule induce_twisted(std::shared_ptr<const LoopLie> L, const TwistedFiber& f);

/// W_g(U): spans of all in-window field coefficients of the ideal generators E
/// on the fiber. The degree-0 span must vanish exactly when the fiber
/// conditions hold.
struct RelationsW {
    std::vector<Subspace> spans;
    CheckReport degree0;
};

RelationsW relations_W(const FieldEngine& vl_to_mg, const std::vector<State>& e_gens);

/// M_B(U) = M_g(U) / U(L) W_g(U). Invariance of the closed relation spans and,
/// for admissible fibers, M_B(U)(0) = U are consistency guarantees: their
/// failure aborts. For inadmissible fibers the degree-0 defect is reported.
struct MBResult {
    InducedModule mb;
    CheckReport report;
};

MBResult build_MB(const InducedModule& mg, const std::vector<Subspace>& w_spans, bool fiber_passed);

/// J(U) by the raising recursion J(0) = 0, J(n) = {w : x w in J(n - d) for
/// every degree-lowering canonical mode x with drop d <= n}, and the quotient
/// L_g(U). The verification re-runs the recursion on the quotient (its radical
/// must vanish).
struct RadicalResult {
    std::vector<Subspace> j_slices; // quotient coordinates per slice
    InducedModule lg;
    CheckReport verification;
};

RadicalResult radical_J(const InducedModule& m);

/// Independent route to J(U): w lies in J iff the U(L)-closure of w meets
/// degree 0 trivially, decided by exhaustive composite-map closure. Meant for
/// truncations of small total dimension.
std::vector<Subspace> radical_brute(const InducedModule& m);

/// Cutoff-relative graded simplicity: the submodule generated (within the
/// window) by every single basis vector is the whole truncation.
CheckReport is_simple_graded(const InducedModule& m);

/// The submodule of the truncation generated by one state, as per-slice
/// subspaces of monomial coordinates containing the module's relation spans.
std::vector<Subspace> submodule_closure(const InducedModule& m, const State& seed);

/// Degree-0 slice as a Lie-algebroid module (a.w = a(-1)w, b.w = b(0)w), with
/// the module and fiber-condition checks re-run on the extracted tables.
struct FiberRestriction {
    LieAlgebroidModule U;
    CheckReport checks;
};

FiberRestriction fiber_restriction(const InducedModule& m, const VertexAlgebroid& b, const SectorGrading& g,
                                   const FixedSubalgebroid& fx, const QuotientLieAlgebroid& q);

/// T = 1 reduction: explicit intertwiner between the vacuum-quotient algebra
/// V_B and the induced module M_B(A) over the fiber U = A. Verifies that the
/// slice-wise correspondence (b-word a(-1)^{0|1} 1 <-> b-word (x) u_a) is
/// bijective and commutes with every in-window canonical mode action.
CheckReport compare_untwisted_reduction(const InducedModule& vb, const InducedModule& mb, int unit_index);

} // namespace vab
