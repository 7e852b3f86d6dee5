#pragma once

#include "vab/tca.hpp"

namespace vab {

/// Vertex algebroid over a commutative algebra A: module action a*v, Leibniz
/// bracket [u,v], anchor pi: B -> Der(A) (one matrix on A per basis vector of
/// B), symmetric pairing <u,v> in A, and partial: A -> B with pi o partial = 0.
struct VertexAlgebroid {
    CommAlgebra A;
    int dimB = 0;
    Table action;               // A x B -> B
    Table bracket;              // B x B -> B
    std::vector<LinMap> anchor; // anchor[b]: A -> A
    Table pairing;              // B x B -> A
    LinMap partial;             // A -> B

    SparseVector act(const SparseVector& a, const SparseVector& v) const { return bilinear(action, a, v); }
    SparseVector brk(const SparseVector& u, const SparseVector& v) const { return bilinear(bracket, u, v); }
    SparseVector pair(const SparseVector& u, const SparseVector& v) const { return bilinear(pairing, u, v); }
    /// pi(u)(a) for vectors u in B, a in A.
    SparseVector anch(const SparseVector& u, const SparseVector& a) const;
};

VertexAlgebroid make_algebroid(CommAlgebra A, int dimB);

/// The nine defining identities plus the structural laws (unit action, pairing
/// symmetry, anchor derivations, Leibniz identities, pi o partial = 0) and the
/// equivalent truncated-conformal-algebra compatibility conditions.
CheckReport check_vertex_algebroid(const VertexAlgebroid& b);

/// The 1-truncated conformal algebra on A (+) B: a_i a' = 0, u0v = [u,v],
/// u1v = <u,v>, u0a = pi(u)(a), a0u = -pi(u)(a).
Tca tca_of_algebroid(const VertexAlgebroid& b);

/// Backward direction: a Tca plus a given A-module action on C1 assemble into
/// a vertex algebroid; the compatibility conditions are verified, not assumed.
std::pair<VertexAlgebroid, CheckReport> algebroid_of_tca(const Tca& c, const CommAlgebra& A, const Table& action);

struct LieAlgebroid {
    CommAlgebra A;
    int dimG = 0;
    Table bracket;              // g x g -> g
    Table a_action;             // A x g -> g
    std::vector<LinMap> anchor; // anchor[u]: A -> A
};

struct LieAlgebroidModule {
    int dimW = 0;
    Table a_act; // A x W -> W
    Table g_act; // g x W -> W
};

CheckReport check_lie_algebroid(const LieAlgebroid& g);
CheckReport check_lie_algebroid_module(const LieAlgebroid& g, const LieAlgebroidModule& w);

/// B / A.partial(A) with the induced bracket, A-action and anchor. complement
/// holds the surviving B-basis indices; projection sends B-coordinates to
/// quotient coordinates.
struct QuotientLieAlgebroid {
    LieAlgebroid g;
    Subspace a_dA;               // span{a * partial(a')} inside B
    std::vector<int> complement; // B indices forming the quotient basis
    LinMap projection;           // B -> g coordinates
    CheckReport well_defined;
};

QuotientLieAlgebroid lie_algebroid_quotient(const VertexAlgebroid& b);

} // namespace vab
