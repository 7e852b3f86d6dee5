#pragma once

#include "vab/algebra.hpp"

namespace vab {

/// 1-truncated conformal algebra C = C0 (+) C1 with d: C0 -> C1 and products
/// u_i v of degree -i-1. Degree bookkeeping forces every component map except
/// the five stored here to vanish:
///   a_0 u in C0, u_0 a in C0, u_0 v in C1, u_1 v in C0 (a in C0; u, v in C1).
struct Tca {
    int dim0 = 0;
    int dim1 = 0;
    LinMap partial; // C0 -> C1
    Table a0u;      // C0 x C1 -> C0
    Table u0a;      // C1 x C0 -> C0
    Table u0v;      // C1 x C1 -> C1
    Table u1v;      // C1 x C1 -> C0
};

Tca make_tca(int dim0, int dim1);

/// Element of C0 (+) C1.
struct CElem {
    SparseVector c0, c1;
};

CElem celem(const Tca& c, const SparseVector& a_part, const SparseVector& u_part);
CElem basis_elem(const Tca& c, bool in_c1, int idx);
CElem op0(const Tca& c, const CElem& x, const CElem& y);
CElem op1(const Tca& c, const CElem& x, const CElem& y);
CElem dmap(const Tca& c, const CElem& x);
CElem add(CElem x, const CElem& y);
CElem neg(CElem x);
bool celem_zero(const CElem& x);
std::string celem_str(const CElem& x);

/// Derivation, commutativity and associativity axioms on every admissible
/// basis tuple.
CheckReport check_tca(const Tca& c);

/// Same underlying space with u_1 v scaled by 1/ell and partial scaled by ell.
Tca rescale_tca(const Tca& c, const Rational& ell);

} // namespace vab
