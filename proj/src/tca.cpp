#include "vab/tca.hpp"

namespace vab {

Tca make_tca(int dim0, int dim1) {
    Tca c;
    c.dim0 = dim0;
    c.dim1 = dim1;
    c.partial = make_linmap(dim0, dim1);
    c.a0u = make_table(dim0, dim1, dim0);
    c.u0a = make_table(dim1, dim0, dim0);
    c.u0v = make_table(dim1, dim1, dim1);
    c.u1v = make_table(dim1, dim1, dim0);
    return c;
}

CElem celem(const Tca& c, const SparseVector& a_part, const SparseVector& u_part) {
    if (a_part.dim() != c.dim0 || u_part.dim() != c.dim1) throw input_error("celem dimension mismatch");
    return {a_part, u_part};
}

CElem basis_elem(const Tca& c, bool in_c1, int idx) {
    CElem x{SparseVector(c.dim0), SparseVector(c.dim1)};
    if (in_c1)
        x.c1.set(idx, Rational(1));
    else
        x.c0.set(idx, Rational(1));
    return x;
}

CElem op0(const Tca& c, const CElem& x, const CElem& y) {
    CElem out{SparseVector(c.dim0), SparseVector(c.dim1)};
    out.c0 = bilinear(c.a0u, x.c0, y.c1) + bilinear(c.u0a, x.c1, y.c0);
    out.c1 = bilinear(c.u0v, x.c1, y.c1);
    return out;
}

CElem op1(const Tca& c, const CElem& x, const CElem& y) {
    CElem out{SparseVector(c.dim0), SparseVector(c.dim1)};
    out.c0 = bilinear(c.u1v, x.c1, y.c1);
    return out;
}

CElem dmap(const Tca& c, const CElem& x) {
    CElem out{SparseVector(c.dim0), SparseVector(c.dim1)};
    out.c1 = apply_map(c.partial, x.c0);
    return out;
}

CElem add(CElem x, const CElem& y) {
    x.c0 += y.c0;
    x.c1 += y.c1;
    return x;
}

CElem neg(CElem x) {
    x.c0 *= Rational(-1);
    x.c1 *= Rational(-1);
    return x;
}

bool celem_zero(const CElem& x) { return x.c0.zero() && x.c1.zero(); }

std::string celem_str(const CElem& x) { return "[C0 " + x.c0.str() + " | C1 " + x.c1.str() + "]"; }

CheckReport check_tca(const Tca& c) {
    CheckReport rep;
    rep.subject = "tca";
    const int n0 = c.dim0, n1 = c.dim1;

    // Derivation laws, for a in C0 and u in C1.
    for (int ia = 0; ia < n0; ++ia) {
        CElem a = basis_elem(c, false, ia);
        CElem da = dmap(c, a);
        for (int k = 0; k < n0 + n1; ++k) {
            CElem y = basis_elem(c, k >= n0, k >= n0 ? k - n0 : k);
            CElem l = op0(c, da, y);
            ++rep.checked;
            if (!celem_zero(l)) rep.fail("derivation-(da)0", {ia, k}, celem_str(l), "0");
            CElem l1 = op1(c, da, y);
            CElem r1 = neg(op0(c, a, y));
            ++rep.checked;
            if (!(l1.c0 == r1.c0 && l1.c1 == r1.c1))
                rep.fail("derivation-(da)1", {ia, k}, celem_str(l1), celem_str(r1));
        }
        for (int iu = 0; iu < n1; ++iu) {
            CElem u = basis_elem(c, true, iu);
            CElem l = dmap(c, op0(c, u, a));
            CElem r = op0(c, u, da);
            ++rep.checked;
            if (!(l.c0 == r.c0 && l.c1 == r.c1))
                rep.fail("derivation-d(u0a)", {iu, ia}, celem_str(l), celem_str(r));
        }
    }

    // Commutativity laws.
    for (int iu = 0; iu < n1; ++iu) {
        CElem u = basis_elem(c, true, iu);
        for (int ia = 0; ia < n0; ++ia) {
            CElem a = basis_elem(c, false, ia);
            CElem l = op0(c, u, a);
            CElem r = neg(op0(c, a, u));
            ++rep.checked;
            if (!(l.c0 == r.c0 && l.c1 == r.c1))
                rep.fail("commutativity-u0a", {iu, ia}, celem_str(l), celem_str(r));
        }
        for (int iv = 0; iv < n1; ++iv) {
            CElem v = basis_elem(c, true, iv);
            CElem l = op0(c, u, v);
            CElem r = add(neg(op0(c, v, u)), dmap(c, op1(c, v, u)));
            ++rep.checked;
            if (!(l.c0 == r.c0 && l.c1 == r.c1))
                rep.fail("commutativity-u0v", {iu, iv}, celem_str(l), celem_str(r));
            CElem l1 = op1(c, u, v);
            CElem r1 = op1(c, v, u);
            ++rep.checked;
            if (!(l1.c0 == r1.c0 && l1.c1 == r1.c1))
                rep.fail("commutativity-u1v", {iu, iv}, celem_str(l1), celem_str(r1));
        }
    }

    // Associativity: al_0 (be_i ga) = be_i (al_0 ga) + (al_0 be)_i ga.
    for (int i = 0; i <= 1; ++i)
        for (int ka = 0; ka < n0 + n1; ++ka)
            for (int kb = 0; kb < n0 + n1; ++kb)
                for (int kc = 0; kc < n0 + n1; ++kc) {
                    CElem al = basis_elem(c, ka >= n0, ka >= n0 ? ka - n0 : ka);
                    CElem be = basis_elem(c, kb >= n0, kb >= n0 ? kb - n0 : kb);
                    CElem ga = basis_elem(c, kc >= n0, kc >= n0 ? kc - n0 : kc);
                    auto opi = [&](const CElem& x, const CElem& y) { return i == 0 ? op0(c, x, y) : op1(c, x, y); };
                    CElem l = op0(c, al, opi(be, ga));
                    CElem r = add(opi(be, op0(c, al, ga)), opi(op0(c, al, be), ga));
                    ++rep.checked;
                    if (!(l.c0 == r.c0 && l.c1 == r.c1))
                        rep.fail("associativity-op" + std::to_string(i), {ka, kb, kc}, celem_str(l), celem_str(r));
                }
    return rep;
}

Tca rescale_tca(const Tca& c, const Rational& ell) {
    if (ell.is_zero()) throw input_error("rescale_tca: ell must be nonzero");
    Tca out = c;
    Rational inv = Rational(1) / ell;
    for (auto& row : out.u1v)
        for (auto& v : row) v *= inv;
    for (auto& v : out.partial) v *= ell;
    return out;
}

} // namespace vab
