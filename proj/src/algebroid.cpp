#include "vab/algebroid.hpp"

namespace vab {

SparseVector VertexAlgebroid::anch(const SparseVector& u, const SparseVector& a) const {
    SparseVector out(A.dim);
    for (const auto& [iu, cu] : u.entries()) out.axpy(cu, apply_map(anchor[static_cast<size_t>(iu)], a));
    return out;
}

VertexAlgebroid make_algebroid(CommAlgebra A, int dimB) {
    VertexAlgebroid b;
    int dimA = A.dim;
    b.A = std::move(A);
    b.dimB = dimB;
    b.action = make_table(dimA, dimB, dimB);
    b.bracket = make_table(dimB, dimB, dimB);
    b.anchor.assign(static_cast<size_t>(dimB), make_linmap(dimA, dimA));
    b.pairing = make_table(dimB, dimB, dimA);
    b.partial = make_linmap(dimA, dimB);
    return b;
}

Tca tca_of_algebroid(const VertexAlgebroid& b) {
    Tca c = make_tca(b.A.dim, b.dimB);
    c.partial = b.partial;
    c.u0v = b.bracket;
    c.u1v = b.pairing;
    for (int iu = 0; iu < b.dimB; ++iu)
        for (int ia = 0; ia < b.A.dim; ++ia) {
            const SparseVector& pia = b.anchor[static_cast<size_t>(iu)][static_cast<size_t>(ia)];
            c.u0a[static_cast<size_t>(iu)][static_cast<size_t>(ia)] = pia;
            SparseVector m = pia;
            m *= Rational(-1);
            c.a0u[static_cast<size_t>(ia)][static_cast<size_t>(iu)] = m;
        }
    return c;
}

namespace {

/// Compatibility conditions a conformal-algebra structure must satisfy with
/// a given A-action on C1 to assemble into a vertex algebroid.
CheckReport check_tca_compat(const Tca& c, const CommAlgebra& A, const Table& action) {
    CheckReport rep;
    rep.subject = "tca-compat";
    const int nA = A.dim, nB = c.dim1;
    auto ea = [&](int i) { return unit_vector(nA, i); };
    auto eb = [&](int i) { return unit_vector(nB, i); };
    auto act = [&](const SparseVector& a, const SparseVector& v) { return bilinear(action, a, v); };
    auto u0a = [&](const SparseVector& u, const SparseVector& a) { return bilinear(c.u0a, u, a); };
    auto a0u = [&](const SparseVector& a, const SparseVector& u) { return bilinear(c.a0u, a, u); };
    auto u0v = [&](const SparseVector& u, const SparseVector& v) { return bilinear(c.u0v, u, v); };
    auto u1v = [&](const SparseVector& u, const SparseVector& v) { return bilinear(c.u1v, u, v); };
    auto dd = [&](const SparseVector& a) { return apply_map(c.partial, a); };

    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j) {
            // partial(aa') = a partial(a') + a' partial(a)
            SparseVector l = dd(A.mul_vv(ea(i), ea(j)));
            SparseVector r = act(ea(i), dd(ea(j))) + act(ea(j), dd(ea(i)));
            ++rep.checked;
            if (l != r) rep.fail("compat-partial-leibniz", {i, j}, l.str(), r.str());
            for (int k = 0; k < nB; ++k) {
                // a(a'u) - (aa')u = (u0a) partial(a') + (u0a') partial(a)
                SparseVector l7 = act(ea(i), act(ea(j), eb(k))) - act(A.mul_vv(ea(i), ea(j)), eb(k));
                SparseVector r7 = act(u0a(eb(k), ea(i)), dd(ea(j))) + act(u0a(eb(k), ea(j)), dd(ea(i)));
                ++rep.checked;
                if (l7 != r7) rep.fail("compat-action-assoc", {i, j, k}, l7.str(), r7.str());
                // u0(aa') = a(u0a') + (u0a)a'
                SparseVector l9 = u0a(eb(k), A.mul_vv(ea(i), ea(j)));
                SparseVector r9 = A.mul_vv(ea(i), u0a(eb(k), ea(j))) + A.mul_vv(u0a(eb(k), ea(i)), ea(j));
                ++rep.checked;
                if (l9 != r9) rep.fail("compat-anchor-derivation", {k, i, j}, l9.str(), r9.str());
            }
        }
    for (int i = 0; i < nA; ++i)
        for (int k = 0; k < nB; ++k)
            for (int l = 0; l < nB; ++l) {
                // u0(av) - a(u0v) = (u0a)v
                SparseVector l8 = u0v(eb(k), act(ea(i), eb(l))) - act(ea(i), u0v(eb(k), eb(l)));
                SparseVector r8 = act(u0a(eb(k), ea(i)), eb(l));
                ++rep.checked;
                if (l8 != r8) rep.fail("compat-bracket-action", {k, i, l}, l8.str(), r8.str());
                // (au)1v = a(u1v) - u0(v0a)
                SparseVector l11 = u1v(act(ea(i), eb(k)), eb(l));
                SparseVector r11 = A.mul_vv(ea(i), u1v(eb(k), eb(l))) - u0a(eb(k), u0a(eb(l), ea(i)));
                ++rep.checked;
                if (l11 != r11) rep.fail("compat-pairing-action", {i, k, l}, l11.str(), r11.str());
            }
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j)
            for (int l = 0; l < nB; ++l) {
                // a0(a'v) = a'(a0v)
                SparseVector l10 = a0u(ea(i), act(ea(j), eb(l)));
                SparseVector r10 = A.mul_vv(ea(j), a0u(ea(i), eb(l)));
                ++rep.checked;
                if (l10 != r10) rep.fail("compat-a0-action", {i, j, l}, l10.str(), r10.str());
            }
    return rep;
}

} // namespace

CheckReport check_vertex_algebroid(const VertexAlgebroid& b) {
    CheckReport rep;
    rep.subject = "vertex-algebroid";
    const int nA = b.A.dim, nB = b.dimB;
    auto ea = [&](int i) { return unit_vector(nA, i); };
    auto eb = [&](int i) { return unit_vector(nB, i); };

    // Structural laws.
    for (int k = 0; k < nB; ++k) {
        SparseVector l = b.act(b.A.unit_vec(), eb(k));
        ++rep.checked;
        if (l != eb(k)) rep.fail("unit-action", {k}, l.str(), eb(k).str());
    }
    for (int u = 0; u < nB; ++u)
        for (int v = 0; v < nB; ++v) {
            SparseVector l = b.pair(eb(u), eb(v)), r = b.pair(eb(v), eb(u));
            ++rep.checked;
            if (l != r) rep.fail("pairing-symmetric", {u, v}, l.str(), r.str());
        }
    for (int i = 0; i < nA; ++i) {
        SparseVector da = apply_map(b.partial, ea(i));
        for (int j = 0; j < nA; ++j) {
            SparseVector l = b.anch(da, ea(j));
            ++rep.checked;
            if (!l.zero()) rep.fail("anchor-kills-partial", {i, j}, l.str(), "0");
        }
    }
    for (int u = 0; u < nB; ++u)
        for (int i = 0; i < nA; ++i)
            for (int j = 0; j < nA; ++j) {
                SparseVector l = b.anch(eb(u), b.A.mul_vv(ea(i), ea(j)));
                SparseVector r = b.A.mul_vv(b.anch(eb(u), ea(i)), ea(j)) + b.A.mul_vv(ea(i), b.anch(eb(u), ea(j)));
                ++rep.checked;
                if (l != r) rep.fail("anchor-derivation", {u, i, j}, l.str(), r.str());
            }
    for (int u = 0; u < nB; ++u)
        for (int v = 0; v < nB; ++v)
            for (int w = 0; w < nB; ++w) {
                SparseVector l = b.brk(eb(u), b.brk(eb(v), eb(w)));
                SparseVector r = b.brk(b.brk(eb(u), eb(v)), eb(w)) + b.brk(eb(v), b.brk(eb(u), eb(w)));
                ++rep.checked;
                if (l != r) rep.fail("bracket-leibniz", {u, v, w}, l.str(), r.str());
            }
    for (int u = 0; u < nB; ++u)
        for (int v = 0; v < nB; ++v)
            for (int i = 0; i < nA; ++i) {
                SparseVector l = b.anch(b.brk(eb(u), eb(v)), ea(i));
                SparseVector r = b.anch(eb(u), b.anch(eb(v), ea(i))) - b.anch(eb(v), b.anch(eb(u), ea(i)));
                ++rep.checked;
                if (l != r) rep.fail("anchor-leibniz-hom", {u, v, i}, l.str(), r.str());
            }

    // The nine displayed conditions.
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j)
            for (int v = 0; v < nB; ++v) {
                SparseVector l = b.act(ea(i), b.act(ea(j), eb(v))) - b.act(b.A.mul_vv(ea(i), ea(j)), eb(v));
                SparseVector r = b.act(b.anch(eb(v), ea(i)), apply_map(b.partial, ea(j))) +
                                 b.act(b.anch(eb(v), ea(j)), apply_map(b.partial, ea(i)));
                ++rep.checked;
                if (l != r) rep.fail("d1-action-assoc", {i, j, v}, l.str(), r.str());
            }
    for (int u = 0; u < nB; ++u)
        for (int i = 0; i < nA; ++i)
            for (int v = 0; v < nB; ++v) {
                SparseVector l = b.brk(eb(u), b.act(ea(i), eb(v)));
                SparseVector r = b.act(b.anch(eb(u), ea(i)), eb(v)) + b.act(ea(i), b.brk(eb(u), eb(v)));
                ++rep.checked;
                if (l != r) rep.fail("d2-bracket-action", {u, i, v}, l.str(), r.str());
            }
    for (int u = 0; u < nB; ++u)
        for (int v = 0; v < nB; ++v) {
            SparseVector l = b.brk(eb(u), eb(v)) + b.brk(eb(v), eb(u));
            SparseVector r = apply_map(b.partial, b.pair(eb(u), eb(v)));
            ++rep.checked;
            if (l != r) rep.fail("d3-bracket-symmetrization", {u, v}, l.str(), r.str());
        }
    for (int i = 0; i < nA; ++i)
        for (int v = 0; v < nB; ++v)
            for (int j = 0; j < nA; ++j) {
                SparseVector l = b.anch(b.act(ea(i), eb(v)), ea(j));
                SparseVector r = b.A.mul_vv(ea(i), b.anch(eb(v), ea(j)));
                ++rep.checked;
                if (l != r) rep.fail("d4-anchor-a-linear", {i, v, j}, l.str(), r.str());
            }
    for (int i = 0; i < nA; ++i)
        for (int u = 0; u < nB; ++u)
            for (int v = 0; v < nB; ++v) {
                SparseVector l = b.pair(b.act(ea(i), eb(u)), eb(v));
                SparseVector r = b.A.mul_vv(ea(i), b.pair(eb(u), eb(v))) - b.anch(eb(u), b.anch(eb(v), ea(i)));
                ++rep.checked;
                if (l != r) rep.fail("d5-pairing-action", {i, u, v}, l.str(), r.str());
            }
    for (int v = 0; v < nB; ++v)
        for (int v1 = 0; v1 < nB; ++v1)
            for (int v2 = 0; v2 < nB; ++v2) {
                SparseVector l = b.anch(eb(v), b.pair(eb(v1), eb(v2)));
                SparseVector r = b.pair(b.brk(eb(v), eb(v1)), eb(v2)) + b.pair(eb(v1), b.brk(eb(v), eb(v2)));
                ++rep.checked;
                if (l != r) rep.fail("d6-pairing-invariance", {v, v1, v2}, l.str(), r.str());
            }
    rep.notes.push_back("d6-pairing-invariance swept over all basis triples (v,v1,v2); "
                        "the identity is multilinear, so this sweep is its full polarization");
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j) {
            SparseVector l = apply_map(b.partial, b.A.mul_vv(ea(i), ea(j)));
            SparseVector r = b.act(ea(i), apply_map(b.partial, ea(j))) + b.act(ea(j), apply_map(b.partial, ea(i)));
            ++rep.checked;
            if (l != r) rep.fail("d7-partial-leibniz", {i, j}, l.str(), r.str());
        }
    for (int v = 0; v < nB; ++v)
        for (int i = 0; i < nA; ++i) {
            SparseVector l = b.brk(eb(v), apply_map(b.partial, ea(i)));
            SparseVector r = apply_map(b.partial, b.anch(eb(v), ea(i)));
            ++rep.checked;
            if (l != r) rep.fail("d8-bracket-partial", {v, i}, l.str(), r.str());
            SparseVector l9 = b.pair(eb(v), apply_map(b.partial, ea(i)));
            SparseVector r9 = b.anch(eb(v), ea(i));
            ++rep.checked;
            if (l9 != r9) rep.fail("d9-pairing-partial", {v, i}, l9.str(), r9.str());
        }

    // Second route: the same structure as a 1-truncated conformal algebra with
    // its compatibility conditions with the module action.
    rep.merge(check_tca_compat(tca_of_algebroid(b), b.A, b.action));
    return rep;
}

std::pair<VertexAlgebroid, CheckReport> algebroid_of_tca(const Tca& c, const CommAlgebra& A, const Table& action) {
    if (A.dim != c.dim0) throw input_error("algebroid_of_tca: A dimension != dim C0");
    VertexAlgebroid b = make_algebroid(A, c.dim1);
    b.action = action;
    b.bracket = c.u0v;
    b.pairing = c.u1v;
    b.partial = c.partial;
    for (int u = 0; u < c.dim1; ++u)
        for (int i = 0; i < c.dim0; ++i)
            b.anchor[static_cast<size_t>(u)][static_cast<size_t>(i)] =
                c.u0a[static_cast<size_t>(u)][static_cast<size_t>(i)];
    return {b, check_tca_compat(c, A, action)};
}

CheckReport check_lie_algebroid(const LieAlgebroid& g) {
    CheckReport rep;
    rep.subject = "lie-algebroid";
    const int nA = g.A.dim, nG = g.dimG;
    auto ea = [&](int i) { return unit_vector(nA, i); };
    auto eg = [&](int i) { return unit_vector(nG, i); };
    auto brk = [&](const SparseVector& u, const SparseVector& v) { return bilinear(g.bracket, u, v); };
    auto act = [&](const SparseVector& a, const SparseVector& v) { return bilinear(g.a_action, a, v); };
    auto anch = [&](const SparseVector& u, const SparseVector& a) {
        SparseVector out(nA);
        for (const auto& [iu, cu] : u.entries()) out.axpy(cu, apply_map(g.anchor[static_cast<size_t>(iu)], a));
        return out;
    };

    for (int u = 0; u < nG; ++u)
        for (int v = 0; v < nG; ++v) {
            SparseVector l = brk(eg(u), eg(v)) + brk(eg(v), eg(u));
            ++rep.checked;
            if (!l.zero()) rep.fail("antisymmetry", {u, v}, l.str(), "0");
        }
    for (int u = 0; u < nG; ++u)
        for (int v = 0; v < nG; ++v)
            for (int w = 0; w < nG; ++w) {
                SparseVector l = brk(eg(u), brk(eg(v), eg(w)));
                SparseVector r = brk(brk(eg(u), eg(v)), eg(w)) + brk(eg(v), brk(eg(u), eg(w)));
                ++rep.checked;
                if (l != r) rep.fail("jacobi", {u, v, w}, l.str(), r.str());
            }
    for (int u = 0; u < nG; ++u)
        for (int i = 0; i < nA; ++i)
            for (int v = 0; v < nG; ++v) {
                // [u, av] = a[u,v] + (ua)v
                SparseVector l = brk(eg(u), act(ea(i), eg(v)));
                SparseVector r = act(ea(i), brk(eg(u), eg(v))) + act(anch(eg(u), ea(i)), eg(v));
                ++rep.checked;
                if (l != r) rep.fail("bracket-a-linear", {u, i, v}, l.str(), r.str());
            }
    for (int i = 0; i < nA; ++i)
        for (int u = 0; u < nG; ++u)
            for (int j = 0; j < nA; ++j) {
                // a(ub) = (au)b
                SparseVector l = g.A.mul_vv(ea(i), anch(eg(u), ea(j)));
                SparseVector r = anch(act(ea(i), eg(u)), ea(j));
                ++rep.checked;
                if (l != r) rep.fail("anchor-a-linear", {i, u, j}, l.str(), r.str());
            }
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j)
            for (int u = 0; u < nG; ++u) {
                SparseVector l = act(g.A.mul_vv(ea(i), ea(j)), eg(u));
                SparseVector r = act(ea(i), act(ea(j), eg(u)));
                ++rep.checked;
                if (l != r) rep.fail("a-module-assoc", {i, j, u}, l.str(), r.str());
            }
    for (int u = 0; u < nG; ++u) {
        if (nA == 0) break;
        SparseVector l = act(g.A.unit_vec(), eg(u));
        ++rep.checked;
        if (l != eg(u)) rep.fail("a-module-unit", {u}, l.str(), eg(u).str());
    }
    for (int u = 0; u < nG; ++u)
        for (int v = 0; v < nG; ++v)
            for (int i = 0; i < nA; ++i) {
                SparseVector l = anch(brk(eg(u), eg(v)), ea(i));
                SparseVector r = anch(eg(u), anch(eg(v), ea(i))) - anch(eg(v), anch(eg(u), ea(i)));
                ++rep.checked;
                if (l != r) rep.fail("anchor-lie-action", {u, v, i}, l.str(), r.str());
            }
    for (int u = 0; u < nG; ++u)
        for (int i = 0; i < nA; ++i)
            for (int j = 0; j < nA; ++j) {
                SparseVector l = anch(eg(u), g.A.mul_vv(ea(i), ea(j)));
                SparseVector r = g.A.mul_vv(anch(eg(u), ea(i)), ea(j)) + g.A.mul_vv(ea(i), anch(eg(u), ea(j)));
                ++rep.checked;
                if (l != r) rep.fail("anchor-derivation", {u, i, j}, l.str(), r.str());
            }
    return rep;
}

CheckReport check_lie_algebroid_module(const LieAlgebroid& g, const LieAlgebroidModule& w) {
    CheckReport rep;
    rep.subject = "lie-algebroid-module";
    const int nA = g.A.dim, nG = g.dimG, nW = w.dimW;
    auto ea = [&](int i) { return unit_vector(nA, i); };
    auto eg = [&](int i) { return unit_vector(nG, i); };
    auto ew = [&](int i) { return unit_vector(nW, i); };
    auto aact = [&](const SparseVector& a, const SparseVector& x) { return bilinear(w.a_act, a, x); };
    auto gact = [&](const SparseVector& u, const SparseVector& x) { return bilinear(w.g_act, u, x); };
    auto anch = [&](const SparseVector& u, const SparseVector& a) {
        SparseVector out(nA);
        for (const auto& [iu, cu] : u.entries()) out.axpy(cu, apply_map(g.anchor[static_cast<size_t>(iu)], a));
        return out;
    };

    for (int u = 0; u < nG; ++u)
        for (int i = 0; i < nA; ++i)
            for (int k = 0; k < nW; ++k) {
                // u(aw) - a(uw) = (ua)w
                SparseVector l = gact(eg(u), aact(ea(i), ew(k))) - aact(ea(i), gact(eg(u), ew(k)));
                SparseVector r = aact(anch(eg(u), ea(i)), ew(k));
                ++rep.checked;
                if (l != r) rep.fail("module-mixed", {u, i, k}, l.str(), r.str());
                // a(uw) = (au)w
                SparseVector l2 = aact(ea(i), gact(eg(u), ew(k)));
                SparseVector r2 = gact(bilinear(g.a_action, ea(i), eg(u)), ew(k));
                ++rep.checked;
                if (l2 != r2) rep.fail("module-a-linear", {i, u, k}, l2.str(), r2.str());
            }
    for (int u = 0; u < nG; ++u)
        for (int v = 0; v < nG; ++v)
            for (int k = 0; k < nW; ++k) {
                SparseVector l = gact(bilinear(g.bracket, eg(u), eg(v)), ew(k));
                SparseVector r = gact(eg(u), gact(eg(v), ew(k))) - gact(eg(v), gact(eg(u), ew(k)));
                ++rep.checked;
                if (l != r) rep.fail("g-module", {u, v, k}, l.str(), r.str());
            }
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j)
            for (int k = 0; k < nW; ++k) {
                SparseVector l = aact(g.A.mul_vv(ea(i), ea(j)), ew(k));
                SparseVector r = aact(ea(i), aact(ea(j), ew(k)));
                ++rep.checked;
                if (l != r) rep.fail("a-module-assoc", {i, j, k}, l.str(), r.str());
            }
    for (int k = 0; k < nW && nA > 0; ++k) {
        SparseVector l = aact(g.A.unit_vec(), ew(k));
        ++rep.checked;
        if (l != ew(k)) rep.fail("a-module-unit", {k}, l.str(), ew(k).str());
    }
    return rep;
}

QuotientLieAlgebroid lie_algebroid_quotient(const VertexAlgebroid& b) {
    QuotientLieAlgebroid q;
    const int nA = b.A.dim, nB = b.dimB;
    auto ea = [&](int i) { return unit_vector(nA, i); };
    auto eb = [&](int i) { return unit_vector(nB, i); };

    q.a_dA = Subspace(nB);
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j) q.a_dA.insert(b.act(ea(i), apply_map(b.partial, ea(j))));

    std::vector<bool> pivot(static_cast<size_t>(nB), false);
    for (int p : q.a_dA.pivots()) pivot[static_cast<size_t>(p)] = true;
    for (int i = 0; i < nB; ++i)
        if (!pivot[static_cast<size_t>(i)]) q.complement.push_back(i);
    const int nG = static_cast<int>(q.complement.size());

    q.projection = make_linmap(nB, nG);
    for (int i = 0; i < nB; ++i) {
        SparseVector red = q.a_dA.reduce(eb(i));
        SparseVector coords(nG);
        for (int k = 0; k < nG; ++k) coords.set(k, red.at(q.complement[static_cast<size_t>(k)]));
        q.projection[static_cast<size_t>(i)] = coords;
    }
    auto proj = [&](const SparseVector& v) { return apply_map(q.projection, v); };

    // Well-definedness: the relation space is stable under bracket (both
    // slots), the A-action, and has vanishing anchor.
    q.well_defined.subject = "lie-algebroid-quotient";
    for (const auto& r : q.a_dA.rows()) {
        for (int u = 0; u < nB; ++u) {
            SparseVector l = b.brk(eb(u), r), l2 = b.brk(r, eb(u));
            q.well_defined.checked += 2;
            if (!q.a_dA.contains(l)) q.well_defined.fail("quotient-bracket-left", {u}, l.str(), "in A.dA");
            if (!q.a_dA.contains(l2)) q.well_defined.fail("quotient-bracket-right", {u}, l2.str(), "in A.dA");
        }
        for (int i = 0; i < nA; ++i) {
            SparseVector l = b.act(ea(i), r);
            ++q.well_defined.checked;
            if (!q.a_dA.contains(l)) q.well_defined.fail("quotient-action", {i}, l.str(), "in A.dA");
        }
        for (int i = 0; i < nA; ++i) {
            SparseVector l = b.anch(r, ea(i));
            ++q.well_defined.checked;
            if (!l.zero()) q.well_defined.fail("quotient-anchor", {i}, l.str(), "0");
        }
    }

    q.g.A = b.A;
    q.g.dimG = nG;
    q.g.bracket = make_table(nG, nG, nG);
    q.g.a_action = make_table(nA, nG, nG);
    q.g.anchor.assign(static_cast<size_t>(nG), make_linmap(nA, nA));
    for (int i = 0; i < nG; ++i) {
        int bi = q.complement[static_cast<size_t>(i)];
        for (int j = 0; j < nG; ++j) {
            int bj = q.complement[static_cast<size_t>(j)];
            q.g.bracket[static_cast<size_t>(i)][static_cast<size_t>(j)] = proj(b.brk(eb(bi), eb(bj)));
        }
        for (int a = 0; a < nA; ++a)
            q.g.a_action[static_cast<size_t>(a)][static_cast<size_t>(i)] = proj(b.act(ea(a), eb(bi)));
        q.g.anchor[static_cast<size_t>(i)] = b.anchor[static_cast<size_t>(bi)];
    }
    return q;
}

} // namespace vab
