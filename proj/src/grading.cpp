#include "vab/grading.hpp"

namespace vab {

namespace {

/// Check that every entry of out lies in the expected sector.
void check_entry(CheckReport& rep, const std::string& family, std::vector<int> where, const SparseVector& out,
                 const std::vector<int>& out_sectors, int expected, int T) {
    ++rep.checked;
    for (const auto& [k, c] : out.entries()) {
        (void)c;
        if (out_sectors[static_cast<size_t>(k)] % T != expected) {
            std::vector<int> w = where;
            w.push_back(k);
            rep.fail(family, w, out.str(), "sector " + std::to_string(expected));
            return;
        }
    }
}

} // namespace

SectorGrading trivial_grading(int dimA, int dimB) {
    SectorGrading g;
    g.T = 1;
    g.secA.assign(static_cast<size_t>(dimA), 0);
    g.secB.assign(static_cast<size_t>(dimB), 0);
    return g;
}

CheckReport check_tca_grading(const Tca& c, const SectorGrading& g) {
    CheckReport rep;
    rep.subject = "tca-grading";
    const int T = g.T;
    if (T < 1 || static_cast<int>(g.secA.size()) != c.dim0 || static_cast<int>(g.secB.size()) != c.dim1) {
        rep.fail("grading-shape", {}, "T/sector sizes", "T >= 1, sectors for every basis vector");
        return rep;
    }
    for (int r : g.secA)
        if (r < 0 || r >= T) rep.fail("sector-range", {r}, std::to_string(r), "0 <= r < T");
    for (int r : g.secB)
        if (r < 0 || r >= T) rep.fail("sector-range", {r}, std::to_string(r), "0 <= r < T");
    if (!rep.pass()) return rep;

    for (int i = 0; i < c.dim0; ++i)
        check_entry(rep, "partial-sector", {i}, c.partial[static_cast<size_t>(i)], g.secB, g.secA[static_cast<size_t>(i)], T);
    for (int i = 0; i < c.dim0; ++i)
        for (int j = 0; j < c.dim1; ++j)
            check_entry(rep, "a0u-sector", {i, j}, c.a0u[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secA,
                        (g.secA[static_cast<size_t>(i)] + g.secB[static_cast<size_t>(j)]) % T, T);
    for (int i = 0; i < c.dim1; ++i)
        for (int j = 0; j < c.dim0; ++j)
            check_entry(rep, "u0a-sector", {i, j}, c.u0a[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secA,
                        (g.secB[static_cast<size_t>(i)] + g.secA[static_cast<size_t>(j)]) % T, T);
    for (int i = 0; i < c.dim1; ++i)
        for (int j = 0; j < c.dim1; ++j) {
            int s = (g.secB[static_cast<size_t>(i)] + g.secB[static_cast<size_t>(j)]) % T;
            check_entry(rep, "u0v-sector", {i, j}, c.u0v[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secB, s, T);
            check_entry(rep, "u1v-sector", {i, j}, c.u1v[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secA, s, T);
        }
    return rep;
}

CheckReport check_sector_grading(const VertexAlgebroid& b, const SectorGrading& g) {
    CheckReport rep;
    rep.subject = "sector-grading";
    const int T = g.T;
    if (T < 1 || static_cast<int>(g.secA.size()) != b.A.dim || static_cast<int>(g.secB.size()) != b.dimB) {
        rep.fail("grading-shape", {}, "T/sector sizes", "T >= 1, sectors for every basis vector");
        return rep;
    }
    for (int r : g.secA)
        if (r < 0 || r >= T) rep.fail("sector-range", {r}, std::to_string(r), "0 <= r < T");
    for (int r : g.secB)
        if (r < 0 || r >= T) rep.fail("sector-range", {r}, std::to_string(r), "0 <= r < T");
    if (!rep.pass()) return rep;

    if (b.A.dim > 0 && g.secA[static_cast<size_t>(b.A.unit)] != 0)
        rep.fail("unit-sector", {b.A.unit}, std::to_string(g.secA[static_cast<size_t>(b.A.unit)]), "0");

    for (int i = 0; i < b.A.dim; ++i)
        for (int j = 0; j < b.A.dim; ++j)
            check_entry(rep, "product-sector", {i, j}, b.A.mul[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secA,
                        (g.secA[static_cast<size_t>(i)] + g.secA[static_cast<size_t>(j)]) % T, T);
    for (int i = 0; i < b.A.dim; ++i)
        for (int j = 0; j < b.dimB; ++j)
            check_entry(rep, "action-sector", {i, j}, b.action[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secB,
                        (g.secA[static_cast<size_t>(i)] + g.secB[static_cast<size_t>(j)]) % T, T);
    for (int i = 0; i < b.dimB; ++i)
        for (int j = 0; j < b.dimB; ++j) {
            int s = (g.secB[static_cast<size_t>(i)] + g.secB[static_cast<size_t>(j)]) % T;
            check_entry(rep, "bracket-sector", {i, j}, b.bracket[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secB, s, T);
            check_entry(rep, "pairing-sector", {i, j}, b.pairing[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secA, s, T);
        }
    for (int i = 0; i < b.dimB; ++i)
        for (int j = 0; j < b.A.dim; ++j)
            check_entry(rep, "anchor-sector", {i, j}, b.anchor[static_cast<size_t>(i)][static_cast<size_t>(j)], g.secA,
                        (g.secB[static_cast<size_t>(i)] + g.secA[static_cast<size_t>(j)]) % T, T);
    for (int i = 0; i < b.A.dim; ++i)
        check_entry(rep, "partial-sector", {i}, b.partial[static_cast<size_t>(i)], g.secB, g.secA[static_cast<size_t>(i)], T);
    return rep;
}

GradedEndomorphism identity_endomorphism(const VertexAlgebroid& b) {
    return {identity_map(b.A.dim), identity_map(b.dimB)};
}

GradedEndomorphism compose(const GradedEndomorphism& f, const GradedEndomorphism& g) {
    return {compose(f.on_a, g.on_a), compose(f.on_b, g.on_b)};
}

GradedEndomorphism diagonal_endomorphism(const VertexAlgebroid& b, const SectorGrading& g) {
    if (g.T > 2) throw input_error("diagonal endomorphism is rational only for T <= 2");
    GradedEndomorphism f = identity_endomorphism(b);
    for (int i = 0; i < b.A.dim; ++i)
        if (g.secA[static_cast<size_t>(i)] % 2 == 1) f.on_a[static_cast<size_t>(i)] *= Rational(-1);
    for (int i = 0; i < b.dimB; ++i)
        if (g.secB[static_cast<size_t>(i)] % 2 == 1) f.on_b[static_cast<size_t>(i)] *= Rational(-1);
    return f;
}

EndoReport check_algebroid_endomorphism(const VertexAlgebroid& b, const GradedEndomorphism& f, int max_order) {
    EndoReport out;
    CheckReport& rep = out.checks;
    rep.subject = "algebroid-endomorphism";
    const int nA = b.A.dim, nB = b.dimB;
    if (static_cast<int>(f.on_a.size()) != nA || static_cast<int>(f.on_b.size()) != nB)
        throw input_error("endomorphism shape mismatch");
    auto ea = [&](int i) { return unit_vector(nA, i); };
    auto eb = [&](int i) { return unit_vector(nB, i); };
    auto fa = [&](const SparseVector& x) { return apply_map(f.on_a, x); };
    auto fb = [&](const SparseVector& x) { return apply_map(f.on_b, x); };

    if (nA > 0) {
        SparseVector l = fa(b.A.unit_vec());
        ++rep.checked;
        if (l != b.A.unit_vec()) rep.fail("f-unit", {b.A.unit}, l.str(), b.A.unit_vec().str());
    }
    for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j) {
            SparseVector l = fa(b.A.mul_vv(ea(i), ea(j)));
            SparseVector r = b.A.mul_vv(fa(ea(i)), fa(ea(j)));
            ++rep.checked;
            if (l != r) rep.fail("f-algebra-hom", {i, j}, l.str(), r.str());
        }
    for (int u = 0; u < nB; ++u)
        for (int v = 0; v < nB; ++v) {
            SparseVector l = fb(b.brk(eb(u), eb(v)));
            SparseVector r = b.brk(fb(eb(u)), fb(eb(v)));
            ++rep.checked;
            if (l != r) rep.fail("f-leibniz-hom", {u, v}, l.str(), r.str());
            SparseVector l2 = fa(b.pair(eb(u), eb(v)));
            SparseVector r2 = b.pair(fb(eb(u)), fb(eb(v)));
            ++rep.checked;
            if (l2 != r2) rep.fail("f-pairing", {u, v}, l2.str(), r2.str());
        }
    for (int i = 0; i < nA; ++i)
        for (int v = 0; v < nB; ++v) {
            SparseVector l = fb(b.act(ea(i), eb(v)));
            SparseVector r = b.act(fa(ea(i)), fb(eb(v)));
            ++rep.checked;
            if (l != r) rep.fail("f-action", {i, v}, l.str(), r.str());
        }
    for (int i = 0; i < nA; ++i) {
        SparseVector l = fb(apply_map(b.partial, ea(i)));
        SparseVector r = apply_map(b.partial, fa(ea(i)));
        ++rep.checked;
        if (l != r) rep.fail("f-partial", {i}, l.str(), r.str());
    }
    for (int v = 0; v < nB; ++v)
        for (int i = 0; i < nA; ++i) {
            SparseVector l = fa(b.anch(eb(v), ea(i)));
            SparseVector r = b.anch(fb(eb(v)), fa(ea(i)));
            ++rep.checked;
            if (l != r) rep.fail("f-anchor", {v, i}, l.str(), r.str());
        }

    // Bijectivity: rank of the block-diagonal matrix.
    std::vector<SparseVector> rows;
    for (int i = 0; i < nA; ++i) rows.push_back(f.on_a[static_cast<size_t>(i)]);
    Subspace ra = span(nA, rows);
    rows.clear();
    for (int i = 0; i < nB; ++i) rows.push_back(f.on_b[static_cast<size_t>(i)]);
    Subspace rb = span(nB, rows);
    out.bijective = (ra.dim() == nA && rb.dim() == nB);

    if (out.bijective) {
        GradedEndomorphism p = f;
        for (int k = 1; k <= max_order; ++k) {
            if (linmap_equal(p.on_a, identity_map(nA)) && linmap_equal(p.on_b, identity_map(nB))) {
                out.order = k;
                break;
            }
            p = compose(f, p);
        }
        if (out.order < 0)
            rep.notes.push_back("order not found <= " + std::to_string(max_order));
    }
    return out;
}

FixedSubalgebroid fixed_subalgebroid(const VertexAlgebroid& b, const SectorGrading& g) {
    FixedSubalgebroid out;
    for (int i = 0; i < b.A.dim; ++i)
        if (g.secA[static_cast<size_t>(i)] % g.T == 0) out.idxA0.push_back(i);
    for (int i = 0; i < b.dimB; ++i)
        if (g.secB[static_cast<size_t>(i)] % g.T == 0) out.idxB0.push_back(i);

    const int n0 = static_cast<int>(out.idxA0.size());
    const int m0 = static_cast<int>(out.idxB0.size());
    std::vector<int> posA(static_cast<size_t>(b.A.dim), -1), posB(static_cast<size_t>(b.dimB), -1);
    for (int i = 0; i < n0; ++i) posA[static_cast<size_t>(out.idxA0[static_cast<size_t>(i)])] = i;
    for (int i = 0; i < m0; ++i) posB[static_cast<size_t>(out.idxB0[static_cast<size_t>(i)])] = i;

    auto restrictA = [&](const SparseVector& v) {
        SparseVector w(n0);
        for (const auto& [k, c] : v.entries()) {
            if (posA[static_cast<size_t>(k)] < 0) throw consistency_error("sector-0 restriction hit a graded entry");
            w.set(posA[static_cast<size_t>(k)], c);
        }
        return w;
    };
    auto restrictB = [&](const SparseVector& v) {
        SparseVector w(m0);
        for (const auto& [k, c] : v.entries()) {
            if (posB[static_cast<size_t>(k)] < 0) throw consistency_error("sector-0 restriction hit a graded entry");
            w.set(posB[static_cast<size_t>(k)], c);
        }
        return w;
    };

    out.A0.dim = n0;
    out.A0.unit = b.A.dim > 0 ? posA[static_cast<size_t>(b.A.unit)] : -1;
    out.A0.mul = make_table(n0, n0, n0);
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n0; ++j)
            out.A0.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = restrictA(
                b.A.mul[static_cast<size_t>(out.idxA0[static_cast<size_t>(i)])][static_cast<size_t>(out.idxA0[static_cast<size_t>(j)])]);

    out.B0 = make_algebroid(out.A0, m0);
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < m0; ++j)
            out.B0.action[static_cast<size_t>(i)][static_cast<size_t>(j)] = restrictB(
                b.action[static_cast<size_t>(out.idxA0[static_cast<size_t>(i)])][static_cast<size_t>(out.idxB0[static_cast<size_t>(j)])]);
    for (int i = 0; i < m0; ++i)
        for (int j = 0; j < m0; ++j) {
            out.B0.bracket[static_cast<size_t>(i)][static_cast<size_t>(j)] = restrictB(
                b.bracket[static_cast<size_t>(out.idxB0[static_cast<size_t>(i)])][static_cast<size_t>(out.idxB0[static_cast<size_t>(j)])]);
            out.B0.pairing[static_cast<size_t>(i)][static_cast<size_t>(j)] = restrictA(
                b.pairing[static_cast<size_t>(out.idxB0[static_cast<size_t>(i)])][static_cast<size_t>(out.idxB0[static_cast<size_t>(j)])]);
        }
    for (int i = 0; i < m0; ++i)
        for (int j = 0; j < n0; ++j)
            out.B0.anchor[static_cast<size_t>(i)][static_cast<size_t>(j)] = restrictA(
                b.anchor[static_cast<size_t>(out.idxB0[static_cast<size_t>(i)])][static_cast<size_t>(out.idxA0[static_cast<size_t>(j)])]);
    for (int i = 0; i < n0; ++i)
        out.B0.partial[static_cast<size_t>(i)] = restrictB(b.partial[static_cast<size_t>(out.idxA0[static_cast<size_t>(i)])]);
    return out;
}

OverlapIdeal overlap_ideal(const CommAlgebra& a, const SectorGrading& g) {
    OverlapIdeal out;
    const int nA = a.dim;
    const int T = g.T;
    for (int i = 0; i < nA; ++i)
        if (g.secA[static_cast<size_t>(i)] % T == 0) out.idxA0.push_back(i);

    out.ideal = Subspace(nA);
    for (int i = 0; i < nA; ++i) {
        int r = g.secA[static_cast<size_t>(i)] % T;
        if (r == 0) continue;
        for (int j = 0; j < nA; ++j) {
            if ((r + g.secA[static_cast<size_t>(j)]) % T != 0) continue;
            out.ideal.insert(a.mul_vv(unit_vector(nA, i), unit_vector(nA, j)));
        }
    }

    out.ideal_check.subject = "overlap-ideal";
    for (int k : out.idxA0)
        for (const auto& row : out.ideal.rows()) {
            SparseVector l = a.mul_vv(unit_vector(nA, k), row);
            ++out.ideal_check.checked;
            if (!out.ideal.contains(l)) out.ideal_check.fail("ideal-absorption", {k}, l.str(), "in I");
        }

    // Quotient basis: sector-0 indices that are not pivots of I.
    std::vector<bool> pivot(static_cast<size_t>(nA), false);
    for (int p : out.ideal.pivots()) pivot[static_cast<size_t>(p)] = true;
    for (int k : out.idxA0)
        if (!pivot[static_cast<size_t>(k)]) out.complement.push_back(k);

    const int nQ = static_cast<int>(out.complement.size());
    std::vector<int> posQ(static_cast<size_t>(nA), -1);
    for (int i = 0; i < nQ; ++i) posQ[static_cast<size_t>(out.complement[static_cast<size_t>(i)])] = i;
    auto project = [&](const SparseVector& v) {
        SparseVector red = out.ideal.reduce(v);
        SparseVector w(nQ);
        for (const auto& [k, c] : red.entries()) {
            if (posQ[static_cast<size_t>(k)] < 0) throw consistency_error("overlap quotient left sector 0");
            w.set(posQ[static_cast<size_t>(k)], c);
        }
        return w;
    };

    out.quotient.dim = nQ;
    out.quotient.unit = -1;
    if (nA > 0) {
        SparseVector eq = project(a.unit_vec());
        // the unit class must be a basis vector for a structure-constant table
        if (eq.entries().size() == 1 && eq.entries().begin()->second == Rational(1))
            out.quotient.unit = eq.entries().begin()->first;
        else if (!eq.zero())
            throw consistency_error("overlap quotient unit is not a basis class");
    }
    out.quotient.mul = make_table(nQ, nQ, nQ);
    for (int i = 0; i < nQ; ++i)
        for (int j = 0; j < nQ; ++j)
            out.quotient.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = project(a.mul_vv(
                unit_vector(nA, out.complement[static_cast<size_t>(i)]), unit_vector(nA, out.complement[static_cast<size_t>(j)])));
    return out;
}

} // namespace vab
