#include "vab/twisted.hpp"

#include <deque>

namespace vab {

TwistedFiber make_fiber(const FixedSubalgebroid& fx, const QuotientLieAlgebroid& q, const LieAlgebroidModule& u,
                        int dimA, int dimB) {
    TwistedFiber f;
    f.U = u;
    f.tables.dim = u.dimW;
    f.tables.vacuum = false;
    f.tables.a_act = make_table(dimA, u.dimW, u.dimW);
    f.tables.b_act = make_table(dimB, u.dimW, u.dimW);
    for (size_t i0 = 0; i0 < fx.idxA0.size(); ++i0) {
        int ia = fx.idxA0[i0];
        for (int j = 0; j < u.dimW; ++j)
            f.tables.a_act[static_cast<size_t>(ia)][static_cast<size_t>(j)] =
                u.a_act[i0][static_cast<size_t>(j)];
    }
    for (size_t j0 = 0; j0 < fx.idxB0.size(); ++j0) {
        int ib = fx.idxB0[j0];
        SparseVector gvec = q.projection[j0]; // class of the B^0 basis vector
        for (int j = 0; j < u.dimW; ++j)
            f.tables.b_act[static_cast<size_t>(ib)][static_cast<size_t>(j)] =
                bilinear(u.g_act, gvec, unit_vector(u.dimW, j));
    }
    return f;
}

FiberBuild fiber_from_spec(const FixedSubalgebroid& fx, const QuotientLieAlgebroid& q, const SectorGrading& g,
                           const FiberSpec& spec) {
    FiberBuild out;
    out.checks.subject = "fiber-spec";
    const int nU = spec.dim;
    const int nA = static_cast<int>(g.secA.size());
    const int nB = static_cast<int>(g.secB.size());
    for (int i = 0; i < nA; ++i)
        if (g.secA[static_cast<size_t>(i)] != 0)
            for (int j = 0; j < nU; ++j) {
                ++out.checks.checked;
                if (!spec.a_act[static_cast<size_t>(i)][static_cast<size_t>(j)].zero())
                    out.checks.fail("fiber-sector-zero", {i, j},
                                    spec.a_act[static_cast<size_t>(i)][static_cast<size_t>(j)].str(), "0");
            }
    for (int i = 0; i < nB; ++i)
        if (g.secB[static_cast<size_t>(i)] != 0)
            for (int j = 0; j < nU; ++j) {
                ++out.checks.checked;
                if (!spec.b_act[static_cast<size_t>(i)][static_cast<size_t>(j)].zero())
                    out.checks.fail("fiber-sector-zero", {i, j},
                                    spec.b_act[static_cast<size_t>(i)][static_cast<size_t>(j)].str(), "0");
            }

    out.U.dimW = nU;
    out.U.a_act = make_table(static_cast<int>(fx.idxA0.size()), nU, nU);
    out.U.g_act = make_table(q.g.dimG, nU, nU);
    for (size_t i0 = 0; i0 < fx.idxA0.size(); ++i0)
        for (int j = 0; j < nU; ++j)
            out.U.a_act[i0][static_cast<size_t>(j)] =
                spec.a_act[static_cast<size_t>(fx.idxA0[i0])][static_cast<size_t>(j)];
    for (int t = 0; t < q.g.dimG; ++t) {
        int ib0 = q.complement[static_cast<size_t>(t)];
        int ib = fx.idxB0[static_cast<size_t>(ib0)];
        for (int j = 0; j < nU; ++j)
            out.U.g_act[static_cast<size_t>(t)][static_cast<size_t>(j)] =
                spec.b_act[static_cast<size_t>(ib)][static_cast<size_t>(j)];
    }

    // well-definedness: A^0 dA^0 acts as zero through the raw B-action
    for (const auto& row : q.a_dA.rows()) {
        for (int j = 0; j < nU; ++j) {
            SparseVector img(nU);
            for (const auto& [b0, c] : row.entries())
                img.axpy(c, spec.b_act[static_cast<size_t>(fx.idxB0[static_cast<size_t>(b0)])][static_cast<size_t>(j)]);
            ++out.checks.checked;
            if (!img.zero()) out.checks.fail("fiber-ada-kernel", {j}, img.str(), "0");
        }
    }
    // the quotient-basis action must agree with the raw action on every B^0
    // basis vector (the spec is a function of the class, not just the basis)
    for (size_t j0 = 0; j0 < fx.idxB0.size(); ++j0) {
        SparseVector cls = q.projection[j0];
        for (int j = 0; j < nU; ++j) {
            SparseVector via_quot = bilinear(out.U.g_act, cls, unit_vector(nU, j));
            const SparseVector& raw = spec.b_act[static_cast<size_t>(fx.idxB0[j0])][static_cast<size_t>(j)];
            ++out.checks.checked;
            if (via_quot != raw) out.checks.fail("fiber-class-consistency", {static_cast<int>(j0), j}, raw.str(), via_quot.str());
        }
    }
    return out;
}

CheckReport check_fiber_conditions(const VertexAlgebroid& b, const SectorGrading& g, const TwistedFiber& f) {
    CheckReport rep;
    rep.subject = "fiber-conditions";
    const int T = g.T;
    const int nA = b.A.dim, nB = b.dimB, nU = f.tables.dim;
    auto act_a = [&](const SparseVector& avec, int u) {
        SparseVector out(nU);
        for (const auto& [i, c] : avec.entries())
            out.axpy(c, f.tables.a_act[static_cast<size_t>(i)][static_cast<size_t>(u)]);
        return out;
    };
    auto act_b = [&](const SparseVector& bvec, int u) {
        SparseVector out(nU);
        for (const auto& [i, c] : bvec.entries())
            out.axpy(c, f.tables.b_act[static_cast<size_t>(i)][static_cast<size_t>(u)]);
        return out;
    };
    for (int i = 0; i < nA; ++i) {
        int r = g.secA[static_cast<size_t>(i)];
        if (r == 0) continue;
        for (int j = 0; j < nA; ++j) {
            if ((r + g.secA[static_cast<size_t>(j)]) % T != 0) continue;
            SparseVector prod = b.A.mul_vv(unit_vector(nA, i), unit_vector(nA, j));
            for (int u = 0; u < nU; ++u) {
                SparseVector l = act_a(prod, u);
                ++rep.checked;
                if (!l.zero()) rep.fail("fiber-aa", {i, j, u}, l.str(), "0");
            }
        }
        for (int j = 0; j < nB; ++j) {
            if ((r + g.secB[static_cast<size_t>(j)]) % T != 0) continue;
            SparseVector ab = b.act(unit_vector(nA, i), unit_vector(nB, j));
            // a_0 b = -pi(b)(a)
            SparseVector a0b = b.anch(unit_vector(nB, j), unit_vector(nA, i));
            a0b *= Rational(-1);
            Rational coeff = Rational(1) - Rational(r, T);
            for (int u = 0; u < nU; ++u) {
                SparseVector l = act_b(ab, u);
                SparseVector r2 = act_a(a0b, u);
                r2 *= coeff;
                ++rep.checked;
                if (l != r2) rep.fail("fiber-ab", {i, j, u}, l.str(), r2.str());
            }
        }
    }
    return rep;
}

InducedModule induce_twisted(std::shared_ptr<const LoopLie> L, const TwistedFiber& f) {
    return InducedModule::induced_twisted(std::move(L), f.tables);
}

RelationsW relations_W(const FieldEngine& vl_to_mg, const std::vector<State>& e_gens) {
    RelationsW out;
    const InducedModule& M = vl_to_mg.module();
    const int T = M.T();
    out.spans.reserve(static_cast<size_t>(M.grid() + 1));
    for (int k = 0; k <= M.grid(); ++k) out.spans.emplace_back(M.mono_count(k));
    long skipped = 0;
    for (const State& s : e_gens) {
        int rs = vl_to_mg.sector_of_state(s);
        for (int u = 0; u < M.fiber().dim; ++u) {
            State w = M.fiber_state(u);
            for (int tk = 0; tk <= M.grid(); ++tk) {
                Rational q = Rational(s.k) - Rational(1) - Rational(tk, T);
                if (!q.congruent_mod_1(Rational(rs, T))) continue;
                try {
                    State img = vl_to_mg.field(s, q, w);
                    if (!img.zero()) out.spans[static_cast<size_t>(img.k)].insert(img.v);
                } catch (const window_error&) {
                    ++skipped;
                }
            }
        }
    }
    out.degree0.subject = "relations-degree-0";
    ++out.degree0.checked;
    if (out.spans[0].dim() != 0)
        out.degree0.fail("w-degree-0", {}, "dim " + std::to_string(out.spans[0].dim()) + ", first row " +
                                               out.spans[0].rows().front().str(),
                         "0");
    if (skipped > 0) out.degree0.notes.push_back(std::to_string(skipped) + " coefficients skipped (window)");
    return out;
}

MBResult build_MB(const InducedModule& mg, const std::vector<Subspace>& w_spans, bool fiber_passed) {
    MBResult out{mg, {}};
    out.report.subject = "M_B";
    std::vector<Subspace> closed = close_under_actions(mg, w_spans);
    out.mb.install_relations(closed, Flavor::QuotientTwisted);
    CheckReport inv = verify_invariance(out.mb, closed);
    out.report.merge(inv);
    if (!inv.pass())
        throw consistency_error("W_g(U)-closure is not action-invariant: " + inv.violations.front().str());
    int defect = mg.dim(0) - out.mb.dim(0);
    ++out.report.checked;
    if (defect != 0) {
        if (fiber_passed)
            throw consistency_error("M_B(U)(0) lost dimension " + std::to_string(defect) +
                                    " although the fiber conditions hold");
        out.report.fail("degree-0-slice", {0}, "dim " + std::to_string(out.mb.dim(0)),
                        "dim U = " + std::to_string(mg.dim(0)));
        out.report.notes.push_back("fiber conditions failed; degree-0 defect reported, build continued");
    }
    return out;
}

RadicalResult radical_J(const InducedModule& m) {
    RadicalResult out{{}, m, {}};
    out.verification.subject = "radical";
    const int G = m.grid();

    std::vector<Mode> lowering;
    for (const Mode& x : m.L().basis())
        if (x.degree().sign() < 0) lowering.push_back(x);

    auto compute = [&](const InducedModule& mod) {
        std::vector<Subspace> J;
        J.reserve(static_cast<size_t>(G + 1));
        for (int k = 0; k <= G; ++k) {
            const int dk = mod.dim(k);
            if (k == 0) {
                J.emplace_back(dk);
                continue;
            }
            std::vector<SparseVector> rows;
            for (const Mode& x : lowering) {
                int kt = mod.target_slice(x, k);
                if (kt < 0 || kt > G) continue;
                // functional rows of w -> (x w mod J(kt))
                std::vector<SparseVector> imgs;
                for (int j = 0; j < dk; ++j) {
                    SparseVector qv(dk);
                    qv.set(j, Rational(1));
                    State img = mod.act(x, mod.state_from_quotient(k, qv));
                    imgs.push_back(J[static_cast<size_t>(kt)].reduce(mod.quotient_coords(img)));
                }
                std::map<int, SparseVector> fun;
                for (int j = 0; j < dk; ++j)
                    for (const auto& [coord, c] : imgs[static_cast<size_t>(j)].entries()) {
                        auto it = fun.find(coord);
                        if (it == fun.end()) it = fun.emplace(coord, SparseVector(dk)).first;
                        it->second.set(j, c);
                    }
                for (auto& [coord, row] : fun) {
                    (void)coord;
                    rows.push_back(std::move(row));
                }
            }
            J.push_back(kernel(dk, rows));
        }
        return J;
    };

    out.j_slices = compute(m);

    // L_g: add the lifted radical to the relation spans
    std::vector<Subspace> rels;
    rels.reserve(static_cast<size_t>(G + 1));
    for (int k = 0; k <= G; ++k) {
        Subspace r = m.relations(k);
        for (const auto& row : out.j_slices[static_cast<size_t>(k)].rows())
            r.insert(m.state_from_quotient(k, row).v);
        rels.push_back(std::move(r));
    }
    out.lg.install_relations(rels, Flavor::SimpleQuotient);

    std::vector<Subspace> again = compute(out.lg);
    for (int k = 0; k <= G; ++k) {
        ++out.verification.checked;
        if (again[static_cast<size_t>(k)].dim() != 0)
            out.verification.fail("radical-of-quotient", {k},
                                  "dim " + std::to_string(again[static_cast<size_t>(k)].dim()), "0");
    }
    return out;
}

std::vector<Subspace> radical_brute(const InducedModule& m) {
    const int G = m.grid();
    std::vector<Mode> nonraising;
    for (const Mode& x : m.L().basis())
        if (x.degree().sign() <= 0) nonraising.push_back(x);

    std::vector<Subspace> out;
    out.reserve(static_cast<size_t>(G + 1));
    for (int k = 0; k <= G; ++k) {
        const int dk = m.dim(k);
        // close the span of composite maps M(k) -> M(d) under single modes of
        // degree <= 0, then cut by every coordinate of every map into M(0)
        struct Item {
            int deg;
            LinMap map; // dk columns: image of each quotient basis vector
        };
        std::deque<Item> work;
        std::vector<Subspace> seen(static_cast<size_t>(G + 1), Subspace(0));
        for (int d = 0; d <= G; ++d) seen[static_cast<size_t>(d)] = Subspace(dk * std::max(1, m.dim(d)));
        auto flatten = [&](const LinMap& f, int d) {
            SparseVector v(dk * std::max(1, m.dim(d)));
            for (int j = 0; j < dk; ++j)
                for (const auto& [c, val] : f[static_cast<size_t>(j)].entries())
                    v.set(j * std::max(1, m.dim(d)) + c, val);
            return v;
        };
        LinMap id = identity_map(dk);
        seen[static_cast<size_t>(k)].insert(flatten(id, k));
        work.push_back({k, id});
        std::vector<SparseVector> rows;
        while (!work.empty()) {
            Item it = std::move(work.front());
            work.pop_front();
            if (it.deg == 0) {
                // one functional row per target coordinate
                std::map<int, SparseVector> fun;
                for (int j = 0; j < dk; ++j)
                    for (const auto& [coord, c] : it.map[static_cast<size_t>(j)].entries()) {
                        auto fit = fun.find(coord);
                        if (fit == fun.end()) fit = fun.emplace(coord, SparseVector(dk)).first;
                        fit->second.set(j, c);
                    }
                for (auto& [coord, row] : fun) {
                    (void)coord;
                    rows.push_back(std::move(row));
                }
            }
            for (const Mode& x : nonraising) {
                int kt = m.target_slice(x, it.deg);
                if (kt < 0 || kt > G) continue;
                LinMap nf = make_linmap(dk, m.dim(kt));
                bool nonzero = false;
                for (int j = 0; j < dk; ++j) {
                    State img = m.act(x, m.state_from_quotient(it.deg, it.map[static_cast<size_t>(j)]));
                    nf[static_cast<size_t>(j)] = m.quotient_coords(img);
                    if (!nf[static_cast<size_t>(j)].zero()) nonzero = true;
                }
                if (!nonzero) continue;
                if (!seen[static_cast<size_t>(kt)].insert(flatten(nf, kt))) continue;
                work.push_back({kt, std::move(nf)});
            }
        }
        out.push_back(kernel(dk, rows));
    }
    return out;
}

std::vector<Subspace> submodule_closure(const InducedModule& m, const State& seed) {
    std::vector<Subspace> spans;
    spans.reserve(static_cast<size_t>(m.grid() + 1));
    for (int k = 0; k <= m.grid(); ++k) spans.push_back(m.relations(k));
    spans[static_cast<size_t>(seed.k)].insert(seed.v);
    return close_under_actions(m, std::move(spans));
}

CheckReport is_simple_graded(const InducedModule& m) {
    CheckReport rep;
    rep.subject = "graded-simplicity";
    long total = 0;
    for (int k = 0; k <= m.grid(); ++k) total += m.dim(k);
    if (total == 0) {
        rep.fail("simplicity-degenerate", {}, "zero module", "nonzero module");
        rep.notes.push_back("degenerate: the truncation is zero");
        return rep;
    }
    for (int k = 0; k <= m.grid(); ++k)
        for (int pos = 0; pos < m.dim(k); ++pos) {
            SparseVector qv(m.dim(k));
            qv.set(pos, Rational(1));
            State w = m.state_from_quotient(k, qv);
            std::vector<Subspace> cl = submodule_closure(m, w);
            ++rep.checked;
            for (int d = 0; d <= m.grid(); ++d) {
                int gen_dim = cl[static_cast<size_t>(d)].dim() - m.relations(d).dim();
                if (gen_dim != m.dim(d)) {
                    rep.fail("simplicity-witness", {k, pos, d},
                             "generated dim " + std::to_string(gen_dim) + " at slice " + std::to_string(d),
                             std::to_string(m.dim(d)));
                    break;
                }
            }
        }
    rep.notes.push_back("verdict is cutoff-relative (window " + std::to_string(m.window()) + ")");
    return rep;
}

FiberRestriction fiber_restriction(const InducedModule& m, const VertexAlgebroid& b, const SectorGrading& g,
                                   const FixedSubalgebroid& fx, const QuotientLieAlgebroid& q) {
    FiberRestriction out;
    const int dimW = m.dim(0);
    const int nG = q.g.dimG;
    out.U.dimW = dimW;
    out.U.a_act = make_table(static_cast<int>(fx.idxA0.size()), dimW, dimW);
    out.U.g_act = make_table(nG, dimW, dimW);

    for (size_t i0 = 0; i0 < fx.idxA0.size(); ++i0) {
        Mode a{false, fx.idxA0[i0], Rational(-1)};
        for (int j = 0; j < dimW; ++j) {
            SparseVector qv(dimW);
            qv.set(j, Rational(1));
            State img = m.act(a, m.state_from_quotient(0, qv));
            out.U.a_act[i0][static_cast<size_t>(j)] = m.quotient_coords(img);
        }
    }
    for (int t = 0; t < nG; ++t) {
        int ib = fx.idxB0[static_cast<size_t>(q.complement[static_cast<size_t>(t)])];
        ModeComb comb = m.L().reduce_gen(true, ib, Rational(0));
        for (int j = 0; j < dimW; ++j) {
            SparseVector qv(dimW);
            qv.set(j, Rational(1));
            State img = m.act_comb(comb, m.state_from_quotient(0, qv));
            out.U.g_act[static_cast<size_t>(t)][static_cast<size_t>(j)] =
                img.zero() ? SparseVector(dimW) : m.quotient_coords(img);
        }
    }

    out.checks = check_lie_algebroid_module(q.g, out.U);
    TwistedFiber f = make_fiber(fx, q, out.U, b.A.dim, b.dimB);
    out.checks.merge(check_fiber_conditions(b, g, f));
    return out;
}

CheckReport compare_untwisted_reduction(const InducedModule& vb, const InducedModule& mb, int unit_index) {
    CheckReport rep;
    rep.subject = "untwisted-reduction";
    if (vb.T() != 1 || mb.T() != 1) {
        rep.fail("reduction-shape", {}, "T", "1");
        return rep;
    }
    if (vb.grid() != mb.grid()) {
        rep.fail("reduction-shape", {}, std::to_string(mb.grid()), std::to_string(vb.grid()));
        return rep;
    }
    const int G = vb.grid();

    // slice-wise intertwiner phi: V_B basis mono -> M_B(A) mono coordinates
    std::vector<LinMap> phi;
    for (int k = 0; k <= G; ++k) {
        ++rep.checked;
        if (vb.dim(k) != mb.dim(k)) {
            rep.fail("reduction-dims", {k}, std::to_string(vb.dim(k)), std::to_string(mb.dim(k)));
            return rep;
        }
        LinMap pk = make_linmap(vb.dim(k), mb.dim(k));
        for (int pos = 0; pos < vb.dim(k); ++pos) {
            const Pbw& mono = vb.monos(k)[static_cast<size_t>(vb.complement(k)[static_cast<size_t>(pos)])];
            Pbw target;
            int fiber = unit_index;
            int a_seen = 0;
            for (const Mode& x : mono.modes) {
                if (x.is_b) {
                    target.modes.push_back(x);
                } else {
                    ++a_seen;
                    fiber = x.gen;
                }
            }
            ++rep.checked;
            if (a_seen > 1) {
                rep.fail("reduction-basis-shape", {k, pos}, mono.str(), "b-word with at most one a(-1)");
                continue;
            }
            target.fiber = fiber;
            SparseVector img(mb.mono_count(k));
            img.set(mb.mono_index(k, target), Rational(1));
            pk[static_cast<size_t>(pos)] = mb.quotient_coords(State{k, mb.reduce(k, img)});
        }
        if (span(mb.dim(k), pk).dim() != vb.dim(k)) {
            rep.fail("reduction-bijective", {k}, "rank deficient", "bijective");
            return rep;
        }
        phi.push_back(std::move(pk));
    }

    // the intertwiner must commute with every in-window canonical mode action
    for (int k = 0; k <= G; ++k)
        for (int pos = 0; pos < vb.dim(k); ++pos) {
            SparseVector qv(vb.dim(k));
            qv.set(pos, Rational(1));
            State w = vb.state_from_quotient(k, qv);
            for (const Mode& x : vb.L().basis()) {
                int kt = vb.target_slice(x, k);
                if (kt < 0 || kt > G) continue;
                SparseVector lhs, rhs;
                try {
                    lhs = apply_map(phi[static_cast<size_t>(kt)], vb.quotient_coords(vb.act(x, w)));
                    rhs = mb.quotient_coords(
                        mb.act(x, mb.state_from_quotient(k, apply_map(phi[static_cast<size_t>(k)], qv))));
                } catch (const window_error&) {
                    continue;
                }
                ++rep.checked;
                if (lhs != rhs)
                    rep.fail("reduction-intertwiner", {k, pos}, x.str() + ": " + lhs.str(), rhs.str());
            }
        }
    return rep;
}

} // namespace vab
