// Acceptance suite: one criterion per section, one pass/fail line each, all
// tolerances pinned in code (everything is exact rational arithmetic, so the
// tolerance is literal equality). Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vab/io.hpp"
#include "vab/twisted.hpp"

using namespace vab;

namespace {

const std::string kFixtures = VAB_FIXTURE_DIR;
const std::string kCli = VAB_CLI_PATH;

int g_failures = 0;

void criterion(int number, const std::string& label, double budget_s, const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over the runtime budget");
    }
    std::ostringstream line;
    line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label;
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2fs, budget %.0fs)", secs, budget_s);
    line << buf;
    if (!detail.empty()) line << " -- " << detail;
    std::cout << line.str() << "\n";
    if (!ok) ++g_failures;
}

int run_cli(const std::string& args, std::string& out) {
    std::string cmd = kCli + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return -1;
    char buf[4096];
    out.clear();
    while (size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    return WEXITSTATUS(pclose(p));
}

InducedModule make_vb(const VertexAlgebroid& b, int window) {
    auto L = std::make_shared<const LoopLie>(tca_of_algebroid(b), trivial_grading(b.A.dim, b.dimB), window);
    return build_vb(InducedModule::vacuum_algebra(L, b.A.dim + 2), b);
}

LieAlgebroidModule line_fiber(const FixedSubalgebroid& fx, const QuotientLieAlgebroid& q0, int unit_global) {
    LieAlgebroidModule u;
    u.dimW = 1;
    u.a_act = make_table(static_cast<int>(fx.idxA0.size()), 1, 1);
    for (size_t i = 0; i < fx.idxA0.size(); ++i)
        if (fx.idxA0[i] == unit_global) u.a_act[i][0].set(0, Rational(1));
    u.g_act = make_table(q0.g.dimG, 1, 1);
    return u;
}

struct TwistedBuild {
    FixedSubalgebroid fx;
    QuotientLieAlgebroid q0;
    LieAlgebroidModule u;
    TwistedFiber tf;
    InducedModule vl;
    InducedModule mg;
    MBResult mb;
    bool fiber_passed;
};

TwistedBuild build_twisted(const VertexAlgebroid& b, const SectorGrading& g, const LieAlgebroidModule* fiber,
                           int window) {
    TwistedBuild t{fixed_subalgebroid(b, g), {}, {}, {}, InducedModule::vacuum_algebra(
        std::make_shared<const LoopLie>(tca_of_algebroid(b), trivial_grading(b.A.dim, b.dimB), 3), b.A.dim + 2),
                   InducedModule::vacuum_algebra(
                       std::make_shared<const LoopLie>(tca_of_algebroid(b), trivial_grading(b.A.dim, b.dimB), 1), 1),
                   MBResult{InducedModule::vacuum_algebra(
                                std::make_shared<const LoopLie>(tca_of_algebroid(b), trivial_grading(b.A.dim, b.dimB), 1), 1),
                            {}},
                   false};
    t.q0 = lie_algebroid_quotient(t.fx.B0);
    t.u = fiber ? *fiber : line_fiber(t.fx, t.q0, b.A.unit);
    t.tf = make_fiber(t.fx, t.q0, t.u, b.A.dim, b.dimB);
    t.fiber_passed = check_lie_algebroid_module(t.q0.g, t.u).pass() && check_fiber_conditions(b, g, t.tf).pass();
    auto Lt = std::make_shared<const LoopLie>(tca_of_algebroid(b), g, window);
    t.mg = induce_twisted(Lt, t.tf);
    FieldEngine vl2mg(&t.vl, &t.mg);
    RelationsW w = relations_W(vl2mg, ideal_generators(t.vl, b));
    t.mb = build_MB(t.mg, w.spans, t.fiber_passed);
    return t;
}

bool c1_axiom_suites(std::string& detail) {
    for (const char* file : {"heisenberg.json", "rank3_abelian.json", "dual_numbers.json"}) {
        std::string out;
        if (run_cli("check --input " + kFixtures + "/" + file, out) != 0) {
            detail = std::string(file) + " did not pass the checkers";
            return false;
        }
    }
    // library-level: the quotient Lie algebroids also pass
    for (const VertexAlgebroid& b : {fix::f1(), fix::f2(), fix::f3()})
        if (!check_lie_algebroid(lie_algebroid_quotient(b).g).pass()) {
            detail = "quotient Lie algebroid check failed";
            return false;
        }

    // one deliberately corrupted table per axiom family, each must fail with a witness
    long mutations = 0;
    auto expect_fail = [&](const CheckReport& r, const std::string& family) {
        ++mutations;
        if (r.pass()) {
            detail = "mutation for " + family + " was not caught";
            return false;
        }
        for (const auto& v : r.violations)
            if (v.family == family && !v.lhs.empty()) return true;
        detail = "mutation caught but no witness in family " + family;
        return false;
    };

    CommAlgebra badA = fix::dual_numbers();
    badA.mul[0][1] = SparseVector(2);
    badA.mul[0][1].set(1, Rational(2));
    if (!expect_fail(check_comm_algebra(badA), "unit-law")) return false;

    CommAlgebra badAssoc = fix::truncated_poly3();
    badAssoc.mul[1][2].set(0, Rational(1)); // x x^2 = e breaks associativity
    if (!expect_fail(check_comm_algebra(badAssoc), "associativity")) return false;

    Tca badC = tca_of_algebroid(fix::f1());
    badC.u0v[0][0].set(0, Rational(1));
    if (!expect_fail(check_tca(badC), "commutativity-u0v")) return false;

    Tca badC2 = make_tca(1, 2);
    badC2.u1v[0][1].set(0, Rational(1));
    badC2.u1v[1][0].set(0, Rational(2));
    if (!expect_fail(check_tca(badC2), "commutativity-u1v")) return false;

    VertexAlgebroid badB = fix::f1();
    badB.bracket[0][0].set(0, Rational(1));
    if (!expect_fail(check_vertex_algebroid(badB), "d3-bracket-symmetrization")) return false;

    VertexAlgebroid badB2 = fix::f2();
    badB2.pairing[0][1].set(0, Rational(1)); // asymmetric pairing
    if (!expect_fail(check_vertex_algebroid(badB2), "pairing-symmetric")) return false;

    SectorGrading badG = fix::f1_t2();
    badG.secA[0] = 1;
    if (!expect_fail(check_sector_grading(fix::f1(), badG), "unit-sector")) return false;

    LieAlgebroid badL;
    badL.A = fix::line_algebra();
    badL.dimG = 1;
    badL.bracket = make_table(1, 1, 1);
    badL.bracket[0][0].set(0, Rational(1));
    badL.a_action = make_table(1, 1, 1);
    badL.a_action[0][0].set(0, Rational(1));
    badL.anchor.assign(1, make_linmap(1, 1));
    if (!expect_fail(check_lie_algebroid(badL), "antisymmetry")) return false;

    detail = "3 fixtures clean, " + std::to_string(mutations) + " mutations caught with witnesses";
    return true;
}

bool c2_untwisted_dims(std::string& detail) {
    std::string out;
    if (run_cli("build --input " + kFixtures + "/heisenberg.json --max-degree 5", out) != 0) return false;
    if (out.find("V_B dims (degree 0..5): 1 1 2 3 5 7") == std::string::npos) {
        detail = "heisenberg dims wrong";
        return false;
    }
    std::vector<long> parts;
    for (long d = 1; d <= 5; ++d) parts.push_back(d);
    std::ostringstream want;
    for (long n = 0; n <= 5; ++n) want << (n ? " " : "") << oracle::count_multisets(parts, n);
    if (out.find(want.str()) == std::string::npos) {
        detail = "oracle mismatch for heisenberg";
        return false;
    }

    if (run_cli("build --input " + kFixtures + "/rank3_abelian.json --max-degree 3", out) != 0) return false;
    auto ora = oracle::colored_partition_dims(3, 3);
    std::ostringstream want2;
    for (size_t i = 0; i < ora.size(); ++i) want2 << (i ? " " : "") << ora[i];
    if (out.find("V_B dims (degree 0..3): " + want2.str()) == std::string::npos ||
        want2.str() != "1 3 9 22") {
        detail = "oracle mismatch for the rank-3 fixture";
        return false;
    }

    if (run_cli("build --input " + kFixtures + "/dual_numbers.json --max-degree 2", out) != 0) return false;
    if (out.find("V_B dims (degree 0..2): 2 0 0") == std::string::npos) {
        detail = "dual-number dims wrong";
        return false;
    }
    detail = "1 1 2 3 5 7 / 1 3 9 22 / 2 0 0, all equal to the enumerator";
    return true;
}

bool c3_twisted_dims(std::string& detail) {
    std::string out;
    if (run_cli("twist --input " + kFixtures + "/heisenberg.json --max-degree 3", out) != 0) {
        detail = "twist run failed";
        return false;
    }
    // degrees <= 5/2 are the first six slices of the D = 3 run
    auto ora = oracle::half_odd_partition_dims(1, 6);
    std::ostringstream want;
    for (size_t k = 0; k < ora.size(); ++k) want << (k ? " " : "") << ora[k];
    if (out.find("M_B dims: " + want.str()) == std::string::npos) {
        detail = "M_B dims disagree with the half-odd partition oracle";
        return false;
    }
    if (ora[0] != 1 || ora[1] != 1 || ora[2] != 1 || ora[3] != 2 || ora[4] != 2 || ora[5] != 3) {
        detail = "oracle itself is off";
        return false;
    }
    if (out.find("J dims: 0 0 0 0 0 0 0") == std::string::npos) {
        detail = "J(U) not zero";
        return false;
    }
    if (out.find("graded-simplicity(L_g): pass") == std::string::npos) {
        detail = "simplicity verdict missing";
        return false;
    }
    detail = "M_B dims 1 1 1 2 2 3 (and 4 at 3), J = 0, simple up to cutoff";
    return true;
}

bool c4_identity_suites(std::string& detail) {
    // windows large enough that the +-2 offset grids against w of degree <= 3/2
    // evaluate with no skipped points
    VertexAlgebroid b = fix::f1();
    InducedModule vb = make_vb(b, 10);
    FieldEngine self(&vb, &vb);
    long checked = 0;

    auto sweep = [&](const FieldEngine& mod, const char* tag) {
        for (int gu = 0; gu < 2; ++gu)
            for (int gv = 0; gv < 2; ++gv) {
                State u = vb.generator_state(gu == 1, 0);
                State v = vb.generator_state(gv == 1, 0);
                CheckReport r = verify_jacobi_grid(self, mod, u, v, 2, Rational(3, 2));
                checked += r.checked;
                if (!r.pass()) {
                    detail = std::string(tag) + ": " + r.violations.front().str();
                    return false;
                }
                for (const auto& n : r.notes)
                    if (n.find("skipped") != std::string::npos) {
                        detail = std::string(tag) + " grid not exhaustive: " + n;
                        return false;
                    }
            }
        return true;
    };

    // T = 1: the module is V_B itself
    if (!sweep(self, "untwisted")) return false;

    // T = 2 twisted module
    TwistedBuild t = build_twisted(b, fix::f1_t2(), nullptr, 11);
    if (!t.fiber_passed) {
        detail = "fiber rejected";
        return false;
    }
    FieldEngine tomod(&vb, &t.mb.mb);
    if (!sweep(tomod, "twisted")) return false;

    CheckReport ct = verify_commutator_transfer(tomod, Rational(3, 2));
    checked += ct.checked;
    if (!ct.pass()) {
        detail = "commutator transfer: " + ct.violations.front().str();
        return false;
    }
    CheckReport ct1 = verify_commutator_transfer(FieldEngine(&vb, &vb), Rational(3, 2));
    checked += ct1.checked;
    if (!ct1.pass()) {
        detail = "untwisted commutator transfer failed";
        return false;
    }

    for (int T : {1, 2}) {
        LoopLie L(tca_of_algebroid(b), T == 1 ? trivial_grading(1, 1) : fix::f1_t2(), 4);
        CheckReport loc = L.verify_locality();
        checked += loc.checked;
        if (!loc.pass()) {
            detail = "locality table check failed";
            return false;
        }
    }
    detail = std::to_string(checked) + " identities, zero residuals, exact arithmetic";
    return true;
}

bool c5_automorphism(std::string& detail) {
    VertexAlgebroid b = fix::f1();
    InducedModule vb = make_vb(b, 8);
    FieldEngine self(&vb, &vb);
    GradedEndomorphism flip = diagonal_endomorphism(b, fix::f1_t2());
    EndoReport er = check_algebroid_endomorphism(b, flip);
    if (!er.checks.pass() || er.order != 2) {
        detail = "beta -> -beta is not an order-2 automorphism?";
        return false;
    }
    ExtendedAutomorphism fe = extend_automorphism(vb, flip);
    if (!fe.descent.pass()) {
        detail = "extension not well defined on the quotient";
        return false;
    }
    CheckReport fun = verify_functoriality(self, fe, Rational(3), Rational(3));
    if (!fun.pass()) {
        detail = "g(Y(u,x)v) = Y(gu,x)gv failed: " + fun.violations.front().str();
        return false;
    }
    for (const auto& n : fun.notes)
        if (n.find("skipped") != std::string::npos) {
            detail = "functoriality sweep not exhaustive: " + n;
            return false;
        }

    // restriction to slices 0 and 1 equals the input
    LinMap id0 = slice0_identification(vb), id1 = slice1_identification(vb);
    for (int i = 0; i < b.A.dim; ++i)
        if (apply_map(fe.slice_maps[0], id0[static_cast<size_t>(i)]) != apply_map(id0, flip.on_a[static_cast<size_t>(i)])) {
            detail = "restriction to slice 0 differs";
            return false;
        }
    for (int i = 0; i < b.dimB; ++i)
        if (apply_map(fe.slice_maps[1], id1[static_cast<size_t>(i)]) != apply_map(id1, flip.on_b[static_cast<size_t>(i)])) {
            detail = "restriction to slice 1 differs";
            return false;
        }

    // extension of the composition = composition of the extensions
    ExtendedAutomorphism sq = extend_automorphism(vb, compose(flip, flip));
    for (int k = 0; k <= vb.grid(); ++k)
        if (!linmap_equal(sq.slice_maps[static_cast<size_t>(k)],
                          compose(fe.slice_maps[static_cast<size_t>(k)], fe.slice_maps[static_cast<size_t>(k)]))) {
            detail = "extend(f o f) != extend(f) o extend(f)";
            return false;
        }
    detail = std::to_string(fun.checked) + " functoriality triples, restriction and composition exact";
    return true;
}

bool c6_reduction(std::string& detail) {
    {
        VertexAlgebroid b = fix::f1();
        InducedModule vb = make_vb(b, 3);
        TwistedBuild t = build_twisted(b, trivial_grading(1, 1), nullptr, 3);
        CheckReport r = compare_untwisted_reduction(vb, t.mb.mb, b.A.unit);
        if (!r.pass()) {
            detail = "heisenberg: " + r.violations.front().str();
            return false;
        }
    }
    {
        VertexAlgebroid b = fix::f3();
        InducedModule vb = make_vb(b, 2);
        FixedSubalgebroid fx = fixed_subalgebroid(b, trivial_grading(2, 0));
        QuotientLieAlgebroid q0 = lie_algebroid_quotient(fx.B0);
        LieAlgebroidModule u;
        u.dimW = 2;
        u.a_act = make_table(2, 2, 2);
        u.a_act[0][0].set(0, Rational(1));
        u.a_act[0][1].set(1, Rational(1));
        u.a_act[1][0].set(1, Rational(1));
        u.g_act = make_table(0, 2, 2);
        TwistedBuild t = build_twisted(b, trivial_grading(2, 0), &u, 2);
        CheckReport r = compare_untwisted_reduction(vb, t.mb.mb, b.A.unit);
        if (!r.pass()) {
            detail = "dual numbers: " + r.violations.front().str();
            return false;
        }
    }
    detail = "slice dims and mode-action tables agree bit-exactly on both fixtures";
    return true;
}

bool c7_guards(std::string& detail) {
    // degree-0 slice equals U on every admissible fiber we build
    {
        TwistedBuild t = build_twisted(fix::f1(), fix::f1_t2(), nullptr, 3);
        if (!t.fiber_passed || t.mb.mb.dim(0) != 1) {
            detail = "M_B(U)(0) != U for the twisted heisenberg fiber";
            return false;
        }
        if (!t.mb.report.pass()) {
            detail = "M_B invariance report failed";
            return false;
        }
    }
    {
        TwistedBuild t = build_twisted(fix::f1(), trivial_grading(1, 1), nullptr, 3);
        if (!t.fiber_passed || t.mb.mb.dim(0) != 1) {
            detail = "M_B(U)(0) != U at T = 1";
            return false;
        }
    }
    {
        TwistedBuild t = build_twisted(fix::f3(), fix::f3_t2(), nullptr, 1);
        if (!t.fiber_passed || t.mb.mb.dim(0) != 1) {
            detail = "M_B(U)(0) != U for the dual numbers";
            return false;
        }
    }
    // V_B invariance: rebuilt and verified inside build_vb; run once explicitly
    {
        VertexAlgebroid b = fix::f2();
        auto L = std::make_shared<const LoopLie>(tca_of_algebroid(b), trivial_grading(1, 3), 3);
        InducedModule vl = InducedModule::vacuum_algebra(L, 3);
        auto rels = ideal_truncation(vl, b);
        if (!verify_invariance(vl, rels).pass()) {
            detail = "ideal truncation invariance failed";
            return false;
        }
    }
    // forcing a non-invariant relation span must abort with the consistency
    // error that the CLI maps to exit code 4
    {
        TwistedBuild t = build_twisted(fix::f1(), fix::f1_t2(), nullptr, 2);
        std::vector<Subspace> fake;
        for (int k = 0; k <= t.mg.grid(); ++k) fake.emplace_back(t.mg.mono_count(k));
        fake[4].insert(unit_vector(t.mg.mono_count(4), 0));
        bool threw = false;
        try {
            build_MB(t.mg, fake, true);
        } catch (const consistency_error&) {
            threw = true;
        }
        if (!threw) {
            detail = "corrupted relation span did not trip the guard";
            return false;
        }
    }
    detail = "degree-0 slices equal U, closures invariant, guard raises the exit-4 error";
    return true;
}

bool c8_radical_cross_check(std::string& detail) {
    long modules = 0, slices = 0;

    auto check_one = [&](const InducedModule& m) {
        long total = 0;
        for (int k = 0; k <= m.grid(); ++k) total += m.dim(k);
        if (total > 12) {
            detail = "test module larger than the criterion bound";
            return false;
        }
        RadicalResult rec = radical_J(m);
        std::vector<Subspace> brute = radical_brute(m);
        for (size_t k = 0; k < brute.size(); ++k) {
            ++slices;
            if (!(brute[k] == rec.j_slices[k])) {
                detail = "recursion and closure disagree at slice " + std::to_string(k);
                return false;
            }
        }
        if (!rec.verification.pass()) {
            detail = "radical of the quotient is nonzero";
            return false;
        }
        ++modules;
        return true;
    };

    // twisted heisenberg (simple; J = 0), total dim 7
    if (!check_one(build_twisted(fix::f1(), fix::f1_t2(), nullptr, 2).mb.mb)) return false;
    // untwisted heisenberg fiber module, total dim 7
    if (!check_one(build_twisted(fix::f1(), trivial_grading(1, 1), nullptr, 3).mb.mb)) return false;
    // rank-1 B with zero pairing: every positive slice is in the radical
    {
        VertexAlgebroid b = make_algebroid(fix::line_algebra(), 1);
        b.action[0][0].set(0, Rational(1)); // e * beta = beta, <beta,beta> = 0
        if (!check_vertex_algebroid(b).pass()) {
            detail = "degenerate-pairing fixture invalid";
            return false;
        }
        TwistedBuild t = build_twisted(b, trivial_grading(1, 1), nullptr, 3);
        RadicalResult rec = radical_J(t.mb.mb);
        for (int k = 1; k <= t.mb.mb.grid(); ++k)
            if (rec.j_slices[static_cast<size_t>(k)].dim() != t.mb.mb.dim(k)) {
                detail = "degenerate pairing should put every positive slice in J";
                return false;
            }
        if (!check_one(t.mb.mb)) return false;
        if (rec.lg.dims() != std::vector<int>{1, 0, 0, 0}) {
            detail = "L_g of the degenerate module is not the fiber line";
            return false;
        }
    }
    // reducible doubled fiber
    {
        FixedSubalgebroid fx = fixed_subalgebroid(fix::f1(), trivial_grading(1, 1));
        QuotientLieAlgebroid q0 = lie_algebroid_quotient(fx.B0);
        LieAlgebroidModule u;
        u.dimW = 2;
        u.a_act = make_table(1, 2, 2);
        u.a_act[0][0].set(0, Rational(1));
        u.a_act[0][1].set(1, Rational(1));
        u.g_act = make_table(q0.g.dimG, 2, 2);
        if (!check_one(build_twisted(fix::f1(), trivial_grading(1, 1), &u, 2).mb.mb)) return false;
    }
    detail = std::to_string(modules) + " modules, " + std::to_string(slices) + " slices compared exactly";
    return true;
}

} // namespace

int main() {
    criterion(1, "axiom suites on all fixtures + mutation witnesses", 3.0, c1_axiom_suites);
    criterion(2, "untwisted dimensions vs the partition enumerator", 10.0, c2_untwisted_dims);
    criterion(3, "twisted dimensions, J(U) = 0, graded simplicity", 10.0, c3_twisted_dims);
    criterion(4, "jacobi / twisted-jacobi / commutator-transfer / locality grids", 60.0, c4_identity_suites);
    criterion(5, "automorphism extension: functoriality, restriction, composition", 30.0, c5_automorphism);
    criterion(6, "T = 1 twisted pipeline reproduces the untwisted build bit-exactly", 10.0, c6_reduction);
    criterion(7, "theorem-falsification guards (degree-0 slice, invariance, exit-4 error)", 10.0, c7_guards);
    criterion(8, "radical recursion equals exhaustive submodule closure", 20.0, c8_radical_cross_check);
    if (g_failures == 0)
        std::cout << "acceptance: all 8 criteria PASS\n";
    else
        std::cout << "acceptance: " << g_failures << " criteria FAILED\n";
    return g_failures == 0 ? 0 : 1;
}
