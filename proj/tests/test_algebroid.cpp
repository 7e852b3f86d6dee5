#include <doctest.h>

#include "fixtures.hpp"
#include "vab/algebroid.hpp"

using namespace vab;

TEST_CASE("commutative algebra checker") {
    CHECK(check_comm_algebra(fix::line_algebra()).pass());
    CHECK(check_comm_algebra(fix::dual_numbers()).pass());
    CHECK(check_comm_algebra(fix::truncated_poly3()).pass());
    CHECK(check_comm_algebra(CommAlgebra{}).pass()); // zero algebra

    CommAlgebra bad = fix::dual_numbers();
    bad.mul[0][1] = SparseVector(2);
    bad.mul[0][1].set(1, Rational(2)); // e x = 2x
    CheckReport r = check_comm_algebra(bad);
    CHECK(!r.pass());
    CHECK(r.violations.front().family == "unit-law");
}

TEST_CASE("truncated conformal algebra checker") {
    Tca c1 = tca_of_algebroid(fix::f1());
    CHECK(check_tca(c1).pass());
    CHECK(c1.u1v[0][0] == unit_vector(1, 0)); // beta_1 beta = e

    // trivial: C0 = Q e, C1 = 0
    Tca c0 = make_tca(1, 0);
    CHECK(check_tca(c0).pass());

    // corrupt beta_0 beta = beta: fails commutativity u0v = -v0u + d(v1u)
    Tca bad = c1;
    bad.u0v[0][0].set(0, Rational(1));
    CheckReport r = check_tca(bad);
    CHECK(!r.pass());
    bool found = false;
    for (const auto& v : r.violations) found |= (v.family == "commutativity-u0v");
    CHECK(found);

    // two-dimensional C1 with an asymmetric pairing fails the third law
    Tca c2 = make_tca(1, 2);
    c2.u1v[0][1].set(0, Rational(1));
    c2.u1v[1][0].set(0, Rational(2));
    CheckReport r2 = check_tca(c2);
    CHECK(!r2.pass());
    found = false;
    for (const auto& v : r2.violations) found |= (v.family == "commutativity-u1v");
    CHECK(found);
}

TEST_CASE("rescaling") {
    Tca c = tca_of_algebroid(fix::f1());

    Tca same = rescale_tca(c, Rational(1));
    CHECK(same.u1v == c.u1v);

    Tca half = rescale_tca(c, Rational(2));
    CHECK(half.u1v[0][0] == Rational(1, 2) * unit_vector(1, 0)); // beta_1 beta = e/2

    Tca back = rescale_tca(half, Rational(1, 2));
    CHECK(back.u1v == c.u1v);
    CHECK(linmap_equal(back.partial, c.partial));

    for (Rational ell : {Rational(1), Rational(2), Rational(-1), Rational(1, 3)})
        CHECK(check_tca(rescale_tca(c, ell)).pass());
    CHECK_THROWS_AS(rescale_tca(c, Rational(0)), input_error);
}

TEST_CASE("vertex algebroid checker and the conformal-algebra equivalence") {
    CHECK(check_vertex_algebroid(fix::f1()).pass());
    CHECK(check_vertex_algebroid(fix::f2()).pass());
    CHECK(check_vertex_algebroid(fix::f3()).pass());

    // round trip through Prop-style identifications
    VertexAlgebroid b = fix::f1();
    Tca c = tca_of_algebroid(b);
    auto [b2, compat] = algebroid_of_tca(c, b.A, b.action);
    CHECK(compat.pass());
    CHECK(b2.bracket == b.bracket);
    CHECK(b2.pairing == b.pairing);
    CHECK(linmap_equal(b2.partial, b.partial));
    for (int i = 0; i < b.dimB; ++i) CHECK(linmap_equal(b2.anchor[static_cast<size_t>(i)], b.anchor[static_cast<size_t>(i)]));

    // break the bracket symmetrization: [beta, beta] = beta but d<beta,beta> = 0
    VertexAlgebroid bad = fix::f1();
    bad.bracket[0][0].set(0, Rational(1));
    CheckReport r = check_vertex_algebroid(bad);
    CHECK(!r.pass());
    bool found = false;
    for (const auto& v : r.violations) found |= (v.family == "d3-bracket-symmetrization");
    CHECK(found);

    // break the action unit law
    VertexAlgebroid bad2 = fix::f1();
    bad2.action[0][0] = SparseVector(1);
    bad2.action[0][0].set(0, Rational(2));
    CheckReport r2 = check_vertex_algebroid(bad2);
    CHECK(!r2.pass());
    CHECK(r2.violations.front().family == "unit-action");
}

TEST_CASE("lie algebroid quotient of the fixtures") {
    // f1: partial = 0, so A dA = 0 and the quotient is B itself, abelian
    QuotientLieAlgebroid q1 = lie_algebroid_quotient(fix::f1());
    CHECK(q1.well_defined.pass());
    CHECK(q1.a_dA.dim() == 0);
    CHECK(q1.g.dimG == 1);
    CHECK(q1.g.bracket[0][0].zero());
    CHECK(check_lie_algebroid(q1.g).pass());

    QuotientLieAlgebroid q3 = lie_algebroid_quotient(fix::f3());
    CHECK(q3.g.dimG == 0);
    CHECK(check_lie_algebroid(q3.g).pass());

    QuotientLieAlgebroid q2 = lie_algebroid_quotient(fix::f2());
    CHECK(q2.g.dimG == 3);
    CHECK(check_lie_algebroid(q2.g).pass());
}

TEST_CASE("lie algebroid checker rejects a non-antisymmetric bracket") {
    LieAlgebroid g;
    g.A = fix::line_algebra();
    g.dimG = 1;
    g.bracket = make_table(1, 1, 1);
    g.bracket[0][0].set(0, Rational(1)); // [u,u] = u
    g.a_action = make_table(1, 1, 1);
    g.a_action[0][0].set(0, Rational(1));
    g.anchor.assign(1, make_linmap(1, 1));
    CheckReport r = check_lie_algebroid(g);
    CHECK(!r.pass());
    CHECK(r.violations.front().family == "antisymmetry");

    LieAlgebroid zero;
    zero.A = fix::line_algebra();
    CHECK(check_lie_algebroid(zero).pass());
}

TEST_CASE("lie algebroid modules") {
    QuotientLieAlgebroid q = lie_algebroid_quotient(fix::f1());

    // W = A acting on itself by multiplication, g acting through the anchor (= 0)
    LieAlgebroidModule w;
    w.dimW = 1;
    w.a_act = make_table(1, 1, 1);
    w.a_act[0][0].set(0, Rational(1));
    w.g_act = make_table(1, 1, 1);
    CHECK(check_lie_algebroid_module(q.g, w).pass());

    LieAlgebroidModule empty;
    CHECK(check_lie_algebroid_module(q.g, empty).pass());

    // (ua)w would have to vanish here, so force u(aw) - a(uw) != 0 instead
    LieAlgebroidModule bad = w;
    bad.g_act[0][0].set(0, Rational(1)); // u w = w, but a(uw) = uw and (ua)w = 0 still hold
    bad.a_act[0][0] = SparseVector(1);
    bad.a_act[0][0].set(0, Rational(2)); // breaks the unit law too
    CheckReport r = check_lie_algebroid_module(q.g, bad);
    CHECK(!r.pass());
}
