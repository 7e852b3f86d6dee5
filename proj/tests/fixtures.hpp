#pragma once

// Desk-scale fixtures, built directly (independently of the JSON parser).
//   f1: rank-1 Heisenberg algebroid. A = Q e, B = Q beta, <beta,beta> = e,
//       pi = 0, partial = 0. Order-2 grading: beta in sector 1.
//   f2: rank-3 abelian B over A = Q e with the identity pairing.
//   f3: dual numbers. A = Q[x]/(x^2), B = 0, x in sector 1 at T = 2.

#include "vab/grading.hpp"

namespace fix {

inline vab::CommAlgebra line_algebra() {
    vab::CommAlgebra a;
    a.dim = 1;
    a.unit = 0;
    a.mul = vab::make_table(1, 1, 1);
    a.mul[0][0].set(0, vab::Rational(1));
    return a;
}

inline vab::VertexAlgebroid f1() {
    vab::VertexAlgebroid b = vab::make_algebroid(line_algebra(), 1);
    b.action[0][0].set(0, vab::Rational(1));
    b.pairing[0][0].set(0, vab::Rational(1));
    return b;
}

inline vab::SectorGrading f1_t2() {
    vab::SectorGrading g;
    g.T = 2;
    g.secA = {0};
    g.secB = {1};
    return g;
}

inline vab::VertexAlgebroid f2() {
    vab::VertexAlgebroid b = vab::make_algebroid(line_algebra(), 3);
    for (int j = 0; j < 3; ++j) {
        b.action[0][static_cast<size_t>(j)].set(j, vab::Rational(1));
        b.pairing[static_cast<size_t>(j)][static_cast<size_t>(j)].set(0, vab::Rational(1));
    }
    return b;
}

inline vab::CommAlgebra dual_numbers() {
    vab::CommAlgebra a;
    a.dim = 2;
    a.unit = 0;
    a.mul = vab::make_table(2, 2, 2);
    a.mul[0][0].set(0, vab::Rational(1));
    a.mul[0][1].set(1, vab::Rational(1));
    a.mul[1][0].set(1, vab::Rational(1));
    return a;
}

inline vab::VertexAlgebroid f3() { return vab::make_algebroid(dual_numbers(), 0); }

inline vab::SectorGrading f3_t2() {
    vab::SectorGrading g;
    g.T = 2;
    g.secA = {0, 1};
    g.secB = {};
    return g;
}

/// Q[x]/(x^3) with x in sector 1 at T = 2 (x^2 lands in sector 0).
inline vab::CommAlgebra truncated_poly3() {
    vab::CommAlgebra a;
    a.dim = 3;
    a.unit = 0;
    a.mul = vab::make_table(3, 3, 3);
    a.mul[0][0].set(0, vab::Rational(1));
    a.mul[0][1].set(1, vab::Rational(1));
    a.mul[1][0].set(1, vab::Rational(1));
    a.mul[0][2].set(2, vab::Rational(1));
    a.mul[2][0].set(2, vab::Rational(1));
    a.mul[1][1].set(2, vab::Rational(1));
    return a;
}

} // namespace fix
