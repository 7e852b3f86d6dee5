#pragma once

#include <vector>

#include "vab/report.hpp"
#include "vab/sparse.hpp"

namespace vab {

/// Structure-constant table of a bilinear map: table[i][j] is the image of the
/// (i, j) basis pair, as a vector over the codomain basis.
using Table = std::vector<std::vector<SparseVector>>;

/// Structure constants of a linear map: map[i] is the image of basis vector i.
using LinMap = std::vector<SparseVector>;

Table make_table(int n, int m, int codim);
LinMap make_linmap(int n, int codim);
LinMap identity_map(int n);

SparseVector bilinear(const Table& t, const SparseVector& x, const SparseVector& y);
SparseVector apply_map(const LinMap& f, const SparseVector& x);
LinMap compose(const LinMap& f, const LinMap& g); // x -> f(g(x))
bool linmap_equal(const LinMap& f, const LinMap& g);

/// Finite-dimensional unital commutative associative algebra with a product
/// table over exact rationals. unit == -1 only for the zero algebra.
struct CommAlgebra {
    int dim = 0;
    int unit = -1;
    Table mul;

    SparseVector unit_vec() const;
    SparseVector mul_vv(const SparseVector& x, const SparseVector& y) const { return bilinear(mul, x, y); }
};

/// Commutativity, associativity and the unit law on every basis tuple.
CheckReport check_comm_algebra(const CommAlgebra& a);

} // namespace vab
