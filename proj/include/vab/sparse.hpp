#pragma once

#include <map>
#include <string>
#include <vector>

#include "vab/rational.hpp"

namespace vab {

/// Sparse vector over Rational. No stored zeros; indices < dim. The entry map
/// is ordered, so every iteration over a vector is deterministic.
class SparseVector {
public:
    SparseVector() = default;
    explicit SparseVector(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    bool zero() const { return e_.empty(); }

    const Rational& at(int i) const;
    void set(int i, const Rational& v);
    void add(int i, const Rational& v);

    const std::map<int, Rational>& entries() const { return e_; }

    SparseVector& operator+=(const SparseVector& o);
    SparseVector& operator-=(const SparseVector& o);
    SparseVector& operator*=(const Rational& c);
    /// this += c * w
    SparseVector& axpy(const Rational& c, const SparseVector& w);

    friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
    friend SparseVector operator*(const Rational& c, SparseVector v) { return v *= c; }

    bool operator==(const SparseVector& o) const { return dim_ == o.dim_ && e_ == o.e_; }
    bool operator!=(const SparseVector& o) const { return !(*this == o); }

    /// "(i:3/2, j:-1)" with indices ascending; "0" for the zero vector.
    std::string str() const;

private:
    int dim_ = 0;
    std::map<int, Rational> e_;
};

SparseVector unit_vector(int dim, int i);

/// Subspace of Q^ambient held as a reduced row-echelon basis: rows nonzero,
/// pivot columns strictly increasing, pivot entries 1, pivot columns zero in
/// the other rows.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : ambient_(ambient) {}

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVector>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    /// Eliminate the pivot coordinates of v; the residual is the canonical
    /// coset representative of v modulo this subspace.
    SparseVector reduce(SparseVector v) const;
    bool contains(const SparseVector& v) const { return reduce(v).zero(); }
    bool contains_subspace(const Subspace& other) const;

    /// Insert v, keeping the RREF invariant. Returns true iff the dimension grew.
    bool insert(SparseVector v);

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }

private:
    int ambient_ = 0;
    std::vector<SparseVector> rows_;
    std::vector<int> pivots_;
};

/// Row space of the given vectors. Throws input_error on mixed dimensions.
Subspace rref(const std::vector<SparseVector>& rows);

Subspace span(int ambient, const std::vector<SparseVector>& rows);

Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// Kernel of the linear map x -> (row_i . x): solutions of A x = 0.
/// ncols is the common dimension of the rows. rank + dim kernel == ncols.
Subspace kernel(int ncols, const std::vector<SparseVector>& rows);

/// Coordinates of v in the fixed complement of sub inside space: the rows of
/// space whose pivot column is not a pivot column of sub. Requires sub <= space
/// and v in space (membership error otherwise). v is in sub iff the result is zero.
SparseVector quotient_coords(const Subspace& space, const Subspace& sub, const SparseVector& v);

} // namespace vab
