#include "vab/sparse.hpp"

#include <algorithm>
#include <sstream>

namespace vab {

namespace {
const Rational kZero{};
}

const Rational& SparseVector::at(int i) const {
    auto it = e_.find(i);
    return it == e_.end() ? kZero : it->second;
}

void SparseVector::set(int i, const Rational& v) {
    if (i < 0 || i >= dim_) throw input_error("sparse index out of range");
    if (v.is_zero())
        e_.erase(i);
    else
        e_[i] = v;
}

void SparseVector::add(int i, const Rational& v) {
    if (i < 0 || i >= dim_) throw input_error("sparse index out of range");
    auto it = e_.find(i);
    if (it == e_.end()) {
        if (!v.is_zero()) e_[i] = v;
        return;
    }
    it->second += v;
    if (it->second.is_zero()) e_.erase(it);
}

SparseVector& SparseVector::operator+=(const SparseVector& o) {
    if (dim_ != o.dim_) throw input_error("sparse dimension mismatch");
    for (const auto& [i, v] : o.e_) add(i, v);
    return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& o) {
    if (dim_ != o.dim_) throw input_error("sparse dimension mismatch");
    for (const auto& [i, v] : o.e_) add(i, -v);
    return *this;
}

SparseVector& SparseVector::operator*=(const Rational& c) {
    if (c.is_zero()) {
        e_.clear();
        return *this;
    }
    for (auto& [i, v] : e_) v *= c;
    return *this;
}

SparseVector& SparseVector::axpy(const Rational& c, const SparseVector& w) {
    if (dim_ != w.dim_) throw input_error("sparse dimension mismatch");
    if (c.is_zero()) return *this;
    for (const auto& [i, v] : w.e_) add(i, c * v);
    return *this;
}

std::string SparseVector::str() const {
    if (e_.empty()) return "0";
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& [i, v] : e_) {
        if (!first) os << ", ";
        first = false;
        os << i << ":" << v.str();
    }
    os << ")";
    return os.str();
}

SparseVector unit_vector(int dim, int i) {
    SparseVector v(dim);
    v.set(i, Rational(1));
    return v;
}

SparseVector Subspace::reduce(SparseVector v) const {
    if (v.dim() != ambient_) throw input_error("reduce: ambient dimension mismatch");
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rational& c = v.at(pivots_[r]);
        if (!c.is_zero()) v.axpy(-c, rows_[r]);
    }
    return v;
}

bool Subspace::contains_subspace(const Subspace& other) const {
    for (const auto& row : other.rows())
        if (!contains(row)) return false;
    return true;
}

bool Subspace::insert(SparseVector v) {
    v = reduce(std::move(v));
    if (v.zero()) return false;
    int p = v.entries().begin()->first;
    Rational lead = v.entries().begin()->second;
    v *= Rational(1) / lead;
    // eliminate the new pivot from existing rows
    for (auto& row : rows_) {
        const Rational& c = row.at(p);
        if (!c.is_zero()) row.axpy(-c, v);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    size_t idx = static_cast<size_t>(pos - pivots_.begin());
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + static_cast<long>(idx), std::move(v));
    return true;
}

Subspace rref(const std::vector<SparseVector>& rows) {
    if (rows.empty()) return Subspace(0);
    return span(rows.front().dim(), rows);
}

Subspace span(int ambient, const std::vector<SparseVector>& rows) {
    Subspace s(ambient);
    for (const auto& r : rows) {
        if (r.dim() != ambient) throw input_error("span: mixed ambient dimensions");
        s.insert(r);
    }
    return s;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw input_error("sum: ambient dimension mismatch");
    Subspace s = a;
    for (const auto& r : b.rows()) s.insert(r);
    return s;
}

Subspace kernel(int ncols, const std::vector<SparseVector>& rows) {
    Subspace rr = span(ncols, rows);
    std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
    for (int p : rr.pivots()) is_pivot[static_cast<size_t>(p)] = true;
    Subspace ker(ncols);
    for (int j = 0; j < ncols; ++j) {
        if (is_pivot[static_cast<size_t>(j)]) continue;
        SparseVector v(ncols);
        v.set(j, Rational(1));
        for (int r = 0; r < rr.dim(); ++r) {
            const Rational& c = rr.rows()[static_cast<size_t>(r)].at(j);
            if (!c.is_zero()) v.set(rr.pivots()[static_cast<size_t>(r)], -c);
        }
        ker.insert(std::move(v));
    }
    return ker;
}

SparseVector quotient_coords(const Subspace& space, const Subspace& sub, const SparseVector& v) {
    if (space.ambient() != sub.ambient() || v.dim() != space.ambient())
        throw input_error("quotient_coords: ambient dimension mismatch");
    if (!space.contains_subspace(sub)) throw input_error("quotient_coords: sub not contained in space");
    if (!space.contains(v)) throw input_error("quotient_coords: vector not in space");

    std::vector<bool> sub_pivot(static_cast<size_t>(space.ambient()), false);
    for (int p : sub.pivots()) sub_pivot[static_cast<size_t>(p)] = true;

    SparseVector w = sub.reduce(v);
    // complement basis: rows of space whose pivot is not a pivot of sub,
    // in row order; coordinates of w there are its values at those pivots.
    std::vector<int> comp;
    for (int p : space.pivots())
        if (!sub_pivot[static_cast<size_t>(p)]) comp.push_back(p);
    SparseVector out(static_cast<int>(comp.size()));
    for (size_t k = 0; k < comp.size(); ++k) out.set(static_cast<int>(k), w.at(comp[k]));
    return out;
}

} // namespace vab
