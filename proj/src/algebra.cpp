#include "vab/algebra.hpp"

#include <sstream>

namespace vab {

std::string Violation::str() const {
    std::ostringstream os;
    os << family << " at (";
    for (size_t i = 0; i < where.size(); ++i) {
        if (i) os << ",";
        os << where[i];
    }
    os << "): lhs=" << lhs << " rhs=" << rhs;
    return os.str();
}

void CheckReport::fail(std::string family, std::vector<int> where, std::string lhs, std::string rhs) {
    violations.push_back({std::move(family), std::move(where), std::move(lhs), std::move(rhs)});
}

void CheckReport::merge(const CheckReport& other) {
    checked += other.checked;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string CheckReport::summary() const {
    std::ostringstream os;
    os << subject << ": " << (pass() ? "pass" : "FAIL") << " (" << checked << " checks";
    if (!pass()) os << ", " << violations.size() << " violations";
    os << ")";
    return os.str();
}

Table make_table(int n, int m, int codim) {
    return Table(static_cast<size_t>(n), std::vector<SparseVector>(static_cast<size_t>(m), SparseVector(codim)));
}

LinMap make_linmap(int n, int codim) {
    return LinMap(static_cast<size_t>(n), SparseVector(codim));
}

LinMap identity_map(int n) {
    LinMap f = make_linmap(n, n);
    for (int i = 0; i < n; ++i) f[static_cast<size_t>(i)].set(i, Rational(1));
    return f;
}

SparseVector bilinear(const Table& t, const SparseVector& x, const SparseVector& y) {
    int codim = 0;
    if (!t.empty() && !t.front().empty()) codim = t.front().front().dim();
    SparseVector out(codim);
    for (const auto& [i, cx] : x.entries())
        for (const auto& [j, cy] : y.entries())
            out.axpy(cx * cy, t[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    return out;
}

SparseVector apply_map(const LinMap& f, const SparseVector& x) {
    int codim = f.empty() ? 0 : f.front().dim();
    SparseVector out(codim);
    for (const auto& [i, c] : x.entries()) out.axpy(c, f[static_cast<size_t>(i)]);
    return out;
}

LinMap compose(const LinMap& f, const LinMap& g) {
    LinMap out;
    out.reserve(g.size());
    for (const auto& gi : g) out.push_back(apply_map(f, gi));
    return out;
}

bool linmap_equal(const LinMap& f, const LinMap& g) {
    if (f.size() != g.size()) return false;
    for (size_t i = 0; i < f.size(); ++i)
        if (f[i] != g[i]) return false;
    return true;
}

SparseVector CommAlgebra::unit_vec() const {
    SparseVector v(dim);
    if (dim > 0) v.set(unit, Rational(1));
    return v;
}

CheckReport check_comm_algebra(const CommAlgebra& a) {
    CheckReport rep;
    rep.subject = "comm-algebra";
    if (a.dim == 0) return rep;
    if (a.unit < 0 || a.unit >= a.dim) {
        rep.fail("unit-index", {}, "unit=" + std::to_string(a.unit), "0 <= unit < dim");
        return rep;
    }
    auto e = [&](int i) { return unit_vector(a.dim, i); };
    for (int i = 0; i < a.dim; ++i) {
        SparseVector lhs = a.mul_vv(a.unit_vec(), e(i));
        ++rep.checked;
        if (lhs != e(i)) rep.fail("unit-law", {a.unit, i}, lhs.str(), e(i).str());
    }
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            SparseVector ij = a.mul_vv(e(i), e(j));
            SparseVector ji = a.mul_vv(e(j), e(i));
            ++rep.checked;
            if (ij != ji) rep.fail("commutativity", {i, j}, ij.str(), ji.str());
            for (int k = 0; k < a.dim; ++k) {
                SparseVector l = a.mul_vv(ij, e(k));
                SparseVector r = a.mul_vv(e(i), a.mul_vv(e(j), e(k)));
                ++rep.checked;
                if (l != r) rep.fail("associativity", {i, j, k}, l.str(), r.str());
            }
        }
    return rep;
}

} // namespace vab
