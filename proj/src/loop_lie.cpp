#include "vab/loop_lie.hpp"

#include <sstream>

namespace vab {

std::string Mode::str() const {
    std::ostringstream os;
    os << (is_b ? "b" : "a") << gen << "(" << exp.str() << ")";
    return os.str();
}

ModeComb& comb_add(ModeComb& acc, const Mode& m, const Rational& c) {
    if (c.is_zero()) return acc;
    auto it = acc.find(m);
    if (it == acc.end()) {
        acc.emplace(m, c);
        return acc;
    }
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
    return acc;
}

ModeComb& comb_axpy(ModeComb& acc, const Rational& c, const ModeComb& other) {
    if (c.is_zero()) return acc;
    for (const auto& [m, v] : other) comb_add(acc, m, c * v);
    return acc;
}

std::string comb_str(const ModeComb& c) {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, v] : c) {
        if (!first) os << " + ";
        first = false;
        os << v.str() << "*" << m.str();
    }
    return os.str();
}

LoopLie::LoopLie(Tca c, SectorGrading g, int window) : c_(std::move(c)), g_(std::move(g)), window_(window) {
    if (window_ < 0) throw input_error("loop algebra window must be >= 0");
    CheckReport gr = check_tca_grading(c_, g_);
    if (!gr.pass()) throw input_error("inconsistent sector grading: " + gr.violations.front().str());

    d_c00_ = Subspace(c_.dim1);
    for (int i = 0; i < c_.dim0; ++i)
        if (g_.secA[static_cast<size_t>(i)] == 0) d_c00_.insert(c_.partial[static_cast<size_t>(i)]);
    std::vector<bool> pivot(static_cast<size_t>(c_.dim1), false);
    for (int p : d_c00_.pivots()) pivot[static_cast<size_t>(p)] = true;
    for (int j = 0; j < c_.dim1; ++j)
        if (g_.secB[static_cast<size_t>(j)] == 0 && !pivot[static_cast<size_t>(j)]) c10_complement_.push_back(j);

    const int T = g_.T;
    for (int k = -window_ * T; k <= window_ * T; ++k) {
        Rational d(k, T);
        // a-modes exist only at degree 0 (exponent -1, sector 0)
        if (k == 0)
            for (int i = 0; i < c_.dim0; ++i)
                if (g_.secA[static_cast<size_t>(i)] == 0) basis_.push_back({false, i, Rational(-1)});
        Rational m = Rational(0) - d; // b-mode exponent at this degree
        for (int j = 0; j < c_.dim1; ++j) {
            int r = g_.secB[static_cast<size_t>(j)];
            if (!m.congruent_mod_1(Rational(r, T))) continue;
            if (m.is_zero()) continue; // exponent-0 modes handled via the complement
            basis_.push_back({true, j, m});
        }
        if (k == 0)
            for (int j : c10_complement_) basis_.push_back({true, j, Rational(0)});
    }

    for (const Mode& x : basis_)
        for (const Mode& y : basis_) {
            if (!in_window(x.degree() + y.degree())) continue;
            table_.emplace(std::make_pair(x, y), bracket_raw(x, y));
        }
}

bool LoopLie::in_window(const Rational& degree) const {
    return degree <= Rational(window_) && Rational(-window_) <= degree;
}

int LoopLie::sector(bool is_b, int gen) const {
    return is_b ? g_.secB[static_cast<size_t>(gen)] : g_.secA[static_cast<size_t>(gen)];
}

bool LoopLie::is_canonical(const Mode& m) const {
    if (!m.exp.congruent_mod_1(Rational(sector(m.is_b, m.gen), g_.T))) return false;
    if (!m.is_b) return m.exp == Rational(-1) && sector(false, m.gen) == 0;
    if (!m.exp.is_zero()) return true;
    for (int j : c10_complement_)
        if (j == m.gen) return true;
    return false;
}

ModeComb LoopLie::reduce_a(const SparseVector& a_vec, const Rational& m) const {
    ModeComb out;
    if (a_vec.zero()) return out;
    for (const auto& [i, c] : a_vec.entries()) {
        (void)c;
        if (!m.congruent_mod_1(Rational(g_.secA[static_cast<size_t>(i)], g_.T)))
            throw consistency_error("a-mode exponent incompatible with sector");
    }
    if (m == Rational(-1)) {
        for (const auto& [i, c] : a_vec.entries()) comb_add(out, Mode{false, i, m}, c);
        return out;
    }
    // a(m) = -(1/(m+1)) (d a)(m+1)
    SparseVector da = apply_map(c_.partial, a_vec);
    Rational coeff = Rational(0) - Rational(1) / (m + Rational(1));
    ModeComb red = reduce_b(da, m + Rational(1));
    comb_axpy(out, coeff, red);
    return out;
}

ModeComb LoopLie::reduce_b(const SparseVector& b_vec, const Rational& m) const {
    ModeComb out;
    if (b_vec.zero()) return out;
    for (const auto& [j, c] : b_vec.entries()) {
        (void)c;
        if (!m.congruent_mod_1(Rational(g_.secB[static_cast<size_t>(j)], g_.T)))
            throw consistency_error("b-mode exponent incompatible with sector");
    }
    if (m.is_zero()) {
        SparseVector red = d_c00_.reduce(b_vec);
        for (const auto& [j, c] : red.entries()) comb_add(out, Mode{true, j, m}, c);
        return out;
    }
    for (const auto& [j, c] : b_vec.entries()) comb_add(out, Mode{true, j, m}, c);
    return out;
}

ModeComb LoopLie::reduce_gen(bool is_b, int gen, const Rational& m) const {
    int dim = is_b ? c_.dim1 : c_.dim0;
    SparseVector v = unit_vector(dim, gen);
    return is_b ? reduce_b(v, m) : reduce_a(v, m);
}

ModeComb LoopLie::bracket_raw(const Mode& x, const Mode& y) const {
    Rational m = x.exp + y.exp;
    if (!x.is_b && !y.is_b) return {};
    if (!x.is_b && y.is_b) return reduce_a(c_.a0u[static_cast<size_t>(x.gen)][static_cast<size_t>(y.gen)], m);
    if (x.is_b && !y.is_b) return reduce_a(c_.u0a[static_cast<size_t>(x.gen)][static_cast<size_t>(y.gen)], m);
    ModeComb out = reduce_b(c_.u0v[static_cast<size_t>(x.gen)][static_cast<size_t>(y.gen)], m);
    ModeComb pair_part = reduce_a(c_.u1v[static_cast<size_t>(x.gen)][static_cast<size_t>(y.gen)], m - Rational(1));
    comb_axpy(out, x.exp, pair_part);
    return out;
}

const ModeComb& LoopLie::bracket(const Mode& x, const Mode& y) const {
    auto it = table_.find(std::make_pair(x, y));
    if (it != table_.end()) return it->second;
    if (!in_window(x.degree() + y.degree()))
        throw window_error("bracket degree " + (x.degree() + y.degree()).str() + " outside window " +
                           std::to_string(window_));
    throw consistency_error("bracket of non-canonical modes " + x.str() + ", " + y.str());
}

ModeComb LoopLie::bracket_comb(const ModeComb& x, const ModeComb& y) const {
    ModeComb out;
    for (const auto& [mx, cx] : x)
        for (const auto& [my, cy] : y) comb_axpy(out, cx * cy, bracket(mx, my));
    return out;
}

std::vector<Mode> LoopLie::basis_at_degree(const Rational& d) const {
    std::vector<Mode> out;
    for (const Mode& m : basis_)
        if (m.degree() == d) out.push_back(m);
    return out;
}

LoopLie::Triangular LoopLie::triangular_split() const {
    Triangular t;
    for (const Mode& m : basis_) {
        Rational d = m.degree();
        if (d.sign() > 0)
            t.plus.push_back(m);
        else if (d.sign() < 0)
            t.minus.push_back(m);
        else
            t.zero.push_back(m);
    }
    return t;
}

CheckReport LoopLie::verify_lie_axioms() const {
    CheckReport rep;
    rep.subject = "loop-lie";
    for (const auto& [key, comb] : table_) {
        Rational d = key.first.degree() + key.second.degree();
        ++rep.checked;
        for (const auto& [m, c] : comb) {
            (void)c;
            if (m.degree() != d) {
                rep.fail("degree-additivity", {}, key.first.str() + "," + key.second.str(), comb_str(comb));
                break;
            }
        }
    }
    const int n = static_cast<int>(basis_.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Mode &x = basis_[static_cast<size_t>(i)], &y = basis_[static_cast<size_t>(j)];
            if (!in_window(x.degree() + y.degree())) continue;
            ModeComb s = bracket(x, y);
            comb_axpy(s, Rational(1), bracket(y, x));
            ++rep.checked;
            if (!s.empty()) rep.fail("antisymmetry", {i, j}, comb_str(s), "0");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Mode &x = basis_[static_cast<size_t>(i)], &y = basis_[static_cast<size_t>(j)],
                           &z = basis_[static_cast<size_t>(k)];
                Rational dxy = x.degree() + y.degree(), dxz = x.degree() + z.degree(), dyz = y.degree() + z.degree();
                Rational total = dxy + z.degree();
                if (!in_window(dxy) || !in_window(dxz) || !in_window(dyz) || !in_window(total)) continue;
                ModeComb lhs = bracket_comb(ModeComb{{x, Rational(1)}}, bracket(y, z));
                ModeComb rhs = bracket_comb(bracket(x, y), ModeComb{{z, Rational(1)}});
                comb_axpy(rhs, Rational(1), bracket_comb(ModeComb{{y, Rational(1)}}, bracket(x, z)));
                comb_axpy(lhs, Rational(-1), rhs);
                ++rep.checked;
                if (!lhs.empty()) rep.fail("jacobi", {i, j, k}, comb_str(lhs), "0");
            }
    return rep;
}

CheckReport LoopLie::verify_locality() const {
    CheckReport rep;
    rep.subject = "locality";
    const int T = g_.T;
    auto exps_for = [&](int sec) {
        std::vector<Rational> out;
        for (int k = -window_ * T; k <= window_ * T; ++k) {
            Rational m(k, T);
            if (m.congruent_mod_1(Rational(sec, T))) out.push_back(m);
        }
        return out;
    };
    auto brk = [&](bool xb, int xg, const Rational& xm, bool yb, int yg, const Rational& ym) {
        return bracket_comb(reduce_gen(xb, xg, xm), reduce_gen(yb, yg, ym));
    };
    auto a_deg_ok = [&](const Rational& m) { return in_window(Rational(0) - m - 1); };
    auto b_deg_ok = [&](const Rational& m) { return in_window(Rational(0) - m); };

    // [a(m), a'(n)] = 0
    for (int i = 0; i < c_.dim0; ++i)
        for (int j = 0; j < c_.dim0; ++j)
            for (const Rational& m : exps_for(sector(false, i)))
                for (const Rational& n : exps_for(sector(false, j))) {
                    Rational total = (Rational(0) - m - 1) + (Rational(0) - n - 1);
                    if (!in_window(total) || !a_deg_ok(m) || !a_deg_ok(n)) continue;
                    ModeComb v = brk(false, i, m, false, j, n);
                    ++rep.checked;
                    if (!v.empty()) rep.fail("locality-aa", {i, j}, comb_str(v), "0");
                }
    // (x1-x2) [a(x1), b(x2)] = 0: [a(m), b(n)] depends on m+n only
    for (int i = 0; i < c_.dim0; ++i)
        for (int j = 0; j < c_.dim1; ++j)
            for (const Rational& m : exps_for(sector(false, i)))
                for (const Rational& n : exps_for(sector(true, j))) {
                    Rational total = (Rational(0) - m - 1) + (Rational(1) - n - 1);
                    if (!in_window(total)) continue;
                    if (!a_deg_ok(m) || !a_deg_ok(m - 1) || !b_deg_ok(n) || !b_deg_ok(n + 1)) continue;
                    ModeComb v = brk(false, i, m, true, j, n);
                    comb_axpy(v, Rational(-1), brk(false, i, m - 1, true, j, n + 1));
                    ++rep.checked;
                    if (!v.empty()) rep.fail("locality-ab", {i, j}, comb_str(v), "0");
                }
    // (x1-x2)^2 [b(x1), b'(x2)] = 0
    for (int i = 0; i < c_.dim1; ++i)
        for (int j = 0; j < c_.dim1; ++j)
            for (const Rational& m : exps_for(sector(true, i)))
                for (const Rational& n : exps_for(sector(true, j))) {
                    Rational total = (Rational(1) - m - 1) + (Rational(1) - n - 1);
                    if (!in_window(total)) continue;
                    if (!b_deg_ok(m) || !b_deg_ok(m - 1) || !b_deg_ok(m - 2)) continue;
                    if (!b_deg_ok(n) || !b_deg_ok(n + 1) || !b_deg_ok(n + 2)) continue;
                    ModeComb v = brk(true, i, m, true, j, n);
                    comb_axpy(v, Rational(-2), brk(true, i, m - 1, true, j, n + 1));
                    comb_axpy(v, Rational(1), brk(true, i, m - 2, true, j, n + 2));
                    ++rep.checked;
                    if (!v.empty()) rep.fail("locality-bb", {i, j}, comb_str(v), "0");
                }
    return rep;
}

void LoopLie::override_bracket(const Mode& x, const Mode& y, ModeComb value) {
    auto it = table_.find(std::make_pair(x, y));
    if (it == table_.end()) throw input_error("override_bracket: pair not in table");
    it->second = std::move(value);
}

} // namespace vab
