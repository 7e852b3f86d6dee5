#pragma once

#include <map>
#include <memory>
#include <vector>

#include "vab/grading.hpp"
#include "vab/tca.hpp"

namespace vab {

/// Mode u(m) of a generator u in C0 or C1. Conventions used throughout:
///
///   exponent m lies in r/T + Z where r is the sector of the generator;
///   deg a(m) = -m-1 for a in C0,  deg b(m) = -m for b in C1
///   (uniformly: deg u(m) = wt(u) - m - 1 with wt = 0 on C0, 1 on C1).
///
/// Canonical modes after the quotient by the relations
/// (d a)(m) = -m a(m-1):
///   a(-1) for a in a basis of C0^0,
///   b(m), m != 0, for b in a basis of C1,
///   b(0) for b in a basis of a fixed complement of d(C0^0) inside C1^0.
/// Every other raw mode reduces:  a(m) = -(1/(m+1)) (d a)(m+1)  for m != -1,
/// and b(0)-components are reduced modulo d(C0^0).
struct Mode {
    bool is_b = false;
    int gen = 0;
    Rational exp;

    int weight() const { return is_b ? 1 : 0; }
    Rational degree() const { return Rational(weight()) - exp - Rational(1); }

    friend bool operator<(const Mode& x, const Mode& y) {
        if (x.is_b != y.is_b) return x.is_b < y.is_b;
        if (x.gen != y.gen) return x.gen < y.gen;
        return x.exp < y.exp;
    }
    friend bool operator==(const Mode& x, const Mode& y) {
        return x.is_b == y.is_b && x.gen == y.gen && x.exp == y.exp;
    }
    std::string str() const;
};

/// Exact linear combination of canonical modes.
using ModeComb = std::map<Mode, Rational>;

ModeComb& comb_add(ModeComb& acc, const Mode& m, const Rational& c);
ModeComb& comb_axpy(ModeComb& acc, const Rational& c, const ModeComb& other);
std::string comb_str(const ModeComb& c);

/// Degree-windowed basis and structure constants of the 1/T Z-graded Lie
/// algebra L(C, g) = L(C, g) / d^ L(C0, g); T = 1 yields the untwisted loop
/// algebra. The bracket table is materialized for every canonical in-window
/// pair whose result degree stays inside the window.
class LoopLie {
public:
    LoopLie(Tca c, SectorGrading g, int window);

    const Tca& tca() const { return c_; }
    const SectorGrading& grading() const { return g_; }
    int T() const { return g_.T; }
    int window() const { return window_; }

    bool in_window(const Rational& degree) const;
    bool is_canonical(const Mode& m) const;

    /// Rewrite a raw C0-component vector at exponent m into canonical modes.
    ModeComb reduce_a(const SparseVector& a_vec, const Rational& m) const;
    /// Rewrite a raw C1-component vector at exponent m into canonical modes.
    ModeComb reduce_b(const SparseVector& b_vec, const Rational& m) const;
    /// Canonical form of the mode gen(m) of a single basis generator.
    ModeComb reduce_gen(bool is_b, int gen, const Rational& m) const;

    /// Lie bracket of two canonical modes. Throws window_error if the result
    /// degree leaves the window.
    const ModeComb& bracket(const Mode& x, const Mode& y) const;
    ModeComb bracket_comb(const ModeComb& x, const ModeComb& y) const;

    const std::vector<Mode>& basis() const { return basis_; }
    std::vector<Mode> basis_at_degree(const Rational& d) const;

    /// (L+, L0, L-) by sign of degree. L0 = {a(-1)} u {b(0) complement}.
    struct Triangular {
        std::vector<Mode> plus, zero, minus;
    };
    Triangular triangular_split() const;

    /// Antisymmetry and Jacobi on every in-window tuple whose brackets stay
    /// in-window; degree additivity of every table entry.
    CheckReport verify_lie_axioms() const;

    /// Cor c33-style locality, as finite table facts:
    ///   [a(m), a'(n)] = 0,
    ///   [a(m), b(n)] - [a(m-1), b(n+1)] = 0,
    ///   [b(m), b'(n)] - 2[b(m-1), b'(n+1)] + [b(m-2), b'(n+2)] = 0.
    CheckReport verify_locality() const;

    /// Fault injection for tests: overwrite one table entry.
    void override_bracket(const Mode& x, const Mode& y, ModeComb value);

    /// Sector of a C0 (is_b = false) or C1 basis vector.
    int sector(bool is_b, int gen) const;

private:
    ModeComb bracket_raw(const Mode& x, const Mode& y) const;

    Tca c_;
    SectorGrading g_;
    int window_ = 0;
    Subspace d_c00_;                // span{d a : a in C0^0} inside C1
    std::vector<int> c10_complement_; // C1 indices: complement of d(C0^0) in C1^0
    std::vector<Mode> basis_;
    std::map<std::pair<Mode, Mode>, ModeComb> table_;
};

} // namespace vab
