#pragma once

#include <gmpxx.h>

#include <string>

#include "vab/error.hpp"

namespace vab {

/// Exact rational scalar. Invariants: always reduced, denominator > 0,
/// canonical zero is 0/1. All engine arithmetic goes through this type;
/// there is no floating point anywhere.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {} // NOLINT: implicit by design
    Rational(long num, long den);

    static Rational parse(const std::string& text, bool* was_unreduced = nullptr);

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// Largest integer <= value, as a long (inputs at desk scale).
    long floor_long() const;

    /// True iff value - other is an integer.
    bool congruent_mod_1(const Rational& other) const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    /// Canonical form: "p" for integers, "p/q" otherwise.
    std::string str() const;

private:
    mpq_class q_;
};

/// Generalized binomial coefficient (s choose m) for rational s and m >= 0,
/// via the falling factorial s(s-1)...(s-m+1)/m!.
Rational binomial(const Rational& s, long m);

} // namespace vab
