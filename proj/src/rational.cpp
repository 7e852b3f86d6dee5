#include "vab/rational.hpp"

namespace vab {

Rational::Rational(long num, long den) {
    if (den == 0) throw input_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text, bool* was_unreduced) {
    if (was_unreduced) *was_unreduced = false;
    auto bad = [&]() -> input_error { return input_error("malformed rational '" + text + "'"); };
    if (text.empty()) throw bad();
    std::string num = text, den = "1";
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (num.empty() || den.empty() || den.find('/') != std::string::npos) throw bad();
    }
    auto digits_ok = [](const std::string& s, bool sign_ok) {
        size_t i = 0;
        if (sign_ok && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    mpz_class n(num), d(den);
    if (d == 0) throw bad();
    if (was_unreduced) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        *was_unreduced = (g != 1 && n != 0);
    }
    Rational r;
    r.q_ = mpq_class(n, d);
    r.q_.canonicalize();
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw input_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

long Rational::floor_long() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    if (!f.fits_slong_p()) throw input_error("rational floor out of range");
    return f.get_si();
}

bool Rational::congruent_mod_1(const Rational& other) const {
    return (*this - other).is_integer();
}

std::string Rational::str() const {
    return q_.get_str();
}

Rational binomial(const Rational& s, long m) {
    if (m < 0) return Rational(0);
    Rational acc(1);
    Rational x = s;
    for (long i = 0; i < m; ++i) {
        acc *= x - Rational(i);
        acc /= Rational(i + 1);
    }
    return acc;
}

} // namespace vab
