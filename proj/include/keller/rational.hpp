#pragma once

#include <gmpxx.h>

#include <string>

namespace keller {

// GMP keeps mpq_class canonical (reduced, positive denominator, 0 == 0/1)
// after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& r) { return sgn(r); }

}  // namespace keller
