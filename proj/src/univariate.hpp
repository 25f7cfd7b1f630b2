#pragma once

// Dense univariate helpers shared by the factorization code.

#include "keller/rational.hpp"

#include <vector>

namespace keller::detail {

using ZPoly = std::vector<Integer>;   // index = power, no trailing zeros
using QPoly = std::vector<Rational>;

void trim(ZPoly& f);
void trim(QPoly& f);
inline int degree(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }
inline int degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rational& c);
// a = q*b + r with deg r < deg b.
void divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly rem(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& a);
QPoly monic(const QPoly& a);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic
// s*a + t*b = gcd(a, b) (monic).
QPoly gcdex(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);

QPoly to_q(const ZPoly& f);
// Primitive integer polynomial with positive leading coefficient, associate of f.
ZPoly primitive_z(const QPoly& f);

// f primitive, squarefree, degree >= 1. Irreducible factors over Z, each
// primitive with positive leading coefficient; their product is f up to sign.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f);

}  // namespace keller::detail
