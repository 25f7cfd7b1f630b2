#pragma once

#include "keller/groebner.hpp"
#include "keller/poly.hpp"

#include <vector>

namespace keller {

// num/den over a polynomial ring (u1, u2 in practice). Kept reduced; den is
// integer-primitive with a positive lex-leading coefficient, and 1 whenever
// the value is a polynomial.
class RationalFunction {
  public:
    RationalFunction() = default;
    explicit RationalFunction(const VarContext& ctx) : num_(ctx), den_(ctx, 1) {}
    explicit RationalFunction(Polynomial num);
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    const VarContext& context() const { return num_.context(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  private:
    void reduce();

    Polynomial num_;
    Polynomial den_;
};

struct FFTerm {
    Monomial mono;
    RationalFunction coeff;
};

// Polynomial in `vars` with RationalFunction coefficients over `coeffs`.
// Terms sorted by descending lex (first variable most significant).
class FFPolynomial {
  public:
    FFPolynomial() = default;
    FFPolynomial(VarContext vars, VarContext coeffs) : vars_(std::move(vars)), coeffs_(std::move(coeffs)) {}

    static FFPolynomial from_terms(const VarContext& vars, const VarContext& coeffs, std::vector<FFTerm> terms);
    static FFPolynomial constant(const VarContext& vars, const RationalFunction& c);
    static FFPolynomial variable(const VarContext& vars, const VarContext& coeffs, std::size_t index);

    const VarContext& vars() const { return vars_; }
    const VarContext& coeff_context() const { return coeffs_; }
    const std::vector<FFTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    const FFTerm& leading() const { return terms_.front(); }
    int degree(std::size_t var) const;
    bool involves(std::size_t var) const { return degree(var) > 0; }

    FFPolynomial operator-() const;
    friend FFPolynomial operator+(const FFPolynomial& a, const FFPolynomial& b);
    friend FFPolynomial operator-(const FFPolynomial& a, const FFPolynomial& b);
    friend FFPolynomial operator*(const FFPolynomial& a, const FFPolynomial& b);
    friend FFPolynomial operator*(const RationalFunction& c, const FFPolynomial& a);

    FFPolynomial monic() const;
    bool operator==(const FFPolynomial& o) const;

  private:
    void check_same(const FFPolynomial& o) const;

    VarContext vars_;
    VarContext coeffs_;
    std::vector<FFTerm> terms_;
};

enum class FFOp { Add, Sub, Mul };
FFPolynomial ff_arith(const FFPolynomial& a, const FFPolynomial& b, FFOp op);

// Reduced lex basis (y > x) of (p - u1, q - u2) over Q(u1, u2) in shape
// position: g(x) monic of degree r and y - h(x) with deg h < r.
struct ShapeBasis {
    FFPolynomial g;  // in {x}
    FFPolynomial h;  // in {x}
    unsigned r = 0;
    GroebnerBasis basis;  // the polynomial-ring basis it was read from
};

ShapeBasis shape_basis(const Endomorphism& f, const GroebnerLimits& limits = {});

// y = u(p, q, x) / v(p, q).
struct UVDecomposition {
    Polynomial u;  // in {u1, u2, u3}
    Polynomial v;  // in {u1, u2}
    FFPolynomial g;
    FFPolynomial h;
    unsigned r = 0;
    GroebnerStats stats;
};

UVDecomposition uv_decomposition(const Endomorphism& f, const GroebnerLimits& limits = {});

// v(p, q) * y - u(p, q, x) == 0, decided exactly.
bool uv_identity_holds(const Endomorphism& f, const UVDecomposition& uv);

// g with denominators cleared, x -> u3, made primitive: comparable with the
// kernel generator H.
Polynomial cleared_minimal_polynomial(const FFPolynomial& g);

}  // namespace keller
