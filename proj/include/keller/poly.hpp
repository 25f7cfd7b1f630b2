#pragma once

#include "keller/errors.hpp"
#include "keller/rational.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace keller {

inline constexpr std::size_t kMaxVars = 8;

// Exponent vector. Slots past the context arity stay zero, so comparisons and
// degree sums never need the arity.
struct Monomial {
    std::array<std::uint32_t, kMaxVars> exps{};

    std::uint32_t& operator[](std::size_t i) { return exps[i]; }
    std::uint32_t operator[](std::size_t i) const { return exps[i]; }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto e : exps) d += e;
        return d;
    }
    bool is_one() const { return total_degree() == 0; }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exps[i] > other.exps[i]) return false;
        return true;
    }

    // Lexicographic with the first variable most significant.
    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exps[i] = a.exps[i] + b.exps[i];
    return m;
}

// Requires b | a.
inline Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exps[i] = a.exps[i] - b.exps[i];
    return m;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exps[i] = std::max(a.exps[i], b.exps[i]);
    return m;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.exps[i] != 0 && b.exps[i] != 0) return false;
    return true;
}

// Ordered list of distinct variable names, shared by value.
class VarContext {
  public:
    VarContext();
    VarContext(std::initializer_list<std::string> names);
    explicit VarContext(std::vector<std::string> names);

    static VarContext xy();
    static VarContext u12();
    static VarContext u123();

    std::size_t arity() const { return names_->size(); }
    const std::string& name(std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::size_t require(std::string_view name) const;

    bool operator==(const VarContext& other) const {
        return names_ == other.names_ || *names_ == *other.names_;
    }

  private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

struct Term {
    Monomial mono;
    Rational coeff;

    bool operator==(const Term&) const = default;
};

// Sparse multivariate polynomial over Q. Terms are kept sorted by descending
// lex order with no zero coefficients, so equality is structural.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(VarContext ctx) : ctx_(std::move(ctx)) {}
    Polynomial(VarContext ctx, const Rational& c);
    Polynomial(VarContext ctx, long c) : Polynomial(std::move(ctx), Rational(c)) {}

    static Polynomial variable(const VarContext& ctx, std::string_view name);
    static Polynomial variable(const VarContext& ctx, std::size_t index);
    static Polynomial term(const VarContext& ctx, const Monomial& m, const Rational& c);
    // Combines duplicate monomials and drops zeros.
    static Polynomial from_terms(const VarContext& ctx, std::vector<Term> terms);

    const VarContext& context() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    Rational constant_term() const;
    // Coefficient of the lex-leading term; zero for the zero polynomial.
    Rational leading_coefficient() const;
    const Monomial& leading_monomial() const { return terms_.front().mono; }
    Rational coefficient(const Monomial& m) const;

    int total_degree() const;  // -1 for zero
    int degree(std::size_t var) const;  // -1 for zero
    bool involves(std::size_t var) const { return degree(var) > 0; }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator+(Polynomial a, const Rational& c) { return a += Polynomial(a.ctx_, c); }
    friend Polynomial operator-(Polynomial a, const Rational& c) { return a -= Polynomial(a.ctx_, c); }
    friend Polynomial operator+(const Rational& c, Polynomial a) { return a += Polynomial(a.ctx_, c); }
    friend Polynomial operator-(const Rational& c, const Polynomial& a) { return Polynomial(a.ctx_, c) - a; }

    bool operator==(const Polynomial& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }

  private:
    void check_same(const Polynomial& o) const;

    VarContext ctx_;
    std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& p, unsigned n);

Polynomial partial_derivative(const Polynomial& p, std::string_view var);
Polynomial partial_derivative(const Polynomial& p, std::size_t var);

enum class JacobianKind { NonzeroConstant, Zero, NonConstant };

struct JacobianResult {
    Polynomial det;
    JacobianKind kind;
};

// 2x2 Jacobian determinant with respect to the first two context variables.
JacobianResult jacobian_det(const Polynomial& p, const Polynomial& q);

// images[i] is substituted for variable i of p's context. Every variable that
// occurs in p needs an image; all images must share one context.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images);
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& assignment);

// Decides g(images) == expected exactly. Large compositions in at most two
// target variables are decided by evaluation on a unisolvent point set modulo
// enough primes to exceed a coefficient bound, avoiding the full expansion.
bool composition_equals(const Polynomial& g, std::span<const Polynomial> images, const Polynomial& expected);

// Re-expresses p in `target`, matching variables by name.
Polynomial embed(const Polynomial& p, const VarContext& target);
// Same variables by position, new names (arity must agree).
Polynomial rename(const Polynomial& p, const VarContext& target);

// Rational content c with p / c integer-primitive and lex-leading coefficient
// positive. Zero for the zero polynomial.
Rational content(const Polynomial& p);
// Canonical representative of p up to units of Q.
Polynomial normalize(const Polynomial& p);
bool associates(const Polynomial& a, const Polynomial& b);

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};
// Multivariate division by a single divisor under lex.
DivisionResult divide(const Polynomial& a, const Polynomial& b);
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

// Coefficients of p viewed as a polynomial in `var`, index = power. Empty for 0.
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var);
Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var, const VarContext& ctx);

struct GcdResult {
    Polynomial gcd;
    Rational content_a;
    Rational content_b;
};

// gcd over Z[vars] extended to rational inputs: gcd of the rational contents
// times the integer-primitive gcd of the primitive parts, lex-leading
// coefficient positive.
GcdResult gcd_and_content(const Polynomial& a, const Polynomial& b);
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// Primitive gcd (no integer content), canonical normalization.
Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b);

// p(x, y) -> p(x + shift_x, y + shift_y) style shift in one variable.
Polynomial shift_variable(const Polynomial& p, std::size_t var, const Rational& by);

struct Endomorphism {
    Polynomial p;
    Polynomial q;
    Polynomial jacobian;

    Endomorphism() = default;
    // p, q must be in the {x, y} context.
    Endomorphism(Polynomial p_, Polynomial q_);

    static Endomorphism identity();
    bool operator==(const Endomorphism& o) const { return p == o.p && q == o.q; }
};

// (f ∘ g) as the pair (p_f(p_g, q_g), q_f(p_g, q_g)).
Endomorphism compose(const Endomorphism& f, const Endomorphism& g);

}  // namespace keller
