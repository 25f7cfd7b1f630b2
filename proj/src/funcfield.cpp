#include "keller/funcfield.hpp"

#include <algorithm>
#include <map>

namespace keller {

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(num_.context(), 1) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (!(num_.context() == den_.context())) throw ContextMismatch();
    if (den_.is_zero()) throw DivisionByZero();
    reduce();
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Polynomial(num_.context(), 1);
        return;
    }
    if (den_.is_constant()) {
        num_ *= Rational(1 / den_.constant_term());
        den_ = Polynomial(num_.context(), 1);
        return;
    }
    Polynomial g = gcd_primitive(num_, den_);
    if (!g.is_constant()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
    }
    Rational c = content(den_);
    if (c != 1) {
        Rational inv = 1 / c;
        num_ *= inv;
        den_ *= inv;
    }
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.is_polynomial()) return RationalFunction(a.num_ + b.num_);
        return RationalFunction(a.num_ + b.num_, a.den_);
    }
    if (a.is_polynomial()) return RationalFunction(a.num_ * b.den_ + b.num_, b.den_);
    if (b.is_polynomial()) return RationalFunction(a.num_ + b.num_ * a.den_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero();
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

// ---------------------------------------------------------------- FFPolynomial

FFPolynomial FFPolynomial::from_terms(const VarContext& vars, const VarContext& coeffs, std::vector<FFTerm> terms) {
    std::map<Monomial, RationalFunction, std::greater<>> acc;
    for (auto& t : terms) {
        if (!(t.coeff.context() == coeffs)) throw ContextMismatch("coefficient outside the coefficient field");
        auto it = acc.find(t.mono);
        if (it == acc.end()) acc.emplace(t.mono, std::move(t.coeff));
        else it->second = it->second + t.coeff;
    }
    FFPolynomial out(vars, coeffs);
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.terms_.push_back({m, std::move(c)});
    return out;
}

FFPolynomial FFPolynomial::constant(const VarContext& vars, const RationalFunction& c) {
    FFPolynomial out(vars, c.context());
    if (!c.is_zero()) out.terms_.push_back({Monomial{}, c});
    return out;
}

FFPolynomial FFPolynomial::variable(const VarContext& vars, const VarContext& coeffs, std::size_t index) {
    FFPolynomial out(vars, coeffs);
    Monomial m;
    m[index] = 1;
    out.terms_.push_back({m, RationalFunction(Polynomial(coeffs, 1))});
    return out;
}

int FFPolynomial::degree(std::size_t var) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono[var]));
    return d;
}

void FFPolynomial::check_same(const FFPolynomial& o) const {
    if (!(vars_ == o.vars_) || !(coeffs_ == o.coeffs_)) throw ContextMismatch();
}

FFPolynomial FFPolynomial::operator-() const {
    FFPolynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

FFPolynomial merge(const FFPolynomial& a, const FFPolynomial& b, bool subtract) {
    std::vector<FFTerm> out;
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].mono > y[j].mono)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].mono > x[i].mono) {
            out.push_back({y[j].mono, subtract ? -y[j].coeff : y[j].coeff});
            ++j;
        } else {
            RationalFunction c = subtract ? x[i].coeff - y[j].coeff : x[i].coeff + y[j].coeff;
            if (!c.is_zero()) out.push_back({x[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    // already sorted and free of zeros
    return FFPolynomial::from_terms(a.vars(), a.coeff_context(), std::move(out));
}

}  // namespace

FFPolynomial operator+(const FFPolynomial& a, const FFPolynomial& b) {
    a.check_same(b);
    return merge(a, b, false);
}

FFPolynomial operator-(const FFPolynomial& a, const FFPolynomial& b) {
    a.check_same(b);
    return merge(a, b, true);
}

FFPolynomial operator*(const FFPolynomial& a, const FFPolynomial& b) {
    a.check_same(b);
    std::vector<FFTerm> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return FFPolynomial::from_terms(a.vars_, a.coeffs_, std::move(out));
}

FFPolynomial operator*(const RationalFunction& c, const FFPolynomial& a) {
    if (!(c.context() == a.coeffs_)) throw ContextMismatch();
    FFPolynomial r(a.vars_, a.coeffs_);
    if (c.is_zero()) return r;
    for (const auto& t : a.terms_) r.terms_.push_back({t.mono, c * t.coeff});
    return r;
}

FFPolynomial FFPolynomial::monic() const {
    if (terms_.empty()) return *this;
    RationalFunction one(Polynomial(coeffs_, 1));
    return (one / terms_.front().coeff) * *this;
}

bool FFPolynomial::operator==(const FFPolynomial& o) const {
    if (!(vars_ == o.vars_) || !(coeffs_ == o.coeffs_) || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || !(terms_[i].coeff == o.terms_[i].coeff)) return false;
    return true;
}

FFPolynomial ff_arith(const FFPolynomial& a, const FFPolynomial& b, FFOp op) {
    switch (op) {
        case FFOp::Add:
            return a + b;
        case FFOp::Sub:
            return a - b;
        case FFOp::Mul:
            return a * b;
    }
    return a;
}

// ---------------------------------------------------------------- shape basis

namespace {

const VarContext& shape_context() {
    static const VarContext ctx{"y", "x", "u1", "u2"};
    return ctx;
}

const VarContext& yx_context() {
    static const VarContext ctx{"y", "x"};
    return ctx;
}

const VarContext& x_context() {
    static const VarContext ctx{"x"};
    return ctx;
}

// Splits a polynomial in (y, x, u1, u2) into (y, x)-monomials with u-coefficients.
FFPolynomial to_ff(const Polynomial& p) {
    std::map<Monomial, std::vector<Term>, std::greater<>> parts;
    for (const auto& t : p.terms()) {
        Monomial outer, inner;
        outer[0] = t.mono[0];
        outer[1] = t.mono[1];
        inner[0] = t.mono[2];
        inner[1] = t.mono[3];
        parts[outer].push_back({inner, t.coeff});
    }
    std::vector<FFTerm> terms;
    for (auto& [m, ts] : parts)
        terms.push_back({m, RationalFunction(Polynomial::from_terms(VarContext::u12(), std::move(ts)))});
    return FFPolynomial::from_terms(yx_context(), VarContext::u12(), std::move(terms));
}

// Full reduction of f by monic `basis` under lex on (y, x).
FFPolynomial ff_reduce(FFPolynomial f, const std::vector<FFPolynomial>& basis, std::size_t skip) {
    FFPolynomial rem(f.vars(), f.coeff_context());
    while (!f.is_zero()) {
        const FFTerm lead = f.leading();
        bool reduced = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (i == skip) continue;
            const Monomial& lm = basis[i].leading().mono;
            if (!lm.divides(lead.mono)) continue;
            FFPolynomial shift = FFPolynomial::from_terms(f.vars(), f.coeff_context(), {{lead.mono / lm, lead.coeff}});
            f = f - shift * basis[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            rem = rem + FFPolynomial::from_terms(f.vars(), f.coeff_context(), {lead});
            f = f - FFPolynomial::from_terms(f.vars(), f.coeff_context(), {lead});
        }
    }
    return rem;
}

FFPolynomial drop_y(const FFPolynomial& p) {
    std::vector<FFTerm> terms;
    for (const auto& t : p.terms()) {
        Monomial m;
        m[0] = t.mono[1];
        terms.push_back({m, t.coeff});
    }
    return FFPolynomial::from_terms(x_context(), p.coeff_context(), std::move(terms));
}

}  // namespace

ShapeBasis shape_basis(const Endomorphism& f, const GroebnerLimits& limits) {
    const VarContext& ctx = shape_context();
    Ideal ideal(ctx, {embed(f.p, ctx) - Polynomial::variable(ctx, 2), embed(f.q, ctx) - Polynomial::variable(ctx, 3)});
    ShapeBasis out;
    out.basis = buchberger(ideal, MonomialOrder::block(2, MonomialOrder::Kind::Lex), limits);

    std::vector<FFPolynomial> ff;
    for (const auto& g : out.basis.elements) {
        FFPolynomial h = to_ff(g);
        if (h.leading().mono.is_one())
            throw AlgebraicallyDependent("p and q satisfy a polynomial relation: the extended ideal is the unit ideal");
        ff.push_back(h.monic());
    }
    // Minimal basis: drop elements whose leading monomial is a multiple of another's.
    std::vector<FFPolynomial> minimal;
    for (std::size_t i = 0; i < ff.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < ff.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& a = ff[i].leading().mono;
            const Monomial& b = ff[j].leading().mono;
            if (b.divides(a) && (a != b || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(ff[i]);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) minimal[i] = ff_reduce(minimal[i], minimal, i).monic();
    std::sort(minimal.begin(), minimal.end(),
              [](const FFPolynomial& a, const FFPolynomial& b) { return a.leading().mono > b.leading().mono; });

    if (minimal.size() != 2)
        throw NotShapePosition("reduced lex basis over Q(u1,u2) has " + std::to_string(minimal.size()) +
                               " elements, expected {y - h(x), g(x)}");
    const FFPolynomial& ypart = minimal[0];
    const FFPolynomial& gpart = minimal[1];
    Monomial y1;
    y1[0] = 1;
    if (ypart.leading().mono != y1 || gpart.involves(0))
        throw NotShapePosition("reduced lex basis over Q(u1,u2) is not of the form {y - h(x), g(x)}");
    FFPolynomial yvar = FFPolynomial::variable(yx_context(), VarContext::u12(), 0);
    out.h = drop_y(yvar - ypart);
    out.g = drop_y(gpart);
    out.r = static_cast<unsigned>(out.g.degree(0));
    return out;
}

UVDecomposition uv_decomposition(const Endomorphism& f, const GroebnerLimits& limits) {
    ShapeBasis sb = shape_basis(f, limits);
    UVDecomposition uv;
    uv.r = sb.r;
    uv.g = sb.g;
    uv.h = sb.h;
    uv.stats = sb.basis.stats;
    Polynomial v(VarContext::u12(), 1);
    for (const auto& t : sb.h.terms()) {
        const Polynomial& d = t.coeff.denominator();
        if (d.is_constant()) continue;
        v = *divide_exact(v * d, gcd_primitive(v, d));
    }
    uv.v = normalize(v);
    const VarContext& u3 = VarContext::u123();
    Polynomial u(u3);
    for (const auto& t : sb.h.terms()) {
        Polynomial scaled = *divide_exact(uv.v, t.coeff.denominator()) * t.coeff.numerator();
        Monomial m;
        m[2] = t.mono[0];
        u += embed(scaled, u3) * Polynomial::term(u3, m, Rational(1));
    }
    uv.u = std::move(u);
    return uv;
}

bool uv_identity_holds(const Endomorphism& f, const UVDecomposition& uv) {
    // v(u1,u2) * u4 - u(u1,u2,u3) under u1->p, u2->q, u3->x, u4->y.
    static const VarContext ctx{"u1", "u2", "u3", "u4"};
    Polynomial check = embed(uv.v, ctx) * Polynomial::variable(ctx, 3) - embed(uv.u, ctx);
    const VarContext& xy = VarContext::xy();
    const Polynomial images[] = {f.p, f.q, Polynomial::variable(xy, 0), Polynomial::variable(xy, 1)};
    return composition_equals(check, images, Polynomial(xy));
}

Polynomial cleared_minimal_polynomial(const FFPolynomial& g) {
    Polynomial den(g.coeff_context(), 1);
    for (const auto& t : g.terms()) {
        const Polynomial& d = t.coeff.denominator();
        if (!d.is_constant()) den = *divide_exact(den * d, gcd_primitive(den, d));
    }
    const VarContext& u3 = VarContext::u123();
    Polynomial out(u3);
    for (const auto& t : g.terms()) {
        Polynomial c = *divide_exact(den, t.coeff.denominator()) * t.coeff.numerator();
        Monomial m;
        m[2] = t.mono[0];
        out += embed(c, u3) * Polynomial::term(u3, m, Rational(1));
    }
    // strip any common factor in u1, u2
    std::vector<Polynomial> cs = coefficients_in(out, 2);
    Polynomial common = cs.back();
    for (const auto& c : cs)
        if (!c.is_zero()) common = gcd_primitive(common, c);
    if (!common.is_constant()) out = *divide_exact(out, common);
    return normalize(out);
}

}  // namespace keller
