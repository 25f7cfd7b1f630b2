#include "keller/poly.hpp"

#include <algorithm>
#include <set>

namespace keller {

// ---------------------------------------------------------------- VarContext

VarContext::VarContext() : names_(std::make_shared<const std::vector<std::string>>()) {}

VarContext::VarContext(std::initializer_list<std::string> names) : VarContext(std::vector<std::string>(names)) {}

VarContext::VarContext(std::vector<std::string> names) {
    if (names.empty()) throw Error("variable context must not be empty");
    if (names.size() > kMaxVars) throw Error("at most " + std::to_string(kMaxVars) + " variables supported");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw Error("empty variable name");
        if (!seen.insert(n).second) throw Error("duplicate variable name '" + n + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarContext VarContext::xy() {
    static const VarContext ctx{"x", "y"};
    return ctx;
}

VarContext VarContext::u12() {
    static const VarContext ctx{"u1", "u2"};
    return ctx;
}

VarContext VarContext::u123() {
    static const VarContext ctx{"u1", "u2", "u3"};
    return ctx;
}

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
    return std::nullopt;
}

std::size_t VarContext::require(std::string_view name) const {
    if (auto i = index_of(name)) return *i;
    throw UnknownVariable(std::string(name));
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(VarContext ctx, const Rational& c) : ctx_(std::move(ctx)) {
    if (c != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(const VarContext& ctx, std::string_view name) {
    return variable(ctx, ctx.require(name));
}

Polynomial Polynomial::variable(const VarContext& ctx, std::size_t index) {
    if (index >= ctx.arity()) throw Error("variable index out of range");
    Monomial m;
    m[index] = 1;
    return term(ctx, m, Rational(1));
}

Polynomial Polynomial::term(const VarContext& ctx, const Monomial& m, const Rational& c) {
    Polynomial p(ctx);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(const VarContext& ctx, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
    Polynomial p(ctx);
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return Rational(0);
}

Rational Polynomial::leading_coefficient() const { return terms_.empty() ? Rational(0) : terms_.front().coeff; }

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.mono > key; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return Rational(0);
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.total_degree()));
    return d;
}

int Polynomial::degree(std::size_t var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono[var]));
    return d;
}

void Polynomial::check_same(const Polynomial& o) const {
    if (!(ctx_ == o.ctx_)) throw ContextMismatch();
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

// Merges sign * b into a; both sorted descending.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].mono > b[j].mono) {
            out.push_back(a[i++]);
        } else if (b[j].mono > a[i].mono) {
            out.push_back({b[j].mono, subtract ? Rational(-b[j].coeff) : b[j].coeff});
            ++j;
        } else {
            Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
            if (c != 0) out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back({b[j].mono, subtract ? Rational(-b[j].coeff) : b[j].coeff});
    return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        check_same(o);
        terms_ = o.terms_;
        return *this;
    }
    check_same(o);
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same(o);
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ctx_);
    if (b.terms_.size() == 1 && b.terms_[0].mono.is_one()) return a * b.terms_[0].coeff;
    if (a.terms_.size() == 1 && a.terms_[0].mono.is_one()) return b * a.terms_[0].coeff;
    std::map<Monomial, Rational, std::greater<>> acc;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            auto [it, fresh] = acc.try_emplace(s.mono * t.mono, s.coeff * t.coeff);
            if (!fresh) it->second += s.coeff * t.coeff;
        }
    Polynomial r(a.ctx_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) r.terms_.push_back({m, std::move(c)});
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Polynomial pow(const Polynomial& p, unsigned n) {
    Polynomial result(p.context(), 1);
    Polynomial base = p;
    while (n > 0) {
        if (n & 1u) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

// ---------------------------------------------------------------- calculus

Polynomial partial_derivative(const Polynomial& p, std::string_view var) {
    return partial_derivative(p, p.context().require(var));
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
    if (var >= p.context().arity()) throw Error("variable index out of range");
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        if (t.mono[var] == 0) continue;
        Term d{t.mono, t.coeff * t.mono[var]};
        d.mono[var] -= 1;
        out.push_back(std::move(d));
    }
    return Polynomial::from_terms(p.context(), std::move(out));
}

JacobianResult jacobian_det(const Polynomial& p, const Polynomial& q) {
    if (!(p.context() == q.context())) throw ContextMismatch();
    if (p.context().arity() < 2) throw ContextMismatch("Jacobian needs a two-variable context");
    Polynomial det = partial_derivative(p, std::size_t{0}) * partial_derivative(q, std::size_t{1}) -
                     partial_derivative(p, std::size_t{1}) * partial_derivative(q, std::size_t{0});
    JacobianKind kind = det.is_zero()       ? JacobianKind::Zero
                        : det.is_constant() ? JacobianKind::NonzeroConstant
                                            : JacobianKind::NonConstant;
    return {std::move(det), kind};
}

// ---------------------------------------------------------------- substitution

namespace {

// Nested Horner evaluation, one variable at a time, so every multiplication
// is by a single (small) image.
Polynomial horner(const Polynomial& p, std::size_t var, std::span<const Polynomial> images, const VarContext& target) {
    if (p.is_constant()) return Polynomial(target, p.constant_term());
    std::size_t v = var;
    while (!p.involves(v)) ++v;
    std::vector<Polynomial> coeffs = coefficients_in(p, v);
    Polynomial acc = horner(coeffs.back(), v + 1, images, target);
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        acc *= images[v];
        if (!coeffs[i].is_zero()) acc += horner(coeffs[i], v + 1, images, target);
    }
    return acc;
}

}  // namespace

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images) {
    const std::size_t n = p.context().arity();
    if (images.size() < n) throw MissingAssignment(p.context().name(images.size()));
    std::optional<VarContext> target;
    for (std::size_t i = 0; i < n; ++i) {
        if (!p.involves(i)) continue;
        if (!target) {
            target = images[i].context();
        } else if (!(*target == images[i].context())) {
            throw ContextMismatch("substitution images live in different contexts");
        }
    }
    if (!target) {
        // p is constant; pick any provided context
        if (n > 0) target = images[0].context();
        else return p;
    }
    return horner(p, 0, images, *target);
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& assignment) {
    std::vector<Polynomial> images;
    std::optional<VarContext> target;
    for (const auto& [name, img] : assignment) {
        if (!p.context().index_of(name)) throw UnknownVariable(name);
        if (!target) target = img.context();
        else if (!(*target == img.context())) throw ContextMismatch("substitution images live in different contexts");
    }
    for (std::size_t i = 0; i < p.context().arity(); ++i) {
        auto it = assignment.find(p.context().name(i));
        if (it != assignment.end()) {
            images.push_back(it->second);
        } else if (p.involves(i)) {
            throw MissingAssignment(p.context().name(i));
        } else {
            images.emplace_back(target ? *target : p.context());
        }
    }
    return substitute(p, images);
}

Polynomial embed(const Polynomial& p, const VarContext& target) {
    std::vector<std::size_t> map(p.context().arity());
    for (std::size_t i = 0; i < map.size(); ++i) {
        auto j = target.index_of(p.context().name(i));
        if (!j) {
            if (p.involves(i)) throw UnknownVariable(p.context().name(i));
            map[i] = kMaxVars;
        } else {
            map[i] = *j;
        }
    }
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m;
        for (std::size_t i = 0; i < map.size(); ++i)
            if (t.mono[i] != 0) m[map[i]] = t.mono[i];
        out.push_back({m, t.coeff});
    }
    return Polynomial::from_terms(target, std::move(out));
}

Polynomial rename(const Polynomial& p, const VarContext& target) {
    if (p.context().arity() != target.arity()) throw ContextMismatch("rename needs equal arity");
    return Polynomial::from_terms(target, p.terms());
}

Polynomial shift_variable(const Polynomial& p, std::size_t var, const Rational& by) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < p.context().arity(); ++i) {
        Polynomial v = Polynomial::variable(p.context(), i);
        if (i == var) v += Polynomial(p.context(), by);
        images.push_back(std::move(v));
    }
    return substitute(p, images);
}

// ---------------------------------------------------------------- normalization

Rational content(const Polynomial& p) {
    if (p.is_zero()) return Rational(0);
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& t : p.terms()) {
        num_gcd = gcd(num_gcd, t.coeff.get_num());
        den_lcm = lcm(den_lcm, t.coeff.get_den());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    if (p.leading_coefficient() < 0) c = -c;
    return c;
}

Polynomial normalize(const Polynomial& p) {
    if (p.is_zero()) return p;
    Rational c = content(p);
    if (c == 1) return p;
    return p * Rational(1 / c);
}

bool associates(const Polynomial& a, const Polynomial& b) { return normalize(a) == normalize(b); }

// ---------------------------------------------------------------- division

DivisionResult divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (!(a.context() == b.context())) throw ContextMismatch();
    const VarContext& ctx = a.context();
    std::vector<Term> quot, rem;
    Polynomial p = a;
    const Monomial& lb = b.leading_monomial();
    const Rational lcb = b.leading_coefficient();
    while (!p.is_zero()) {
        const Term& lt = p.terms().front();
        if (lb.divides(lt.mono)) {
            Term t{lt.mono / lb, lt.coeff / lcb};
            quot.push_back(t);
            p -= Polynomial::term(ctx, t.mono, t.coeff) * b;
        } else {
            rem.push_back(lt);
            p -= Polynomial::term(ctx, lt.mono, lt.coeff);
        }
    }
    return {Polynomial::from_terms(ctx, std::move(quot)), Polynomial::from_terms(ctx, std::move(rem))};
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (!(a.context() == b.context())) throw ContextMismatch();
    if (b.is_constant()) return a * Rational(1 / b.leading_coefficient());
    const VarContext& ctx = a.context();
    std::vector<Term> quot;
    Polynomial p = a;
    const Monomial& lb = b.leading_monomial();
    const Rational lcb = b.leading_coefficient();
    for (std::size_t v = 0; v < ctx.arity(); ++v)
        if (b.degree(v) > std::max(a.degree(v), 0)) return a.is_zero() ? std::optional<Polynomial>(a) : std::nullopt;
    while (!p.is_zero()) {
        const Term& lt = p.terms().front();
        if (!lb.divides(lt.mono)) return std::nullopt;
        Term t{lt.mono / lb, lt.coeff / lcb};
        p -= Polynomial::term(ctx, t.mono, t.coeff) * b;
        quot.push_back(std::move(t));
    }
    return Polynomial::from_terms(ctx, std::move(quot));
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
    std::vector<std::vector<Term>> buckets;
    for (const auto& t : p.terms()) {
        std::uint32_t e = t.mono[var];
        if (buckets.size() <= e) buckets.resize(e + 1);
        Term s = t;
        s.mono[var] = 0;
        buckets[e].push_back(std::move(s));
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Polynomial::from_terms(p.context(), std::move(b)));
    return out;
}

Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var, const VarContext& ctx) {
    std::vector<Term> out;
    for (std::size_t e = 0; e < coeffs.size(); ++e)
        for (const auto& t : coeffs[e].terms()) {
            Term s = t;
            s.mono[var] += static_cast<std::uint32_t>(e);
            out.push_back(std::move(s));
        }
    return Polynomial::from_terms(ctx, std::move(out));
}

// ---------------------------------------------------------------- gcd

namespace {

using UPoly = std::vector<Polynomial>;  // coefficients in one variable

void trim(UPoly& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Polynomial content_in(const Polynomial& p, std::size_t var);

// Strips the polynomial content and the rational content from u.
void make_primitive(UPoly& u) {
    if (u.empty()) return;
    Polynomial g;
    bool first = true;
    for (const auto& c : u) {
        if (c.is_zero()) continue;
        g = first ? normalize(c) : gcd_primitive(g, c);
        first = false;
        if (g.is_constant()) break;
    }
    if (!g.is_constant())
        for (auto& c : u)
            if (!c.is_zero()) c = *divide_exact(c, g);
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& c : u)
        for (const auto& t : c.terms()) {
            num_gcd = gcd(num_gcd, t.coeff.get_num());
            den_lcm = lcm(den_lcm, t.coeff.get_den());
        }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (scale != 1)
        for (auto& c : u) c *= scale;
}

UPoly pseudo_remainder(UPoly a, const UPoly& b) {
    const Polynomial& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        Polynomial la = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
        trim(a);
    }
    return a;
}

Polynomial monomial_gcd(const Polynomial& mono, const Polynomial& other) {
    Monomial m = mono.leading_monomial();
    for (const auto& t : other.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], t.mono[i]);
    return Polynomial::term(mono.context(), m, Rational(1));
}

Polynomial content_in(const Polynomial& p, std::size_t var) {
    Polynomial g;
    bool first = true;
    for (const auto& c : coefficients_in(p, var)) {
        if (c.is_zero()) continue;
        g = first ? normalize(c) : gcd_primitive(g, c);
        first = false;
        if (g.is_constant()) break;
    }
    return g;
}

}  // namespace

Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b) {
    if (!(a.context() == b.context())) throw ContextMismatch();
    if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero polynomials");
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    const VarContext& ctx = a.context();
    if (a.is_constant() || b.is_constant()) return Polynomial(ctx, 1);
    Polynomial A = normalize(a), B = normalize(b);
    if (A == B) return A;
    if (A.size() == 1) return monomial_gcd(A, B);
    if (B.size() == 1) return monomial_gcd(B, A);

    std::size_t var = 0;
    while (!A.involves(var) && !B.involves(var)) ++var;
    if (!A.involves(var)) return gcd_primitive(A, content_in(B, var));
    if (!B.involves(var)) return gcd_primitive(B, content_in(A, var));

    Polynomial cont_a = content_in(A, var);
    Polynomial cont_b = content_in(B, var);
    Polynomial cont = gcd_primitive(cont_a, cont_b);

    UPoly ua = coefficients_in(*divide_exact(A, cont_a), var);
    UPoly ub = coefficients_in(*divide_exact(B, cont_b), var);
    if (ua.size() < ub.size()) std::swap(ua, ub);
    while (true) {
        UPoly r = pseudo_remainder(ua, ub);
        if (r.empty()) break;
        if (r.size() == 1) {
            ub = {Polynomial(ctx, 1)};
            break;
        }
        make_primitive(r);
        ua = std::move(ub);
        ub = std::move(r);
    }
    make_primitive(ub);
    return normalize(cont * from_coefficients(ub, var, ctx));
}

GcdResult gcd_and_content(const Polynomial& a, const Polynomial& b) {
    if (!(a.context() == b.context())) throw ContextMismatch();
    if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero polynomials");
    Rational ca = content(a), cb = content(b);
    Rational c;
    if (a.is_zero()) {
        c = abs(cb);
    } else if (b.is_zero()) {
        c = abs(ca);
    } else {
        c = Rational(gcd(ca.get_num(), cb.get_num()), lcm(ca.get_den(), cb.get_den()));
        c = abs(c);
        c.canonicalize();
    }
    Polynomial g = gcd_primitive(a, b) * c;
    return {std::move(g), std::move(ca), std::move(cb)};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) { return gcd_and_content(a, b).gcd; }

// ---------------------------------------------------------------- Endomorphism

Endomorphism::Endomorphism(Polynomial p_, Polynomial q_) : p(std::move(p_)), q(std::move(q_)) {
    if (!(p.context() == VarContext::xy()) || !(q.context() == VarContext::xy()))
        throw ContextMismatch("endomorphism components must be polynomials in x, y");
    jacobian = jacobian_det(p, q).det;
}

Endomorphism Endomorphism::identity() {
    return {Polynomial::variable(VarContext::xy(), 0), Polynomial::variable(VarContext::xy(), 1)};
}

Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
    const Polynomial images[] = {g.p, g.q};
    return {substitute(f.p, images), substitute(f.q, images)};
}

}  // namespace keller
