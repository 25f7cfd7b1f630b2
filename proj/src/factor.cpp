#include "keller/factor.hpp"

#include "univariate.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace keller {

using detail::QPoly;
using detail::ZPoly;

Polynomial Factorization::expand(const VarContext& ctx) const {
    Polynomial out(ctx, content);
    for (const auto& f : factors) out *= pow(f.poly, f.multiplicity);
    return out;
}

namespace {

std::vector<std::size_t> involved_variables(const Polynomial& f) {
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < f.context().arity(); ++i)
        if (f.involves(i)) vars.push_back(i);
    return vars;
}

// gcd of the coefficients of f viewed as a polynomial in `var`, normalized.
Polynomial content_wrt(const Polynomial& f, std::size_t var) {
    auto cs = coefficients_in(f, var);
    Polynomial g(f.context());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize(c) : gcd_primitive(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

void add_part(std::map<unsigned, Polynomial>& parts, const Polynomial& p, unsigned mult) {
    if (p.is_constant()) return;
    auto it = parts.find(mult);
    if (it == parts.end()) parts.emplace(mult, normalize(p));
    else it->second = normalize(it->second * p);
}

void squarefree_from(const Polynomial& f, std::size_t from, std::map<unsigned, Polynomial>& parts) {
    if (f.is_constant()) return;
    std::size_t v = from;
    while (!f.involves(v)) ++v;
    Polynomial c = content_wrt(f, v);
    Polynomial a = c.is_constant() ? f : *divide_exact(f, c);
    // Yun in variable v; every factor of a involves v
    Polynomial b = partial_derivative(a, v);
    Polynomial g = gcd_primitive(a, b);
    Polynomial w = *divide_exact(a, g);
    Polynomial y = *divide_exact(b, g);
    Polynomial z = y - partial_derivative(w, v);
    unsigned i = 1;
    while (!w.is_constant()) {
        Polynomial h = z.is_zero() ? normalize(w) : gcd_primitive(w, z);
        add_part(parts, h, i);
        w = *divide_exact(w, h);
        y = *divide_exact(z, h);
        z = y - partial_derivative(w, v);
        ++i;
    }
    squarefree_from(c, v + 1, parts);
}

// ---- bivariate factorization by evaluation, Hensel lifting in t = y - a, recombination

using Series = std::vector<QPoly>;  // index = power of t, entries polynomials in the main variable

QPoly to_qpoly(const Polynomial& p, std::size_t var) {
    QPoly out(p.is_zero() ? 0 : static_cast<std::size_t>(p.degree(var)) + 1);
    for (const auto& t : p.terms()) out[t.mono[var]] += t.coeff;
    detail::trim(out);
    return out;
}

Series to_series(const Polynomial& f, std::size_t mv, std::size_t ov, const Rational& a) {
    Polynomial shifted = a == 0 ? f : shift_variable(f, ov, a);
    Series s;
    for (const auto& c : coefficients_in(shifted, ov)) s.push_back(to_qpoly(c, mv));
    return s;
}

Polynomial from_series(const Series& s, std::size_t mv, std::size_t ov, const Rational& a, const VarContext& ctx) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < s.size(); ++j)
        for (std::size_t i = 0; i < s[j].size(); ++i) {
            if (s[j][i] == 0) continue;
            Monomial m;
            m[mv] = static_cast<std::uint32_t>(i);
            m[ov] = static_cast<std::uint32_t>(j);
            terms.push_back({m, s[j][i]});
        }
    Polynomial p = Polynomial::from_terms(ctx, std::move(terms));
    return a == 0 ? p : shift_variable(p, ov, -a);
}

Series series_mul(const Series& a, const Series& b, std::size_t k) {
    Series r(k);
    for (std::size_t i = 0; i < a.size() && i < k; ++i) {
        if (a[i].empty()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < k; ++j) {
            if (b[j].empty()) continue;
            r[i + j] = detail::add(r[i + j], detail::mul(a[i], b[j]));
        }
    }
    return r;
}

// Scalar power series in t: 1/c mod t^k.
QPoly series_inverse(const QPoly& c, std::size_t k) {
    QPoly inv(k);
    inv[0] = 1 / c[0];
    for (std::size_t j = 1; j < k; ++j) {
        Rational s = 0;
        for (std::size_t i = 1; i <= j && i < c.size(); ++i) s += c[i] * inv[j - i];
        inv[j] = -s * inv[0];
    }
    return inv;
}

// target = A * B mod t^k with A[0] = a0, B[0] = b0 monic coprime factors of target[0].
void lift_pair(const Series& target, const QPoly& a0, const QPoly& b0, std::size_t k, Series& A, Series& B) {
    QPoly s, t;
    detail::gcdex(a0, b0, s, t);
    A.assign(k, {});
    B.assign(k, {});
    A[0] = a0;
    B[0] = b0;
    for (std::size_t j = 1; j < k; ++j) {
        QPoly e = j < target.size() ? target[j] : QPoly{};
        for (std::size_t i = 0; i <= j; ++i) {
            if (A[i].empty() || B[j - i].empty()) continue;
            e = detail::sub(e, detail::mul(A[i], B[j - i]));
        }
        if (e.empty()) continue;
        A[j] = detail::rem(detail::mul(e, t), a0);
        B[j] = detail::rem(detail::mul(e, s), b0);
    }
}

std::vector<Polynomial> factor_primitive_bivariate(const Polynomial& f, std::size_t mv, std::size_t ov) {
    const VarContext& ctx = f.context();
    const int n = f.degree(mv);
    if (n <= 1 || f.degree(ov) <= 1) return {f};

    // evaluation point: degree in mv kept, image squarefree, fewest factors among a few
    std::optional<Rational> best_a;
    std::vector<ZPoly> best_factors;
    int admissible = 0;
    for (long step = 0; step < 80 && admissible < 3; ++step) {
        long av = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
        Rational a(av);
        Series s = to_series(f, mv, ov, a);
        QPoly f0 = s.empty() ? QPoly{} : s[0];
        if (detail::degree(f0) != n) continue;
        if (detail::degree(detail::gcd(f0, detail::derivative(f0))) > 0) continue;
        ++admissible;
        auto facs = detail::factor_squarefree_z(detail::primitive_z(f0));
        if (!best_a || facs.size() < best_factors.size()) {
            best_a = a;
            best_factors = std::move(facs);
        }
        if (best_factors.size() == 1) return {f};
    }
    if (!best_a) throw Error("no admissible evaluation point for bivariate factorization");
    const Rational a = *best_a;

    Series s = to_series(f, mv, ov, a);
    QPoly lc(s.size());
    for (std::size_t j = 0; j < s.size(); ++j)
        if (static_cast<int>(s[j].size()) == n + 1) lc[j] = s[j][n];
    detail::trim(lc);
    const std::size_t k = static_cast<std::size_t>(f.degree(ov) + detail::degree(lc) + 1);

    // monic target f / lc(t) mod t^k
    QPoly linv = series_inverse(lc, k);
    Series target(k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i <= j && i < s.size(); ++i)
            if (linv[j - i] != 0) target[j] = detail::add(target[j], detail::scale(s[i], linv[j - i]));

    std::vector<QPoly> uni;
    for (const auto& z : best_factors) uni.push_back(detail::monic(detail::to_q(z)));

    std::vector<Series> lifted;
    {
        Series current = target;
        for (std::size_t i = 0; i + 1 < uni.size(); ++i) {
            QPoly rest{Rational(1)};
            for (std::size_t j = i + 1; j < uni.size(); ++j) rest = detail::mul(rest, uni[j]);
            Series A, B;
            lift_pair(current, uni[i], rest, k, A, B);
            lifted.push_back(std::move(A));
            current = std::move(B);
        }
        lifted.push_back(std::move(current));
    }

    std::vector<Polynomial> out;
    Polynomial cur = f;
    std::vector<bool> used(lifted.size(), false);
    std::size_t remaining = lifted.size();
    for (std::size_t size = 1; 2 * size <= remaining; ++size) {
        bool found = true;
        while (found && 2 * size <= remaining) {
            found = false;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) idx.push_back(i);
            Polynomial lc_cur = coefficients_in(cur, mv).back();
            QPoly lct = to_qpoly(a == 0 ? lc_cur : shift_variable(lc_cur, ov, a), ov);
            Series base(lct.size());
            for (std::size_t j = 0; j < lct.size(); ++j)
                if (lct[j] != 0) base[j] = QPoly{lct[j]};
            std::vector<std::size_t> pick(size);
            for (std::size_t i = 0; i < size; ++i) pick[i] = i;
            while (true) {
                Series cand = base;
                for (std::size_t i : pick) cand = series_mul(cand, lifted[idx[i]], k);
                Polynomial h = from_series(cand, mv, ov, a, ctx);
                Polynomial c = content_wrt(h, mv);
                if (!c.is_constant()) h = *divide_exact(h, c);
                h = normalize(h);
                if (h.degree(mv) > 0) {
                    if (auto q = divide_exact(cur, h)) {
                        out.push_back(h);
                        cur = normalize(*q);
                        for (std::size_t i : pick) used[idx[i]] = true;
                        remaining -= size;
                        found = true;
                        break;
                    }
                }
                std::size_t kk = size;
                while (kk > 0 && pick[kk - 1] == idx.size() - size + (kk - 1)) --kk;
                if (kk == 0) break;
                ++pick[kk - 1];
                for (std::size_t j = kk; j < size; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }
    if (cur.degree(mv) > 0) out.push_back(cur);
    return out;
}

// Irreducible factors over Q of a squarefree primitive polynomial in <= 2 variables.
void factor_squarefree(const Polynomial& f, std::vector<Polynomial>& out) {
    if (f.is_constant()) return;
    auto vars = involved_variables(f);
    if (vars.size() == 1) {
        std::size_t v = vars[0];
        for (const auto& z : detail::factor_squarefree_z(detail::primitive_z(to_qpoly(f, v)))) {
            std::vector<Term> terms;
            for (std::size_t i = 0; i < z.size(); ++i) {
                if (z[i] == 0) continue;
                Monomial m;
                m[v] = static_cast<std::uint32_t>(i);
                terms.push_back({m, Rational(z[i])});
            }
            out.push_back(normalize(Polynomial::from_terms(f.context(), std::move(terms))));
        }
        return;
    }
    std::size_t a = vars[0], b = vars[1];
    // contents with respect to each variable are univariate
    Polynomial ca = content_wrt(f, a);
    Polynomial rest = ca.is_constant() ? f : *divide_exact(f, ca);
    factor_squarefree(ca, out);
    Polynomial cb = content_wrt(rest, b);
    if (!cb.is_constant()) rest = *divide_exact(rest, cb);
    factor_squarefree(cb, out);
    if (rest.is_constant()) return;
    std::size_t mv = rest.degree(a) <= rest.degree(b) ? a : b;
    std::size_t ov = mv == a ? b : a;
    for (auto& h : factor_primitive_bivariate(normalize(rest), mv, ov)) out.push_back(normalize(h));
}

// ---- rank helpers for the Gao/Ruppert system

std::size_t rank_mod(const std::vector<std::vector<Integer>>& rows, std::size_t cols, std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> m(rows.size(), std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = mpz_fdiv_ui(rows[i][j].get_mpz_t(), p);
    auto powm = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        std::uint64_t inv = powm(m[rank][c], p - 2);
        for (std::size_t j = c; j < cols; ++j) m[rank][j] = m[rank][j] * inv % p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            std::uint64_t f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = (m[i][j] + (p - f) * m[rank][j]) % p;
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_exact(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = Rational(rows[i][j]);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::vector<Factor> squarefree_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw Error("square-free decomposition of zero");
    std::map<unsigned, Polynomial> parts;
    squarefree_from(normalize(f), 0, parts);
    std::vector<Factor> out;
    for (auto& [m, p] : parts) out.push_back({p, m});
    return out;
}

Factorization factor_bivariate(const Polynomial& f, const FactorOptions& options) {
    if (f.is_zero()) throw Error("factorization of zero");
    if (involved_variables(f).size() > 2) throw Error("factor_bivariate needs a polynomial in at most two variables");
    if (f.total_degree() > options.max_degree)
        throw DegreeCapExceeded("total degree " + std::to_string(f.total_degree()) + " exceeds the factorization cap " +
                                std::to_string(options.max_degree));
    Factorization out;
    out.content = content(f);
    Polynomial prim = normalize(f);
    const VarContext& ctx = f.context();

    std::vector<Factor> found;
    // monomial part first
    Monomial low = prim.terms().front().mono;
    for (const auto& t : prim.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i) low[i] = std::min(low[i], t.mono[i]);
    if (!low.is_one()) {
        prim = *divide_exact(prim, Polynomial::term(ctx, low, Rational(1)));
        for (std::size_t i = 0; i < ctx.arity(); ++i) {
            if (!low[i]) continue;
            found.push_back({Polynomial::variable(ctx, i), low[i]});
        }
    }
    for (const auto& part : squarefree_decomposition(prim)) {
        std::vector<Polynomial> irr;
        factor_squarefree(part.poly, irr);
        for (auto& p : irr) found.push_back({std::move(p), part.multiplicity});
    }
    std::sort(found.begin(), found.end(), [](const Factor& a, const Factor& b) {
        if (a.poly.total_degree() != b.poly.total_degree()) return a.poly.total_degree() < b.poly.total_degree();
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        for (std::size_t i = 0; i < a.poly.size(); ++i) {
            const Term &s = a.poly.terms()[i], &t = b.poly.terms()[i];
            if (s.mono != t.mono) return s.mono > t.mono;
            if (s.coeff != t.coeff) return s.coeff < t.coeff;
        }
        return a.multiplicity < b.multiplicity;
    });
    out.factors = std::move(found);
    if (!(out.expand(ctx) == f)) throw Error("internal: factorization does not reproduce its input");

    if (options.absolute) {
        for (const auto& fac : out.factors) {
            std::size_t dim = absolute_factor_count(fac.poly);
            out.gao_dimension.push_back(dim);
            out.absolute.push_back(dim == 1 ? AbsoluteStatus::AbsolutelyIrreducible : AbsoluteStatus::Undetermined);
        }
    }
    return out;
}

std::size_t absolute_factor_count(const Polynomial& f_in) {
    auto vars = involved_variables(f_in);
    if (vars.empty()) return 0;
    if (vars.size() == 1) return static_cast<std::size_t>(f_in.degree(vars[0]));
    if (vars.size() > 2) throw Error("absolute irreducibility check needs two variables");
    const VarContext& ctx = f_in.context();
    Polynomial f = normalize(f_in);  // integer coefficients
    const std::size_t vx = vars[0], vy = vars[1];
    const unsigned m = static_cast<unsigned>(f.degree(vx)), n = static_cast<unsigned>(f.degree(vy));
    Polynomial fx = partial_derivative(f, vx), fy = partial_derivative(f, vy);

    std::vector<Polynomial> columns;
    auto mono = [&](unsigned i, unsigned j) {
        Monomial e;
        e[vx] = i;
        e[vy] = j;
        return Polynomial::term(ctx, e, Rational(1));
    };
    // f g_y - g f_y + h f_x - f h_x = 0
    for (unsigned i = 0; i + 1 <= m; ++i)
        for (unsigned j = 0; j <= n; ++j) {
            Polynomial e = mono(i, j);
            columns.push_back(f * partial_derivative(e, vy) - e * fy);
        }
    for (unsigned i = 0; i <= m; ++i)
        for (unsigned j = 0; j + 1 <= n; ++j) {
            Polynomial e = mono(i, j);
            columns.push_back(e * fx - f * partial_derivative(e, vx));
        }
    std::map<Monomial, std::size_t> row_of;
    for (const auto& c : columns)
        for (const auto& t : c.terms()) row_of.emplace(t.mono, row_of.size());
    std::vector<std::vector<Integer>> rows(row_of.size(), std::vector<Integer>(columns.size(), Integer(0)));
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& t : columns[j].terms()) rows[row_of[t.mono]][j] = t.coeff.get_num();

    const std::size_t cols = columns.size();
    std::size_t best = cols;
    for (std::uint64_t p : {2147483647ull, 2147483629ull}) {
        best = std::min(best, cols - rank_mod(rows, cols, p));
        if (best == 1) return 1;
    }
    return cols - rank_exact(rows, cols);
}

Preservation stays_irreducible(const Polynomial& vj, const Endomorphism& f, const FactorOptions& options) {
    Preservation out;
    const Polynomial images[] = {f.p, f.q};
    out.image = substitute(embed(vj, VarContext::u12()), images);
    if (out.image.is_constant()) {
        out.image_factors.content = out.image.constant_term();
        return out;
    }
    out.image_factors = factor_bivariate(out.image, options);
    out.preserved = out.image_factors.irreducible();
    return out;
}

namespace {

std::optional<Factorization> image_factors(const Endomorphism& f, const Polynomial& v, const FactorOptions& options) {
    if (v.is_zero()) throw Error("localization at zero");
    if (v.is_constant()) return std::nullopt;
    const Polynomial images[] = {f.p, f.q};
    Polynomial image = substitute(embed(v, VarContext::u12()), images);
    if (image.is_constant()) return std::nullopt;
    return factor_bivariate(image, options);
}

UnitsVerdict tag_factors(const Factorization& fac, const SubringMembership& sm) {
    UnitsVerdict out;
    for (const auto& factor : fac.factors) {
        UnitWitness w{factor.poly, factor.multiplicity, sm.member(factor.poly)};
        if (!w.G) out.all_units_in_Cpq = false;
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

}  // namespace

UnitsVerdict localization_units_check(const Endomorphism& f, const Polynomial& v, const FactorOptions& options,
                                      const GroebnerLimits& limits) {
    auto fac = image_factors(f, v, options);
    if (!fac) return {};
    return tag_factors(*fac, SubringMembership(f, limits));
}

UnitsVerdict localization_units_check(const Endomorphism& f, const Polynomial& v, const SubringMembership& membership,
                                      const FactorOptions& options) {
    auto fac = image_factors(f, v, options);
    if (!fac) return {};
    return tag_factors(*fac, membership);
}

ProbeResult factorially_closed_probe(const Endomorphism& f, std::size_t samples, int degree_bound, std::uint64_t seed,
                                     const FactorOptions& options, const GroebnerLimits& limits) {
    ProbeResult out;
    std::mt19937_64 rng(seed);
    const VarContext& u = VarContext::u12();
    SubringMembership sm(f, limits);
    const Polynomial images[] = {f.p, f.q};
    degree_bound = std::max(degree_bound, 1);
    for (std::size_t s = 0; s < samples; ++s) {
        Polynomial G(u);
        if (s < 2) {
            G = Polynomial::variable(u, s);
        } else {
            while (G.is_constant()) {
                int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(degree_bound));
                int nterms = 1 + static_cast<int>(rng() % 3);
                for (int t = 0; t < nterms; ++t) {
                    Monomial m;
                    int total = static_cast<int>(rng() % static_cast<std::uint64_t>(d + 1));
                    m[0] = static_cast<std::uint32_t>(rng() % static_cast<std::uint64_t>(total + 1));
                    m[1] = static_cast<std::uint32_t>(total) - m[0];
                    long c = static_cast<long>(rng() % 6);
                    c = c < 3 ? c - 3 : c - 2;  // [-3, 3] without 0
                    G += Polynomial::term(u, m, Rational(c));
                }
            }
        }
        Polynomial img = substitute(G, images);
        if (img.is_constant()) continue;
        if (img.total_degree() > options.max_degree) {
            ++out.skipped;
            continue;
        }
        ++out.tested;
        FactorOptions plain = options;
        plain.absolute = false;
        Factorization fac = factor_bivariate(img, plain);
        if (fac.irreducible()) continue;
        for (const auto& factor : fac.factors) {
            if (sm.member(factor.poly)) continue;
            out.violation = true;
            out.G = G;
            out.witness = std::make_pair(factor.poly, *divide_exact(img, factor.poly));
            return out;
        }
    }
    return out;
}

}  // namespace keller
