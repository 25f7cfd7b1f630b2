#pragma once

// Brute-force references that share nothing with the library's factoring
// code: they only use ring arithmetic and exact division from poly_core.

#include "support.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace kt::oracle {

using Dense = std::map<std::pair<unsigned, unsigned>, Integer>;

inline Integer eval(const Dense& f, const Integer& a, const Integer& b) {
    Integer s = 0;
    for (const auto& [e, c] : f) {
        Integer t = c;
        for (unsigned i = 0; i < e.first; ++i) t *= a;
        for (unsigned j = 0; j < e.second; ++j) t *= b;
        s += t;
    }
    return s;
}

inline std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    return out;
}

// 0, 1, -1, 2, -2, ...
inline long nth_point(int i) { return i % 2 ? (i + 1) / 2 : -(i / 2); }

using Quad = std::array<Integer, 3>;  // c0 + c1 t + c2 t^2

// Integer polynomials of degree <= 2 that divide every value of F on the
// chosen points (F given by values on demand).
template <class Values>
std::vector<Quad> line_candidates(Values F) {
    std::vector<long> pts, extra;
    for (int i = 0; pts.size() < 3 || extra.size() < 3; ++i) {
        long t = nth_point(i);
        if (F(t) == 0) continue;
        (pts.size() < 3 ? pts : extra).push_back(t);
    }
    std::vector<std::vector<Integer>> choices;
    for (long t : pts) {
        std::vector<Integer> ds;
        for (const auto& d : divisors(F(t))) {
            ds.push_back(d);
            ds.push_back(-d);
        }
        choices.push_back(ds);
    }
    std::vector<Quad> out;
    const Rational t0(pts[0]), t1(pts[1]), t2(pts[2]);
    for (const auto& v0 : choices[0])
        for (const auto& v1 : choices[1])
            for (const auto& v2 : choices[2]) {
                // Newton form through (t0,v0), (t1,v1), (t2,v2)
                Rational d01 = (Rational(v1) - v0) / (t1 - t0);
                Rational d12 = (Rational(v2) - v1) / (t2 - t1);
                Rational a2 = (d12 - d01) / (t2 - t0);
                Rational a1 = d01 - a2 * (t0 + t1);
                Rational a0 = Rational(v0) - a1 * t0 - a2 * t0 * t0;
                if (a0.get_den() != 1 || a1.get_den() != 1 || a2.get_den() != 1) continue;
                Quad q{a0.get_num(), a1.get_num(), a2.get_num()};
                bool ok = true;
                for (long t : extra) {
                    Integer val = q[0] + q[1] * t + q[2] * t * t;
                    if (val == 0 || F(t) % val != 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) out.push_back(q);
            }
    return out;
}

// A factor of degree 1..min(2, n-1) of an integer-primitive f in two
// variables, by exhaustive Kronecker-style interpolation.
inline std::optional<Polynomial> proper_factor(const Polynomial& f) {
    const VarContext& ctx = f.context();
    int n = f.total_degree();
    if (n <= 1) return std::nullopt;
    Dense dense;
    for (const auto& t : f.terms()) dense[{t.mono[0], t.mono[1]}] = t.coeff.get_num();

    std::vector<long> rows;
    for (int i = 0; rows.size() < 3; ++i) {
        long k = nth_point(i);
        bool nonzero = false;
        for (int s = 0; s < 5 && !nonzero; ++s) nonzero = eval(dense, nth_point(s), k) != 0;
        if (nonzero) rows.push_back(k);
    }
    std::vector<std::vector<Quad>> cand;
    for (long k : rows) cand.push_back(line_candidates([&](long t) { return eval(dense, t, k); }));

    const Rational k0(rows[0]), k1(rows[1]), k2(rows[2]);
    for (const auto& c0 : cand[0])
        for (const auto& c1 : cand[1]) {
            // total degree <= 2: the x^2 coefficient is constant in y, the x
            // coefficient is affine in y
            if (c1[2] != c0[2]) continue;
            Rational slope = (Rational(c1[1]) - c0[1]) / (k1 - k0);
            for (const auto& c2 : cand[2]) {
                if (c2[2] != c0[2]) continue;
                if (Rational(c2[1]) != Rational(c0[1]) + slope * (k2 - k0)) continue;
                // interpolate every x-power in y
                Polynomial g(ctx);
                bool integral = true;
                for (unsigned i = 0; i < 3 && integral; ++i) {
                    Rational v0(c0[i]), v1(c1[i]), v2(c2[i]);
                    Rational d01 = (v1 - v0) / (k1 - k0);
                    Rational d12 = (v2 - v1) / (k2 - k1);
                    Rational a2 = (d12 - d01) / (k2 - k0);
                    Rational a1 = d01 - a2 * (k0 + k1);
                    Rational a0 = v0 - a1 * k0 - a2 * k0 * k0;
                    const Rational coeffs[] = {a0, a1, a2};
                    for (unsigned j = 0; j < 3; ++j) {
                        if (coeffs[j] == 0) continue;
                        if (coeffs[j].get_den() != 1) integral = false;
                        Monomial m;
                        m[0] = i;
                        m[1] = j;
                        g += Polynomial::term(ctx, m, coeffs[j]);
                    }
                }
                if (!integral) continue;
                int d = g.total_degree();
                if (d < 1 || d > 2 || d >= n) continue;
                if (divide_exact(f, g)) return normalize(g);
            }
        }
    return std::nullopt;
}

// Irreducible factors over Q with repetition, normalized; total degree <= 4.
inline std::vector<Polynomial> factor(const Polynomial& f) {
    if (f.total_degree() > 4) throw std::invalid_argument("oracle handles total degree <= 4");
    if (f.is_constant()) return {};
    Polynomial g = normalize(f);
    auto h = proper_factor(g);
    if (!h) return {g};
    auto rest = divide_exact(g, *h);
    std::vector<Polynomial> out = factor(*h);
    for (auto& p : factor(*rest)) out.push_back(p);
    return out;
}

}  // namespace kt::oracle
