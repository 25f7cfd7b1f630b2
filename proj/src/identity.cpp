#include "keller/poly.hpp"

#include <algorithm>

namespace keller {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller–Rabin for 64-bit inputs.
bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

struct IntPoly {
    std::vector<std::pair<Monomial, Integer>> terms;
    Integer den = 1;   // original = terms / den
    Integer norm1 = 0; // sum of |coefficients|
};

IntPoly integerize(const Polynomial& p) {
    IntPoly out;
    for (const auto& t : p.terms()) out.den = lcm(out.den, t.coeff.get_den());
    for (const auto& t : p.terms()) {
        Integer c = t.coeff.get_num() * (out.den / t.coeff.get_den());
        out.norm1 += abs(c);
        out.terms.emplace_back(t.mono, std::move(c));
    }
    return out;
}

Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Montgomery arithmetic modulo an odd p < 2^62; values stay in Montgomery form.
struct Monty {
    u64 p, pinv, r2;

    explicit Monty(u64 mod) : p(mod) {
        u64 inv = mod;  // Newton iteration for mod^{-1} mod 2^64
        for (int i = 0; i < 6; ++i) inv *= 2 - mod * inv;
        pinv = -inv;
        u128 r = (static_cast<u128>(1) << 64) % mod;
        r2 = static_cast<u64>(r * r % mod);
    }
    u64 mul(u64 a, u64 b) const {
        u128 t = static_cast<u128>(a) * b;
        u64 m = static_cast<u64>(t) * pinv;
        u64 u = static_cast<u64>((t + static_cast<u128>(m) * p) >> 64);
        return u >= p ? u - p : u;
    }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 from(const Integer& c) const { return mul(mpz_fdiv_ui(c.get_mpz_t(), p), r2); }
    u64 from(u64 c) const { return mul(c % p, r2); }
};

// Dense rows of a polynomial in at most two target variables: rows[j][k] is
// the coefficient of a^k b^j.
using Rows = std::vector<std::vector<u64>>;

Rows to_rows(const IntPoly& f, const Monty& M, std::size_t m) {
    Rows rows;
    for (const auto& [mono, c] : f.terms) {
        std::size_t j = m == 2 ? mono[1] : 0, k = mono[0];
        if (rows.size() <= j) rows.resize(j + 1);
        if (rows[j].size() <= k) rows[j].resize(k + 1, 0);
        rows[j][k] = M.add(rows[j][k], M.from(c));
    }
    return rows;
}

// Coefficients in b at a fixed a (powers of a supplied).
std::vector<u64> at_a(const Rows& rows, const std::vector<u64>& apow, const Monty& M) {
    std::vector<u64> out(rows.size(), 0);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        u64 s = 0;
        for (std::size_t k = 0; k < rows[j].size(); ++k)
            if (rows[j][k]) s = M.add(s, M.mul(rows[j][k], apow[k]));
        out[j] = s;
    }
    return out;
}

u64 horner(const std::vector<u64>& c, u64 b, const Monty& M) {
    u64 s = 0;
    for (std::size_t j = c.size(); j-- > 0;) s = M.add(M.mul(s, b), c[j]);
    return s;
}

// dE * sum_a n_a prod I_i^a_i d_i^(e_i - a_i) == dG * prod d_i^e_i * E on the
// triangle {a + b <= dtotal}, all modulo M.p.
bool agrees_mod(const Monty& M, const IntPoly& gi, const std::vector<IntPoly>& ii, const std::vector<unsigned>& e,
                const IntPoly& ei, const Integer& scale_e, std::size_t m, int dtotal) {
    const std::size_t n = ii.size();
    std::vector<Rows> img_rows(n);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i)
        if (e[i]) {
            img_rows[i] = to_rows(ii[i], M, m);
            active.push_back(i);
        }
    Rows e_rows = to_rows(ei, M, m);
    const u64 se = M.from(scale_e);

    // per-term constants c * dE * prod d_i^(e_i - a_i)
    std::vector<std::vector<u64>> dpow(n);
    for (std::size_t i : active) {
        dpow[i].assign(e[i] + 1, M.from(1ull));
        u64 d = M.from(ii[i].den);
        for (unsigned k = 1; k <= e[i]; ++k) dpow[i][k] = M.mul(dpow[i][k - 1], d);
    }
    const u64 de = M.from(ei.den);
    std::vector<u64> gconst;
    std::vector<Monomial> gmono;
    for (const auto& [mono, c] : gi.terms) {
        u64 t = M.mul(M.from(c), de);
        for (std::size_t i : active) t = M.mul(t, dpow[i][e[i] - mono[i]]);
        gconst.push_back(t);
        gmono.push_back(mono);
    }

    std::size_t max_exp = 0;
    for (std::size_t i : active)
        for (const auto& row : img_rows[i]) max_exp = std::max(max_exp, row.size());
    for (const auto& row : e_rows) max_exp = std::max(max_exp, row.size());
    std::vector<u64> apow(max_exp + 1);
    std::vector<std::vector<u64>> vpow(n);
    for (std::size_t i : active) vpow[i].resize(e[i] + 1);

    // Points (a, b) with a + b <= dtotal are unisolvent for total degree <= dtotal.
    for (int a = 0; a <= dtotal; ++a) {
        const u64 am = M.from(static_cast<u64>(a));
        apow[0] = M.from(1ull);
        for (std::size_t k = 1; k < apow.size(); ++k) apow[k] = M.mul(apow[k - 1], am);
        std::vector<std::vector<u64>> img_b(n);
        for (std::size_t i : active) img_b[i] = at_a(img_rows[i], apow, M);
        std::vector<u64> e_b = at_a(e_rows, apow, M);
        const int bmax = m == 2 ? dtotal - a : 0;
        for (int b = 0; b <= bmax; ++b) {
            const u64 bm = M.from(static_cast<u64>(b));
            for (std::size_t i : active) {
                u64 v = horner(img_b[i], bm, M);
                vpow[i][0] = M.from(1ull);
                for (unsigned k = 1; k <= e[i]; ++k) vpow[i][k] = M.mul(vpow[i][k - 1], v);
            }
            u64 lhs = 0;
            for (std::size_t t = 0; t < gconst.size(); ++t) {
                u64 v = gconst[t];
                for (std::size_t i : active) v = M.mul(v, vpow[i][gmono[t][i]]);
                lhs = M.add(lhs, v);
            }
            u64 rhs = M.mul(se, horner(e_b, bm, M));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

}  // namespace

bool composition_equals(const Polynomial& g, std::span<const Polynomial> images, const Polynomial& expected_in) {
    const std::size_t n = g.context().arity();
    if (images.size() < n) throw MissingAssignment(g.context().name(images.size()));
    std::optional<VarContext> target;
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.involves(i)) continue;
        if (!target) target = images[i].context();
        else if (!(*target == images[i].context())) throw ContextMismatch("substitution images live in different contexts");
    }
    if (!target) target = expected_in.context();
    Polynomial expected = expected_in;
    if (!(expected.context() == *target)) {
        if (!expected.is_constant()) throw ContextMismatch("expected value outside the images' context");
        expected = Polynomial(*target, expected.constant_term());
    }

    const std::size_t m = target->arity();
    std::vector<int> img_deg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (g.involves(i)) img_deg[i] = std::max(images[i].total_degree(), 0);
    int dtotal = std::max(expected.total_degree(), 0);
    for (const auto& t : g.terms()) {
        int d = 0;
        for (std::size_t i = 0; i < n; ++i) d += static_cast<int>(t.mono[i]) * img_deg[i];
        dtotal = std::max(dtotal, d);
    }

    if (m > 2 || dtotal <= 30) return substitute(g, images) == expected;

    IntPoly gi = integerize(g), ei = integerize(expected);
    std::vector<IntPoly> ii(n);
    std::vector<unsigned> e(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.involves(i)) continue;
        ii[i] = integerize(images[i]);
        e[i] = static_cast<unsigned>(g.degree(i));
    }

    // F = dE * sum n_a prod I_i^a_i d_i^(e_i - a_i) - dG * prod d_i^e_i * E_int must vanish.
    Integer scale_e = gi.den;
    for (std::size_t i = 0; i < n; ++i)
        if (e[i]) scale_e *= ipow(ii[i].den, e[i]);
    Integer bound = abs(scale_e) * ei.norm1;
    for (const auto& [mono, c] : gi.terms) {
        Integer b = abs(c) * ei.den;
        for (std::size_t i = 0; i < n; ++i)
            if (e[i]) b *= ipow(ii[i].norm1, mono[i]) * ipow(ii[i].den, e[i] - mono[i]);
        bound += b;
    }

    Integer modulus = 1;
    u64 prime = (1ull << 62);
    while (modulus <= bound) {
        do --prime;
        while (!is_prime(prime));
        modulus *= Integer(std::to_string(prime));
        if (!agrees_mod(Monty(prime), gi, ii, e, ei, scale_e, m, dtotal)) return false;
    }
    return true;
}

}  // namespace keller
