#include "univariate.hpp"

#include "keller/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace keller::detail {

void trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly scale(const QPoly& a, const Rational& c) {
    if (c == 0) return {};
    QPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

void divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.empty()) throw DivisionByZero();
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    const Rational inv = 1 / b.back();
    while (r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        Rational c = r.back() * inv;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        r.pop_back();
        trim(r);
    }
    trim(q);
}

QPoly rem(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    divrem(a, b, q, r);
    return r;
}

QPoly derivative(const QPoly& a) {
    if (a.size() <= 1) return {};
    QPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
    trim(r);
    return r;
}

QPoly monic(const QPoly& a) {
    if (a.empty()) return a;
    return scale(a, 1 / a.back());
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.empty()) {
        QPoly r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

QPoly gcdex(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
    QPoly r0 = a, r1 = b;
    QPoly s0{Rational(1)}, s1{}, t0{}, t1{Rational(1)};
    while (!r1.empty()) {
        QPoly q, r;
        divrem(r0, r1, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly s2 = sub(s0, mul(q, s1));
        QPoly t2 = sub(t0, mul(q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s = s0;
        t = t0;
        return r0;
    }
    Rational inv = 1 / r0.back();
    s = scale(s0, inv);
    t = scale(t0, inv);
    return scale(r0, inv);
}

QPoly to_q(const ZPoly& f) {
    QPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = Rational(f[i]);
    return r;
}

ZPoly primitive_z(const QPoly& f) {
    Integer den = 1;
    for (const auto& c : f) den = lcm(den, c.get_den());
    ZPoly z(f.size());
    Integer g = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        z[i] = f[i].get_num() * (den / f[i].get_den());
        g = gcd(g, z[i]);
    }
    if (g == 0) return {};
    if (z.back() < 0) g = -g;
    for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return z;
}

namespace {

using u64 = std::uint64_t;
using MPoly = std::vector<u64>;  // coefficients mod a prime below 2^31

struct Field {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return a * b % p; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
    u64 reduce(const Integer& c) const { return mpz_fdiv_ui(c.get_mpz_t(), p); }
};

void mtrim(MPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const MPoly& f) { return static_cast<int>(f.size()) - 1; }

MPoly reduce(const ZPoly& f, const Field& F) {
    MPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = F.reduce(f[i]);
    mtrim(r);
    return r;
}

MPoly msub(const MPoly& a, const MPoly& b, const Field& F) {
    MPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    mtrim(r);
    return r;
}

MPoly mmul(const MPoly& a, const MPoly& b, const Field& F) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
    }
    mtrim(r);
    return r;
}

void mdivrem(const MPoly& a, const MPoly& b, MPoly& q, MPoly& r, const Field& F) {
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    const u64 inv = F.inv(b.back());
    while (r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        u64 c = F.mul(r.back(), inv);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
        r.pop_back();
        mtrim(r);
    }
    mtrim(q);
}

MPoly mrem(const MPoly& a, const MPoly& b, const Field& F) {
    MPoly q, r;
    mdivrem(a, b, q, r, F);
    return r;
}

MPoly mquo(const MPoly& a, const MPoly& b, const Field& F) {
    MPoly q, r;
    mdivrem(a, b, q, r, F);
    return q;
}

MPoly mmonic(const MPoly& a, const Field& F) {
    if (a.empty()) return a;
    u64 inv = F.inv(a.back());
    MPoly r = a;
    for (auto& c : r) c = F.mul(c, inv);
    return r;
}

MPoly mgcd(MPoly a, MPoly b, const Field& F) {
    while (!b.empty()) {
        MPoly r = mrem(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return mmonic(a, F);
}

// s*a + t*b = 1 for coprime a, b.
void mgcdex(const MPoly& a, const MPoly& b, MPoly& s, MPoly& t, const Field& F) {
    MPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        MPoly q, r;
        mdivrem(r0, r1, q, r, F);
        r0 = std::move(r1);
        r1 = std::move(r);
        MPoly s2 = msub(s0, mmul(q, s1, F), F);
        MPoly t2 = msub(t0, mmul(q, t1, F), F);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    u64 inv = F.inv(r0.back());
    s = s0;
    t = t0;
    for (auto& c : s) c = F.mul(c, inv);
    for (auto& c : t) c = F.mul(c, inv);
}

MPoly mderivative(const MPoly& a, const Field& F) {
    if (a.size() <= 1) return {};
    MPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    mtrim(r);
    return r;
}

// base^e mod m, e given as a GMP integer.
MPoly mpowmod(MPoly base, const Integer& e, const MPoly& m, const Field& F) {
    MPoly r{1};
    base = mrem(base, m, F);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mrem(mmul(r, r, F), m, F);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mrem(mmul(r, base, F), m, F);
    }
    return r;
}

// Distinct-degree split of a monic squarefree f: (product of all degree-d factors, d).
std::vector<std::pair<MPoly, int>> distinct_degree(MPoly f, const Field& F) {
    std::vector<std::pair<MPoly, int>> out;
    MPoly x{0, 1};
    MPoly w = x;
    Integer p(static_cast<unsigned long>(F.p));
    for (int d = 1; 2 * d <= degree(f); ++d) {
        w = mpowmod(w, p, f, F);
        MPoly g = mgcd(f, msub(w, x, F), F);
        if (degree(g) > 0) {
            out.push_back({g, d});
            f = mquo(f, g, F);
            w = mrem(w, f, F);
        }
    }
    if (degree(f) > 0) out.push_back({f, degree(f)});
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (p odd).
void equal_degree(const MPoly& g, int d, const Field& F, std::mt19937_64& rng, std::vector<MPoly>& out) {
    if (degree(g) == d) {
        out.push_back(g);
        return;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> coef(0, F.p - 1);
    while (true) {
        MPoly a(static_cast<std::size_t>(degree(g)));
        for (auto& c : a) c = coef(rng);
        mtrim(a);
        if (degree(a) < 1) continue;
        MPoly b = mpowmod(a, e, g, F);
        b = msub(b, MPoly{1}, F);
        MPoly h = mgcd(g, b, F);
        if (degree(h) > 0 && degree(h) < degree(g)) {
            equal_degree(h, d, F, rng, out);
            equal_degree(mquo(g, h, F), d, F, rng, out);
            return;
        }
    }
}

std::vector<MPoly> factor_mod(const MPoly& f, const Field& F) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ F.p);
    std::vector<MPoly> out;
    for (auto& [g, d] : distinct_degree(mmonic(f, F), F)) equal_degree(g, d, F, rng, out);
    return out;
}

bool is_small_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---- integer polynomials modulo M = p^e

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

void zmod(ZPoly& a, const Integer& m) {
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    detail::trim(a);
}

ZPoly lift_up(const MPoly& a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<unsigned long>(a[i]));
    return r;
}

// F monic mod p^e with F = A0 * B0 mod p (A0, B0 monic, coprime). Returns A, B
// monic with F = A * B mod p^e.
void lift_pair(const ZPoly& target, const MPoly& a0, const MPoly& b0, const Field& F, unsigned e, ZPoly& A,
               ZPoly& B) {
    MPoly s, t;
    mgcdex(a0, b0, s, t, F);
    A = lift_up(a0);
    B = lift_up(b0);
    Integer pj(static_cast<unsigned long>(F.p));
    const Integer p = pj;
    for (unsigned j = 1; j < e; ++j) {
        Integer next = pj * p;
        ZPoly err = target;
        ZPoly prod = zmul(A, B);
        err.resize(std::max(err.size(), prod.size()), Integer(0));
        for (std::size_t i = 0; i < prod.size(); ++i) err[i] -= prod[i];
        zmod(err, next);
        MPoly em(err.size());
        for (std::size_t i = 0; i < err.size(); ++i) {
            Integer q = err[i] / pj;  // exact
            em[i] = F.reduce(q);
        }
        mtrim(em);
        if (!em.empty()) {
            MPoly da = mrem(mmul(em, t, F), a0, F);
            MPoly db = mrem(mmul(em, s, F), b0, F);
            for (std::size_t i = 0; i < da.size(); ++i) A[i] += pj * Integer(static_cast<unsigned long>(da[i]));
            for (std::size_t i = 0; i < db.size(); ++i) B[i] += pj * Integer(static_cast<unsigned long>(db[i]));
        }
        pj = next;
    }
    zmod(A, pj);
    zmod(B, pj);
}

// Exact division over Z; empty optional when b does not divide a.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly& quotient) {
    if (b.empty() || a.size() < b.size()) return false;
    if (a.front() != 0 && b.front() != 0 && !mpz_divisible_p(a.front().get_mpz_t(), b.front().get_mpz_t()))
        return false;
    ZPoly r = a;
    ZPoly q(a.size() - b.size() + 1, Integer(0));
    while (r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return false;
        Integer c = r.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        r.pop_back();
        detail::trim(r);
        if (r.size() < b.size()) break;
    }
    if (!r.empty()) return false;
    quotient = std::move(q);
    return true;
}

ZPoly symmetric_primitive(ZPoly a, const Integer& m) {
    Integer half = m / 2;
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    detail::trim(a);
    return primitive_z(to_q(a));
}

}  // namespace

std::vector<ZPoly> factor_squarefree_z(const ZPoly& f_in) {
    ZPoly f = primitive_z(to_q(f_in));
    const int n = degree(f);
    if (n <= 1) return {f};

    // pick the prime among a few admissible ones with the fewest modular factors
    std::vector<MPoly> best_factors;
    Field best{0};
    int admissible = 0;
    for (u64 p = 101; admissible < 5 && p < 100000; p += 2) {
        if (!is_small_prime(p)) continue;
        Field F{p};
        if (F.reduce(f.back()) == 0) continue;
        MPoly fm = reduce(f, F);
        if (degree(mgcd(fm, mderivative(fm, F), F)) > 0) continue;
        ++admissible;
        auto facs = factor_mod(fm, F);
        if (best.p == 0 || facs.size() < best_factors.size()) {
            best = F;
            best_factors = std::move(facs);
        }
        if (best_factors.size() == 1) break;
    }
    if (best.p == 0) throw Error("no admissible prime for univariate factorization");
    if (best_factors.size() == 1) return {f};

    // bound on coefficients of lc(f)/lc(h) * h for any factor h
    Integer norm1 = 0;
    for (const auto& c : f) norm1 += abs(c);
    Integer bound = abs(f.back()) * norm1 * 2;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
    unsigned e = 1;
    Integer M(static_cast<unsigned long>(best.p));
    while (M <= bound) {
        M *= static_cast<unsigned long>(best.p);
        ++e;
    }

    // monic target lc^{-1} f mod p^e
    Integer lc_inv;
    mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), M.get_mpz_t());
    ZPoly target = f;
    for (auto& c : target) c *= lc_inv;
    zmod(target, M);

    std::vector<ZPoly> lifted;
    {
        ZPoly current = target;
        for (std::size_t i = 0; i + 1 < best_factors.size(); ++i) {
            MPoly rest{1};
            for (std::size_t j = i + 1; j < best_factors.size(); ++j) rest = mmul(rest, best_factors[j], best);
            ZPoly A, B;
            lift_pair(current, best_factors[i], rest, best, e, A, B);
            lifted.push_back(std::move(A));
            current = std::move(B);
        }
        lifted.push_back(std::move(current));
    }

    // subset recombination
    std::vector<ZPoly> out;
    std::vector<bool> used(lifted.size(), false);
    std::size_t remaining = lifted.size();
    for (std::size_t size = 1; 2 * size <= remaining; ++size) {
        bool found = true;
        while (found && 2 * size <= remaining) {
            found = false;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) idx.push_back(i);
            std::vector<std::size_t> pick(size);
            for (std::size_t i = 0; i < size; ++i) pick[i] = i;
            while (true) {
                ZPoly cand{f.back()};
                for (std::size_t i : pick) {
                    cand = zmul(cand, lifted[idx[i]]);
                    zmod(cand, M);
                }
                ZPoly h = symmetric_primitive(cand, M);
                ZPoly q;
                if (degree(h) > 0 && zdivides(f, h, q)) {
                    out.push_back(h);
                    f = primitive_z(to_q(q));
                    for (std::size_t i : pick) used[idx[i]] = true;
                    remaining -= size;
                    found = true;
                    break;
                }
                // next combination
                std::size_t k = size;
                while (k > 0 && pick[k - 1] == idx.size() - size + (k - 1)) --k;
                if (k == 0) break;
                ++pick[k - 1];
                for (std::size_t j = k; j < size; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }
    if (degree(f) > 0) out.push_back(f);
    return out;
}

}  // namespace keller::detail
