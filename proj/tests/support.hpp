#pragma once

#include "keller/cli.hpp"
#include "keller/factor.hpp"
#include "keller/funcfield.hpp"
#include "keller/groebner.hpp"
#include "keller/pipeline.hpp"
#include "keller/poly.hpp"

#include <algorithm>
#include <random>
#include <string_view>
#include <vector>

namespace kt {

using namespace keller;

inline Polynomial X(std::string_view s) { return parse_poly(s, VarContext::xy()); }
inline Polynomial U(std::string_view s) { return parse_poly(s, VarContext::u12()); }
inline Polynomial U3(std::string_view s) { return parse_poly(s, VarContext::u123()); }
inline Endomorphism map(std::string_view p, std::string_view q) { return Endomorphism(X(p), X(q)); }

inline Polynomial random_poly(std::mt19937_64& rng, const VarContext& ctx, int max_degree, int max_terms,
                              int bound = 5, bool fractions = false) {
    Polynomial p(ctx);
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_terms));
    for (int t = 0; t < n; ++t) {
        Monomial m;
        int left = static_cast<int>(rng() % static_cast<unsigned>(max_degree + 1));
        for (std::size_t i = 0; i < ctx.arity(); ++i) {
            int e = i + 1 == ctx.arity() ? left : static_cast<int>(rng() % static_cast<unsigned>(left + 1));
            m[i] = static_cast<std::uint32_t>(e);
            left -= e;
        }
        long c = static_cast<long>(rng() % static_cast<unsigned>(2 * bound + 1)) - bound;
        long d = fractions ? 1 + static_cast<long>(rng() % 3) : 1;
        p += Polynomial::term(ctx, m, make_rational(c, d));
    }
    return p;
}

inline std::vector<Polynomial> expand_multiset(const Factorization& f) {
    std::vector<Polynomial> out;
    for (const auto& fac : f.factors)
        for (unsigned i = 0; i < fac.multiplicity; ++i) out.push_back(normalize(fac.poly));
    return out;
}

inline bool same_multiset(std::vector<Polynomial> a, std::vector<Polynomial> b) {
    auto key = [](const Polynomial& p) { return to_string(p); };
    auto less = [&](const Polynomial& l, const Polynomial& r) { return key(l) < key(r); };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
}

}  // namespace kt
