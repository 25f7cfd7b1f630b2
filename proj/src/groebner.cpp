#include "keller/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

namespace keller {

std::string MonomialOrder::describe() const {
    switch (kind_) {
        case Kind::Lex:
            return "lex";
        case Kind::Grevlex:
            return "grevlex";
        case Kind::Block:
            return "block(" + std::to_string(split_) + (inner_ == Kind::Lex ? ",lex" : "") + ")";
    }
    return "?";
}

GroebnerLimits GroebnerLimits::from_environment() {
    GroebnerLimits limits;
    if (const char* env = std::getenv("KELLER_MAX_SPAIRS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) limits.max_spairs = static_cast<std::size_t>(v);
    }
    return limits;
}

Ideal::Ideal(VarContext ctx, std::vector<Polynomial> gens) : context(std::move(ctx)) {
    for (auto& g : gens) {
        if (!(g.context() == context)) throw ContextMismatch("ideal generator outside the ideal's context");
        if (!g.is_zero()) generators.push_back(std::move(g));
    }
}

namespace {

struct ITerm {
    Monomial m;
    Integer c;
};
using IPoly = std::vector<ITerm>;

void sort_desc(IPoly& p, const MonomialOrder& ord) {
    std::sort(p.begin(), p.end(), [&](const ITerm& a, const ITerm& b) { return ord.greater(a.m, b.m); });
}

std::uint32_t max_degree(const IPoly& p) {
    std::uint32_t d = 0;
    for (const auto& t : p) d = std::max(d, t.m.total_degree());
    return d;
}

// Divides by the integer content and makes the leading coefficient positive.
// Returns the factor divided out (signed).
Integer make_primitive(IPoly& p) {
    if (p.empty()) return Integer(1);
    Integer g = 0;
    for (const auto& t : p) {
        g = gcd(g, t.c);
        if (g == 1) break;
    }
    if (p.front().c < 0) g = -g;
    if (g != 1)
        for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    return g;
}

// Scale k with p * k integer-primitive.
IPoly to_ipoly(const Polynomial& p, const MonomialOrder& ord, Rational* scale = nullptr) {
    Integer den = 1;
    for (const auto& t : p.terms()) den = lcm(den, t.coeff.get_den());
    IPoly out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Integer c = t.coeff.get_num() * (den / t.coeff.get_den());
        out.push_back({t.mono, std::move(c)});
    }
    sort_desc(out, ord);
    Integer g = make_primitive(out);
    if (scale) {
        *scale = Rational(den, g);
        scale->canonicalize();
    }
    return out;
}

Polynomial from_ipoly(const IPoly& p, const VarContext& ctx, const Rational& divide_by = Rational(1)) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p) terms.push_back({t.m, Rational(t.c) / divide_by});
    return Polynomial::from_terms(ctx, std::move(terms));
}

// sf * mf * p[pf:] - sg * mg * g[gf:]; monomial multiplication preserves the order.
IPoly combine(const Integer& sf, const Monomial& mf, const IPoly& p, std::size_t pf, const Integer& sg,
              const Monomial& mg, const IPoly& g, std::size_t gf, const MonomialOrder& ord) {
    IPoly out;
    out.reserve((p.size() - std::min(pf, p.size())) + (g.size() - gf));
    const bool sf_one = sf == 1, mf_one = mf.is_one();
    std::size_t i = pf, j = gf;
    auto take_p = [&] {
        ITerm t{mf_one ? p[i].m : p[i].m * mf, sf_one ? p[i].c : Integer(sf * p[i].c)};
        out.push_back(std::move(t));
        ++i;
    };
    auto take_g = [&] {
        out.push_back({g[j].m * mg, -sg * g[j].c});
        ++j;
    };
    while (i < p.size() && j < g.size()) {
        Monomial a = mf_one ? p[i].m : p[i].m * mf;
        Monomial b = g[j].m * mg;
        int c = ord.compare(a, b);
        if (c > 0) {
            take_p();
        } else if (c < 0) {
            take_g();
        } else {
            Integer v = sf * p[i].c - sg * g[j].c;
            if (v != 0) out.push_back({a, std::move(v)});
            ++i;
            ++j;
        }
    }
    while (i < p.size()) take_p();
    while (j < g.size()) take_g();
    return out;
}

struct Entry {
    IPoly p;
    std::uint32_t sugar = 0;
    std::uint32_t maxdeg = 0;
};

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t sugar;
};

class Engine {
  public:
    Engine(const MonomialOrder& ord, const GroebnerLimits& limits) : ord_(ord), limits_(limits) {}

    std::size_t add_entry(IPoly p, std::uint32_t sugar) {
        Entry e;
        e.maxdeg = max_degree(p);
        e.sugar = std::max(sugar, e.maxdeg);
        e.p = std::move(p);
        entries_.push_back(std::move(e));
        return entries_.size() - 1;
    }

    const Entry& entry(std::size_t i) const { return entries_[i]; }

    struct NF {
        IPoly rem;
        Rational scale{1};  // rem ≡ scale * f modulo the reducers
        bool reduced = false;
    };

    NF normal_form(IPoly p, std::span<const std::size_t> reducers) {
        NF out;
        std::size_t pos = 0;
        while (pos < p.size()) {
            const Monomial& m = p[pos].m;
            const Entry* red = nullptr;
            for (std::size_t idx : reducers)
                if (entries_[idx].p.front().m.divides(m)) {
                    red = &entries_[idx];
                    break;
                }
            if (!red) {
                out.rem.push_back(std::move(p[pos]));
                ++pos;
                continue;
            }
            const Integer& lg = red->p.front().c;
            Integer g = gcd(p[pos].c, lg);
            Integer sf = lg / g;
            Integer sg = p[pos].c / g;
            if (sf < 0) {
                sf = -sf;
                sg = -sg;
            }
            Monomial q = m / red->p.front().m;
            std::uint32_t deg = q.total_degree() + red->maxdeg;
            note_degree(deg);
            p = combine(sf, Monomial{}, p, pos + 1, sg, q, red->p, 1, ord_);
            pos = 0;
            out.reduced = true;
            if (sf != 1) {
                for (auto& t : out.rem) t.c *= sf;
                out.scale *= sf;
                Integer c = 0;
                for (const auto& t : out.rem) {
                    c = gcd(c, t.c);
                    if (c == 1) break;
                }
                for (std::size_t k = 0; k < p.size() && c != 1; ++k) c = gcd(c, p[k].c);
                if (c > 1) {
                    for (auto& t : out.rem) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
                    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
                    out.scale /= c;
                }
            }
        }
        return out;
    }

    std::vector<IPoly> run(std::vector<IPoly> gens) {
        for (auto& g : gens) {
            if (g.empty()) continue;
            note_degree(max_degree(g));
            std::uint32_t sugar = max_degree(g);
            NF nf = normal_form(std::move(g), active_);
            if (nf.rem.empty()) continue;
            make_primitive(nf.rem);
            update(add_entry(std::move(nf.rem), sugar));
        }
        while (!pairs_.empty()) {
            auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
                if (a.sugar != b.sugar) return a.sugar < b.sugar;
                int c = ord_.compare(a.lcm, b.lcm);
                if (c != 0) return c < 0;
                return std::tie(a.j, a.i) < std::tie(b.j, b.i);
            });
            Pair pr = *best;
            pairs_.erase(best);
            if (++stats_.spairs > limits_.max_spairs)
                throw ResourceCapExceeded("S-pair cap of " + std::to_string(limits_.max_spairs) + " exceeded");
            IPoly s = spoly(pr.i, pr.j);
            if (s.empty()) {
                ++stats_.zero_reductions;
                continue;
            }
            NF nf = normal_form(std::move(s), active_);
            if (nf.rem.empty()) {
                ++stats_.zero_reductions;
                continue;
            }
            make_primitive(nf.rem);
            update(add_entry(std::move(nf.rem), pr.sugar));
        }
        // Active set is minimal; interreduce the tails.
        std::vector<IPoly> reduced;
        for (std::size_t k = 0; k < active_.size(); ++k) {
            std::vector<std::size_t> others;
            for (std::size_t l = 0; l < active_.size(); ++l)
                if (l != k) others.push_back(active_[l]);
            NF nf = normal_form(entries_[active_[k]].p, others);
            make_primitive(nf.rem);
            reduced.push_back(std::move(nf.rem));
        }
        std::sort(reduced.begin(), reduced.end(),
                  [&](const IPoly& a, const IPoly& b) { return ord_.greater(a.front().m, b.front().m); });
        return reduced;
    }

    IPoly spoly(std::size_t i, std::size_t j) {
        const Entry& a = entries_[i];
        const Entry& b = entries_[j];
        Monomial l = lcm(a.p.front().m, b.p.front().m);
        Integer g = gcd(a.p.front().c, b.p.front().c);
        Integer sa = b.p.front().c / g;
        Integer sb = a.p.front().c / g;
        if (sa < 0) {
            sa = -sa;
            sb = -sb;
        }
        Monomial ma = l / a.p.front().m, mb = l / b.p.front().m;
        note_degree(std::max(ma.total_degree() + a.maxdeg, mb.total_degree() + b.maxdeg));
        return combine(sa, ma, a.p, 1, sb, mb, b.p, 1, ord_);
    }

    const GroebnerStats& stats() const { return stats_; }

  private:
    void note_degree(std::uint32_t d) {
        stats_.max_degree = std::max(stats_.max_degree, d);
        if (d > limits_.max_degree)
            throw ResourceCapExceeded("intermediate degree " + std::to_string(d) + " exceeds cap of " +
                                      std::to_string(limits_.max_degree));
    }

    // Gebauer–Möller pair update for the new basis element h.
    void update(std::size_t h) {
        const Monomial& lh = entries_[h].p.front().m;
        std::vector<std::size_t> c(active_.begin(), active_.end());
        std::vector<std::size_t> d;
        auto lcm_with_h = [&](std::size_t g) { return lcm(lh, entries_[g].p.front().m); };
        for (std::size_t k = 0; k < c.size(); ++k) {
            std::size_t g1 = c[k];
            Monomial l1 = lcm_with_h(g1);
            bool keep = coprime(lh, entries_[g1].p.front().m);
            if (!keep) {
                keep = true;
                for (std::size_t k2 = k + 1; k2 < c.size() && keep; ++k2)
                    if (lcm_with_h(c[k2]).divides(l1)) keep = false;
                for (std::size_t g2 : d)
                    if (keep && lcm_with_h(g2).divides(l1)) keep = false;
            }
            if (keep) d.push_back(g1);
        }
        std::vector<Pair> next;
        for (const auto& pr : pairs_) {
            if (lh.divides(pr.lcm) && lcm_with_h(pr.i) != pr.lcm && lcm_with_h(pr.j) != pr.lcm) continue;
            next.push_back(pr);
        }
        for (std::size_t g : d) {
            if (coprime(lh, entries_[g].p.front().m)) continue;
            Monomial l = lcm_with_h(g);
            const Entry& eg = entries_[g];
            const Entry& eh = entries_[h];
            std::uint32_t sugar = std::max(eg.sugar + l.total_degree() - eg.p.front().m.total_degree(),
                                           eh.sugar + l.total_degree() - lh.total_degree());
            next.push_back({g, h, l, sugar});
        }
        pairs_ = std::move(next);
        std::vector<std::size_t> act;
        for (std::size_t g : active_)
            if (!lh.divides(entries_[g].p.front().m)) act.push_back(g);
        act.push_back(h);
        active_ = std::move(act);
    }

    MonomialOrder ord_;
    GroebnerLimits limits_;
    GroebnerStats stats_;
    std::vector<Entry> entries_;
    std::vector<std::size_t> active_;
    std::vector<Pair> pairs_;
};

}  // namespace

const Term& leading_term(const Polynomial& p, const MonomialOrder& order) {
    if (p.is_zero()) throw Error("zero polynomial has no leading term");
    const Term* best = &p.terms().front();
    for (const auto& t : p.terms())
        if (order.greater(t.mono, best->mono)) best = &t;
    return *best;
}

// Term-at-a-time reduction into an ordered accumulator: each step touches only
// the reducer's terms. Rewriting the whole working polynomial per step (as the
// fraction-free engine does) goes quadratic when reduction swells, e.g. a map
// component reduced against the graph of its inverse.
NormalFormResult normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& order) {
    struct Reducer {
        Monomial lead;
        std::vector<Term> tail;  // divided by the leading coefficient
    };
    std::vector<Reducer> reducers;
    for (const auto& g : basis) {
        if (!(g.context() == f.context())) throw ContextMismatch();
        if (g.is_zero()) continue;
        const Term& lt = leading_term(g, order);
        Reducer r{lt.mono, {}};
        for (const auto& t : g.terms())
            if (t.mono != lt.mono) r.tail.push_back({t.mono, t.coeff / lt.coeff});
        reducers.push_back(std::move(r));
    }
    auto before = [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) > 0; };
    std::map<Monomial, Rational, decltype(before)> acc(before);
    for (const auto& t : f.terms()) acc.emplace(t.mono, t.coeff);
    std::vector<Term> rem;
    bool reduced = false;
    while (!acc.empty()) {
        auto top = acc.begin();
        Monomial m = top->first;
        Rational c = std::move(top->second);
        acc.erase(top);
        const Reducer* red = nullptr;
        for (const auto& r : reducers)
            if (r.lead.divides(m)) {
                red = &r;
                break;
            }
        if (!red) {
            rem.push_back({m, std::move(c)});
            continue;
        }
        reduced = true;
        Monomial q = m / red->lead;
        for (const auto& t : red->tail) {
            auto [it, fresh] = acc.try_emplace(t.mono * q);
            it->second -= c * t.coeff;
            if (it->second == 0) acc.erase(it);
        }
    }
    return {Polynomial::from_terms(f.context(), std::move(rem)), reduced};
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
    const Term& a = leading_term(f, order);
    const Term& b = leading_term(g, order);
    Monomial l = lcm(a.mono, b.mono);
    return Polynomial::term(f.context(), l / a.mono, Rational(1 / a.coeff)) * f -
           Polynomial::term(g.context(), l / b.mono, Rational(1 / b.coeff)) * g;
}

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order, const GroebnerLimits& limits) {
    if (ideal.generators.empty()) throw Error("Gröbner basis of the zero ideal requested");
    if (order.kind() == MonomialOrder::Kind::Block && order.split() > ideal.context.arity())
        throw Error("block split exceeds the number of variables");
    Engine engine(order, limits);
    std::vector<IPoly> gens;
    for (const auto& g : ideal.generators) gens.push_back(to_ipoly(g, order));
    auto reduced = engine.run(std::move(gens));
    GroebnerBasis gb;
    gb.ideal = ideal;
    gb.order = order;
    for (const auto& r : reduced) gb.elements.push_back(from_ipoly(r, ideal.context));
    gb.stats = engine.stats();
    return gb;
}

GroebnerCheck verify_groebner(const GroebnerBasis& basis) {
    GroebnerCheck check;
    check.generators_reduce = true;
    for (const auto& g : basis.ideal.generators)
        if (!normal_form(g, basis.elements, basis.order).remainder.is_zero()) check.generators_reduce = false;
    check.spolys_reduce = true;
    const auto& el = basis.elements;
    for (std::size_t i = 0; i < el.size() && check.spolys_reduce; ++i)
        for (std::size_t j = i + 1; j < el.size(); ++j) {
            Polynomial s = s_polynomial(el[i], el[j], basis.order);
            if (!normal_form(s, el, basis.order).remainder.is_zero()) {
                check.spolys_reduce = false;
                break;
            }
        }
    return check;
}

Elimination eliminate(const Ideal& ideal, std::span<const std::string> drop, const GroebnerLimits& limits) {
    const VarContext& ctx = ideal.context;
    std::vector<std::string> dropped, kept;
    for (const auto& name : drop)
        if (!ctx.index_of(name)) throw UnknownVariable(name);
    for (const auto& name : ctx.names()) {
        if (std::find(drop.begin(), drop.end(), name) != drop.end()) dropped.push_back(name);
        else kept.push_back(name);
    }
    if (kept.empty()) throw Error("elimination would drop every variable");
    Elimination out;
    VarContext kept_ctx(kept);
    if (dropped.empty()) {
        out.basis = buchberger(ideal, MonomialOrder::grevlex(), limits);
        out.result = Ideal(kept_ctx, out.basis.elements);
        return out;
    }
    std::vector<std::string> all = dropped;
    all.insert(all.end(), kept.begin(), kept.end());
    VarContext block_ctx(all);
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators) gens.push_back(embed(g, block_ctx));
    out.basis = buchberger(Ideal(block_ctx, std::move(gens)), MonomialOrder::block(dropped.size()), limits);
    std::vector<Polynomial> free;
    for (const auto& g : out.basis.elements) {
        bool involves_dropped = false;
        for (std::size_t v = 0; v < dropped.size(); ++v) involves_dropped = involves_dropped || g.involves(v);
        if (!involves_dropped) free.push_back(embed(g, kept_ctx));
    }
    out.result = Ideal(kept_ctx, std::move(free));
    return out;
}

namespace {

const VarContext& kernel_context() {
    static const VarContext ctx{"x", "y", "u1", "u2", "u3"};
    return ctx;
}

const VarContext& tagged_context() {
    static const VarContext ctx{"x", "y", "u1", "u2"};
    return ctx;
}

}  // namespace

KernelGenerator kernel_generator(const Endomorphism& f, const GroebnerLimits& limits) {
    const VarContext& ctx = kernel_context();
    auto var = [&](std::size_t i) { return Polynomial::variable(ctx, i); };
    Ideal ideal(ctx, {var(0) - var(4), embed(f.p, ctx) - var(2), embed(f.q, ctx) - var(3)});
    KernelGenerator kg;
    kg.basis = buchberger(ideal, MonomialOrder::block(2), limits);
    std::vector<Polynomial> free;
    for (const auto& g : kg.basis.elements)
        if (!g.involves(0) && !g.involves(1)) free.push_back(embed(g, VarContext::u123()));
    if (free.empty()) throw ZeroKernel("kernel of the presentation is zero");
    if (free.size() > 1)
        throw AlgebraicallyDependent("kernel of the presentation is not principal (" + std::to_string(free.size()) +
                                     " generators): p and q are algebraically dependent");
    kg.H = std::move(free.front());
    int r = kg.H.degree(2);
    if (r <= 0) throw AlgebraicallyDependent("kernel generator does not involve u3: p and q are algebraically dependent");
    kg.r = static_cast<unsigned>(r);
    for (const auto& c : coefficients_in(kg.H, 2)) kg.coeffs.push_back(embed(c, VarContext::u12()));
    return kg;
}

SubringMembership::SubringMembership(const Endomorphism& f, const GroebnerLimits& limits)
    : map_(f), tagged_(tagged_context()) {
    auto var = [&](std::size_t i) { return Polynomial::variable(tagged_, i); };
    Ideal ideal(tagged_, {embed(f.p, tagged_) - var(2), embed(f.q, tagged_) - var(3)});
    basis_ = buchberger(ideal, MonomialOrder::block(2), limits);
}

namespace {

Rational evaluate_at(const Polynomial& p, const Rational& a, const Rational& b) {
    Rational sum = 0;
    for (const auto& t : p.terms()) {
        Rational v = t.coeff;
        for (std::uint32_t e = 0; e < t.mono[0]; ++e) v *= a;
        for (std::uint32_t e = 0; e < t.mono[1]; ++e) v *= b;
        sum += v;
    }
    return sum;
}

// Looks for G of total degree <= max_degree with G(p, q) = w by solving for its
// coefficients at sample points. Cheap next to the normal form, whose
// intermediate expressions swell to w(s, t) for an inverse (s, t). Any
// candidate still has to pass the exact check in member().
std::optional<Polynomial> small_witness(const Endomorphism& f, const Polynomial& w, unsigned max_degree) {
    const VarContext& u = VarContext::u12();
    for (unsigned d = 1; d <= max_degree; ++d) {
        std::vector<std::pair<unsigned, unsigned>> cols;
        for (unsigned i = 0; i <= d; ++i)
            for (unsigned j = 0; i + j <= d; ++j) cols.emplace_back(i, j);
        const std::size_t n = cols.size(), rows = n + 4;
        std::vector<std::vector<Rational>> m;
        for (std::size_t k = 0; m.size() < rows; ++k) {
            // points (a, b) on anti-diagonals, shifted off the axes
            long s = static_cast<long>(k / 7), t = static_cast<long>(k % 7);
            Rational a(s + 2 * t - 5), b(3 * s - t + 1);
            Rational pv = evaluate_at(f.p, a, b), qv = evaluate_at(f.q, a, b);
            std::vector<Rational> row;
            for (auto [i, j] : cols) {
                Rational v = 1;
                for (unsigned e = 0; e < i; ++e) v *= pv;
                for (unsigned e = 0; e < j; ++e) v *= qv;
                row.push_back(v);
            }
            row.push_back(evaluate_at(w, a, b));
            m.push_back(std::move(row));
        }
        std::vector<int> pivot(n, -1);
        std::size_t r = 0;
        bool consistent = true;
        for (std::size_t c = 0; c <= n && r < rows; ++c) {
            std::size_t k = r;
            while (k < rows && m[k][c] == 0) ++k;
            if (k == rows) continue;
            if (c == n) {
                consistent = false;
                break;
            }
            std::swap(m[k], m[r]);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || m[i][c] == 0) continue;
                Rational factor = m[i][c] / m[r][c];
                for (std::size_t cc = c; cc <= n; ++cc) m[i][cc] -= factor * m[r][cc];
            }
            pivot[c] = static_cast<int>(r++);
        }
        if (!consistent) continue;
        Polynomial g(u);
        for (std::size_t c = 0; c < n; ++c) {
            if (pivot[c] < 0) continue;
            const auto& row = m[static_cast<std::size_t>(pivot[c])];
            Monomial mono{};
            mono[0] = cols[c].first;
            mono[1] = cols[c].second;
            g += Polynomial::term(u, mono, row[n] / row[c]);
        }
        const Polynomial images[] = {f.p, f.q};
        if (composition_equals(g, images, embed(w, VarContext::xy()))) return g;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Polynomial> SubringMembership::member(const Polynomial& w) const {
    if (auto g = small_witness(map_, embed(w, VarContext::xy()), 4)) return g;
    Polynomial nf = normal_form(embed(w, tagged_), basis_.elements, basis_.order).remainder;
    if (nf.involves(0) || nf.involves(1)) return std::nullopt;
    Polynomial g = embed(nf, VarContext::u12());
    const Polynomial images[] = {map_.p, map_.q};
    if (!composition_equals(g, images, embed(w, VarContext::xy())))
        throw MembershipFailed("membership witness does not reproduce the input");
    return g;
}

std::optional<Polynomial> subring_membership(const Polynomial& w, const Endomorphism& f, const GroebnerLimits& limits) {
    return SubringMembership(f, limits).member(w);
}

}  // namespace keller
