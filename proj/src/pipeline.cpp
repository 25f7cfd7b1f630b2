#include "keller/pipeline.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace keller {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::NotKellerNonConstantJacobian:
            return "NotKellerNonConstantJacobian";
        case Verdict::NotKellerZeroJacobian:
            return "NotKellerZeroJacobian";
        case Verdict::Degenerate:
            return "Degenerate";
        case Verdict::Automorphism:
            return "Automorphism";
        case Verdict::CounterexampleCandidate:
            return "CounterexampleCandidate";
    }
    return "?";
}

namespace {

Polynomial X() { return Polynomial::variable(VarContext::xy(), 0); }
Polynomial Y() { return Polynomial::variable(VarContext::xy(), 1); }

}  // namespace

bool verify_inverse(const Endomorphism& f, const Polynomial& s_in, const Polynomial& t_in) {
    const VarContext& u = VarContext::u12();
    Polynomial s, t;
    try {
        s = embed(s_in, u);
        t = embed(t_in, u);
    } catch (const Error&) {
        return false;
    }
    const Polynomial forward[] = {f.p, f.q};
    if (!composition_equals(s, forward, X()) || !composition_equals(t, forward, Y())) return false;
    const Polynomial backward[] = {s, t};
    return composition_equals(f.p, backward, Polynomial::variable(u, 0)) &&
           composition_equals(f.q, backward, Polynomial::variable(u, 1));
}

std::pair<Polynomial, Polynomial> invert(const Endomorphism& f, const GroebnerLimits& limits) {
    SubringMembership sm(f, limits);
    auto s = sm.member(X());
    if (!s) throw MembershipFailed("x is not in Q[p, q]");
    auto t = sm.member(Y());
    if (!t) throw MembershipFailed("y is not in Q[p, q]");
    return {*s, *t};
}

unsigned birationality_degree(const Endomorphism& f, const GroebnerLimits& limits) {
    return kernel_generator(f, limits).r;
}

ClassificationReport classify(const Endomorphism& f, const ClassifyConfig& config) {
    auto start = std::chrono::steady_clock::now();
    ClassificationReport R;
    R.map = f;
    R.forced = config.force;
    R.jacobian = jacobian_det(f.p, f.q);
    const bool keller = R.jacobian.kind == JacobianKind::NonzeroConstant;

    auto finish = [&]() -> ClassificationReport {
        R.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return R;
    };
    auto stop = [&](const std::string& reason) -> ClassificationReport {
        if (keller) {
            R.verdict = Verdict::Degenerate;
            R.reason = reason;
        } else {
            R.notes.push_back("evidence stopped: " + reason);
        }
        return finish();
    };

    if (!keller) {
        R.verdict = R.jacobian.kind == JacobianKind::Zero ? Verdict::NotKellerZeroJacobian
                                                          : Verdict::NotKellerNonConstantJacobian;
        if (!config.force) {
            R.notes.push_back("Jacobian is not a nonzero constant; later stages skipped (--force computes them)");
            return finish();
        }
        R.notes.push_back(
            "Jacobian is not a nonzero constant: the evidence below is informational and no automorphism "
            "conclusion is drawn from it");
    }

    try {
        R.kernel = kernel_generator(f, config.limits);
        R.stats += R.kernel->basis.stats;
    } catch (const Error& e) {
        return stop(e.what());
    }
    const unsigned r = R.kernel->r;

    try {
        R.uv = uv_decomposition(f, config.limits);
        R.stats += R.uv->stats;
    } catch (const Error& e) {
        return stop(e.what());
    }
    if (R.uv->r != r) return stop("degree of the minimal polynomial disagrees with the kernel generator");
    if (!uv_identity_holds(f, *R.uv)) return stop("v(p,q)*y - u(p,q,x) does not vanish");
    if (!associates(cleared_minimal_polynomial(R.uv->g), R.kernel->H))
        return stop("minimal polynomial of x does not match the kernel generator");

    std::optional<SubringMembership> membership;
    auto tagged = [&]() -> const SubringMembership& {
        if (!membership) {
            membership.emplace(f, config.limits);
            R.stats += membership->basis().stats;
        }
        return *membership;
    };

    try {
        const Polynomial& v = R.uv->v;
        if (!v.is_constant()) {
            R.v_factorization = factor_bivariate(v, config.factor);
            for (const auto& fac : R.v_factorization->factors) {
                Preservation pres = stays_irreducible(fac.poly, f, config.factor);
                R.v_factors.push_back({fac.poly, fac.multiplicity, pres.preserved, pres.image_factors});
            }
        }
        R.units = v.is_constant() ? UnitsVerdict{} : localization_units_check(f, v, tagged(), config.factor);
    } catch (const Error& e) {
        return stop(e.what());
    }

    TfaeBits bits;
    bits.ii = r == 1;
    bits.iii = R.units->all_units_in_Cpq;
    if (r == 1) {
        try {
            const SubringMembership& sm = tagged();
            auto s = sm.member(X());
            auto t = sm.member(Y());
            if (s && t && verify_inverse(f, *s, *t)) {
                R.inverse = std::make_pair(*s, *t);
                bits.i = true;
            } else if (!s || !t) {
                R.notes.push_back(std::string(!s ? "x" : "y") + " is not in Q[p, q]: no polynomial inverse");
            }
            // x = -H0(p,q)/H1(p,q); for an automorphism H1 is a constant
            const Polynomial& H1 = R.kernel->coeffs[1];
            const Polynomial& H0 = R.kernel->coeffs[0];
            if (s) R.inverse_matches_kernel = H1.is_constant() && *s == H0 * Rational(-1 / H1.constant_term());
        } catch (const Error& e) {
            return stop(e.what());
        }
    }
    R.tfae = bits;

    if (keller) {
        if (r >= 2) {
            R.verdict = Verdict::CounterexampleCandidate;
            R.notes.push_back("Keller map with r >= 2: this contradicts the Jacobian conjecture and signals a bug");
        } else if (!bits.consistent()) {
            R.verdict = Verdict::Degenerate;
            R.reason = "TFAE bits disagree";
        } else if (R.inverse_matches_kernel && !*R.inverse_matches_kernel) {
            R.verdict = Verdict::Degenerate;
            R.reason = "-H0/H1 disagrees with the membership inverse";
        } else {
            R.verdict = Verdict::Automorphism;
        }
    } else if (bits.iii) {
        R.notes.push_back(
            "every unit of the localization lies in Q(p,q), but without the Keller precondition this concludes "
            "nothing about invertibility");
    }
    return finish();
}

TfaeReport cross_check_tfae(const Endomorphism& f, const ClassifyConfig& config) {
    TfaeReport out;
    out.bits.ii = kernel_generator(f, config.limits).r == 1;
    try {
        auto [s, t] = invert(f, config.limits);
        out.bits.i = verify_inverse(f, s, t);
    } catch (const MembershipFailed&) {
        out.bits.i = false;
    }
    try {
        UVDecomposition uv = uv_decomposition(f, config.limits);
        out.bits.iii = localization_units_check(f, uv.v, config.factor, config.limits).all_units_in_Cpq;
    } catch (const NotShapePosition&) {
        out.bits.iii = false;
    }
    out.consistent = out.bits.consistent();
    return out;
}

// ---------------------------------------------------------------- tame maps

namespace {

struct Draw {
    std::mt19937_64 rng;

    std::uint64_t below(std::uint64_t n) { return rng() % n; }
    long in(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    Rational pool(bool nonzero) {
        long num = 0;
        while (true) {
            num = in(-3, 3);
            if (!nonzero || num != 0) break;
        }
        return make_rational(num, in(1, 3));
    }
};

AffineStep random_affine(Draw& d) {
    AffineStep s;
    do {
        s.a = d.pool(false);
        s.b = d.pool(false);
        s.c = d.pool(false);
        s.d = d.pool(false);
    } while (s.det() == 0);
    s.e = d.pool(false);
    s.f = d.pool(false);
    return s;
}

}  // namespace

Endomorphism generate_tame(const TameRecipe& recipe) {
    Polynomial p = X(), q = Y();
    for (const auto& step : recipe.steps) {
        if (const auto* a = std::get_if<AffineStep>(&step)) {
            if (a->det() == 0) throw Error("affine step with zero determinant");
            Polynomial np = a->a * p + a->b * q + a->e;
            Polynomial nq = a->c * p + a->d * q + a->f;
            p = std::move(np);
            q = std::move(nq);
        } else {
            const auto& e = std::get<ElementaryStep>(step);
            if (e.in_x) q = q + e.c * pow(p, e.k);
            else p = p + e.c * pow(q, e.k);
        }
    }
    return Endomorphism(p, q);
}

Rational recipe_jacobian(const TameRecipe& recipe) {
    Rational j = 1;
    for (const auto& step : recipe.steps)
        if (const auto* a = std::get_if<AffineStep>(&step)) j *= a->det();
    return j;
}

TameRecipe make_recipe(std::uint64_t seed, int degree_cap) {
    Draw d{std::mt19937_64(seed)};
    for (int attempt = 0; attempt < 64; ++attempt) {
        TameRecipe r;
        r.seed = seed;
        r.degree_cap = degree_cap;
        int depth = static_cast<int>(d.in(1, 4));
        for (int i = 0; i < depth; ++i) {
            if (i == 0 || d.below(2) == 0) r.steps.push_back(random_affine(d));
            ElementaryStep e;
            e.in_x = d.below(2) == 0;
            e.c = d.pool(true);
            e.k = static_cast<unsigned>(d.in(2, 3));
            r.steps.push_back(e);
        }
        if (d.below(2) == 0) r.steps.push_back(random_affine(d));
        Endomorphism f = generate_tame(r);
        if (std::max(f.p.total_degree(), f.q.total_degree()) <= degree_cap) return r;
    }
    throw ResourceCapExceeded("no tame recipe within degree cap " + std::to_string(degree_cap) + " after 64 attempts");
}

std::string describe(const TameRecipe& recipe) {
    std::ostringstream out;
    bool first = true;
    for (const auto& step : recipe.steps) {
        if (!first) out << " ; ";
        first = false;
        if (const auto* a = std::get_if<AffineStep>(&step)) {
            out << "affine [[" << a->a << ", " << a->b << "], [" << a->c << ", " << a->d << "]] + (" << a->e << ", "
                << a->f << ")";
        } else {
            const auto& e = std::get<ElementaryStep>(step);
            out << (e.in_x ? "q += " : "p += ") << e.c << " * " << (e.in_x ? "p" : "q") << "^" << e.k;
        }
    }
    return out.str();
}

}  // namespace keller
