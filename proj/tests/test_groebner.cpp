#include "doctest.h"
#include "support.hpp"

using namespace kt;

namespace {

Monomial random_mono(std::mt19937_64& rng, std::size_t n) {
    Monomial m;
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(rng() % 4);
    return m;
}

std::vector<Polynomial> gb(const VarContext& ctx, std::vector<Polynomial> gens, const MonomialOrder& order) {
    return buchberger(Ideal(ctx, std::move(gens)), order).elements;
}

}  // namespace

TEST_CASE("monomial order laws") {
    std::mt19937_64 rng(7);
    const MonomialOrder orders[] = {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block(2),
                                    MonomialOrder::block(2, MonomialOrder::Kind::Lex), MonomialOrder::block(3)};
    for (const auto& o : orders)
        for (int i = 0; i < 300; ++i) {
            Monomial a = random_mono(rng, 5), b = random_mono(rng, 5), w = random_mono(rng, 5);
            int ab = o.compare(a, b);
            CHECK(ab == -o.compare(b, a));
            CHECK((ab == 0) == (a == b));
            if (ab > 0) CHECK(o.compare(a * w, b * w) > 0);
            if (!a.is_one()) CHECK(o.compare(a, Monomial{}) > 0);
            Monomial c = random_mono(rng, 5);
            if (ab > 0 && o.compare(b, c) > 0) CHECK(o.compare(a, c) > 0);
        }
}

TEST_CASE("block order eliminates the first variables") {
    MonomialOrder o = MonomialOrder::block(2);
    Monomial big, small;
    big[1] = 1;
    small[2] = 9;
    small[3] = 9;
    CHECK(o.greater(big, small));
}

TEST_CASE("normal form examples") {
    const VarContext& xy = VarContext::xy();
    const Polynomial b1[] = {X("x")};
    CHECK(normal_form(X("x^2"), b1, MonomialOrder::lex()).remainder.is_zero());
    const Polynomial b2[] = {X("x^2 - 1")};
    auto nf = normal_form(X("x^2 y + y"), b2, MonomialOrder::lex());
    CHECK(nf.remainder == X("2y"));
    CHECK(nf.reduced);
    const Polynomial b3[] = {X("x"), X("y^2 + 1")};
    CHECK(normal_form(X("5/2"), b3, MonomialOrder::grevlex()).remainder == X("5/2"));
    CHECK(normal_form(X("x y + 3"), std::span<const Polynomial>{}, MonomialOrder::lex()).remainder == X("x y + 3"));
    (void)xy;
}

TEST_CASE("Buchberger examples") {
    const VarContext& xy = VarContext::xy();
    CHECK(gb(xy, {X("x")}, MonomialOrder::lex()) == std::vector<Polynomial>{X("x")});
    // two steps by hand: x - y^2, then y^4 - y
    auto basis = gb(xy, {X("x^2 - y"), X("y^2 - x")}, MonomialOrder::lex());
    CHECK(basis == std::vector<Polynomial>{X("x - y^2"), X("y^4 - y")});

    VarContext five{"x", "y", "u1", "u2", "u3"};
    auto P = [&](std::string_view s) { return parse_poly(s, five); };
    auto elim = gb(five, {P("x - u1"), P("y + x^2 - u2"), P("u3 - x")}, MonomialOrder::block(2));
    bool found = false;
    for (const auto& e : elim)
        if (associates(e, P("u1 - u3"))) found = true;
    CHECK(found);
}

TEST_CASE("reduced bases are Groebner bases and shuffle invariant") {
    std::mt19937_64 rng(8);
    const VarContext& u = VarContext::u123();
    const MonomialOrder orders[] = {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block(1)};
    for (int i = 0; i < 30; ++i) {
        std::vector<Polynomial> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(random_poly(rng, u, 2, 3, 3));
        const auto& order = orders[i % 3];
        GroebnerBasis b = buchberger(Ideal(u, gens), order);
        CHECK(verify_groebner(b).ok());
        for (int s = 0; s < 3; ++s) {
            std::shuffle(gens.begin(), gens.end(), rng);
            CHECK(buchberger(Ideal(u, gens), order).elements == b.elements);
        }
        for (const auto& g : gens) CHECK(normal_form(g, b.elements, order).remainder.is_zero());
    }
}

TEST_CASE("resource caps fail loudly") {
    GroebnerLimits tight;
    tight.max_spairs = 1;
    const VarContext& xy = VarContext::xy();
    CHECK_THROWS_AS(buchberger(Ideal(xy, {X("x^3 - y^2 + x"), X("x^2 y - y^3 - 1"), X("x y^2 - 2")}),
                               MonomialOrder::grevlex(), tight),
                    ResourceCapExceeded);
    GroebnerLimits low;
    low.max_degree = 3;
    CHECK_THROWS_AS(buchberger(Ideal(xy, {X("x^3 - y^2 + x"), X("x^2 y - y^3 - 1")}), MonomialOrder::grevlex(), low),
                    ResourceCapExceeded);
}

TEST_CASE("elimination examples") {
    VarContext ctx{"x", "y", "u1", "u2", "u3"};
    auto P = [&](std::string_view s) { return parse_poly(s, ctx); };
    const std::string drop[] = {"x", "y"};
    auto e = eliminate(Ideal(ctx, {P("u1 - x"), P("u2 - y"), P("u3 - x")}), drop);
    REQUIRE(e.result.generators.size() == 1);
    CHECK(associates(e.result.generators[0], U3("u1 - u3")));
    e = eliminate(Ideal(ctx, {P("u1 - x^2"), P("u2 - y"), P("u3 - x")}), drop);
    REQUIRE(e.result.generators.size() == 1);
    CHECK(associates(e.result.generators[0], U3("u3^2 - u1")));
    auto none = eliminate(Ideal(VarContext::xy(), {X("x^2 - y"), X("y^2 - x")}), std::span<const std::string>{});
    CHECK(none.result.generators == gb(VarContext::xy(), {X("x^2 - y"), X("y^2 - x")}, MonomialOrder::grevlex()));
}

TEST_CASE("kernel generator examples") {
    auto k = kernel_generator(map("x", "y + x^2"));
    CHECK(k.H == U3("u1 - u3"));
    CHECK(k.r == 1);
    k = kernel_generator(map("y", "x"));
    CHECK(k.H == U3("u2 - u3"));
    CHECK(k.r == 1);
    k = kernel_generator(map("x^2", "y"));
    CHECK(k.H == U3("u3^2 - u1"));
    CHECK(k.r == 2);
    REQUIRE(k.coeffs.size() == 3);
    CHECK(k.coeffs[0] == U("-u1"));
    CHECK(k.coeffs[1].is_zero());
    CHECK(k.coeffs[2] == U("1"));
    CHECK(kernel_generator(Endomorphism::identity()).H == U3("u1 - u3"));
}

TEST_CASE("kernel generator vanishes on the map and has the Keller bounds") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Endomorphism f = generate_tame(make_recipe(seed));
        KernelGenerator k = kernel_generator(f);
        const Polynomial images[] = {f.p, f.q, X("x")};
        CHECK(composition_equals(k.H, images, Polynomial(VarContext::xy())));
        CHECK(k.r >= 1);
        CHECK(!k.coeffs[0].is_zero());
        Polynomial rebuilt(VarContext::u123());
        for (std::size_t j = 0; j < k.coeffs.size(); ++j)
            rebuilt += embed(k.coeffs[j], VarContext::u123()) * pow(U3("u3"), static_cast<unsigned>(j));
        CHECK(rebuilt == k.H);
    }
}

TEST_CASE("dependent components are reported") {
    CHECK_THROWS_AS(kernel_generator(map("x + y", "(x + y)^2")), AlgebraicallyDependent);
}

TEST_CASE("subring membership examples") {
    auto g = subring_membership(X("y"), map("x", "y + x^2"));
    REQUIRE(g);
    CHECK(*g == U("u2 - u1^2"));
    Endomorphism f = map("x^2 + y", "y^3 - x");
    g = subring_membership(f.p, f);
    REQUIRE(g);
    CHECK(*g == U("u1"));
    CHECK(!subring_membership(X("x"), map("x^2", "y^2")));
}

TEST_CASE("membership is closed under sums and products") {
    Endomorphism f = map("x^2", "y^2 + x");
    SubringMembership sm(f);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        Polynomial a = random_poly(rng, VarContext::u12(), 2, 3);
        Polynomial b = random_poly(rng, VarContext::u12(), 2, 3);
        const Polynomial images[] = {f.p, f.q};
        Polynomial wa = substitute(a, images), wb = substitute(b, images);
        for (const Polynomial& w : {wa, wb, wa + wb, wa * wb}) {
            auto G = sm.member(w);
            REQUIRE(G);
            CHECK(substitute(*G, images) == w);
        }
    }
    CHECK(!sm.member(X("y")));
}
