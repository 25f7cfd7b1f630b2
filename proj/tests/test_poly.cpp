#include "doctest.h"
#include "support.hpp"

using namespace kt;

TEST_CASE("rationals stay canonical") {
    Rational a = make_rational(6, -4);
    CHECK(a.get_num() == -3);
    CHECK(a.get_den() == 2);
    CHECK(make_rational(0, 7).get_den() == 1);
    CHECK((a + make_rational(3, 2)) == 0);
}

TEST_CASE("arithmetic examples") {
    CHECK(X("x+y") + X("x-y") == X("2x"));
    CHECK(X("x+y") * X("x-y") == X("x^2-y^2"));
    CHECK(pow(X("3x^2 - y + 7"), 0) == X("1"));
    CHECK(pow(X("x+y"), 3) == X("x^3 + 3x^2y + 3xy^2 + y^3"));
    CHECK((X("x") - X("x")).is_zero());
}

TEST_CASE("context mismatch is rejected") {
    CHECK_THROWS_AS(X("x") + U("u1"), ContextMismatch);
    CHECK_THROWS_AS(X("x") * U("u1"), ContextMismatch);
}

TEST_CASE("no stored zero coefficients after any operation") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Polynomial a = random_poly(rng, VarContext::xy(), 4, 5, 3, true);
        Polynomial b = random_poly(rng, VarContext::xy(), 4, 5, 3, true);
        for (const Polynomial& r : {a + b, a - b, a * b, a - a, partial_derivative(a * b, 1)}) {
            for (const auto& t : r.terms()) REQUIRE(t.coeff != 0);
            for (std::size_t k = 1; k < r.terms().size(); ++k)
                REQUIRE(r.terms()[k - 1].mono > r.terms()[k].mono);
        }
    }
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937_64 rng(1);
    const VarContext& u = VarContext::u123();
    for (int i = 0; i < 100; ++i) {
        Polynomial a = random_poly(rng, u, 3, 4, 4, true);
        Polynomial b = random_poly(rng, u, 3, 4, 4, true);
        Polynomial c = random_poly(rng, u, 3, 4, 4, true);
        CHECK(a + (b + c) == (a + b) + c);
        CHECK(a * (b * c) == (a * b) * c);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == Polynomial(u));
        CHECK(a * Polynomial(u, 1) == a);
    }
}

TEST_CASE("partial derivative examples") {
    CHECK(partial_derivative(X("x^2 y"), "x") == X("2xy"));
    CHECK(partial_derivative(U3("u3^2 - u1"), "u3") == U3("2u3"));
    CHECK(partial_derivative(X("7/3"), "x").is_zero());
    CHECK_THROWS_AS(partial_derivative(X("x"), "z"), UnknownVariable);
}

TEST_CASE("Leibniz rule") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        Polynomial a = random_poly(rng, VarContext::xy(), 4, 5, 4, true);
        Polynomial b = random_poly(rng, VarContext::xy(), 4, 5, 4, true);
        for (std::size_t v = 0; v < 2; ++v)
            CHECK(partial_derivative(a * b, v) == partial_derivative(a, v) * b + a * partial_derivative(b, v));
    }
}

TEST_CASE("Jacobian examples") {
    auto j = jacobian_det(X("x"), X("y"));
    CHECK(j.det == X("1"));
    CHECK(j.kind == JacobianKind::NonzeroConstant);
    j = jacobian_det(X("x"), X("y + x^2"));
    CHECK(j.det == X("1"));
    CHECK(j.kind == JacobianKind::NonzeroConstant);
    j = jacobian_det(X("x^2"), X("y"));
    CHECK(j.det == X("2x"));
    CHECK(j.kind == JacobianKind::NonConstant);
    j = jacobian_det(X("x + y"), X("2x + 2y"));
    CHECK(j.kind == JacobianKind::Zero);
    CHECK_THROWS_AS(jacobian_det(X("x"), U("u1")), ContextMismatch);
}

TEST_CASE("Jacobian chain rule") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        Endomorphism f(random_poly(rng, VarContext::xy(), 3, 4), random_poly(rng, VarContext::xy(), 3, 4));
        Endomorphism g(random_poly(rng, VarContext::xy(), 2, 4), random_poly(rng, VarContext::xy(), 2, 4));
        const Polynomial gi[] = {g.p, g.q};
        CHECK(compose(f, g).jacobian == substitute(f.jacobian, gi) * g.jacobian);
    }
}

TEST_CASE("substitution examples") {
    const VarContext& xy = VarContext::xy();
    std::map<std::string, Polynomial> a{{"u1", X("x")}, {"u2", X("y + x^2")}, {"u3", X("x")}};
    CHECK(substitute(U3("u1 - u3"), a).is_zero());
    std::map<std::string, Polynomial> b{{"u1", X("x^2")}, {"u3", X("x")}};
    CHECK(substitute(U3("u3^2 - u1"), b).is_zero());
    Polynomial p = X("3x^2y - y + 5");
    std::map<std::string, Polynomial> id{{"x", X("x")}, {"y", X("y")}};
    CHECK(substitute(p, id) == p);
    std::map<std::string, Polynomial> missing{{"x", X("x")}};
    CHECK_THROWS_AS(substitute(p, missing), MissingAssignment);
    std::map<std::string, Polynomial> mixed{{"x", X("x")}, {"y", U("u1")}};
    CHECK_THROWS_AS(substitute(p, mixed), ContextMismatch);
    (void)xy;
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 60; ++i) {
        Polynomial a = random_poly(rng, VarContext::u12(), 3, 4, 3, true);
        Polynomial b = random_poly(rng, VarContext::u12(), 3, 4, 3, true);
        const Polynomial images[] = {random_poly(rng, VarContext::xy(), 2, 3), random_poly(rng, VarContext::xy(), 2, 3)};
        CHECK(substitute(a * b, images) == substitute(a, images) * substitute(b, images));
        CHECK(substitute(a + b, images) == substitute(a, images) + substitute(b, images));
    }
}

TEST_CASE("gcd examples") {
    CHECK(gcd(X("x^2 - y^2"), X("x - y")) == X("x - y"));
    CHECK(gcd(X("-4x^2 + 2"), Polynomial(VarContext::xy())) == X("4x^2 - 2"));  // content kept, sign fixed
    CHECK(gcd(X("6x"), X("4x^2")) == X("2x"));
    CHECK_THROWS(gcd(Polynomial(VarContext::xy()), Polynomial(VarContext::xy())));
}

TEST_CASE("gcd divides both inputs and is maximal on random products") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        Polynomial c = random_poly(rng, VarContext::xy(), 2, 3);
        Polynomial a = random_poly(rng, VarContext::xy(), 2, 3);
        Polynomial b = random_poly(rng, VarContext::xy(), 2, 3);
        if (c.is_zero() || a.is_zero() || b.is_zero()) continue;
        Polynomial g = gcd(a * c, b * c);
        CHECK(divide_exact(a * c, g).has_value());
        CHECK(divide_exact(b * c, g).has_value());
        CHECK(divide_exact(g, normalize(c)).has_value());
    }
}

TEST_CASE("normalization picks a unique associate") {
    CHECK(normalize(X("-2/3 x + 4/9 y")) == X("3x - 2y"));
    CHECK(associates(X("x - y"), X("-5y + 5x")));
    CHECK(!associates(X("x - y"), X("x + y")));
}

TEST_CASE("composition_equals agrees with full expansion") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 25; ++i) {
        TameRecipe r = make_recipe(static_cast<std::uint64_t>(500 + i));
        Endomorphism f = generate_tame(r);
        Polynomial g = random_poly(rng, VarContext::u12(), 3, 4, 3, true);
        const Polynomial images[] = {f.p, f.q};
        Polynomial expanded = substitute(g, images);
        CHECK(composition_equals(g, images, expanded));
        CHECK(!composition_equals(g, images, expanded + X("1/7 x y")));
    }
}
