#include "doctest.h"
#include "support.hpp"

using namespace kt;

TEST_CASE("classify examples") {
    ClassificationReport r = classify(map("x", "y + x^2"));
    CHECK(r.verdict == Verdict::Automorphism);
    REQUIRE(r.inverse);
    CHECK(r.inverse->first == U("u1"));
    CHECK(r.inverse->second == U("u2 - u1^2"));
    CHECK(r.inverse_matches_kernel.value_or(false));

    r = classify(map("x^2", "y"));
    CHECK(r.verdict == Verdict::NotKellerNonConstantJacobian);
    CHECK(r.jacobian.det == X("2x"));
    CHECK(!r.kernel);

    CHECK(classify(map("x + y", "x + y")).verdict == Verdict::NotKellerZeroJacobian);
}

TEST_CASE("forced run on a non-Keller map concludes nothing") {
    ClassifyConfig forced;
    forced.force = true;
    ClassificationReport r = classify(map("x", "x y"), forced);
    CHECK(r.verdict == Verdict::NotKellerNonConstantJacobian);
    REQUIRE(r.kernel);
    CHECK(r.kernel->r == 1);
    REQUIRE(r.uv);
    CHECK(r.uv->u == U3("u2"));
    CHECK(r.uv->v == U("u1"));
    REQUIRE(r.units);
    CHECK(r.units->all_units_in_Cpq);
    CHECK(!r.inverse);
    bool noted = false;
    for (const auto& n : r.notes) noted = noted || n.find("concludes nothing") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("invert examples") {
    auto [s, t] = invert(map("x", "y + x^2"));
    CHECK(s == U("u1"));
    CHECK(t == U("u2 - u1^2"));
    std::tie(s, t) = invert(map("y", "x"));
    CHECK(s == U("u2"));
    CHECK(t == U("u1"));
    std::tie(s, t) = invert(Endomorphism::identity());
    CHECK(s == U("u1"));
    CHECK(t == U("u2"));
    CHECK_THROWS_AS(invert(map("x^2", "y")), MembershipFailed);
}

TEST_CASE("verify_inverse examples") {
    CHECK(verify_inverse(Endomorphism::identity(), U("u1"), U("u2")));
    CHECK(verify_inverse(map("x", "y + x^2"), U("u1"), U("u2 - u1^2")));
    CHECK(!verify_inverse(map("x", "y + x^2"), U("u1"), U("u2")));
}

TEST_CASE("birationality degree examples") {
    CHECK(birationality_degree(map("x", "y + x^2")) == 1);
    CHECK(birationality_degree(map("x^2", "y")) == 2);
    CHECK(birationality_degree(map("x^3", "y")) == 3);
}

TEST_CASE("tame generator examples") {
    TameRecipe r;
    r.steps = {ElementaryStep{true, Rational(1), 2}};
    CHECK(generate_tame(r) == map("x", "y + x^2"));
    AffineStep swap{Rational(0), Rational(1), Rational(1), Rational(0), Rational(0), Rational(0)};
    r.steps = {swap};
    CHECK(generate_tame(r) == map("y", "x"));
    r.steps = {ElementaryStep{true, Rational(1), 2}, swap};
    CHECK(generate_tame(r) == map("y + x^2", "x"));
    AffineStep singular{Rational(1), Rational(2), Rational(2), Rational(4), Rational(0), Rational(0)};
    r.steps = {singular};
    CHECK_THROWS(generate_tame(r));
}

TEST_CASE("generated recipes honor their invariants") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        TameRecipe r = make_recipe(seed);
        Endomorphism f = generate_tame(r);
        CHECK(std::max(f.p.total_degree(), f.q.total_degree()) <= 12);
        CHECK(f.jacobian == Polynomial(VarContext::xy(), recipe_jacobian(r)));
        CHECK(recipe_jacobian(r) != 0);
        int elementary = 0;
        for (const auto& s : r.steps) {
            if (const auto* a = std::get_if<AffineStep>(&s)) CHECK(a->det() != 0);
            else ++elementary;
        }
        CHECK(elementary >= 1);
        CHECK(elementary <= 4);
        CHECK(describe(make_recipe(seed)) == describe(r));
    }
    CHECK_THROWS_AS(make_recipe(3, 1), ResourceCapExceeded);
}

TEST_CASE("TFAE cross-check") {
    for (const auto& f : {map("x", "y + x^2"), map("y", "x")}) {
        TfaeReport t = cross_check_tfae(f);
        CHECK(t.bits.i);
        CHECK(t.bits.ii);
        CHECK(t.bits.iii);
        CHECK(t.consistent);
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(cross_check_tfae(generate_tame(make_recipe(seed))).consistent);
}

TEST_CASE("classification is deterministic") {
    Endomorphism f = generate_tame(make_recipe(42));
    ClassificationReport a = classify(f), b = classify(f);
    CHECK(report_json(a) == report_json(b));
}

TEST_CASE("inverting and re-classifying returns the original map") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Endomorphism f = generate_tame(make_recipe(seed, 6));
        auto [s, t] = invert(f);
        Endomorphism g(rename(s, VarContext::xy()), rename(t, VarContext::xy()));
        ClassificationReport r = classify(g);
        CHECK(r.verdict == Verdict::Automorphism);
        REQUIRE(r.inverse);
        CHECK(rename(r.inverse->first, VarContext::xy()) == f.p);
        CHECK(rename(r.inverse->second, VarContext::xy()) == f.q);
    }
}

TEST_CASE("caps surface as Degenerate with partial evidence") {
    ClassifyConfig tight;
    tight.limits.max_spairs = 1;
    ClassificationReport r = classify(generate_tame(make_recipe(5)), tight);
    CHECK(r.verdict == Verdict::Degenerate);
    CHECK(!r.reason.empty());
    CHECK(r.jacobian.kind == JacobianKind::NonzeroConstant);
}
