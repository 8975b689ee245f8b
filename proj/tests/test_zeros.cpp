#include <doctest.h>

#include <random>

#include "qdescent/errors.hpp"
#include "qdescent/zeros.hpp"
#include "support.hpp"

using namespace qtest;

TEST_CASE("brute_integral_zero examples") {
    const auto f = form("x^2+y^2-5", kZ, 2);
    const auto hit = brute_integral_zero(f, SearchBox{3, 0});
    REQUIRE(hit);
    CHECK(*hit == zpoint({-2, -1}));
    CHECK_FALSE(brute_integral_zero(form("x^2+y^2+1", kZ, 2), SearchBox{10, 0}));
    CHECK_FALSE(brute_integral_zero(f, SearchBox{1, 0}));
}

TEST_CASE("points_in_box order") {
    const auto pts = points_in_box(kZ, 2, 1);
    CHECK(pts.size() == 9);
    CHECK(pts.front() == zpoint({0, 0}));
    // grade 1 before grade 2
    CHECK(pts[1] == zpoint({-1, 0}));
    CHECK(pts.back() == zpoint({1, 1}));
    CHECK(points_in_box(kF2, 2, 1).size() == 16); // degree <= 1 per coordinate
    CHECK(points_in_box(kZi, 1, 1).size() == 9);
}

TEST_CASE("chord_zero examples") {
    const auto f = form("x^2+y^2-5", kZ, 2);
    CHECK(chord_zero(f, zpoint({1, 2}), zpoint({2, 1})) == zfrac({-11, 2}, 5));
    CHECK(chord_zero(f, zpoint({1, 2}), zpoint({1, 1})) == zfrac({-2, -1}, 1));
    // tangent at (1,2) is along (2,-1): B = 0, so y0 comes back
    CHECK(chord_zero(f, zpoint({1, 2}), zpoint({2, -1})) == zfrac({1, 2}, 1));

    CHECK_THROWS_AS(chord_zero(form("x*y-1", kZ, 2), zpoint({1, 1}), zpoint({1, 0})), PreconditionError);
    CHECK_THROWS_AS(chord_zero(f, zpoint({1, 1}), zpoint({1, 0})), PreconditionError);
}

TEST_CASE("chord_zero lands on the quadric and ignores the scale of w") {
    std::mt19937_64 rng(404);
    struct Case {
        QuadraticPolynomial f;
        Point y0;
    };
    std::vector<Case> cases;
    for (const auto& f : {form("x^2+y^2+z^2-29", kZ, 3), form("x^2-3*x*y+2*y^2+x-12", kZ, 2),
                          form("x^2+i*y^2-(1+i)", kZi, 2), form("x^2+t*y^2+x+t^3+t", kF2, 2)}) {
        const auto y0 = brute_integral_zero(f, SearchBox{4, 0});
        REQUIRE(y0);
        cases.push_back({f, *y0});
    }
    for (const auto& c : cases) {
        const Domain& dom = c.f.domain();
        for (int k = 0; k < 60; ++k) {
            Point w;
            for (std::size_t i = 0; i < c.f.dim(); ++i) w.push_back(random_element(dom, rng, 4));
            if (eval_quad(c.f, w).is_zero()) continue;
            const FractionPoint x = chord_zero(c.f, c.y0, w);
            CHECK(eval(c.f, x).is_zero());
            CHECK(x.is_canonical());
            Element s = random_element(dom, rng, 3);
            if (s.is_zero()) s = Element::one(dom);
            CHECK(chord_zero(c.f, c.y0, point_scale(s, w)) == x);
        }
    }
}

TEST_CASE("random_rational_zero") {
    const auto f = form("x^2+y^2-5", kZ, 2);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const FractionPoint x = random_rational_zero(f, zpoint({1, 2}), seed, 5);
        CHECK(eval(f, x).is_zero());
        CHECK_FALSE(is_integral(x));
        CHECK(norm(x.den()) >= 5);
        CHECK(random_rational_zero(f, zpoint({1, 2}), seed, 5) == x);
    }
    CHECK_FALSE(is_integral(random_rational_zero(f, zpoint({1, 2}), 3)));
    // every chord through the origin of xy = 0 is tangent or isotropic
    CHECK_THROWS_AS(random_rational_zero(form("x*y", kZ, 2), zpoint({0, 0}), 1, 1, 50), Error);
    CHECK_THROWS_AS(random_rational_zero(f, zpoint({1, 1}), 1), PreconditionError);
}

TEST_CASE("brute_represent") {
    const auto q = form("x^2+y^2+z^2", kZ, 3);
    const auto y = brute_represent(q, z(13), representation_box(z(13)));
    REQUIRE(y);
    CHECK(eval_quad(q, *y) == z(13));
    CHECK_FALSE(brute_represent(q, z(7), representation_box(z(7))));
    CHECK(representation_box(z(13)) == 3);
}

TEST_CASE("verify_adc on three squares") {
    const AdcReport r = verify_adc(form("x^2+y^2+z^2", kZ, 3), SearchBox{4, 3});
    CHECK(r.checked > 0);
    CHECK(r.failures.empty());
    CHECK(r.notes.empty());
    CHECK(r.corroborated == r.checked);
}

TEST_CASE("verify_adc on four squares notes the inapplicable points") {
    const AdcReport r = verify_adc(form("w^2+x^2+y^2+z^2", kZ, 4), SearchBox{1, 2});
    CHECK(r.failures.empty());
    REQUIRE_FALSE(r.notes.empty());
    bool witness = false;
    for (const auto& n : r.notes) {
        CHECK(n.kind == AdcFinding::Inapplicable);
        REQUIRE(n.brute_y);
        if (n.x == zfrac({1, 1, 1, 1}, 2)) {
            witness = true;
            CHECK(n.value == z(1));
        }
    }
    CHECK(witness);
}

TEST_CASE("verify_adc with an empty box") {
    const AdcReport r = verify_adc(form("x^2+y^2+z^2", kZ, 3), SearchBox{3, 1});
    CHECK(r.checked == 0);
    CHECK(r.failures.empty());
    CHECK_THROWS_AS(verify_adc(form("x^2+1", kZ, 1), SearchBox{1, 2}), PreconditionError);
}

TEST_CASE("finding names") {
    CHECK(to_string(AdcFinding::Inapplicable) == "inapplicable");
    CHECK(to_string(AdcFinding::Mismatch) == "mismatch");
}

TEST_CASE("three-square exclusion") {
    for (long n : {7, 15, 23, 28, 31, 60, 112}) CHECK(is_excluded_from_three_squares(n));
    for (long n : {0, 1, 2, 3, 5, 13, 14, 29, 50}) CHECK_FALSE(is_excluded_from_three_squares(n));
}
