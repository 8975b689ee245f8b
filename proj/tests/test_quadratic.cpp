#include <doctest.h>

#include <random>

#include "qdescent/errors.hpp"
#include "support.hpp"

using namespace qtest;

namespace {

QuadraticPolynomial random_poly(const Domain& dom, std::size_t d, std::mt19937_64& rng, unsigned bound) {
    QuadraticPolynomial f(dom, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) f.set_quad(i, j, random_element(dom, rng, bound));
        f.set_lin(i, random_element(dom, rng, bound));
    }
    f.set_constant(random_element(dom, rng, bound));
    return f;
}

Point random_point(const Domain& dom, std::size_t d, std::mt19937_64& rng, unsigned bound) {
    Point p;
    for (std::size_t k = 0; k < d; ++k) p.push_back(random_element(dom, rng, bound));
    return p;
}

Element nonzero(const Domain& dom, std::mt19937_64& rng, unsigned bound) {
    for (;;) {
        Element e = random_element(dom, rng, bound);
        if (!e.is_zero()) return e;
    }
}

} // namespace

TEST_CASE("storage keeps the degree decomposition") {
    QuadraticPolynomial f(kZ, 3);
    f.set_quad(2, 0, z(4));
    CHECK(f.quad(0, 2) == z(4));
    f.set_lin(1, z(-1));
    f.set_constant(z(9));
    CHECK_FALSE(f.is_form());
    CHECK(f.quadratic_part().is_form());
    CHECK(f.quadratic_part().quad(0, 2) == z(4));
    CHECK(f.minus_constant(z(9)).constant().is_zero());
    CHECK_THROWS_AS(f.set_quad(0, 3, z(1)), DimensionMismatch);
    CHECK_THROWS_AS(f.set_lin(0, zi(1, 0)), DomainMismatch);
    CHECK_THROWS_AS(QuadraticPolynomial(kZ, 0), DimensionMismatch);
}

TEST_CASE("eval examples") {
    const auto f = form("x^2+y^2-5", kZ, 2);
    CHECK(eval(f, zfrac({-11, 2}, 5)).is_zero());
    CHECK(eval(f, zfrac({1, 2}, 1)).is_zero());
    CHECK(eval(form("x*y-1", kZ, 2), zfrac({2, 3}, 1)) == FractionElement(z(5)));
    CHECK(eval(f, zfrac({1, 1}, 2)) == FractionElement(z(-9), z(2)));
    CHECK_THROWS_AS(eval(f, zfrac({1, 2, 3}, 1)), DimensionMismatch);
    CHECK_THROWS_AS(eval(f, FractionPoint::unreduced(Point{zi(1, 0), zi(0, 0)}, zi(1, 0))), DomainMismatch);
}

TEST_CASE("eval_f2 examples") {
    const auto f = form("x^2+y^2-5", kZ, 2);
    CHECK(eval_f2(f, zfrac({-1, 2}, 5)) == FractionElement(z(1), z(5)));
    CHECK(eval_f2(f, zfrac({0, 0}, 1)).is_zero());
    CHECK(eval_f2(f, zfrac({1, 2}, 1)) == FractionElement(z(5)));
}

TEST_CASE("bilinear examples") {
    CHECK(bilinear(form("x*y", kZ, 2), zfrac({1, 0}, 1), zfrac({0, 1}, 1)) == FractionElement(z(1)));
    CHECK(bilinear(form("x^2", kZ, 1), zfrac({1}, 1), zfrac({1}, 1)) == FractionElement(z(2)));
    const auto one = FractionPoint::integral(Point{Element::one(kF2)});
    CHECK(bilinear(form("x^2", kF2, 1), one, one).is_zero());
    CHECK(bilinear(form("x^2+y^2", kZ, 2), zfrac({1, 2}, 1), zfrac({2, 1}, 1)) == FractionElement(z(8)));
}

TEST_CASE("expand_along_line examples") {
    const auto f = form("x^2+y^2-5", kZ, 2);
    const LineExpansion e = expand_along_line(f, zpoint({-2, 0}), zpoint({-1, 2}));
    CHECK(e.A == z(5));
    CHECK(e.B == z(4));
    CHECK(e.C == z(-1));
    // F(1/5) = 0 <=> A + 5B + 25C = 0
    CHECK((e.A + z(5) * e.B + z(25) * e.C).is_zero());

    const LineExpansion flat = expand_along_line(f, zpoint({3, 1}), zpoint({0, 0}));
    CHECK(flat.A.is_zero());
    CHECK(flat.B.is_zero());
    CHECK(flat.C == z(5));

    const LineExpansion g = expand_along_line(f, zpoint({1, 2}), zpoint({2, 1}));
    CHECK(g.A == z(5));
    CHECK(g.B == z(8));
    CHECK(g.C.is_zero());
}

TEST_CASE("line expansion identity and A = f2(v) on random data") {
    std::mt19937_64 rng(2024);
    for (const Domain& dom : {kZ, kZi, kF2, kF3}) {
        for (int k = 0; k < 60; ++k) {
            const std::size_t d = 1 + static_cast<std::size_t>(draw_below(rng, 3));
            const auto f = random_poly(dom, d, rng, 3);
            const Point y = random_point(dom, d, rng, 3);
            const Point v = random_point(dom, d, rng, 3);
            const LineExpansion e = expand_along_line(f, y, v);
            CHECK(e.A == eval_quad(f, v));

            // f(y + t v) at a random t = s/u in K
            const Element s = random_element(dom, rng, 3);
            const Element u = nonzero(dom, rng, 3);
            const FractionPoint line = FractionPoint::unreduced(point_add(point_scale(u, y), point_scale(s, v)), u);
            const FractionElement t(s, u);
            const FractionElement expected = FractionElement(e.A) * t * t + FractionElement(e.B) * t + FractionElement(e.C);
            CHECK(eval(f, line) == expected);
        }
    }
}

TEST_CASE("bilinearity and homogeneity on random data") {
    std::mt19937_64 rng(77);
    for (const Domain& dom : {kZ, kZi, kF2, kF3}) {
        for (int k = 0; k < 40; ++k) {
            const std::size_t d = 1 + static_cast<std::size_t>(draw_below(rng, 3));
            const auto f = random_poly(dom, d, rng, 3);
            const FractionPoint x = FractionPoint::unreduced(random_point(dom, d, rng, 3), nonzero(dom, rng, 2));
            const FractionPoint x2 = FractionPoint::unreduced(random_point(dom, d, rng, 3), nonzero(dom, rng, 2));
            const FractionPoint y = FractionPoint::unreduced(random_point(dom, d, rng, 3), nonzero(dom, rng, 2));
            const Element c = random_element(dom, rng, 3);

            const FractionPoint sum = FractionPoint::unreduced(
                point_add(point_scale(x2.den(), x.num()), point_scale(x.den(), x2.num())), x.den() * x2.den());
            CHECK(bilinear(f, sum, y) == bilinear(f, x, y) + bilinear(f, x2, y));

            const FractionPoint cx = FractionPoint::unreduced(point_scale(c, x.num()), x.den());
            CHECK(bilinear(f, cx, y) == FractionElement(c) * bilinear(f, x, y));
            CHECK(eval_f2(f, cx) == FractionElement(c * c) * eval_f2(f, x));
            CHECK(bilinear(f, x, y) == bilinear(f, y, x));
        }
    }
}
