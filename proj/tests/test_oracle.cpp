#include <doctest.h>

#include <optional>
#include <random>
#include <vector>

#include "qdescent/errors.hpp"
#include "qdescent/oracle.hpp"
#include "support.hpp"

using namespace qtest;

namespace {

// Independent reference over Z: evaluates the quadratic part in mpq and scans the
// full window box around floor-based rounding of each coordinate.
struct Reference {
    std::optional<std::vector<long>> y;
    mpq_class best;
};

mpq_class f2_rational(const std::vector<std::vector<long>>& c, const std::vector<mpq_class>& u) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i; j < u.size(); ++j) s += c[i][j] * u[i] * u[j];
    return s;
}

Reference reference_oracle(const std::vector<std::vector<long>>& c, const std::vector<long>& a, long b, long window) {
    const std::size_t d = a.size();
    std::vector<long> centre(d);
    for (std::size_t i = 0; i < d; ++i) {
        // nearest integer, ties toward zero
        mpq_class q(a[i], b);
        q.canonicalize();
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        const mpq_class frac = q - fl;
        long n = fl.get_si();
        if (frac > mpq_class(1, 2) || (frac == mpq_class(1, 2) && q < 0)) ++n;
        centre[i] = n;
    }
    Reference ref;
    std::vector<long> off(d, -window);
    for (;;) {
        std::vector<long> y(d);
        std::vector<mpq_class> u(d);
        for (std::size_t i = 0; i < d; ++i) {
            y[i] = centre[i] + off[i];
            u[i] = mpq_class(a[i], b) - y[i];
        }
        const mpq_class v = abs(f2_rational(c, u));
        if (v > 0 && v < 1 && (!ref.y || v < ref.best)) {
            ref.y = y;
            ref.best = v;
        }
        std::size_t k = d;
        while (k > 0 && off[k - 1] == window) off[--k] = -window;
        if (k == 0) break;
        ++off[k - 1];
    }
    return ref;
}

} // namespace

TEST_CASE("round_point examples") {
    CHECK(round_point(zfrac({-11, 2}, 5)) == zpoint({-2, 0}));
    CHECK(round_point(zfrac({1, -1, 3}, 2)) == zpoint({0, 0, 1}));
    CHECK(round_point(FractionPoint::unreduced(Point{zi(1, 3)}, zi(2, 0))) == Point{zi(0, 1)});
    const Element t = poly(kF2, {0, 1});
    CHECK(round_point(FractionPoint::unreduced(Point{poly(kF2, {1, 0, 1})}, t)) == Point{t});
}

TEST_CASE("window offsets") {
    CHECK(window_offsets(kZ, 2).size() == 5);
    CHECK(window_offsets(kZi, 1).size() == 5);
    CHECK(window_offsets(kZi, 2).size() == 9);
    CHECK(window_offsets(kF2, 2).size() == 4);
    CHECK(window_offsets(kF3, 1).size() == 3);
}

TEST_CASE("euclidean_step on the worked example") {
    const auto f = form("x^2+y^2-5", kZ, 2);
    const auto out = euclidean_step(f, zfrac({-11, 2}, 5));
    REQUIRE(std::holds_alternative<OracleResult>(out));
    const auto& r = std::get<OracleResult>(out);
    CHECK(r.y == zpoint({-2, 0}));
    CHECK(r.value == FractionElement(z(1), z(5)));
    CHECK(r.vnorm == mpq_class(1, 5));
}

TEST_CASE("euclidean_step rejects integral points") {
    CHECK_THROWS_AS(euclidean_step(form("x^2", kZ, 1), zfrac({4}, 2)), PreconditionError);
}

TEST_CASE("four squares at (1,1,1,1)/2 has no admissible y") {
    const auto f = form("w^2+x^2+y^2+z^2", kZ, 4);
    for (unsigned window : {1u, 2u, 3u}) {
        const auto out = euclidean_step(f, zfrac({1, 1, 1, 1}, 2), window);
        REQUIRE(std::holds_alternative<OracleNotFound>(out));
        CHECK(std::get<OracleNotFound>(out).min_norm == 1);
    }
}

TEST_CASE("euclidean_step agrees with the rational reference over Z") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 300; ++k) {
        const std::size_t d = 1 + static_cast<std::size_t>(draw_below(rng, 3));
        std::vector<std::vector<long>> c(d, std::vector<long>(d, 0));
        QuadraticPolynomial f(kZ, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                c[i][j] = static_cast<long>(draw_below(rng, 7)) - 3;
                f.set_quad(i, j, z(c[i][j]));
            }
        }
        const long b = 2 + static_cast<long>(draw_below(rng, 9));
        std::vector<long> a(d);
        Point ap;
        for (std::size_t i = 0; i < d; ++i) {
            a[i] = static_cast<long>(draw_below(rng, 41)) - 20;
            ap.push_back(z(a[i]));
        }
        const FractionPoint x = reduce_point(ap, z(b));
        if (is_integral(x)) continue;
        const Reference ref = reference_oracle(c, a, b, 2);
        const auto out = euclidean_step(f, FractionPoint::unreduced(ap, z(b)), 2);
        if (!ref.y) {
            CHECK(std::holds_alternative<OracleNotFound>(out));
            continue;
        }
        REQUIRE(std::holds_alternative<OracleResult>(out));
        const auto& r = std::get<OracleResult>(out);
        CHECK(r.vnorm > 0);
        CHECK(r.vnorm < 1);
        CHECK(r.vnorm >= ref.best);
        // the rounded point wins outright when admissible; otherwise the window minimum does
        if (r.y != round_point(x)) {
            CHECK(r.vnorm == ref.best);
            Point expected;
            for (long yi : *ref.y) expected.push_back(z(yi));
            CHECK(r.y == expected);
        }
        const FractionPoint diff = FractionPoint::unreduced(point_sub(x.num(), point_scale(x.den(), r.y)), x.den());
        CHECK(ext_norm(eval_f2(f, diff)) == r.vnorm);
    }
}

TEST_CASE("check_euclidean examples") {
    const auto three = form("x^2+y^2+z^2", kZ, 3);
    const EuclideanReport r3 = check_euclidean(three, 4, 2);
    CHECK(r3.checked > 0);
    CHECK(r3.failures.empty());

    const auto four = form("w^2+x^2+y^2+z^2", kZ, 4);
    const EuclideanReport r4 = check_euclidean(four, 2, 1);
    REQUIRE_FALSE(r4.failures.empty());
    bool witness = false;
    for (const auto& fail : r4.failures) {
        if (fail.point == zfrac({1, 1, 1, 1}, 2)) {
            witness = true;
            CHECK(fail.min_norm == 1);
        }
    }
    CHECK(witness);

    const EuclideanReport rf = check_euclidean(form("x^2+t*y^2", kF2, 2), 2, 2);
    CHECK(rf.checked > 0);
    CHECK(rf.failures.empty());
}

TEST_CASE("x^2 - y^2 has no admissible y at (1,1)/2") {
    // with y = (-k,-m), f2(x - y) = (k - m)(1 + k + m) is an integer
    const auto out = euclidean_step(form("x^2-y^2", kZ, 2), zfrac({1, 1}, 2), 1);
    REQUIRE(std::holds_alternative<OracleNotFound>(out));
    CHECK(std::get<OracleNotFound>(out).min_norm == 2);
}

TEST_CASE("failures only grow with the enumeration") {
    const auto four = form("w^2+x^2+y^2+z^2", kZ, 4);
    const auto small = check_euclidean(four, 2, 1);
    const auto large = check_euclidean(four, 3, 1);
    CHECK(large.checked >= small.checked);
    CHECK(large.failures.size() >= small.failures.size());
}

TEST_CASE("check_euclidean is deterministic") {
    const auto four = form("w^2+x^2+y^2+z^2", kZ, 4);
    const auto a = check_euclidean(four, 2, 1);
    const auto b = check_euclidean(four, 2, 1);
    REQUIRE(a.failures.size() == b.failures.size());
    for (std::size_t i = 0; i < a.failures.size(); ++i) {
        CHECK(a.failures[i].point == b.failures[i].point);
        CHECK(a.failures[i].min_norm == b.failures[i].min_norm);
    }
}

TEST_CASE("fraction point enumeration") {
    CHECK(denominators_up_to(kZ, 4) == std::vector<Element>{z(2), z(3), z(4)});
    CHECK(denominators_up_to(kF2, 1) == std::vector<Element>{poly(kF2, {0, 1}), poly(kF2, {1, 1})});
    std::size_t count = 0;
    for_each_fraction_point(kZ, 1, 3, 2, [&](const FractionPoint& x) {
        CHECK_FALSE(is_integral(x));
        ++count;
    });
    // b=2: odd a in [-2,2] -> 2; b=3: a in {-2,-1,1,2} -> 4
    CHECK(count == 6);
}
