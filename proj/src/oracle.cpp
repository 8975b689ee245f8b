#include "qdescent/oracle.hpp"

#include "qdescent/errors.hpp"

namespace qdescent {

namespace {

// Calls visit(tuple) for every d-tuple over `values`, lexicographically.
template <class Visitor>
void for_each_tuple(const std::vector<Element>& values, std::size_t d, Visitor&& visit) {
    if (values.empty()) return;
    std::vector<std::size_t> idx(d, 0);
    Point tuple(d, values.front());
    for (;;) {
        for (std::size_t k = 0; k < d; ++k) tuple[k] = values[idx[k]];
        visit(tuple);
        std::size_t k = d;
        while (k > 0) {
            --k;
            if (++idx[k] < values.size()) break;
            idx[k] = 0;
            if (k == 0) return;
        }
    }
}

} // namespace

Point round_point(const FractionPoint& x) {
    Point y;
    y.reserve(x.dim());
    for (const auto& a : x.num()) y.push_back(nearest_quotient(a, x.den()));
    return y;
}

std::vector<Element> window_offsets(const Domain& dom, unsigned window) {
    switch (dom.kind()) {
    case DomainKind::Integers:
    case DomainKind::GaussianIntegers: return elements_by_norm(dom, window);
    case DomainKind::PrimeFieldPolynomials:
        if (window == 0) return {Element::zero(dom)};
        return elements_in_box(dom, window - 1);
    }
    throw InvariantViolation("unreachable domain kind");
}

OracleOutcome euclidean_step(const QuadraticPolynomial& f, const FractionPoint& x, unsigned window) {
    if (x.dim() != f.dim()) throw DimensionMismatch("point and polynomial dimensions differ");
    if (x.domain() != f.domain()) throw DomainMismatch("point and polynomial live in different domains");
    if (is_integral(x)) throw PreconditionError("euclidean_step needs x outside R^d, got " + to_string(x));

    const Element& b = x.den();
    const mpz_class nb = norm(b);
    const mpz_class bound = nb * nb; // ||f2(x - y)|| < 1  <=>  ||f2(a - b y)|| < ||b||^2

    auto value_norm = [&](const Point& y) { return norm(eval_quad(f, point_sub(x.num(), point_scale(b, y)))); };
    auto result_for = [&](const Point& y) {
        const FractionElement value(eval_quad(f, point_sub(x.num(), point_scale(b, y))), b * b);
        return OracleResult{y, value, ext_norm(value)};
    };

    const Point rounded = round_point(x);
    const mpz_class n0 = value_norm(rounded);
    if (n0 > 0 && n0 < bound) return result_for(rounded);

    std::optional<Point> best;
    mpz_class best_norm;
    std::optional<mpz_class> min_nonzero;
    for_each_tuple(window_offsets(f.domain(), window), f.dim(), [&](const Point& delta) {
        Point y = point_add(rounded, delta);
        const mpz_class n = value_norm(y);
        if (n == 0) return;
        if (!min_nonzero || n < *min_nonzero) min_nonzero = n;
        if (n >= bound) return;
        if (!best || n < best_norm || (n == best_norm && compare_points(y, *best) < 0)) {
            best = std::move(y);
            best_norm = n;
        }
    });
    if (best) return result_for(*best);

    mpq_class min_norm(0);
    if (min_nonzero) {
        min_norm = mpq_class(*min_nonzero, bound);
        min_norm.canonicalize();
    }
    return OracleNotFound{min_norm};
}

std::vector<Element> denominators_up_to(const Domain& dom, unsigned height) {
    const std::vector<Element> pool = dom.kind() == DomainKind::PrimeFieldPolynomials
                                          ? elements_in_box(dom, height)
                                          : elements_by_norm(dom, height);
    std::vector<Element> out;
    for (const auto& b : pool)
        if (!b.is_zero() && !is_unit(b) && is_normalized(b)) out.push_back(b);
    return out;
}

void for_each_fraction_point(const Domain& dom, std::size_t d, unsigned height, unsigned box,
                             const std::function<void(const FractionPoint&)>& visit) {
    const std::vector<Element> numerators = elements_in_box(dom, box);
    for (const auto& b : denominators_up_to(dom, height)) {
        for_each_tuple(numerators, d, [&](const Point& a) {
            Element g = b;
            for (const auto& ai : a) {
                g = gcd(g, ai);
                if (is_unit(g)) break;
            }
            if (!is_unit(g)) return;
            visit(FractionPoint::unreduced(a, b));
        });
    }
}

EuclideanReport check_euclidean(const QuadraticPolynomial& f, unsigned height, unsigned box, unsigned window) {
    EuclideanReport report;
    for_each_fraction_point(f.domain(), f.dim(), height, box, [&](const FractionPoint& x) {
        ++report.checked;
        const OracleOutcome outcome = euclidean_step(f, x, window);
        if (const auto* miss = std::get_if<OracleNotFound>(&outcome))
            report.failures.push_back({x, window, miss->min_norm});
    });
    return report;
}

} // namespace qdescent
