#include "qdescent/descent.hpp"

#include <variant>

namespace qdescent {

namespace {

void certify(bool holds, const char* what) {
    if (!holds) throw InvariantViolation(std::string("descent certificate failed: ") + what);
}

void require_zero(const QuadraticPolynomial& f, const FractionPoint& x) {
    if (x.dim() != f.dim()) throw DimensionMismatch("point and polynomial dimensions differ");
    if (x.domain() != f.domain()) throw DomainMismatch("point and polynomial live in different domains");
    const FractionElement value = eval(f, x);
    if (!value.is_zero()) throw NotAZero("point is not a zero (f = " + to_string(value) + ")");
}

} // namespace

OracleFailure::OracleFailure(std::size_t step, FractionPoint x, unsigned window, mpq_class min_norm)
    : Error("oracle found no admissible y at step " + std::to_string(step) + " for x = " + to_string(x) +
            " (window " + std::to_string(window) + ", min norm " + min_norm.get_str() + ")"),
      step_(step),
      x_(std::move(x)),
      window_(window),
      min_norm_(std::move(min_norm)) {}

Oracle window_oracle(unsigned window) {
    return [window](const QuadraticPolynomial& f, const FractionPoint& x) { return euclidean_step(f, x, window); };
}

namespace {

DescentStep step_with(const QuadraticPolynomial& f, const FractionPoint& x, const Oracle& oracle, unsigned window,
                      std::size_t step_index) {
    require_zero(f, x);
    if (is_integral(x)) throw PreconditionError("descent_step needs a non-integral zero, got " + to_string(x));

    const OracleOutcome outcome = oracle(f, x);
    if (const auto* miss = std::get_if<OracleNotFound>(&outcome))
        throw OracleFailure(step_index, x, window, miss->min_norm);
    const OracleResult& witness = std::get<OracleResult>(outcome);

    const Element& b = x.den();
    const Point& y = witness.y;
    if (y.size() != x.dim()) throw PreconditionError("oracle returned a point of the wrong dimension");
    const Point v = point_sub(x.num(), point_scale(b, y));
    const FractionElement value(eval_quad(f, v), b * b);
    if (value != witness.value || ext_norm(value) != witness.vnorm || !(witness.vnorm > 0 && witness.vnorm < 1))
        throw PreconditionError("oracle returned an inadmissible y = " + to_string(y));
    const auto [A, B, C] = expand_along_line(f, y, v);

    // T = 1/b is a root of A T^2 + B T + C.
    certify((A + B * b + C * b * b).is_zero(), "F(1/b) = 0");
    certify(!A.is_zero(), "A != 0");
    certify(divides(b, A), "b divides A");
    const Element b_next = exact_div(A, b);
    certify(b_next * b == A, "b' b = A");
    certify(b_next == -B - C * b, "A/b = -B - C b");

    const mpz_class nb = norm(b);
    const mpz_class nb_next = norm(b_next);
    certify(nb_next < nb, "||b'|| < ||b||");
    certify(mpq_class(nb_next) == witness.vnorm * nb, "||b'|| = ||f2(x - y)|| ||b||");

    const Point a_next = point_add(point_scale(b_next, y), point_scale(C, v));
    FractionPoint x_next = reduce_point(a_next, b_next);
    certify(eval(f, x_next).is_zero(), "f(x') = 0");

    return DescentStep{x, y, v, A, B, C, b, b_next, std::move(x_next), witness.vnorm};
}

DescentTrace descend_with(const QuadraticPolynomial& f, const FractionPoint& x, const Oracle& oracle,
                          unsigned window, std::optional<mpz_class> max_steps) {
    require_zero(f, x);
    DescentTrace trace{x, {}, {}};
    if (auto y = integral_point(x)) {
        trace.result = std::move(*y);
        return trace;
    }

    const mpz_class limit = max_steps.value_or(norm(x.den()));
    FractionPoint current = x;
    for (;;) {
        if (mpz_class(trace.steps.size()) >= limit)
            throw InvariantViolation("descent exceeded " + limit.get_str() + " steps");
        DescentStep step = step_with(f, current, oracle, window, trace.steps.size());
        if (!trace.steps.empty())
            certify(norm(step.b) < norm(trace.steps.back().b), "denominator norms strictly decrease");
        current = step.x_next;
        trace.steps.push_back(std::move(step));
        if (auto y = integral_point(current)) {
            trace.result = std::move(*y);
            break;
        }
    }
    certify(eval(f, trace.result).is_zero(), "f(result) = 0");
    return trace;
}

} // namespace

DescentStep descent_step(const QuadraticPolynomial& f, const FractionPoint& x, const Oracle& oracle,
                         std::size_t step_index) {
    return step_with(f, x, oracle, 0, step_index);
}

DescentStep descent_step(const QuadraticPolynomial& f, const FractionPoint& x, unsigned window,
                         std::size_t step_index) {
    return step_with(f, x, window_oracle(window), window, step_index);
}

DescentTrace descend(const QuadraticPolynomial& f, const FractionPoint& x, const Oracle& oracle,
                     std::optional<mpz_class> max_steps) {
    return descend_with(f, x, oracle, 0, std::move(max_steps));
}

DescentTrace descend(const QuadraticPolynomial& f, const FractionPoint& x, unsigned window,
                     std::optional<mpz_class> max_steps) {
    return descend_with(f, x, window_oracle(window), window, std::move(max_steps));
}

Representation adc_represent(const QuadraticPolynomial& q, const FractionPoint& x, unsigned window) {
    if (!q.is_form()) throw PreconditionError("adc_represent needs a quadratic form (no linear or constant terms)");
    if (x.dim() != q.dim()) throw DimensionMismatch("point and form dimensions differ");
    const FractionElement r = eval(q, x);
    if (!r.is_integral()) throw PreconditionError("q(x) = " + to_string(r) + " is not in R");
    const Element value = r.integral_value();

    DescentTrace trace = descend(q.minus_constant(value), x, window);
    certify(eval(q, trace.result) == value, "q(y) = q(x)");
    Point y = trace.result;
    return Representation{std::move(y), value, std::move(trace)};
}

N2Report check_n2(const QuadraticPolynomial& q, const std::vector<Element>& elements, unsigned window) {
    N2Report report;
    const QuadraticPolynomial g = q.quadratic_part();
    const Domain& dom = q.domain();
    for (const auto& a : elements) {
        if (a.is_zero() || is_unit(a)) continue;
        ++report.checked;
        const mpz_class na = norm(a);
        if (na <= 1) {
            report.failures.push_back({a, "non-unit of norm " + na.get_str()});
            continue;
        }

        Point e1(q.dim(), Element::zero(dom));
        e1[0] = Element::one(dom);
        const FractionPoint x = FractionPoint::unreduced(e1, a);
        const OracleOutcome outcome = euclidean_step(g, x, window);
        if (const auto* miss = std::get_if<OracleNotFound>(&outcome)) {
            report.failures.push_back({a, "no admissible y at e1/a (min norm " + miss->min_norm.get_str() + ")"});
            continue;
        }
        const auto& witness = std::get<OracleResult>(outcome);
        const mpz_class n = norm(eval_quad(g, point_sub(e1, point_scale(a, witness.y))));
        const mpz_class bound = na * na;
        if (!(n > 0 && n < bound))
            report.failures.push_back({a, "||q(e1 - a y)|| = " + n.get_str() + " not in (0, " + bound.get_str() + ")"});
        else if (mpq_class(n) != witness.vnorm * bound)
            report.failures.push_back({a, "||q(e1 - a y)|| disagrees with ||q(x - y)|| ||a||^2"});
    }
    return report;
}

} // namespace qdescent
