#include "qdescent/quadratic.hpp"

#include "qdescent/errors.hpp"

namespace qdescent {

QuadraticPolynomial::QuadraticPolynomial(const Domain& dom, std::size_t d)
    : dom_(dom),
      d_(d),
      quad_(d * (d + 1) / 2, Element::zero(dom)),
      lin_(d, Element::zero(dom)),
      const_(Element::zero(dom)) {
    if (d == 0) throw DimensionMismatch("a polynomial needs at least one variable");
}

std::size_t QuadraticPolynomial::index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    if (j >= d_) throw DimensionMismatch("variable index out of range");
    // Row-major upper triangle.
    return i * (2 * d_ - i + 1) / 2 + (j - i);
}

void QuadraticPolynomial::check_domain(const Element& c) const {
    if (c.domain() != dom_)
        throw DomainMismatch("coefficient from " + c.domain().name() + " in a polynomial over " + dom_.name());
}

const Element& QuadraticPolynomial::quad(std::size_t i, std::size_t j) const { return quad_[index(i, j)]; }

const Element& QuadraticPolynomial::lin(std::size_t i) const {
    if (i >= d_) throw DimensionMismatch("variable index out of range");
    return lin_[i];
}

void QuadraticPolynomial::set_quad(std::size_t i, std::size_t j, const Element& c) {
    check_domain(c);
    quad_[index(i, j)] = c;
}

void QuadraticPolynomial::set_lin(std::size_t i, const Element& c) {
    check_domain(c);
    if (i >= d_) throw DimensionMismatch("variable index out of range");
    lin_[i] = c;
}

void QuadraticPolynomial::set_constant(const Element& c) {
    check_domain(c);
    const_ = c;
}

bool QuadraticPolynomial::is_form() const {
    if (!const_.is_zero()) return false;
    for (const auto& l : lin_)
        if (!l.is_zero()) return false;
    return true;
}

bool QuadraticPolynomial::is_zero() const {
    if (!is_form()) return false;
    for (const auto& c : quad_)
        if (!c.is_zero()) return false;
    return true;
}

QuadraticPolynomial QuadraticPolynomial::quadratic_part() const {
    QuadraticPolynomial q(dom_, d_);
    q.quad_ = quad_;
    return q;
}

QuadraticPolynomial QuadraticPolynomial::minus_constant(const Element& r) const {
    check_domain(r);
    QuadraticPolynomial g = *this;
    g.const_ = sub(const_, r);
    return g;
}

namespace {

void check_point(const QuadraticPolynomial& f, const Point& y) {
    if (y.size() != f.dim())
        throw DimensionMismatch("point of dimension " + std::to_string(y.size()) + " for a polynomial in " +
                                std::to_string(f.dim()) + " variables");
    for (const auto& yi : y)
        if (yi.domain() != f.domain())
            throw DomainMismatch("point over " + yi.domain().name() + " for a polynomial over " +
                                 f.domain().name());
}

} // namespace

Element eval_quad(const QuadraticPolynomial& f, const Point& y) {
    check_point(f, y);
    Element acc = Element::zero(f.domain());
    for (std::size_t i = 0; i < f.dim(); ++i) {
        // y_i * sum_{j >= i} c_ij y_j
        Element row = Element::zero(f.domain());
        for (std::size_t j = i; j < f.dim(); ++j) {
            const Element& c = f.quad(i, j);
            if (!c.is_zero()) row = row + c * y[j];
        }
        if (!row.is_zero()) acc = acc + y[i] * row;
    }
    return acc;
}

Element eval_lin(const QuadraticPolynomial& f, const Point& y) {
    check_point(f, y);
    Element acc = Element::zero(f.domain());
    for (std::size_t i = 0; i < f.dim(); ++i)
        if (!f.lin(i).is_zero()) acc = acc + f.lin(i) * y[i];
    return acc;
}

Element eval(const QuadraticPolynomial& f, const Point& y) {
    return eval_quad(f, y) + eval_lin(f, y) + f.constant();
}

FractionElement eval(const QuadraticPolynomial& f, const FractionPoint& x) {
    const Element& b = x.den();
    const Element cleared = eval_quad(f, x.num()) + b * eval_lin(f, x.num()) + b * b * f.constant();
    return FractionElement(cleared, b * b);
}

FractionElement eval_f2(const QuadraticPolynomial& f, const FractionPoint& x) {
    return FractionElement(eval_quad(f, x.num()), x.den() * x.den());
}

FractionElement bilinear(const QuadraticPolynomial& f, const FractionPoint& x, const FractionPoint& y) {
    if (x.dim() != f.dim() || y.dim() != f.dim()) throw DimensionMismatch("bilinear: dimension mismatch");
    // x + y over the common denominator b_x b_y.
    const Point sum = point_add(point_scale(y.den(), x.num()), point_scale(x.den(), y.num()));
    const FractionPoint xy = FractionPoint::unreduced(sum, x.den() * y.den());
    return eval_f2(f, xy) - eval_f2(f, x) - eval_f2(f, y);
}

LineExpansion expand_along_line(const QuadraticPolynomial& f, const Point& y, const Point& v) {
    check_point(f, y);
    check_point(f, v);
    const Element A = eval_quad(f, v);
    const Element C = eval(f, y);
    const Element B = eval(f, point_add(y, v)) - A - C;
    if (eval(f, point_sub(y, v)) != A - B + C)
        throw InvariantViolation("line expansion does not reproduce f(y - v)");
    return {A, B, C};
}

} // namespace qdescent
