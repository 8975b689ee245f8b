#include "qdescent/fraction.hpp"

#include "qdescent/errors.hpp"

namespace qdescent {

FractionElement::FractionElement(const Element& num, const Element& den) : num_(num), den_(den) {
    require_same_domain(num, den);
    if (den.is_zero()) throw PreconditionError("zero denominator");
    if (num_.is_zero()) {
        den_ = Element::one(den.domain());
        return;
    }
    const Element g = gcd(num_, den_);
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
    const Element u = normalizing_unit(den_);
    num_ = mul(u, num_);
    den_ = mul(u, den_);
}

FractionElement::FractionElement(const Element& integral)
    : num_(integral), den_(Element::one(integral.domain())) {}

Element FractionElement::integral_value() const {
    if (!is_integral()) throw PreconditionError(to_string(*this) + " is not in R");
    return mul(num_, unit_inverse(den_));
}

FractionElement operator+(const FractionElement& a, const FractionElement& b) {
    return FractionElement(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

FractionElement operator-(const FractionElement& a) { return FractionElement(neg(a.num()), a.den()); }

FractionElement operator-(const FractionElement& a, const FractionElement& b) { return a + (-b); }

FractionElement operator*(const FractionElement& a, const FractionElement& b) {
    return FractionElement(a.num() * b.num(), a.den() * b.den());
}

FractionElement operator/(const FractionElement& a, const FractionElement& b) {
    if (b.is_zero()) throw PreconditionError("division by zero in K");
    return FractionElement(a.num() * b.den(), a.den() * b.num());
}

mpq_class ext_norm(const FractionElement& x) {
    mpq_class q(norm(x.num()), norm(x.den()));
    q.canonicalize();
    return q;
}

std::string to_string(const FractionElement& x) {
    if (x.den() == Element::one(x.domain())) return to_string(x.num());
    return to_string(x.num()) + "/" + to_string(x.den());
}

// ---- FractionPoint ---------------------------------------------------------

FractionPoint FractionPoint::unreduced(Point num, Element den) {
    if (num.empty()) throw DimensionMismatch("points need at least one coordinate");
    if (den.is_zero()) throw PreconditionError("zero denominator");
    for (const auto& a : num) require_same_domain(a, den);
    return FractionPoint(std::move(num), std::move(den));
}

FractionPoint FractionPoint::integral(Point y) {
    if (y.empty()) throw DimensionMismatch("points need at least one coordinate");
    Element one = Element::one(y.front().domain());
    return unreduced(std::move(y), std::move(one));
}

bool FractionPoint::is_canonical() const {
    const FractionPoint r = reduce_point(*this);
    return r.num_ == num_ && r.den_ == den_;
}

FractionElement FractionPoint::coordinate(std::size_t i) const {
    if (i >= num_.size()) throw DimensionMismatch("coordinate index out of range");
    return FractionElement(num_[i], den_);
}

bool operator==(const FractionPoint& a, const FractionPoint& b) {
    if (a.dim() != b.dim() || a.domain() != b.domain()) return false;
    const FractionPoint x = reduce_point(a);
    const FractionPoint y = reduce_point(b);
    return x.num_ == y.num_ && x.den_ == y.den_;
}

FractionPoint reduce_point(const Point& a, const Element& b) {
    FractionPoint raw = FractionPoint::unreduced(a, b);
    Element g = b;
    for (const auto& ai : a) g = gcd(g, ai);
    const Element u = normalizing_unit(exact_div(b, g));
    Point num;
    num.reserve(a.size());
    for (const auto& ai : a) num.push_back(mul(u, exact_div(ai, g)));
    return FractionPoint::unreduced(std::move(num), mul(u, exact_div(b, g)));
}

FractionPoint reduce_point(const FractionPoint& x) { return reduce_point(x.num(), x.den()); }

bool is_integral(const FractionPoint& x) { return is_unit(reduce_point(x).den()); }

std::optional<Point> integral_point(const FractionPoint& x) {
    const FractionPoint r = reduce_point(x);
    if (!is_unit(r.den())) return std::nullopt;
    return point_scale(unit_inverse(r.den()), r.num());
}

std::string to_string(const FractionPoint& x) {
    const std::string coords = to_string(x.num());
    if (x.den() == Element::one(x.domain())) return coords;
    return coords + "/" + to_string(x.den());
}

// ---- R^d helpers -----------------------------------------------------------

Point point_add(const Point& x, const Point& y) {
    if (x.size() != y.size()) throw DimensionMismatch("point dimensions differ");
    Point r;
    r.reserve(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) r.push_back(add(x[k], y[k]));
    return r;
}

Point point_sub(const Point& x, const Point& y) {
    if (x.size() != y.size()) throw DimensionMismatch("point dimensions differ");
    Point r;
    r.reserve(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) r.push_back(sub(x[k], y[k]));
    return r;
}

Point point_scale(const Element& c, const Point& x) {
    Point r;
    r.reserve(x.size());
    for (const auto& xi : x) r.push_back(mul(c, xi));
    return r;
}

bool point_is_zero(const Point& x) {
    for (const auto& xi : x)
        if (!xi.is_zero()) return false;
    return true;
}

int compare_points(const Point& x, const Point& y) {
    if (x.size() != y.size()) throw DimensionMismatch("point dimensions differ");
    for (std::size_t k = 0; k < x.size(); ++k)
        if (const int c = compare(x[k], y[k]); c != 0) return c;
    return 0;
}

} // namespace qdescent
