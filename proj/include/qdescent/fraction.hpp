#pragma once

/**
 * @file fraction.hpp
 * @brief Exact arithmetic in the fraction field K of a normed domain R.
 *
 * Fractions are kept canonical: the gcd of numerator and denominator is a
 * unit and the denominator is normalized (see normalize in domain.hpp), so
 * equality of fractions is equality of representations.
 */

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qdescent/domain.hpp"

namespace qdescent {

class FractionElement {
public:
    /// Canonical num/den; throws PreconditionError if den is zero.
    FractionElement(const Element& num, const Element& den);
    explicit FractionElement(const Element& integral);

    const Element& num() const noexcept { return num_; }
    const Element& den() const noexcept { return den_; }
    const Domain& domain() const noexcept { return num_.domain(); }

    bool is_zero() const { return num_.is_zero(); }
    /// True iff the value lies in R.
    bool is_integral() const { return is_unit(den_); }
    /// The value as an element of R; throws PreconditionError when not integral.
    Element integral_value() const;

    friend bool operator==(const FractionElement& a, const FractionElement& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const FractionElement& a, const FractionElement& b) { return !(a == b); }

private:
    Element num_;
    Element den_;
};

FractionElement operator+(const FractionElement& a, const FractionElement& b);
FractionElement operator-(const FractionElement& a, const FractionElement& b);
FractionElement operator-(const FractionElement& a);
FractionElement operator*(const FractionElement& a, const FractionElement& b);
/// Throws PreconditionError on division by zero.
FractionElement operator/(const FractionElement& a, const FractionElement& b);

/// The norm extended to K: ||a/b|| = ||a|| / ||b||.
mpq_class ext_norm(const FractionElement& x);

std::string to_string(const FractionElement& x);

/**
 * A point of K^d written x = a/b with a shared denominator.
 *
 * Points built through reduce_point are canonical. FractionPoint::unreduced
 * keeps an arbitrary representative, which the descent accepts as input.
 */
class FractionPoint {
public:
    /// Keeps a and b as given. Throws on b = 0, d = 0 or mixed domains.
    static FractionPoint unreduced(Point num, Element den);
    static FractionPoint integral(Point y);

    const Point& num() const noexcept { return num_; }
    const Element& den() const noexcept { return den_; }
    std::size_t dim() const noexcept { return num_.size(); }
    const Domain& domain() const noexcept { return den_.domain(); }

    bool is_canonical() const;
    /// i-th coordinate as a canonical fraction.
    FractionElement coordinate(std::size_t i) const;

    /// Compares the represented points, not representatives.
    friend bool operator==(const FractionPoint& a, const FractionPoint& b);
    friend bool operator!=(const FractionPoint& a, const FractionPoint& b) { return !(a == b); }

private:
    FractionPoint(Point num, Element den) : num_(std::move(num)), den_(std::move(den)) {}

    Point num_;
    Element den_;
};

/// Canonical a/b: divides out the gcd of all entries, normalizes b.
FractionPoint reduce_point(const Point& a, const Element& b);
FractionPoint reduce_point(const FractionPoint& x);

/// True iff the canonical denominator is a unit.
bool is_integral(const FractionPoint& x);
/// The point of R^d represented by x, or nullopt when x is not integral.
std::optional<Point> integral_point(const FractionPoint& x);

/// "(a1,...,ad)/b", or "(a1,...,ad)" when b = 1.
std::string to_string(const FractionPoint& x);

// R^d helpers.
Point point_add(const Point& x, const Point& y);
Point point_sub(const Point& x, const Point& y);
Point point_scale(const Element& c, const Point& x);
bool point_is_zero(const Point& x);
/// Lexicographic under compare().
int compare_points(const Point& x, const Point& y);

} // namespace qdescent
