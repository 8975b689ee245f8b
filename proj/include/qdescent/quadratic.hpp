#pragma once

/**
 * @file quadratic.hpp
 * @brief Quadratic polynomials f = f2 + f1 + f0 over a normed domain.
 *
 * The quadratic part is stored as an upper-triangular monomial table
 * c_ij (i <= j) so that f2 = sum c_ij X_i X_j. A symmetric Gram matrix
 * would need c_ij / 2 off the diagonal, which does not exist in
 * characteristic 2.
 */

#include <cstddef>
#include <vector>

#include "qdescent/domain.hpp"
#include "qdescent/fraction.hpp"

namespace qdescent {

class QuadraticPolynomial {
public:
    /// The zero polynomial in d >= 1 variables.
    QuadraticPolynomial(const Domain& dom, std::size_t d);

    const Domain& domain() const noexcept { return dom_; }
    std::size_t dim() const noexcept { return d_; }

    /// Coefficient of X_i X_j; the order of i, j does not matter.
    const Element& quad(std::size_t i, std::size_t j) const;
    const Element& lin(std::size_t i) const;
    const Element& constant() const noexcept { return const_; }

    void set_quad(std::size_t i, std::size_t j, const Element& c);
    void set_lin(std::size_t i, const Element& c);
    void set_constant(const Element& c);

    /// True iff f1 = 0 and f0 = 0.
    bool is_form() const;
    bool is_zero() const;
    /// f2 alone.
    QuadraticPolynomial quadratic_part() const;
    /// f - r.
    QuadraticPolynomial minus_constant(const Element& r) const;

    friend bool operator==(const QuadraticPolynomial&, const QuadraticPolynomial&) = default;

private:
    std::size_t index(std::size_t i, std::size_t j) const;
    void check_domain(const Element& c) const;

    Domain dom_;
    std::size_t d_;
    std::vector<Element> quad_;
    std::vector<Element> lin_;
    Element const_;
};

// Integral evaluation, everything in R.
Element eval_quad(const QuadraticPolynomial& f, const Point& y);
Element eval_lin(const QuadraticPolynomial& f, const Point& y);
Element eval(const QuadraticPolynomial& f, const Point& y);

/// f(a/b), computed as (f2(a) + b f1(a) + b^2 f0) / b^2.
FractionElement eval(const QuadraticPolynomial& f, const FractionPoint& x);
/// f2(a/b) = f2(a) / b^2.
FractionElement eval_f2(const QuadraticPolynomial& f, const FractionPoint& x);
/// <x, y> = f2(x + y) - f2(x) - f2(y).
FractionElement bilinear(const QuadraticPolynomial& f, const FractionPoint& x, const FractionPoint& y);

/// f(y + T v) = C + B T + A T^2.
struct LineExpansion {
    Element A;
    Element B;
    Element C;
};

/**
 * Coefficients of f along the line y + T v, y and v in R^d.
 *
 * A = f2(v), C = f(y), B = f(y + v) - A - C. The identity is re-checked at
 * T = -1 before returning; a mismatch throws InvariantViolation.
 */
LineExpansion expand_along_line(const QuadraticPolynomial& f, const Point& y, const Point& v);

} // namespace qdescent
