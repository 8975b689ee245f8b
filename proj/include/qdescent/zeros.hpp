#pragma once

/**
 * @file zeros.hpp
 * @brief Test-input generation and brute-force cross-checks.
 *
 * Brute searches walk a SearchBox in graded-lex order: points are sorted by
 * the sum of the coordinate norms, then lexicographically under compare().
 * For X^2+Y^2-5 over Z with box 3 the first zero is (-2,-1).
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdescent/descent.hpp"
#include "qdescent/domain.hpp"
#include "qdescent/fraction.hpp"
#include "qdescent/quadratic.hpp"

namespace qdescent {

struct SearchBox {
    /// Per coordinate: Z |n| <= bound, Z[i] |re|,|im| <= bound, F_p[t] deg <= bound.
    unsigned coeff_bound = 0;
    /// Denominators: norm <= height for Z and Z[i], degree <= height for F_p[t].
    unsigned height = 0;
};

/// All points of the box in graded-lex order.
std::vector<Point> points_in_box(const Domain& dom, std::size_t d, unsigned coeff_bound);

std::optional<Point> brute_integral_zero(const QuadraticPolynomial& f, const SearchBox& box);

/// First y in the box with q(y) = r.
std::optional<Point> brute_represent(const QuadraticPolynomial& q, const Element& r, unsigned coeff_bound);

/// Box side used by verify_adc's brute search for the value r.
unsigned representation_box(const Element& r);

/**
 * Second intersection of y0 + T w with f = 0: T = -B/A from the line
 * expansion (C = 0). Returns y0 itself for a tangent line (B = 0).
 * Throws PreconditionError if f(y0) != 0 or f2(w) = 0.
 */
FractionPoint chord_zero(const QuadraticPolynomial& f, const Point& y0, const Point& w);

inline constexpr std::size_t kChordAttemptBudget = 2000;

/**
 * Draws seeded directions w until chord_zero yields a non-integral zero whose
 * canonical denominator has norm >= height_min. Direction coordinates start
 * in elements_in_box(2) and the box widens by one every 100 attempts.
 * Throws PreconditionError after `budget` attempts.
 */
FractionPoint random_rational_zero(const QuadraticPolynomial& f, const Point& y0, std::uint64_t seed,
                                   const mpz_class& height_min = 1, std::size_t budget = kChordAttemptBudget);

enum class AdcFinding {
    Inapplicable,  ///< oracle NotFound, brute force found y: hypothesis unmet, nothing refuted
    Unrepresented, ///< oracle NotFound and brute force found nothing
    Inconsistent,  ///< descent found y, brute force found nothing in its box
    Mismatch,      ///< descent returned y with q(y) != q(x)
};

std::string to_string(AdcFinding kind);

struct AdcEntry {
    AdcFinding kind;
    FractionPoint x;
    Element value;
    std::optional<Point> descent_y;
    std::optional<Point> brute_y;
    std::string detail;
};

struct AdcReport {
    std::size_t checked = 0;     ///< points with q(x) in R
    std::size_t corroborated = 0; ///< descent and brute force both found a representation
    std::vector<AdcEntry> failures;
    std::vector<AdcEntry> notes; ///< Inapplicable entries
};

/**
 * For every canonical non-integral x in the box (see for_each_fraction_point)
 * with q(x) in R, runs adc_represent and an independent brute-force search
 * for y with q(y) = q(x).
 */
AdcReport verify_adc(const QuadraticPolynomial& q, const SearchBox& box, unsigned window = kDefaultWindow);

/// n = 4^a (8b + 7), i.e. n is not a sum of three squares.
bool is_excluded_from_three_squares(const mpz_class& n);

} // namespace qdescent
