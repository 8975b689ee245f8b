#pragma once

/**
 * @file oracle.hpp
 * @brief Witnesses for the Euclidean property of a quadratic form.
 *
 * A form g is Euclidean when every x in K^d \ R^d admits y in R^d with
 * 0 < ||g(x - y)|| < 1. The oracle rounds x coordinatewise and, if the
 * rounded point is not admissible, searches a window of offsets around it.
 * Results are deterministic: the admissible y of least norm wins, ties go
 * to the lexicographically smallest y.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "qdescent/domain.hpp"
#include "qdescent/fraction.hpp"
#include "qdescent/quadratic.hpp"

namespace qdescent {

inline constexpr unsigned kDefaultWindow = 2;

struct OracleResult {
    Point y;
    FractionElement value; ///< f2(x - y)
    mpq_class vnorm;       ///< ext_norm(value), strictly between 0 and 1
};

struct OracleNotFound {
    /// Least extended norm of a nonzero f2(x - y) seen in the window; 0 when every value was 0.
    mpq_class min_norm;
};

using OracleOutcome = std::variant<OracleResult, OracleNotFound>;

/// Coordinatewise nearest element of R (see nearest_quotient).
Point round_point(const FractionPoint& x);

/// Offsets searched for a given window: Z |d| <= w, Z[i] ||d|| <= w, F_p[t] deg d < w.
std::vector<Element> window_offsets(const Domain& dom, unsigned window);

/// Throws PreconditionError when x is integral.
OracleOutcome euclidean_step(const QuadraticPolynomial& f, const FractionPoint& x, unsigned window = kDefaultWindow);

struct EuclideanFailure {
    FractionPoint point;
    unsigned window;
    mpq_class min_norm;
};

struct EuclideanReport {
    std::size_t checked = 0;
    std::vector<EuclideanFailure> failures; ///< in enumeration order
};

/**
 * Runs euclidean_step on every canonical non-integral point with a
 * normalized denominator of norm <= height (degree <= height for F_p[t])
 * and numerators in elements_in_box(box). Enumeration is by denominator,
 * then numerator tuples in lexicographic order.
 */
EuclideanReport check_euclidean(const QuadraticPolynomial& f, unsigned height, unsigned box,
                                unsigned window = kDefaultWindow);

/// Normalized non-unit denominators in enumeration order, as used by check_euclidean.
std::vector<Element> denominators_up_to(const Domain& dom, unsigned height);

/// Calls visit(x) for every canonical non-integral x in the height/box range, in check_euclidean order.
void for_each_fraction_point(const Domain& dom, std::size_t d, unsigned height, unsigned box,
                             const std::function<void(const FractionPoint&)>& visit);

} // namespace qdescent
