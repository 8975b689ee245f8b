#pragma once

/**
 * @file descent.hpp
 * @brief From a zero of f in K^d to a zero in R^d.
 *
 * Let f = f2 + f1 + f0 with f2 Euclidean and let x = a/b be a zero of f
 * outside R^d. With y from the oracle, v = a - b y and
 *
 *     F(T) = f(y + T v) = A T^2 + B T + C,
 *
 * T = 1/b is a root of F, so A + B b + C b^2 = 0 and b' = A / b = -B - C b
 * lies in R. The second root T' = C / b' gives the zero
 * x' = (b' y + C v) / b' with ||b'|| = ||f2(x - y)|| ||b|| < ||b||.
 * Iterating strictly lowers a natural number, so an integral zero is
 * reached after at most ||b0|| steps.
 *
 * Every identity above is re-checked on every step; a failed check throws
 * InvariantViolation.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qdescent/domain.hpp"
#include "qdescent/errors.hpp"
#include "qdescent/fraction.hpp"
#include "qdescent/oracle.hpp"
#include "qdescent/quadratic.hpp"

namespace qdescent {

struct DescentStep {
    FractionPoint x;     ///< current zero a/b (as handed to the step)
    Point y;             ///< oracle witness
    Point v;             ///< a - b y
    Element A;           ///< f2(v)
    Element B;           ///< f(y + v) - A - C
    Element C;           ///< f(y)
    Element b;           ///< current denominator
    Element b_next;      ///< A / b, before reduction
    FractionPoint x_next; ///< reduce_point(b_next y + C v, b_next)
    mpq_class vnorm;     ///< ||f2(x - y)||
};

struct DescentTrace {
    FractionPoint start;
    std::vector<DescentStep> steps;
    Point result;
};

/// Oracle NotFound during a descent.
class OracleFailure : public Error {
public:
    /// window is 0 for a caller-supplied oracle.
    OracleFailure(std::size_t step, FractionPoint x, unsigned window, mpq_class min_norm);

    std::size_t step() const noexcept { return step_; }
    const FractionPoint& point() const noexcept { return x_; }
    unsigned window() const noexcept { return window_; }
    const mpq_class& min_norm() const noexcept { return min_norm_; }

private:
    std::size_t step_;
    FractionPoint x_;
    unsigned window_;
    mpq_class min_norm_;
};

/// Input point is not a zero of f.
class NotAZero : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Source of y for a step. The returned y is re-validated; an inadmissible one throws PreconditionError.
using Oracle = std::function<OracleOutcome(const QuadraticPolynomial&, const FractionPoint&)>;

/// euclidean_step with a fixed window.
Oracle window_oracle(unsigned window);

/// One descent step. Requires f(x) = 0 and x not integral.
DescentStep descent_step(const QuadraticPolynomial& f, const FractionPoint& x, const Oracle& oracle,
                         std::size_t step_index = 0);
DescentStep descent_step(const QuadraticPolynomial& f, const FractionPoint& x, unsigned window = kDefaultWindow,
                         std::size_t step_index = 0);

/// Iterates descent_step until an integral zero is reached. max_steps defaults to ||b0||.
DescentTrace descend(const QuadraticPolynomial& f, const FractionPoint& x, const Oracle& oracle,
                     std::optional<mpz_class> max_steps = std::nullopt);
DescentTrace descend(const QuadraticPolynomial& f, const FractionPoint& x, unsigned window = kDefaultWindow,
                     std::optional<mpz_class> max_steps = std::nullopt);

struct Representation {
    Point y;
    Element value; ///< q(y) = q(x)
    DescentTrace trace;
};

/// For a form q and x with q(x) in R, an integral y with q(y) = q(x): the descent on q - q(x).
Representation adc_represent(const QuadraticPolynomial& q, const FractionPoint& x, unsigned window = kDefaultWindow);

struct N2Failure {
    Element a;
    std::string reason;
};

struct N2Report {
    std::size_t checked = 0;
    std::vector<N2Failure> failures;
};

/**
 * For every nonzero non-unit a in `elements`: ||a|| > 1 directly, and via
 * the oracle at x = e1 / a that 0 < ||q(e1 - a y)|| < ||a||^2 as integers.
 * Units and zero are skipped (not counted).
 */
N2Report check_n2(const QuadraticPolynomial& q, const std::vector<Element>& elements, unsigned window = kDefaultWindow);

} // namespace qdescent
