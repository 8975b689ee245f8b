#pragma once

/**
 * @file domain.hpp
 * @brief Integral domains carrying a discrete multiplicative norm.
 *
 * Three instances ship: the rational integers (norm |x|), the Gaussian
 * integers (norm re^2 + im^2) and polynomials over a prime field F_p
 * (norm p^deg). Each is a Euclidean domain, which gives gcd-based
 * canonical fractions in fraction.hpp.
 *
 * An Element always carries its Domain; binary operations throw
 * DomainMismatch when the domains differ. Adding an instance means adding
 * a DomainKind, a carrier type to Element::Value and the per-kind cases in
 * domain.cpp; nothing outside this module switches on the kind.
 */

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace qdescent {

enum class DomainKind { Integers, GaussianIntegers, PrimeFieldPolynomials };

class Domain {
public:
    static Domain integers() { return Domain(DomainKind::Integers, 0); }
    static Domain gaussian_integers() { return Domain(DomainKind::GaussianIntegers, 0); }
    /// Throws PreconditionError unless 2 <= p < 2^31 is prime.
    static Domain prime_field_polynomials(std::uint32_t p);

    /// Accepts "Z", "Zi" and "Fpt:<p>".
    static Domain parse(const std::string& text);

    DomainKind kind() const noexcept { return kind_; }
    /// Field characteristic for F_p[t]; 0 otherwise.
    std::uint32_t characteristic() const noexcept { return p_; }
    std::string name() const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    Domain(DomainKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

    DomainKind kind_;
    std::uint32_t p_;
};

struct GaussianValue {
    mpz_class re;
    mpz_class im;
};

/// Coefficients low to high, each in [0, p), no trailing zero. Empty is 0.
struct FpPolyValue {
    std::vector<std::uint32_t> coeffs;
};

class Element {
public:
    using Value = std::variant<mpz_class, GaussianValue, FpPolyValue>;

    static Element zero(const Domain& dom);
    static Element one(const Domain& dom);
    /// Image of an integer under Z -> R.
    static Element from_int(const Domain& dom, long n);
    static Element integer(const mpz_class& n);
    static Element gaussian(const mpz_class& re, const mpz_class& im);
    /// Coefficients low to high; reduced mod p and trimmed.
    static Element fp_poly(const Domain& dom, std::vector<std::int64_t> coeffs);
    /// The indeterminate t of F_p[t].
    static Element generator(const Domain& dom);
    /// The imaginary unit of Z[i].
    static Element imaginary_unit();

    const Domain& domain() const noexcept { return dom_; }
    const Value& value() const noexcept { return value_; }

    const mpz_class& as_integer() const;
    const GaussianValue& as_gaussian() const;
    const FpPolyValue& as_fp_poly() const;

    bool is_zero() const;
    /// Polynomial degree, or -1 for zero. Only meaningful for F_p[t].
    int degree() const;

    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    Element(Domain dom, Value v) : dom_(dom), value_(std::move(v)) {}

    Domain dom_;
    Value value_;
};

using Point = std::vector<Element>;

Element add(const Element& u, const Element& v);
Element sub(const Element& u, const Element& v);
Element neg(const Element& u);
Element mul(const Element& u, const Element& v);
Element pow(const Element& u, unsigned e);

inline Element operator+(const Element& u, const Element& v) { return add(u, v); }
inline Element operator-(const Element& u, const Element& v) { return sub(u, v); }
inline Element operator-(const Element& u) { return neg(u); }
inline Element operator*(const Element& u, const Element& v) { return mul(u, v); }

/// The discrete multiplicative norm: |x|, re^2+im^2, or p^deg (0 for zero).
mpz_class norm(const Element& u);

bool is_unit(const Element& u);
/// Inverse of a unit; throws PreconditionError otherwise.
Element unit_inverse(const Element& u);

struct DivMod {
    Element quotient;
    Element remainder;
};

/// Euclidean division with norm(remainder) < norm(divisor).
DivMod divmod(const Element& u, const Element& v);
/// u / v when v divides u exactly; throws PreconditionError otherwise.
Element exact_div(const Element& u, const Element& v);
bool divides(const Element& v, const Element& u);
/// Normalized greatest common divisor (see normalize).
Element gcd(const Element& u, const Element& v);

/// The unit e with e*u normalized: positive integer, first-quadrant Gaussian
/// (re > 0, im >= 0) or monic polynomial. Returns 1 for zero.
Element normalizing_unit(const Element& u);
Element normalize(const Element& u);
bool is_normalized(const Element& u);

/**
 * Nearest element to the fraction num/den, den != 0.
 *
 * Z: nearest integer, ties toward zero. Z[i]: the same rule applied to the
 * real and imaginary parts of num*conj(den)/norm(den). F_p[t]: polynomial
 * quotient, which leaves a remainder of extended norm < 1.
 */
Element nearest_quotient(const Element& num, const Element& den);

/// Total order used for deterministic tie-breaking. Returns <0, 0, >0.
int compare(const Element& a, const Element& b);

std::string to_string(const Element& u);
std::ostream& operator<<(std::ostream& os, const Element& u);
std::string to_string(const Point& y);

/// Elements in a coordinate box: Z |n| <= bound; Z[i] |re|,|im| <= bound;
/// F_p[t] deg <= bound. Sorted by compare.
std::vector<Element> elements_in_box(const Domain& dom, unsigned bound);
/// Every element of norm <= max_norm, zero included, sorted by compare.
std::vector<Element> elements_by_norm(const Domain& dom, const mpz_class& max_norm);

/// Deterministic draw from mt19937_64 with modulo reduction.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound);
/// Random element of elements_in_box(dom, bound).
Element random_element(const Domain& dom, std::mt19937_64& rng, unsigned bound);

/// Throws DomainMismatch if the domains differ.
void require_same_domain(const Element& u, const Element& v);

} // namespace qdescent
