#include "qdescent/domain.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "qdescent/errors.hpp"

namespace qdescent {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t k = 2; k * k <= p; ++k)
        if (p % k == 0) return false;
    return true;
}

// ---- F_p[t] helpers -------------------------------------------------------

using Coeffs = std::vector<std::uint32_t>;

void trim(Coeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
    std::uint64_t result = 1;
    base %= p;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return pow_mod(a, p - 2, p); }

Coeffs poly_add(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
    Coeffs r(std::max(a.size(), b.size()), 0);
    for (std::size_t k = 0; k < r.size(); ++k) {
        std::uint64_t s = 0;
        if (k < a.size()) s += a[k];
        if (k < b.size()) s += b[k];
        r[k] = static_cast<std::uint32_t>(s % p);
    }
    trim(r);
    return r;
}

Coeffs poly_neg(const Coeffs& a, std::uint32_t p) {
    Coeffs r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] == 0 ? 0 : p - a[k];
    return r;
}

Coeffs poly_mul(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t t = static_cast<std::uint64_t>(a[i]) * b[j] % p;
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + t) % p);
        }
    }
    trim(r);
    return r;
}

std::pair<Coeffs, Coeffs> poly_divmod(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
    Coeffs rem = a;
    if (rem.size() < b.size()) return {Coeffs{}, rem};
    Coeffs quot(rem.size() - b.size() + 1, 0);
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (!rem.empty() && rem.size() >= b.size()) {
        const std::size_t shift = rem.size() - b.size();
        const std::uint32_t factor =
            static_cast<std::uint32_t>(static_cast<std::uint64_t>(rem.back()) * lead_inv % p);
        quot[shift] = factor;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t t = static_cast<std::uint64_t>(factor) * b[j] % p;
            rem[shift + j] = static_cast<std::uint32_t>((rem[shift + j] + p - t) % p);
        }
        trim(rem);
    }
    trim(quot);
    return {quot, rem};
}

// ---- Z helpers -------------------------------------------------------------

// Nearest integer to n/d, ties toward zero.
mpz_class nearest_int(mpz_class n, mpz_class d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    const mpz_class twice = 2 * r;
    if (twice > d) return q + 1;
    if (twice == d) return q >= 0 ? q : mpz_class(q + 1);
    return q;
}

mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

} // namespace

// ---- Domain ----------------------------------------------------------------

Domain Domain::prime_field_polynomials(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime(p))
        throw PreconditionError("F_p[t] requires a prime p < 2^31, got " + std::to_string(p));
    return Domain(DomainKind::PrimeFieldPolynomials, p);
}

Domain Domain::parse(const std::string& text) {
    if (text == "Z") return integers();
    if (text == "Zi") return gaussian_integers();
    const std::string prefix = "Fpt:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string digits = text.substr(prefix.size());
        if (digits.empty() || digits.size() > 10 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw PreconditionError("bad characteristic in domain '" + text + "'");
        const unsigned long long p = std::stoull(digits);
        if (p >= (1ull << 31)) throw PreconditionError("characteristic too large in '" + text + "'");
        return prime_field_polynomials(static_cast<std::uint32_t>(p));
    }
    throw PreconditionError("unknown domain '" + text + "' (expected Z, Zi or Fpt:<p>)");
}

std::string Domain::name() const {
    switch (kind_) {
    case DomainKind::Integers: return "Z";
    case DomainKind::GaussianIntegers: return "Zi";
    case DomainKind::PrimeFieldPolynomials: return "Fpt:" + std::to_string(p_);
    }
    return "?";
}

// ---- Element construction --------------------------------------------------

Element Element::zero(const Domain& dom) { return from_int(dom, 0); }
Element Element::one(const Domain& dom) { return from_int(dom, 1); }

Element Element::from_int(const Domain& dom, long n) {
    switch (dom.kind()) {
    case DomainKind::Integers: return Element(dom, mpz_class(n));
    case DomainKind::GaussianIntegers: return Element(dom, GaussianValue{mpz_class(n), mpz_class(0)});
    case DomainKind::PrimeFieldPolynomials: return fp_poly(dom, {n});
    }
    throw InvariantViolation("unreachable domain kind");
}

Element Element::integer(const mpz_class& n) { return Element(Domain::integers(), n); }

Element Element::gaussian(const mpz_class& re, const mpz_class& im) {
    return Element(Domain::gaussian_integers(), GaussianValue{re, im});
}

Element Element::fp_poly(const Domain& dom, std::vector<std::int64_t> coeffs) {
    if (dom.kind() != DomainKind::PrimeFieldPolynomials)
        throw DomainMismatch("fp_poly called with domain " + dom.name());
    const std::int64_t p = dom.characteristic();
    Coeffs c(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = static_cast<std::uint32_t>(((coeffs[k] % p) + p) % p);
    trim(c);
    return Element(dom, FpPolyValue{std::move(c)});
}

Element Element::generator(const Domain& dom) { return fp_poly(dom, {0, 1}); }

Element Element::imaginary_unit() { return gaussian(0, 1); }

const mpz_class& Element::as_integer() const {
    if (const auto* v = std::get_if<mpz_class>(&value_)) return *v;
    throw DomainMismatch("element of " + dom_.name() + " is not a rational integer");
}

const GaussianValue& Element::as_gaussian() const {
    if (const auto* v = std::get_if<GaussianValue>(&value_)) return *v;
    throw DomainMismatch("element of " + dom_.name() + " is not a Gaussian integer");
}

const FpPolyValue& Element::as_fp_poly() const {
    if (const auto* v = std::get_if<FpPolyValue>(&value_)) return *v;
    throw DomainMismatch("element of " + dom_.name() + " is not a polynomial");
}

bool Element::is_zero() const {
    return std::visit(overloaded{
                          [](const mpz_class& n) { return n == 0; },
                          [](const GaussianValue& g) { return g.re == 0 && g.im == 0; },
                          [](const FpPolyValue& f) { return f.coeffs.empty(); },
                      },
                      value_);
}

int Element::degree() const {
    if (const auto* f = std::get_if<FpPolyValue>(&value_)) return static_cast<int>(f->coeffs.size()) - 1;
    return is_zero() ? -1 : 0;
}

bool operator==(const Element& a, const Element& b) {
    if (a.dom_ != b.dom_) return false;
    return std::visit(overloaded{
                          [](const mpz_class& x, const mpz_class& y) { return x == y; },
                          [](const GaussianValue& x, const GaussianValue& y) { return x.re == y.re && x.im == y.im; },
                          [](const FpPolyValue& x, const FpPolyValue& y) { return x.coeffs == y.coeffs; },
                          [](const auto&, const auto&) { return false; },
                      },
                      a.value_, b.value_);
}

void require_same_domain(const Element& u, const Element& v) {
    if (u.domain() != v.domain())
        throw DomainMismatch("cannot combine elements of " + u.domain().name() + " and " + v.domain().name());
}

// ---- Ring operations -------------------------------------------------------

Element add(const Element& u, const Element& v) {
    require_same_domain(u, v);
    const Domain& dom = u.domain();
    switch (dom.kind()) {
    case DomainKind::Integers: return Element::integer(u.as_integer() + v.as_integer());
    case DomainKind::GaussianIntegers: {
        const auto& a = u.as_gaussian();
        const auto& b = v.as_gaussian();
        return Element::gaussian(a.re + b.re, a.im + b.im);
    }
    case DomainKind::PrimeFieldPolynomials: {
        const auto c = poly_add(u.as_fp_poly().coeffs, v.as_fp_poly().coeffs, dom.characteristic());
        std::vector<std::int64_t> wide(c.begin(), c.end());
        return Element::fp_poly(dom, std::move(wide));
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

Element neg(const Element& u) {
    const Domain& dom = u.domain();
    switch (dom.kind()) {
    case DomainKind::Integers: return Element::integer(-u.as_integer());
    case DomainKind::GaussianIntegers: return Element::gaussian(-u.as_gaussian().re, -u.as_gaussian().im);
    case DomainKind::PrimeFieldPolynomials: {
        const auto c = poly_neg(u.as_fp_poly().coeffs, dom.characteristic());
        return Element::fp_poly(dom, std::vector<std::int64_t>(c.begin(), c.end()));
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

Element sub(const Element& u, const Element& v) { return add(u, neg(v)); }

Element mul(const Element& u, const Element& v) {
    require_same_domain(u, v);
    const Domain& dom = u.domain();
    switch (dom.kind()) {
    case DomainKind::Integers: return Element::integer(u.as_integer() * v.as_integer());
    case DomainKind::GaussianIntegers: {
        const auto& a = u.as_gaussian();
        const auto& b = v.as_gaussian();
        return Element::gaussian(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    case DomainKind::PrimeFieldPolynomials: {
        const auto c = poly_mul(u.as_fp_poly().coeffs, v.as_fp_poly().coeffs, dom.characteristic());
        return Element::fp_poly(dom, std::vector<std::int64_t>(c.begin(), c.end()));
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

Element pow(const Element& u, unsigned e) {
    Element result = Element::one(u.domain());
    Element base = u;
    while (e > 0) {
        if (e & 1u) result = mul(result, base);
        e >>= 1u;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

mpz_class norm(const Element& u) {
    const Domain& dom = u.domain();
    switch (dom.kind()) {
    case DomainKind::Integers: return abs(u.as_integer());
    case DomainKind::GaussianIntegers: {
        const auto& g = u.as_gaussian();
        return g.re * g.re + g.im * g.im;
    }
    case DomainKind::PrimeFieldPolynomials: {
        if (u.is_zero()) return 0;
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), dom.characteristic(), static_cast<unsigned long>(u.degree()));
        return r;
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

bool is_unit(const Element& u) {
    if (u.domain().kind() == DomainKind::PrimeFieldPolynomials) return u.degree() == 0;
    return norm(u) == 1;
}

Element unit_inverse(const Element& u) {
    if (!is_unit(u)) throw PreconditionError(to_string(u) + " is not a unit");
    const Domain& dom = u.domain();
    switch (dom.kind()) {
    case DomainKind::Integers: return u;
    case DomainKind::GaussianIntegers: return Element::gaussian(u.as_gaussian().re, -u.as_gaussian().im);
    case DomainKind::PrimeFieldPolynomials:
        return Element::fp_poly(dom, {inv_mod(u.as_fp_poly().coeffs[0], dom.characteristic())});
    }
    throw InvariantViolation("unreachable domain kind");
}

DivMod divmod(const Element& u, const Element& v) {
    require_same_domain(u, v);
    if (v.is_zero()) throw PreconditionError("division by zero");
    const Domain& dom = u.domain();
    switch (dom.kind()) {
    case DomainKind::Integers: {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), u.as_integer().get_mpz_t(), v.as_integer().get_mpz_t());
        return {Element::integer(q), Element::integer(r)};
    }
    case DomainKind::GaussianIntegers: {
        Element q = nearest_quotient(u, v);
        return {q, sub(u, mul(q, v))};
    }
    case DomainKind::PrimeFieldPolynomials: {
        auto [q, r] = poly_divmod(u.as_fp_poly().coeffs, v.as_fp_poly().coeffs, dom.characteristic());
        return {Element::fp_poly(dom, std::vector<std::int64_t>(q.begin(), q.end())),
                Element::fp_poly(dom, std::vector<std::int64_t>(r.begin(), r.end()))};
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

bool divides(const Element& v, const Element& u) {
    if (v.is_zero()) return u.is_zero();
    return divmod(u, v).remainder.is_zero();
}

Element exact_div(const Element& u, const Element& v) {
    auto [q, r] = divmod(u, v);
    if (!r.is_zero()) throw PreconditionError(to_string(v) + " does not divide " + to_string(u));
    return q;
}

Element gcd(const Element& u, const Element& v) {
    require_same_domain(u, v);
    Element a = u;
    Element b = v;
    while (!b.is_zero()) {
        Element r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return normalize(a);
}

Element normalizing_unit(const Element& u) {
    const Domain& dom = u.domain();
    if (u.is_zero()) return Element::one(dom);
    switch (dom.kind()) {
    case DomainKind::Integers: return Element::from_int(dom, u.as_integer() < 0 ? -1 : 1);
    case DomainKind::GaussianIntegers: {
        const auto& g = u.as_gaussian();
        if (g.re > 0 && g.im >= 0) return Element::gaussian(1, 0);
        if (g.re <= 0 && g.im > 0) return Element::gaussian(0, -1);
        if (g.re < 0 && g.im <= 0) return Element::gaussian(-1, 0);
        return Element::gaussian(0, 1);
    }
    case DomainKind::PrimeFieldPolynomials:
        return Element::fp_poly(dom, {inv_mod(u.as_fp_poly().coeffs.back(), dom.characteristic())});
    }
    throw InvariantViolation("unreachable domain kind");
}

Element normalize(const Element& u) { return mul(normalizing_unit(u), u); }

bool is_normalized(const Element& u) { return normalize(u) == u; }

Element nearest_quotient(const Element& num, const Element& den) {
    require_same_domain(num, den);
    if (den.is_zero()) throw PreconditionError("division by zero");
    const Domain& dom = num.domain();
    switch (dom.kind()) {
    case DomainKind::Integers: return Element::integer(nearest_int(num.as_integer(), den.as_integer()));
    case DomainKind::GaussianIntegers: {
        const auto& a = num.as_gaussian();
        const auto& b = den.as_gaussian();
        const mpz_class n = b.re * b.re + b.im * b.im;
        // num * conj(den)
        const mpz_class x = a.re * b.re + a.im * b.im;
        const mpz_class y = a.im * b.re - a.re * b.im;
        return Element::gaussian(nearest_int(x, n), nearest_int(y, n));
    }
    case DomainKind::PrimeFieldPolynomials: return divmod(num, den).quotient;
    }
    throw InvariantViolation("unreachable domain kind");
}

int compare(const Element& a, const Element& b) {
    require_same_domain(a, b);
    auto sgn = [](int c) { return (c > 0) - (c < 0); };
    switch (a.domain().kind()) {
    case DomainKind::Integers: return sgn(cmp(a.as_integer(), b.as_integer()));
    case DomainKind::GaussianIntegers: {
        const int c = cmp(a.as_gaussian().re, b.as_gaussian().re);
        return c != 0 ? sgn(c) : sgn(cmp(a.as_gaussian().im, b.as_gaussian().im));
    }
    case DomainKind::PrimeFieldPolynomials: {
        const auto& x = a.as_fp_poly().coeffs;
        const auto& y = b.as_fp_poly().coeffs;
        if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
        for (std::size_t k = x.size(); k-- > 0;)
            if (x[k] != y[k]) return x[k] < y[k] ? -1 : 1;
        return 0;
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

// ---- Text ------------------------------------------------------------------

std::string to_string(const Element& u) {
    return std::visit(
        overloaded{
            [](const mpz_class& n) { return n.get_str(); },
            [](const GaussianValue& g) -> std::string {
                auto imag = [](const mpz_class& im) -> std::string {
                    if (im == 1) return "i";
                    if (im == -1) return "-i";
                    return im.get_str() + "i";
                };
                if (g.im == 0) return g.re.get_str();
                if (g.re == 0) return imag(g.im);
                const mpz_class mag = abs(g.im);
                return "(" + g.re.get_str() + (g.im < 0 ? "-" : "+") + (mag == 1 ? "" : mag.get_str()) + "i)";
            },
            [](const FpPolyValue& f) -> std::string {
                if (f.coeffs.empty()) return "0";
                std::string out;
                for (std::size_t k = f.coeffs.size(); k-- > 0;) {
                    const std::uint32_t c = f.coeffs[k];
                    if (c == 0) continue;
                    if (!out.empty()) out += '+';
                    if (k == 0) {
                        out += std::to_string(c);
                        continue;
                    }
                    if (c != 1) out += std::to_string(c) + "*";
                    out += 't';
                    if (k > 1) out += "^" + std::to_string(k);
                }
                return out;
            },
        },
        u.value());
}

std::ostream& operator<<(std::ostream& os, const Element& u) { return os << to_string(u); }

std::string to_string(const Point& y) {
    std::string out = "(";
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (k > 0) out += ',';
        out += to_string(y[k]);
    }
    return out + ")";
}

// ---- Enumeration -----------------------------------------------------------

namespace {

constexpr std::size_t kEnumerationLimit = 10'000'000;

std::vector<Element> all_polys_up_to_degree(const Domain& dom, int max_deg) {
    std::vector<Element> out;
    if (max_deg < 0) {
        out.push_back(Element::zero(dom));
        return out;
    }
    const std::uint64_t p = dom.characteristic();
    std::uint64_t count = 1;
    for (int k = 0; k <= max_deg; ++k) {
        count *= p;
        if (count > kEnumerationLimit) throw PreconditionError("enumeration too large");
    }
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::int64_t> coeffs(static_cast<std::size_t>(max_deg) + 1);
        std::uint64_t rest = idx;
        for (auto& c : coeffs) {
            c = static_cast<std::int64_t>(rest % p);
            rest /= p;
        }
        out.push_back(Element::fp_poly(dom, std::move(coeffs)));
    }
    std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) { return compare(a, b) < 0; });
    return out;
}

} // namespace

std::vector<Element> elements_in_box(const Domain& dom, unsigned bound) {
    std::vector<Element> out;
    const long b = static_cast<long>(bound);
    switch (dom.kind()) {
    case DomainKind::Integers:
        for (long n = -b; n <= b; ++n) out.push_back(Element::integer(n));
        return out;
    case DomainKind::GaussianIntegers:
        if (static_cast<std::size_t>(2 * b + 1) * static_cast<std::size_t>(2 * b + 1) > kEnumerationLimit)
            throw PreconditionError("enumeration too large");
        for (long re = -b; re <= b; ++re)
            for (long im = -b; im <= b; ++im) out.push_back(Element::gaussian(re, im));
        return out;
    case DomainKind::PrimeFieldPolynomials: return all_polys_up_to_degree(dom, static_cast<int>(bound));
    }
    throw InvariantViolation("unreachable domain kind");
}

std::vector<Element> elements_by_norm(const Domain& dom, const mpz_class& max_norm) {
    std::vector<Element> out;
    if (max_norm < 0) return out;
    switch (dom.kind()) {
    case DomainKind::Integers:
        if (max_norm > kEnumerationLimit) throw PreconditionError("enumeration too large");
        for (long n = -max_norm.get_si(); n <= max_norm.get_si(); ++n) out.push_back(Element::integer(n));
        return out;
    case DomainKind::GaussianIntegers: {
        if (max_norm > kEnumerationLimit) throw PreconditionError("enumeration too large");
        const long r = isqrt(max_norm).get_si();
        for (long re = -r; re <= r; ++re)
            for (long im = -r; im <= r; ++im)
                if (re * re + im * im <= max_norm) out.push_back(Element::gaussian(re, im));
        return out;
    }
    case DomainKind::PrimeFieldPolynomials: {
        if (max_norm == 0) return {Element::zero(dom)};
        int deg = 0;
        mpz_class reach = dom.characteristic();
        while (reach <= max_norm) {
            ++deg;
            reach *= dom.characteristic();
        }
        return all_polys_up_to_degree(dom, deg);
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

Element random_element(const Domain& dom, std::mt19937_64& rng, unsigned bound) {
    const std::uint64_t width = 2ull * bound + 1;
    const long b = static_cast<long>(bound);
    switch (dom.kind()) {
    case DomainKind::Integers: return Element::integer(static_cast<long>(draw_below(rng, width)) - b);
    case DomainKind::GaussianIntegers: {
        const long re = static_cast<long>(draw_below(rng, width)) - b;
        const long im = static_cast<long>(draw_below(rng, width)) - b;
        return Element::gaussian(re, im);
    }
    case DomainKind::PrimeFieldPolynomials: {
        std::vector<std::int64_t> coeffs(bound + 1);
        for (auto& c : coeffs) c = static_cast<std::int64_t>(draw_below(rng, dom.characteristic()));
        return Element::fp_poly(dom, std::move(coeffs));
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

} // namespace qdescent
