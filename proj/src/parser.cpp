#include "qdescent/parser.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "qdescent/errors.hpp"

namespace qdescent {

namespace {

constexpr unsigned kMaxExponent = 64;
constexpr unsigned kMaxDegree = 32;
constexpr int kMaxDepth = 200;
// Coefficient growth caps: bits for Z and Z[i], degree in t for F_p[t].
constexpr std::size_t kMaxCoefficientBits = 1u << 16;
constexpr int kMaxCoefficientDegree = 4096;

using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial& m) {
    unsigned s = 0;
    for (unsigned e : m) s += e;
    return s;
}

// Sparse polynomial in the form variables with coefficients in R.
struct Poly {
    std::map<Monomial, Element> terms;

    unsigned degree() const {
        unsigned deg = 0;
        for (const auto& [m, c] : terms) deg = std::max(deg, total_degree(m));
        return deg;
    }

    void accumulate(const Monomial& m, const Element& c) {
        auto it = terms.find(m);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(m, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
};

Poly constant_poly(const Element& c, std::size_t d) {
    Poly p;
    p.accumulate(Monomial(d, 0), c);
    return p;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms) r.accumulate(m, c);
    return r;
}

Poly negate(const Poly& a) {
    Poly r;
    for (const auto& [m, c] : a.terms) r.terms.emplace(m, neg(c));
    return r;
}

Poly multiply(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            Monomial m = ma;
            for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
            r.accumulate(m, ca * cb);
        }
    return r;
}

bool coefficient_too_large(const Poly& p) {
    for (const auto& [m, c] : p.terms) {
        switch (c.domain().kind()) {
        case DomainKind::Integers:
            if (mpz_sizeinbase(c.as_integer().get_mpz_t(), 2) > kMaxCoefficientBits) return true;
            break;
        case DomainKind::GaussianIntegers:
            if (mpz_sizeinbase(c.as_gaussian().re.get_mpz_t(), 2) > kMaxCoefficientBits ||
                mpz_sizeinbase(c.as_gaussian().im.get_mpz_t(), 2) > kMaxCoefficientBits)
                return true;
            break;
        case DomainKind::PrimeFieldPolynomials:
            if (c.degree() > kMaxCoefficientDegree) return true;
            break;
        }
    }
    return false;
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class Parser {
public:
    Parser(std::string_view text, const Domain& dom, std::size_t d, std::size_t base_offset = 0)
        : text_(text), dom_(dom), d_(d), base_(base_offset) {}

    // Parses the whole input. Records top-level term spans for diagnostics.
    Poly parse_all() {
        skip_ws();
        if (at_end()) fail("empty expression");
        Poly p = parse_expr(0, &top_terms_);
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        return p;
    }

    // Offset of the first top-level term whose expansion contains m.
    std::size_t origin_of(const Monomial& m) const {
        for (const auto& [offset, term] : top_terms_)
            if (term.terms.count(m) != 0) return offset;
        return base_;
    }

    [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const { throw ParseError(msg, base_ + pos); }

private:
    [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly parse_expr(int depth, std::vector<std::pair<std::size_t, Poly>>* spans) {
        if (depth > kMaxDepth) fail("expression nested too deeply");
        skip_ws();
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        skip_ws();
        std::size_t start = pos_;
        Poly term = parse_term(depth);
        if (negative) term = negate(term);
        if (spans != nullptr) spans->emplace_back(start, term);
        Poly acc = term;
        for (;;) {
            skip_ws();
            const char op = peek();
            if (op != '+' && op != '-') break;
            ++pos_;
            skip_ws();
            start = pos_;
            Poly next = parse_term(depth);
            if (op == '-') next = negate(next);
            if (spans != nullptr) spans->emplace_back(start, next);
            acc = add(acc, next);
        }
        return acc;
    }

    Poly parse_term(int depth) {
        Poly acc = parse_factor(depth);
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            const std::size_t op_pos = pos_;
            ++pos_;
            Poly rhs = parse_factor(depth);
            if (acc.degree() + rhs.degree() > kMaxDegree) fail_at("intermediate degree too large", op_pos);
            acc = multiply(acc, rhs);
            if (coefficient_too_large(acc)) fail_at("coefficient too large", op_pos);
        }
        return acc;
    }

    Poly parse_factor(int depth) {
        Poly base = parse_base(depth);
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        const std::size_t exp_pos = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a nonnegative integer exponent");
        unsigned long e = 0;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            e = e * 10 + static_cast<unsigned long>(peek() - '0');
            if (e > kMaxExponent) fail_at("exponent too large (max 64)", exp_pos);
            ++pos_;
        }
        if (static_cast<unsigned long>(base.degree()) * e > kMaxDegree) fail_at("intermediate degree too large", exp_pos);
        Poly result = constant_poly(Element::one(dom_), d_);
        for (unsigned long k = 0; k < e; ++k) {
            result = multiply(result, base);
            if (coefficient_too_large(result)) fail_at("coefficient too large", exp_pos);
        }
        return result;
    }

    Poly parse_base(int depth) {
        skip_ws();
        if (at_end()) fail("unexpected end of input");
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Poly inner = parse_expr(depth + 1, nullptr);
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) != 0) return parse_identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    Poly parse_number() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
        const mpz_class n(std::string(text_.substr(start, pos_ - start)), 10);
        Element value = integer_image(n);
        if (!at_end() && std::isalpha(static_cast<unsigned char>(peek())) != 0) {
            // "<n>i" is the only juxtaposed literal.
            const std::size_t ident = pos_;
            std::size_t end = pos_;
            while (end < text_.size() && is_ident_char(text_[end])) ++end;
            if (text_.substr(ident, end - ident) != "i") fail("expected an operator");
            if (dom_.kind() != DomainKind::GaussianIntegers) fail("coefficient 'i' is not in " + dom_.name());
            pos_ = end;
            value = value * Element::imaginary_unit();
        }
        return constant_poly(value, d_);
    }

    Element integer_image(const mpz_class& n) const {
        switch (dom_.kind()) {
        case DomainKind::Integers: return Element::integer(n);
        case DomainKind::GaussianIntegers: return Element::gaussian(n, 0);
        case DomainKind::PrimeFieldPolynomials: {
            mpz_class r;
            mpz_mod_ui(r.get_mpz_t(), n.get_mpz_t(), dom_.characteristic());
            return Element::fp_poly(dom_, {static_cast<std::int64_t>(r.get_ui())});
        }
        }
        throw InvariantViolation("unreachable domain kind");
    }

    Poly parse_identifier() {
        const std::size_t start = pos_;
        while (!at_end() && is_ident_char(peek())) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "i") {
            if (dom_.kind() != DomainKind::GaussianIntegers) fail_at("coefficient 'i' is not in " + dom_.name(), start);
            return constant_poly(Element::imaginary_unit(), d_);
        }
        if (name == "t") {
            if (dom_.kind() != DomainKind::PrimeFieldPolynomials)
                fail_at("coefficient 't' is not in " + dom_.name(), start);
            return constant_poly(Element::generator(dom_), d_);
        }
        const std::size_t index = variable_index(name, start);
        Monomial m(d_, 0);
        m[index] = 1;
        Poly p;
        p.accumulate(m, Element::one(dom_));
        return p;
    }

    std::size_t variable_index(std::string_view name, std::size_t start) const {
        static constexpr std::string_view aliases = "xyzw";
        if (name.size() == 1 && aliases.find(name[0]) != std::string_view::npos) {
            const std::size_t k = aliases.find(name[0]);
            if (d_ <= 4 && k < d_) return k;
            fail_at("unknown variable '" + std::string(name) + "'", start);
        }
        if (name.size() >= 2 && name[0] == 'x' && name[1] != '0') {
            std::size_t k = 0;
            for (std::size_t j = 1; j < name.size(); ++j) {
                if (std::isdigit(static_cast<unsigned char>(name[j])) == 0 || k > 1'000'000)
                    fail_at("unknown variable '" + std::string(name) + "'", start);
                k = k * 10 + static_cast<std::size_t>(name[j] - '0');
            }
            if (k >= 1 && k <= d_) return k - 1;
        }
        fail_at("unknown variable '" + std::string(name) + "'", start);
    }

    std::string_view text_;
    Domain dom_;
    std::size_t d_;
    std::size_t base_;
    std::size_t pos_ = 0;
    std::vector<std::pair<std::size_t, Poly>> top_terms_;
};

Element parse_element_at(std::string_view text, const Domain& dom, std::size_t base) {
    Parser parser(text, dom, 0, base);
    const Poly p = parser.parse_all();
    if (p.terms.empty()) return Element::zero(dom);
    return p.terms.begin()->second;
}

// Sign and magnitude text of a coefficient in a signed sum.
struct SignedText {
    bool negative;
    std::string magnitude;
};

SignedText signed_text(const Element& c) {
    switch (c.domain().kind()) {
    case DomainKind::Integers: return {c.as_integer() < 0, mpz_class(abs(c.as_integer())).get_str()};
    case DomainKind::GaussianIntegers: {
        const auto& g = c.as_gaussian();
        if (g.im == 0) return {g.re < 0, mpz_class(abs(g.re)).get_str()};
        if (g.re == 0) {
            const mpz_class mag = abs(g.im);
            return {g.im < 0, mag == 1 ? std::string("i") : mag.get_str() + "i"};
        }
        return {false, to_string(c)};
    }
    case DomainKind::PrimeFieldPolynomials: {
        const std::string s = to_string(c);
        return {false, s.find('+') != std::string::npos ? "(" + s + ")" : s};
    }
    }
    throw InvariantViolation("unreachable domain kind");
}

} // namespace

QuadraticPolynomial parse_form(std::string_view text, const Domain& dom, std::size_t d) {
    if (d == 0) throw DimensionMismatch("a form needs at least one variable");
    Parser parser(text, dom, d);
    const Poly p = parser.parse_all();
    QuadraticPolynomial f(dom, d);
    for (const auto& [m, c] : p.terms) {
        const unsigned deg = total_degree(m);
        if (deg > 2) parser.fail_at("degree " + std::to_string(deg) + " exceeds 2", parser.origin_of(m));
        std::vector<std::size_t> vars;
        for (std::size_t k = 0; k < d; ++k)
            for (unsigned e = 0; e < m[k]; ++e) vars.push_back(k);
        if (deg == 2) f.set_quad(vars[0], vars[1], c);
        else if (deg == 1) f.set_lin(vars[0], c);
        else f.set_constant(c);
    }
    return f;
}

std::size_t infer_dimension(std::string_view text) {
    std::size_t d = 1;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[pos])) == 0) {
            ++pos;
            continue;
        }
        // Identifiers directly after a digit are literal suffixes like "2i".
        const bool suffix = pos > 0 && std::isdigit(static_cast<unsigned char>(text[pos - 1])) != 0;
        const std::size_t start = pos;
        while (pos < text.size() && is_ident_char(text[pos])) ++pos;
        if (suffix) continue;
        const std::string_view name = text.substr(start, pos - start);
        if (name.size() == 1) {
            static constexpr std::string_view aliases = "xyzw";
            const std::size_t k = aliases.find(name[0]);
            if (k != std::string_view::npos) d = std::max(d, k + 1);
        } else if (name[0] == 'x' && name.size() <= 7) {
            std::size_t k = 0;
            bool digits = true;
            for (std::size_t j = 1; j < name.size(); ++j) {
                if (std::isdigit(static_cast<unsigned char>(name[j])) == 0) digits = false;
                else k = k * 10 + static_cast<std::size_t>(name[j] - '0');
            }
            if (digits) d = std::max(d, k);
        }
    }
    return d;
}

std::string format_form(const QuadraticPolynomial& f) {
    std::string out;
    auto emit = [&](const Element& c, const std::string& monomial) {
        if (c.is_zero()) return;
        const SignedText s = signed_text(c);
        if (s.negative) out += '-';
        else if (!out.empty()) out += '+';
        if (monomial.empty()) out += s.magnitude;
        else if (s.magnitude == "1") out += monomial;
        else out += s.magnitude + "*" + monomial;
    };
    auto var = [](std::size_t k) { return "x" + std::to_string(k + 1); };
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = i; j < f.dim(); ++j)
            emit(f.quad(i, j), i == j ? var(i) + "^2" : var(i) + "*" + var(j));
    for (std::size_t i = 0; i < f.dim(); ++i) emit(f.lin(i), var(i));
    emit(f.constant(), "");
    return out.empty() ? "0" : out;
}

Element parse_element(std::string_view text, const Domain& dom) { return parse_element_at(text, dom, 0); }

FractionPoint parse_point(std::string_view text, const Domain& dom) {
    const std::size_t slash = text.rfind('/');
    const std::string_view coords = slash == std::string_view::npos ? text : text.substr(0, slash);
    Element den = Element::one(dom);
    if (slash != std::string_view::npos) {
        den = parse_element_at(text.substr(slash + 1), dom, slash + 1);
        if (den.is_zero()) throw ParseError("zero denominator", slash + 1);
    }
    // Optional enclosing parentheses: "(a1,...,ad)/b".
    std::size_t offset = 0;
    std::string_view body = coords;
    const std::size_t first = body.find_first_not_of(" \t");
    const std::size_t last = body.find_last_not_of(" \t");
    if (first != std::string_view::npos && body[first] == '(' && body[last] == ')') {
        int depth = 0;
        bool encloses = true;
        bool comma_inside = false;
        for (std::size_t k = first; k <= last; ++k) {
            if (body[k] == '(') ++depth;
            else if (body[k] == ')') --depth;
            else if (body[k] == ',' && depth == 1) comma_inside = true;
            if (depth == 0 && k < last) encloses = false;
        }
        if (encloses && comma_inside) {
            offset = first + 1;
            body = body.substr(first + 1, last - first - 1);
        }
    }
    Point num;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = body.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? body.size() : comma;
        num.push_back(parse_element_at(body.substr(start, end - start), dom, offset + start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return FractionPoint::unreduced(std::move(num), std::move(den));
}

} // namespace qdescent
