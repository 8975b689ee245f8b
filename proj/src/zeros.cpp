#include "qdescent/zeros.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "qdescent/errors.hpp"
#include "qdescent/oracle.hpp"

namespace qdescent {

namespace {

constexpr std::size_t kBoxLimit = 5'000'000;

std::optional<Point> first_with_value(const QuadraticPolynomial& f, const Element& target,
                                      const std::vector<Point>& points) {
    for (const auto& y : points)
        if (eval(f, y) == target) return y;
    return std::nullopt;
}

} // namespace

std::vector<Point> points_in_box(const Domain& dom, std::size_t d, unsigned coeff_bound) {
    const std::vector<Element> values = elements_in_box(dom, coeff_bound);
    std::size_t count = 1;
    for (std::size_t k = 0; k < d; ++k) {
        count *= values.size();
        if (count > kBoxLimit) throw PreconditionError("search box too large");
    }

    std::vector<std::pair<mpz_class, Point>> graded;
    graded.reserve(count);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t n = 0; n < count; ++n) {
        Point y;
        y.reserve(d);
        mpz_class grade = 0;
        for (std::size_t k = 0; k < d; ++k) {
            y.push_back(values[idx[k]]);
            grade += norm(values[idx[k]]);
        }
        graded.emplace_back(std::move(grade), std::move(y));
        for (std::size_t k = d; k-- > 0;) {
            if (++idx[k] < values.size()) break;
            idx[k] = 0;
        }
    }
    std::stable_sort(graded.begin(), graded.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first < r.first;
        return compare_points(l.second, r.second) < 0;
    });

    std::vector<Point> out;
    out.reserve(count);
    for (auto& [grade, y] : graded) out.push_back(std::move(y));
    return out;
}

std::optional<Point> brute_integral_zero(const QuadraticPolynomial& f, const SearchBox& box) {
    return first_with_value(f, Element::zero(f.domain()), points_in_box(f.domain(), f.dim(), box.coeff_bound));
}

std::optional<Point> brute_represent(const QuadraticPolynomial& q, const Element& r, unsigned coeff_bound) {
    return first_with_value(q, r, points_in_box(q.domain(), q.dim(), coeff_bound));
}

unsigned representation_box(const Element& r) {
    if (r.domain().kind() == DomainKind::PrimeFieldPolynomials) return static_cast<unsigned>(std::max(1, r.degree() / 2));
    mpz_class root;
    const mpz_class n = norm(r);
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    if (root > 1000) throw PreconditionError("value too large for a brute-force representation search");
    return static_cast<unsigned>(std::max<unsigned long>(1, root.get_ui()));
}

FractionPoint chord_zero(const QuadraticPolynomial& f, const Point& y0, const Point& w) {
    if (!eval(f, y0).is_zero()) throw PreconditionError("chord base point " + to_string(y0) + " is not a zero");
    const LineExpansion line = expand_along_line(f, y0, w);
    if (line.A.is_zero()) throw PreconditionError("f2(w) = 0: the line meets the quadric at most once");
    // y0 + (-B/A) w = (A y0 - B w) / A
    return reduce_point(point_sub(point_scale(line.A, y0), point_scale(line.B, w)), line.A);
}

FractionPoint random_rational_zero(const QuadraticPolynomial& f, const Point& y0, std::uint64_t seed,
                                   const mpz_class& height_min, std::size_t budget) {
    if (!eval(f, y0).is_zero()) throw PreconditionError("chord base point " + to_string(y0) + " is not a zero");
    std::mt19937_64 rng(seed);
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        const unsigned bound = 2 + static_cast<unsigned>(attempt / 100);
        Point w;
        w.reserve(f.dim());
        for (std::size_t k = 0; k < f.dim(); ++k) w.push_back(random_element(f.domain(), rng, bound));
        if (eval_quad(f, w).is_zero()) continue;
        FractionPoint x = chord_zero(f, y0, w);
        if (is_integral(x) || norm(x.den()) < height_min) continue;
        return x;
    }
    throw PreconditionError("no non-integral chord zero found in " + std::to_string(budget) + " attempts");
}

std::string to_string(AdcFinding kind) {
    switch (kind) {
    case AdcFinding::Inapplicable: return "inapplicable";
    case AdcFinding::Unrepresented: return "unrepresented";
    case AdcFinding::Inconsistent: return "inconsistent";
    case AdcFinding::Mismatch: return "mismatch";
    }
    return "?";
}

AdcReport verify_adc(const QuadraticPolynomial& q, const SearchBox& box, unsigned window) {
    if (!q.is_form()) throw PreconditionError("verify_adc needs a quadratic form");
    AdcReport report;
    std::map<unsigned, std::vector<Point>> boxes;
    auto brute_points = [&](unsigned side) -> const std::vector<Point>& {
        auto it = boxes.find(side);
        if (it == boxes.end()) it = boxes.emplace(side, points_in_box(q.domain(), q.dim(), side)).first;
        return it->second;
    };

    for_each_fraction_point(q.domain(), q.dim(), box.height, box.coeff_bound, [&](const FractionPoint& x) {
        const FractionElement r = eval(q, x);
        if (!r.is_integral()) return;
        ++report.checked;
        const Element value = r.integral_value();
        const std::optional<Point> brute_y = first_with_value(q, value, brute_points(representation_box(value)));

        try {
            const Representation rep = adc_represent(q, x, window);
            if (!brute_y) {
                report.failures.push_back({AdcFinding::Inconsistent, x, value, rep.y, std::nullopt,
                                           "descent found a representation the brute-force box misses"});
                return;
            }
            ++report.corroborated;
        } catch (const OracleFailure& e) {
            AdcEntry entry{brute_y ? AdcFinding::Inapplicable : AdcFinding::Unrepresented, x, value, std::nullopt,
                           brute_y, e.what()};
            (brute_y ? report.notes : report.failures).push_back(std::move(entry));
        } catch (const InvariantViolation& e) {
            report.failures.push_back({AdcFinding::Mismatch, x, value, std::nullopt, brute_y, e.what()});
        }
    });
    return report;
}

bool is_excluded_from_three_squares(const mpz_class& n) {
    if (n <= 0) return false;
    mpz_class m = n;
    while (m % 4 == 0) m /= 4;
    return m % 8 == 7;
}

} // namespace qdescent
