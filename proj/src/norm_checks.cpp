#include "qdescent/norm_checks.hpp"

#include <random>

#include "qdescent/fraction.hpp"

namespace qdescent {

namespace {

unsigned sample_bound(const Domain& dom) {
    return dom.kind() == DomainKind::PrimeFieldPolynomials ? 6 : 60;
}

Element nonzero_sample(const Domain& dom, std::mt19937_64& rng) {
    for (;;) {
        Element e = random_element(dom, rng, sample_bound(dom));
        if (!e.is_zero()) return e;
    }
}

} // namespace

std::vector<Element> units_of(const Domain& dom) {
    switch (dom.kind()) {
    case DomainKind::Integers: return {Element::integer(-1), Element::integer(1)};
    case DomainKind::GaussianIntegers:
        return {Element::gaussian(1, 0), Element::gaussian(-1, 0), Element::gaussian(0, 1), Element::gaussian(0, -1)};
    case DomainKind::PrimeFieldPolynomials: {
        std::vector<Element> out;
        const std::uint32_t last = std::min<std::uint32_t>(dom.characteristic() - 1, 4096);
        for (std::uint32_t c = 1; c <= last; ++c) out.push_back(Element::fp_poly(dom, {c}));
        return out;
    }
    }
    return {};
}

AxiomReport check_norm_axioms(const Domain& dom, std::size_t samples, std::uint64_t seed) {
    AxiomReport report;
    auto fail = [&](const char* axiom, std::string witness) { report.failures.push_back({axiom, std::move(witness)}); };

    if (norm(Element::one(dom)) != 1) fail("norm(1) = 1", "1");
    for (const auto& e : units_of(dom)) {
        if (!is_unit(e)) fail("unit recognized", to_string(e));
        if (norm(e) != 1) fail("unit has norm 1", to_string(e));
        if (!(e * unit_inverse(e) == Element::one(dom))) fail("unit inverse", to_string(e));
    }

    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
        ++report.checked;
        // One in eight draws is forced to zero so (N0) sees both sides.
        const Element u = draw_below(rng, 8) == 0 ? Element::zero(dom) : random_element(dom, rng, sample_bound(dom));
        const Element v = random_element(dom, rng, sample_bound(dom));
        const std::string pair = "(" + to_string(u) + ", " + to_string(v) + ")";

        if ((norm(u) == 0) != u.is_zero()) fail("N0", to_string(u));
        if (norm(u * v) != norm(u) * norm(v)) fail("N1", pair);
        if (!u.is_zero() && !v.is_zero() && (u * v).is_zero()) fail("zero product", pair);
        if (is_unit(u) && norm(u) != 1) fail("unit has norm 1", to_string(u));

        const FractionElement x(u, nonzero_sample(dom, rng));
        const FractionElement y(v, nonzero_sample(dom, rng));
        if (ext_norm(x * y) != ext_norm(x) * ext_norm(y))
            fail("ext_norm multiplicative", to_string(x) + ", " + to_string(y));
        if (ext_norm(FractionElement(u)) != mpq_class(norm(u))) fail("ext_norm extends norm", to_string(u));
        if ((ext_norm(x) == 0) != x.is_zero()) fail("ext_norm N0", to_string(x));
    }
    return report;
}

} // namespace qdescent
