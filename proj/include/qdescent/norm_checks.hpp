#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qdescent/domain.hpp"

namespace qdescent {

struct AxiomFailure {
    std::string axiom;
    std::string witness;
};

struct AxiomReport {
    std::size_t checked = 0;
    std::vector<AxiomFailure> failures;
};

/**
 * Seeded sampling of the norm laws: (N0), (N1), ||1|| = 1, ||e|| = 1 for
 * every unit e, the zero-product property, and multiplicativity of the
 * extended norm on K (which must also agree with the norm on R).
 */
AxiomReport check_norm_axioms(const Domain& dom, std::size_t samples, std::uint64_t seed);

/// Units of the domain (all p - 1 constants for F_p[t], capped at 4096).
std::vector<Element> units_of(const Domain& dom);

} // namespace qdescent
