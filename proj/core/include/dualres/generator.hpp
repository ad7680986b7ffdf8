#pragma once

#include "dualres/engine.hpp"

#include <cstdint>

namespace dualres {

struct GeneratorBounds {
    int max_components = 5;
    int max_corank = 3;
    int max_total_exponent = 6;
};

/// Random seed with a downward-closed stratum set over E1..En, a corank per
/// deep stratum and a few F-divisors. Occasionally two strata share an index
/// set. Identical `seed` values give identical specs.
SeedSpec random_seed_spec(std::uint64_t seed, const GeneratorBounds& bounds = {});

} // namespace dualres
