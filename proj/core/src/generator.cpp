#include "dualres/generator.hpp"

#include "dualres/errors.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace dualres {

namespace {

std::vector<std::string> subset_of(unsigned mask, const std::vector<std::string>& components) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (mask & (1u << i)) out.push_back(components[i]);
    }
    return out;
}

} // namespace

SeedSpec random_seed_spec(std::uint64_t seed, const GeneratorBounds& bounds) {
    if (bounds.max_components < 1 || bounds.max_corank < 0 || bounds.max_total_exponent < 0) {
        throw InputError("generator bounds must be non-negative with at least one component");
    }
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

    const int n = uniform(1, bounds.max_components);
    SeedSpec spec;
    for (int i = 1; i <= n; ++i) spec.snc.components.push_back("E" + std::to_string(i));

    // Strata over each index set, filled by increasing subset size so that
    // every parent candidate already exists.
    std::map<unsigned, std::vector<std::string>> over;
    for (unsigned i = 0; i < static_cast<unsigned>(n); ++i) {
        const std::string id = spec.snc.components[i];
        spec.snc.strata.push_back({id, {id}, {}});
        over[1u << i].push_back(id);
    }
    const double keep = std::uniform_real_distribution<double>(0.4, 0.9)(rng);
    for (int size = 2; size <= n; ++size) {
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            if (std::popcount(mask) != size) continue;
            const auto indices = subset_of(mask, spec.snc.components);
            bool closed = true;
            for (unsigned i = 0; i < static_cast<unsigned>(n); ++i) {
                if ((mask & (1u << i)) && !over.contains(mask & ~(1u << i))) closed = false;
            }
            if (!closed || !coin(keep)) continue;

            const int copies = (size == 2 && coin(0.1)) ? 2 : 1;
            for (int c = 0; c < copies; ++c) {
                Stratum s;
                s.id = stratum_name(indices) + (c == 0 ? "" : "#" + std::to_string(c + 1));
                s.indices = indices;
                bool attached = true;
                for (unsigned i = 0; i < static_cast<unsigned>(n) && attached; ++i) {
                    if (!(mask & (1u << i))) continue;
                    const std::string& ci = spec.snc.components[i];
                    // Parents must agree on their common faces.
                    std::vector<std::string> candidates;
                    for (const auto& id : over.at(mask & ~(1u << i))) {
                        const Stratum* cand = spec.snc.find_stratum(id);
                        const bool fits = size == 2 || std::all_of(s.parents.begin(), s.parents.end(), [&](const auto& kp) {
                            const Stratum* other = spec.snc.find_stratum(kp.second);
                            return cand->parents.at(kp.first) == other->parents.at(ci);
                        });
                        if (fits) candidates.push_back(id);
                    }
                    if (candidates.empty()) {
                        attached = false;
                        break;
                    }
                    s.parents[ci] =
                        candidates[static_cast<std::size_t>(uniform(0, static_cast<int>(candidates.size()) - 1))];
                }
                if (!attached) continue;
                over[mask].push_back(s.id);
                spec.snc.strata.push_back(std::move(s));
            }
        }
    }

    std::vector<std::string> deep;
    for (const auto& s : spec.snc.strata) {
        if (s.indices.size() >= 2) {
            deep.push_back(s.id);
            spec.corank[s.id] = uniform(0, bounds.max_corank);
        }
    }

    int budget = uniform(0, bounds.max_total_exponent);
    int next = 1;
    while (budget > 0 && !deep.empty()) {
        const int a = uniform(1, budget);
        budget -= a;
        const std::string id = "F" + std::to_string(next++);
        spec.divisors[id] = a;
        for (const auto& s : deep) {
            if (coin(0.5)) spec.incidence[s].push_back(id);
        }
    }
    return spec;
}

} // namespace dualres
