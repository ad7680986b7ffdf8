#include "dualres/snc_model.hpp"

#include "dualres/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace dualres {

const Stratum* SncVariety::find_stratum(const std::string& id) const {
    for (const auto& s : strata) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<std::string> without(const std::vector<std::string>& sorted, const std::string& j) {
    std::vector<std::string> out;
    for (const auto& s : sorted) {
        if (s != j) out.push_back(s);
    }
    return out;
}

} // namespace

std::vector<std::string> incidence_violations(const SncVariety& snc) {
    std::vector<std::string> out;
    const std::set<std::string> components(snc.components.begin(), snc.components.end());
    if (components.size() != snc.components.size()) {
        out.push_back("components: duplicate component id");
    }

    std::map<std::string, const Stratum*> by_id;
    std::map<std::string, int> singleton_count;
    for (const auto& s : snc.strata) {
        if (!by_id.emplace(s.id, &s).second) {
            out.push_back(s.id + ": duplicate stratum id");
            continue;
        }
        const auto idx = sorted_unique(s.indices);
        if (idx.empty()) {
            out.push_back(s.id + ": empty index set");
            continue;
        }
        if (idx.size() != s.indices.size()) {
            out.push_back(s.id + ": repeated component in index set");
        }
        for (const auto& i : idx) {
            if (!components.contains(i)) out.push_back(s.id + ": unknown component '" + i + "'");
        }
        if (idx.size() == 1) {
            ++singleton_count[idx.front()];
            if (!s.parents.empty()) out.push_back(s.id + ": a component stratum has no parents");
        }
    }

    for (const auto& c : snc.components) {
        const int n = singleton_count.contains(c) ? singleton_count[c] : 0;
        if (n == 0) out.push_back(c + ": component has no stratum");
        if (n > 1) out.push_back(c + ": component listed as several strata (self-intersection)");
    }

    for (const auto& s : snc.strata) {
        const auto idx = sorted_unique(s.indices);
        if (idx.size() < 2) continue;
        if (s.parents.size() != idx.size()) {
            out.push_back(s.id + ": expected " + std::to_string(idx.size()) + " parents, found " +
                          std::to_string(s.parents.size()));
        }
        for (const auto& j : idx) {
            auto it = s.parents.find(j);
            if (it == s.parents.end()) {
                out.push_back(s.id + ": no parent designated for dropping '" + j + "'");
                continue;
            }
            auto p = by_id.find(it->second);
            if (p == by_id.end()) {
                out.push_back(s.id + ": dangling parent '" + it->second + "'");
                continue;
            }
            if (sorted_unique(p->second->indices) != without(idx, j)) {
                out.push_back(s.id + ": parent '" + it->second + "' does not lie over the index set minus '" + j +
                              "'");
            }
        }
        for (const auto& [j, _] : s.parents) {
            if (!std::binary_search(idx.begin(), idx.end(), j)) {
                out.push_back(s.id + ": parent keyed by '" + j + "' outside the index set");
            }
        }
    }

    // The unique containing stratum over J\{j,k} cannot depend on the order
    // in which j and k are dropped.
    if (out.empty()) {
        for (const auto& s : snc.strata) {
            const auto idx = sorted_unique(s.indices);
            if (idx.size() < 3) continue;
            for (std::size_t a = 0; a < idx.size(); ++a) {
                for (std::size_t b = a + 1; b < idx.size(); ++b) {
                    const Stratum* pa = by_id.at(s.parents.at(idx[a]));
                    const Stratum* pb = by_id.at(s.parents.at(idx[b]));
                    if (pa->parents.at(idx[b]) != pb->parents.at(idx[a])) {
                        out.push_back(s.id + ": inconsistent attaching over '" + idx[a] + "' and '" + idx[b] + "'");
                    }
                }
            }
        }
    }
    return out;
}

void require_valid(const SncVariety& snc) {
    const auto v = incidence_violations(snc);
    if (!v.empty()) throw InputError("incidence violation: " + v.front());
}

DualComplex dual_complex_of(const SncVariety& snc) {
    require_valid(snc);

    // Emit cells by increasing dimension so facets always precede cofaces.
    std::vector<const Stratum*> order;
    for (const auto& s : snc.strata) order.push_back(&s);
    std::stable_sort(order.begin(), order.end(),
                     [](const Stratum* a, const Stratum* b) { return a->indices.size() < b->indices.size(); });

    DualComplex out;
    for (const Stratum* s : order) {
        Cell cell;
        cell.id = s->id;
        const auto idx = sorted_unique(s->indices);
        cell.dim = static_cast<int>(idx.size()) - 1;
        if (idx.size() >= 2) {
            for (const auto& j : idx) cell.facets.push_back(s->parents.at(j));
        }
        cell.label = idx;
        out.add(std::move(cell));
    }
    return out;
}

std::string stratum_name(const std::vector<std::string>& indices) {
    std::string out;
    for (const auto& i : indices) {
        if (!out.empty()) out += '*';
        out += i;
    }
    return out;
}

SncVariety coordinate_hyperplanes(int n) {
    if (n < 1 || n > 16) throw InputError("coordinate_hyperplanes: n must be in [1, 16]");
    SncVariety snc;
    for (int i = 1; i <= n; ++i) snc.components.push_back("E" + std::to_string(i));

    const unsigned total = 1u << static_cast<unsigned>(n);
    std::vector<unsigned> masks;
    for (unsigned mask = 1; mask < total; ++mask) masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });

    auto indices_of = [&](unsigned mask) {
        std::vector<std::string> idx;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << static_cast<unsigned>(i))) idx.push_back(snc.components[static_cast<std::size_t>(i)]);
        }
        return sorted_unique(idx);
    };

    for (unsigned mask : masks) {
        Stratum s;
        s.indices = indices_of(mask);
        s.id = stratum_name(s.indices);
        if (s.indices.size() >= 2) {
            for (int i = 0; i < n; ++i) {
                const unsigned bit = 1u << static_cast<unsigned>(i);
                if (mask & bit) {
                    s.parents[snc.components[static_cast<std::size_t>(i)]] = stratum_name(indices_of(mask & ~bit));
                }
            }
        }
        snc.strata.push_back(std::move(s));
    }
    return snc;
}

CenterCheck check_center(const SncVariety& snc, const CenterDescriptor& center) {
    const Stratum* host = snc.find_stratum(center.stratum);
    if (host == nullptr) throw InputError("unknown stratum '" + center.stratum + "'");

    CenterCheck check;
    check.kind = center.kind;
    if (center.kind == CenterKind::kStratum) {
        check.compatible = true;
        check.reasons.push_back("center is the stratum '" + center.stratum + "'");
        return check;
    }

    if (center.codim_in_host < 1) {
        throw InputError("non-stratum center must have codimension >= 1 in its host stratum");
    }
    check.assumptions.push_back(
        "the scheme-theoretic intersection of the center with every stratum is smooth (snc with the variety)");
    check.assumptions.push_back("multiplicity of the variety along the center equals that of the ambient space");
    check.compatible = center.snc_compatible;
    if (center.snc_compatible) {
        check.reasons.push_back("asserted snc-compatible inside host stratum '" + center.stratum + "'");
    } else {
        check.reasons.push_back(
            "center meets the strata in a non-reduced scheme; its intersection is not simple normal crossing");
    }
    return check;
}

BlowupResult blowup_center(const SncVariety& snc, const CenterDescriptor& center) {
    const CenterCheck check = check_center(snc, center);
    if (!check.compatible) {
        throw PreconditionError("incompatible center: " + check.reasons.front());
    }
    DualComplex dual = dual_complex_of(snc);
    if (center.kind == CenterKind::kNonStratum) {
        return {snc, std::move(dual)};
    }

    DualComplex reduced = remove_open_star(dual, center.stratum);
    SncVariety out;
    for (const auto& s : snc.strata) {
        if (!reduced.contains(s.id)) continue;
        if (s.indices.size() == 1) out.components.push_back(s.indices.front());
        out.strata.push_back(s);
    }
    // Keep the caller's component order.
    std::vector<std::string> kept;
    for (const auto& c : snc.components) {
        if (std::find(out.components.begin(), out.components.end(), c) != out.components.end()) kept.push_back(c);
    }
    out.components = std::move(kept);
    return {std::move(out), std::move(reduced)};
}

} // namespace dualres
