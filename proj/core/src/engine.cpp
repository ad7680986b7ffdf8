#include "dualres/engine.hpp"

#include "dualres/errors.hpp"

#include <algorithm>
#include <set>

namespace dualres {

const DivisorRecord* DivisorRegistry::find(const std::string& id) const {
    for (const auto& e : entries_) {
        if (e.id == id) return &e;
    }
    return nullptr;
}

void DivisorRegistry::add(DivisorRecord record) {
    if (contains(record.id)) throw InputError("divisor '" + record.id + "' is already registered");
    if (record.coefficient < 1) {
        throw InputError("divisor '" + record.id + "' must have a positive coefficient");
    }
    entries_.push_back(std::move(record));
}

bool OrderingConfig::less(const std::string& a, const std::string& b) const {
    auto rank = [&](const std::string& s) {
        auto it = std::find(priority.begin(), priority.end(), s);
        return static_cast<std::size_t>(it - priority.begin());
    };
    const auto ra = rank(a);
    const auto rb = rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
}

std::string to_string(Phase phase) {
    switch (phase) {
    case Phase::kDeterminantal: return "A-det";
    case Phase::kMonomialHigh: return "B1";
    case Phase::kMonomialPair: return "B2";
    case Phase::kMonomialMixed: return "B3";
    case Phase::kBinomial: return "C-bin";
    }
    return "?";
}

Phase parse_phase(const std::string& name) {
    for (auto p : {Phase::kDeterminantal, Phase::kMonomialHigh, Phase::kMonomialPair, Phase::kMonomialMixed,
                   Phase::kBinomial}) {
        if (to_string(p) == name) return p;
    }
    throw InputError("unknown phase '" + name + "'");
}

Phase phase_of(RuleKind kind) {
    switch (kind) {
    case RuleKind::kDet: return Phase::kDeterminantal;
    case RuleKind::kMon1: return Phase::kMonomialHigh;
    case RuleKind::kMon2: return Phase::kMonomialPair;
    case RuleKind::kMon3: return Phase::kMonomialMixed;
    case RuleKind::kBin: return Phase::kBinomial;
    }
    return Phase::kDeterminantal;
}

ResolutionState seed_from_snc(const SncVariety& snc, const std::map<std::string, int>& corank) {
    return seed_from_snc(SeedSpec{snc, corank, {}, {}});
}

ResolutionState seed_from_snc(const SeedSpec& seed) {
    ResolutionState state;
    state.dual = dual_complex_of(seed.snc);

    for (const auto& [id, coefficient] : seed.divisors) state.registry.add({id, coefficient, std::nullopt});

    for (const auto& [stratum, m] : seed.corank) {
        const Stratum* s = seed.snc.find_stratum(stratum);
        if (s == nullptr) throw InputError("corank assigned to unknown stratum '" + stratum + "'");
        if (s->indices.size() < 2) {
            throw InputError("corank assigned to component stratum '" + stratum + "'; only strata of sing E carry charts");
        }
        if (m < 0) throw InputError("negative corank at stratum '" + stratum + "'");
    }
    for (const auto& [stratum, divisors] : seed.incidence) {
        const Stratum* s = seed.snc.find_stratum(stratum);
        if (s == nullptr) throw InputError("divisor incidence on unknown stratum '" + stratum + "'");
        if (s->indices.size() < 2) throw InputError("divisor incidence on component stratum '" + stratum + "'");
        for (const auto& j : divisors) {
            if (!state.registry.contains(j)) throw InputError("stratum '" + stratum + "' lists unknown divisor '" + j + "'");
        }
    }

    for (const auto& s : seed.snc.strata) {
        if (s.indices.size() < 2) continue;
        auto it = seed.corank.find(s.id);
        if (it == seed.corank.end()) throw InputError("missing corank for stratum '" + s.id + "'");

        std::map<std::string, int> exponents;
        if (auto inc = seed.incidence.find(s.id); inc != seed.incidence.end()) {
            for (const auto& j : inc->second) exponents[j] = state.registry.find(j)->coefficient;
        }
        ChartEntry entry;
        entry.id = "c" + std::to_string(state.next_chart++);
        entry.stratum = s.id;
        entry.chart = make_chart(s.indices, it->second, std::move(exponents));
        state.charts.push_back(std::move(entry));
    }

    const auto violations = state_violations(state);
    if (!violations.empty()) throw InputError("invalid seed: " + violations.front());
    return state;
}

std::vector<std::string> state_violations(const ResolutionState& state) {
    std::vector<std::string> out;
    std::set<std::string> vertices;
    for (const Cell* v : state.dual.cells_of_dim(0)) {
        if (v->label) vertices.insert(v->label->begin(), v->label->end());
    }
    std::set<std::string> ids;
    for (const auto& entry : state.charts) {
        if (!ids.insert(entry.id).second) out.push_back(entry.id + ": duplicate chart id");
        try {
            require_valid(entry.chart);
        } catch (const Error& e) {
            out.push_back(entry.id + ": " + e.what());
        }
        if (entry.multiplicity < 1) out.push_back(entry.id + ": multiplicity must be positive");
        for (const auto& i : entry.chart.x) {
            if (!vertices.contains(i)) out.push_back(entry.id + ": x index '" + i + "' is not a vertex of the dual complex");
        }
        for (const auto& [j, e] : entry.chart.a) {
            const DivisorRecord* d = state.registry.find(j);
            if (d == nullptr) {
                out.push_back(entry.id + ": divisor '" + j + "' is not registered");
            } else if (d->coefficient != e) {
                out.push_back(entry.id + ": exponent of '" + j + "' differs from its registered coefficient");
            }
        }
    }
    return out;
}

bool all_resolved(const ResolutionState& state) {
    return std::all_of(state.charts.begin(), state.charts.end(),
                       [](const ChartEntry& e) { return is_resolved(e.chart); });
}

namespace {

using Pair = std::pair<std::string, std::string>;

bool has_x(const ChartState& c, const std::string& i) { return std::binary_search(c.x.begin(), c.x.end(), i); }

bool is_binomial_form(const ChartState& c) {
    const auto d = mdeg(c);
    return (d.dy == 1 && d.dz == 0) || (d.dy == 0 && c.a.size() == 1 && d.dz == 1);
}

class Selector {
public:
    explicit Selector(const OrderingConfig& ordering) : ordering_(ordering) {}

    Pair ordered(const std::string& a, const std::string& b) const {
        return ordering_.less(a, b) ? Pair{a, b} : Pair{b, a};
    }

    bool less(const Pair& a, const Pair& b) const {
        if (a.first != b.first) return ordering_.less(a.first, b.first);
        return ordering_.less(a.second, b.second);
    }

    // Smallest pair drawn from the keys of one chart.
    template <typename Range>
    void offer_pairs(const Range& keys, std::optional<Pair>& best) const {
        for (auto a = keys.begin(); a != keys.end(); ++a) {
            for (auto b = std::next(a); b != keys.end(); ++b) {
                Pair p = ordered(key(*a), key(*b));
                if (!best || less(p, *best)) best = std::move(p);
            }
        }
    }

    void offer(const std::string& id, std::optional<std::string>& best) const {
        if (!best || ordering_.less(id, *best)) best = id;
    }

private:
    static const std::string& key(const std::string& s) { return s; }
    template <typename V>
    static const std::string& key(const std::pair<const std::string, V>& kv) {
        return kv.first;
    }

    const OrderingConfig& ordering_;
};

bool on_center(const ChartState& c, const RuleApplication& center) {
    if (is_resolved(c)) return false;
    switch (center.kind) {
    case RuleKind::kDet: return c.m == center.det_size && has_x(c, center.i1) && has_x(c, center.i2);
    case RuleKind::kMon1: return has_x(c, center.i1) && has_x(c, center.i2) && c.a.contains(center.j1);
    case RuleKind::kMon2:
        return has_x(c, center.i1) && has_x(c, center.i2) && c.a.contains(center.j1) && c.a.contains(center.j2);
    case RuleKind::kMon3:
        return has_x(c, center.i1) && has_x(c, center.i2) && c.m == 1 && c.a.size() == 1 && c.a.contains(center.j1) &&
               c.a.at(center.j1) == 1;
    case RuleKind::kBin: return is_binomial_form(c) && has_x(c, center.i1);
    }
    return false;
}

std::string fresh_divisor_id(const ResolutionState& state, std::size_t index) {
    std::string id = "X" + std::to_string(index + 1);
    auto taken = [&](const std::string& s) {
        if (state.registry.contains(s)) return true;
        for (const auto& e : state.charts) {
            if (e.chart.a.contains(s)) return true;
        }
        return false;
    };
    while (taken(id)) id += "'";
    return id;
}

} // namespace

std::optional<RuleApplication> select_center(const ResolutionState& state, const OrderingConfig& ordering) {
    std::vector<const ChartState*> open;
    for (const auto& e : state.charts) {
        if (!is_resolved(e.chart)) open.push_back(&e.chart);
    }
    if (open.empty()) return std::nullopt;
    const Selector sel(ordering);

    // Phase A: largest determinant first.
    int max_m = 0;
    for (const auto* c : open) max_m = std::max(max_m, c->m);
    if (max_m >= 2) {
        std::optional<Pair> best;
        for (const auto* c : open) {
            if (c->m == max_m) sel.offer_pairs(c->x, best);
        }
        return RuleApplication::det(best->first, best->second, max_m);
    }

    // Phase B1: a divisor with coefficient >= 2.
    {
        std::optional<std::string> j;
        for (const auto* c : open) {
            for (const auto& [id, e] : c->a) {
                if (e >= 2) sel.offer(id, j);
            }
        }
        if (j) {
            std::optional<Pair> best;
            for (const auto* c : open) {
                if (c->a.contains(*j)) sel.offer_pairs(c->x, best);
            }
            return RuleApplication::mon1(best->first, best->second, *j);
        }
    }

    // Phase B2: two divisors with coefficient 1 through the same point.
    {
        std::optional<Pair> js;
        for (const auto* c : open) {
            if (c->a.size() >= 2) sel.offer_pairs(c->a, js);
        }
        if (js) {
            std::optional<Pair> best;
            for (const auto* c : open) {
                if (c->a.contains(js->first) && c->a.contains(js->second)) sel.offer_pairs(c->x, best);
            }
            return RuleApplication::mon2(best->first, best->second, js->first, js->second);
        }
    }

    // Phase B3: deg_y = deg_z = 1.
    {
        std::optional<std::string> j;
        for (const auto* c : open) {
            if (c->m == 1 && c->a.size() == 1) sel.offer(c->a.begin()->first, j);
        }
        if (j) {
            std::optional<Pair> best;
            for (const auto* c : open) {
                if (c->m == 1 && c->a.size() == 1 && c->a.contains(*j)) sel.offer_pairs(c->x, best);
            }
            return RuleApplication::mon3(best->first, best->second, *j);
        }
    }

    // Phase C: prod x = t y (or the renamed prod x = t z).
    {
        std::optional<std::string> i;
        for (const auto* c : open) {
            if (!is_binomial_form(*c)) continue;
            for (const auto& v : c->x) sel.offer(v, i);
        }
        if (i) return RuleApplication::bin(*i);
    }

    throw InvariantBreach("an unresolved chart matches no resolution rule");
}

StepResult apply_center(const ResolutionState& state, const RuleApplication& center, const EngineConfig& config) {
    const std::size_t index = state.trace.size();
    BlowupEvent event;
    event.index = index;
    event.phase = phase_of(center.kind);
    event.center = center;

    const bool creates_divisor = center.kind != RuleKind::kBin;
    const std::string new_id = creates_divisor ? fresh_divisor_id(state, index) : std::string{};

    StepResult result;
    result.state.dual = state.dual;
    result.state.registry = state.registry;
    result.state.next_chart = state.next_chart;

    std::optional<int> coefficient;
    for (const auto& entry : state.charts) {
        if (!on_center(entry.chart, center)) {
            result.state.charts.push_back(entry);
            continue;
        }
        const auto c = exceptional_coefficient(entry.chart, center, config.policy);
        if (coefficient && c != coefficient) {
            throw InvariantBreach(to_string(center) + ": charts disagree on the exceptional coefficient");
        }
        coefficient = c;

        event.parents.push_back(entry.id);
        const MultiDegree parent_deg = mdeg(entry.chart);
        for (auto& fam : children(entry.chart, center, config.policy, new_id)) {
            ChartEntry child;
            child.id = "c" + std::to_string(result.state.next_chart++);
            child.stratum = entry.stratum;
            child.multiplicity = entry.multiplicity * fam.family_size;
            child.chart = std::move(fam.chart);

            LexCertificate cert{entry.id, child.id, parent_deg, mdeg(child.chart)};
            if (!cert.decreasing()) {
                throw InvariantBreach("lex certificate failed at event " + std::to_string(index) + ": " + cert.parent +
                                      " " + to_string(cert.parent_mdeg) + " -> " + cert.child + " " +
                                      to_string(cert.child_mdeg));
            }
            event.certificates.push_back(cert);
            event.children.push_back({child.id, entry.id, fam.chart_type, fam.family_size, child.multiplicity});
            result.state.charts.push_back(std::move(child));
        }
    }
    if (event.parents.empty()) throw PreconditionError(to_string(center) + ": the center meets no unresolved chart");

    if (creates_divisor && coefficient) {
        NewDivisor nd{new_id, *coefficient, *coefficient > 0};
        if (nd.registered) result.state.registry.add({new_id, *coefficient, index});
        event.new_divisor = nd;
    }

    result.state.trace = state.trace;
    result.state.trace.push_back(event);
    const auto violations = state_violations(result.state);
    if (!violations.empty()) throw InvariantBreach("after " + to_string(center) + ": " + violations.front());

    result.event = std::move(event);
    return result;
}

StepResult step(const ResolutionState& state, const EngineConfig& config) {
    const auto center = select_center(state, config.ordering);
    if (!center) throw PreconditionError("no applicable rule: every chart is resolved");
    return apply_center(state, *center, config);
}

std::map<MultiDegree, Integer> degree_multiset(const ResolutionState& state) {
    std::map<MultiDegree, Integer> out;
    for (const auto& e : state.charts) out[mdeg(e.chart)] += e.multiplicity;
    return out;
}

bool multiset_decreases(const std::map<MultiDegree, Integer>& before, const std::map<MultiDegree, Integer>& after) {
    if (before == after) return false;
    auto count = [](const std::map<MultiDegree, Integer>& m, const MultiDegree& d) {
        auto it = m.find(d);
        return it == m.end() ? Integer(0) : it->second;
    };
    // Every degree that gained copies must be dominated by one that lost copies.
    for (const auto& [y, n] : after) {
        if (n <= count(before, y)) continue;
        bool dominated = false;
        for (const auto& [x, m] : before) {
            if (y < x && m > count(after, x)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) return false;
    }
    return true;
}

Trace run(const ResolutionState& seed, const EngineConfig& config) {
    if (config.event_ceiling < 1) throw InputError("event ceiling must be >= 1");
    if (const auto v = state_violations(seed); !v.empty()) throw InputError("invalid seed state: " + v.front());

    Trace trace;
    trace.config = config;
    trace.seed = seed;
    ResolutionState state = seed;
    while (const auto center = select_center(state, config.ordering)) {
        if (trace.events.size() >= config.event_ceiling) {
            throw ScaleError("event ceiling of " + std::to_string(config.event_ceiling) +
                             " reached with unresolved charts remaining");
        }
        const auto before = degree_multiset(state);
        StepResult next = apply_center(state, *center, config);
        if (!(next.state.dual == seed.dual)) {
            throw InvariantBreach("dual complex changed at event " + std::to_string(next.event.index));
        }
        if (!multiset_decreases(before, degree_multiset(next.state))) {
            throw InvariantBreach("chart degree multiset did not decrease at event " +
                                  std::to_string(next.event.index));
        }
        trace.events.push_back(next.event);
        state = std::move(next.state);
    }
    trace.final_state = std::move(state);
    return trace;
}

ResolutionState replay(const Trace& trace) {
    ResolutionState state = trace.seed;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const BlowupEvent& recorded = trace.events[i];
        const auto chosen = select_center(state, trace.config.ordering);
        if (!chosen || *chosen != recorded.center) {
            throw InvariantBreach("replay diverged at event " + std::to_string(i) + ": recorded center " +
                                  to_string(recorded.center) + " is not the selected one");
        }
        StepResult next = apply_center(state, recorded.center, trace.config);
        if (!(next.event == recorded)) {
            throw InvariantBreach("replay diverged at event " + std::to_string(i) + ": event record differs");
        }
        state = std::move(next.state);
    }
    if (select_center(state, trace.config.ordering)) {
        throw InvariantBreach("replay ended with unresolved charts");
    }
    if (!(state == trace.final_state)) throw InvariantBreach("replayed final state differs from the recorded one");
    return state;
}

} // namespace dualres
