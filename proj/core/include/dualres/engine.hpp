#pragma once

#include "dualres/chart.hpp"
#include "dualres/dual_complex.hpp"
#include "dualres/integer.hpp"
#include "dualres/snc_model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dualres {

/// An F-divisor with its coefficient a_j. `birth_event` is empty for
/// divisors present in the seed.
struct DivisorRecord {
    std::string id;
    int coefficient = 1;
    std::optional<std::size_t> birth_event;

    friend bool operator==(const DivisorRecord&, const DivisorRecord&) = default;
};

class DivisorRegistry {
public:
    const std::vector<DivisorRecord>& entries() const { return entries_; }
    const DivisorRecord* find(const std::string& id) const;
    bool contains(const std::string& id) const { return find(id) != nullptr; }

    /// Throws InputError on a duplicate id or a coefficient < 1.
    void add(DivisorRecord record);

    friend bool operator==(const DivisorRegistry&, const DivisorRegistry&) = default;

private:
    std::vector<DivisorRecord> entries_;
};

/// A chart descriptor standing for `multiplicity` permutation-equivalent
/// local charts over the seed stratum `stratum`.
struct ChartEntry {
    std::string id;
    std::string stratum;
    ChartState chart;
    Integer multiplicity = 1;

    friend bool operator==(const ChartEntry&, const ChartEntry&) = default;
};

/// Total order on component and divisor ids: ids listed in `priority` come
/// first in that order, the rest follow lexicographically.
struct OrderingConfig {
    std::vector<std::string> priority;

    bool less(const std::string& a, const std::string& b) const;

    friend bool operator==(const OrderingConfig&, const OrderingConfig&) = default;
};

struct EngineConfig {
    OrderingConfig ordering;
    ExponentPolicy policy = ExponentPolicy::kSizeMinusTwo;
    std::size_t event_ceiling = 10000;

    friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

enum class Phase { kDeterminantal, kMonomialHigh, kMonomialPair, kMonomialMixed, kBinomial };

/// "A-det", "B1", "B2", "B3", "C-bin".
std::string to_string(Phase phase);
Phase parse_phase(const std::string& name);
Phase phase_of(RuleKind kind);

struct LexCertificate {
    std::string parent;
    std::string child;
    MultiDegree parent_mdeg;
    MultiDegree child_mdeg;

    bool decreasing() const { return child_mdeg < parent_mdeg; }

    friend bool operator==(const LexCertificate&, const LexCertificate&) = default;
};

struct ChildRecord {
    std::string id;
    std::string parent;
    std::string chart_type;
    int family_size = 1;
    Integer multiplicity = 1;

    friend bool operator==(const ChildRecord&, const ChildRecord&) = default;
};

struct NewDivisor {
    std::string id;
    int coefficient = 0;
    // False when the coefficient is 0: the divisor exists but carries no z factor.
    bool registered = false;

    friend bool operator==(const NewDivisor&, const NewDivisor&) = default;
};

struct BlowupEvent {
    std::size_t index = 0;
    Phase phase = Phase::kDeterminantal;
    RuleApplication center;
    std::vector<std::string> parents;
    std::vector<ChildRecord> children;
    std::optional<NewDivisor> new_divisor;
    std::vector<LexCertificate> certificates;

    friend bool operator==(const BlowupEvent&, const BlowupEvent&) = default;
};

/// Global state of a resolution run. `dual` is frozen at seed time.
struct ResolutionState {
    DualComplex dual;
    DivisorRegistry registry;
    std::vector<ChartEntry> charts;
    std::vector<BlowupEvent> trace;
    std::size_t next_chart = 1;

    friend bool operator==(const ResolutionState&, const ResolutionState&) = default;
};

/// Seed description: an snc variety, a corank m for every stratum with
/// |J| >= 2, and optional initial F-divisors with the strata they pass
/// through.
struct SeedSpec {
    SncVariety snc;
    std::map<std::string, int> corank;
    std::map<std::string, int> divisors;
    std::map<std::string, std::vector<std::string>> incidence;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

ResolutionState seed_from_snc(const SncVariety& snc, const std::map<std::string, int>& corank);
ResolutionState seed_from_snc(const SeedSpec& seed);

/// Invariant violations of a state: unknown x indices, unregistered or
/// mismatched exponents, invalid charts, non-positive multiplicities.
std::vector<std::string> state_violations(const ResolutionState& state);

bool all_resolved(const ResolutionState& state);

/// The next center: the lowest applicable phase, tie-broken by `ordering`.
/// Empty iff every chart is resolved.
std::optional<RuleApplication> select_center(const ResolutionState& state, const OrderingConfig& ordering);

struct StepResult {
    ResolutionState state;
    BlowupEvent event;
};

/// Blows up `center`: every unresolved chart on the center is replaced by
/// its children, the exceptional divisor is registered when its
/// coefficient is positive, and lex certificates are checked.
StepResult apply_center(const ResolutionState& state, const RuleApplication& center, const EngineConfig& config);

/// select_center + apply_center. Throws PreconditionError when no rule applies.
StepResult step(const ResolutionState& state, const EngineConfig& config);

struct Trace {
    EngineConfig config;
    ResolutionState seed;
    std::vector<BlowupEvent> events;
    ResolutionState final_state;
};

/// Steps to the fixed point. Throws ScaleError when the event ceiling is
/// reached and InvariantBreach if the dual complex moves or the multiset of
/// chart degrees fails to decrease.
Trace run(const ResolutionState& seed, const EngineConfig& config);

/// Re-applies the recorded centers from the seed, checking every event and
/// the final state against the trace. Returns the reproduced final state.
ResolutionState replay(const Trace& trace);

/// Multiset of chart degrees weighted by multiplicity.
std::map<MultiDegree, Integer> degree_multiset(const ResolutionState& state);

/// Dershowitz-Manna: true iff `after` is strictly below `before` in the
/// multiset extension of the lexicographic order.
bool multiset_decreases(const std::map<MultiDegree, Integer>& before, const std::map<MultiDegree, Integer>& after);

} // namespace dualres
