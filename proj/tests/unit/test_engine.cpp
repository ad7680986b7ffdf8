#include "dualres/engine.hpp"
#include "dualres/errors.hpp"
#include "dualres/generator.hpp"

#include <doctest.h>

using namespace dualres;

namespace {

MultiDegree md(int x, int y, int z) { return {x, y, z}; }

SeedSpec triangle_seed(int deep_corank) {
    SeedSpec s{coordinate_hyperplanes(3), {}, {}, {}};
    for (const auto& st : s.snc.strata) {
        if (st.indices.size() >= 2) s.corank[st.id] = st.indices.size() == 3 ? deep_corank : 1;
    }
    return s;
}

// Only the deep stratum carries a singular chart.
SeedSpec deep_only_seed(int corank) {
    SeedSpec s{coordinate_hyperplanes(3), {}, {}, {}};
    for (const auto& st : s.snc.strata) {
        if (st.indices.size() >= 2) s.corank[st.id] = st.indices.size() == 3 ? corank : 0;
    }
    return s;
}

ResolutionState manual_state(std::vector<ChartState> charts, std::map<std::string, int> divisors = {}) {
    ResolutionState s;
    s.dual = dual_complex_of(coordinate_hyperplanes(4));
    for (const auto& [id, a] : divisors) s.registry.add({id, a, std::nullopt});
    for (auto& c : charts) {
        s.charts.push_back({"c" + std::to_string(s.next_chart++), "manual", std::move(c), 1});
    }
    return s;
}

std::map<MultiDegree, Integer> census(const ResolutionState& s) { return degree_multiset(s); }

} // namespace

TEST_SUITE("resolution_engine") {

TEST_CASE("seed from the triangle with corank 2 at the deep stratum") {
    const auto s = seed_from_snc(triangle_seed(2));
    REQUIRE(s.charts.size() == 4);
    CHECK(census(s) == std::map<MultiDegree, Integer>{{md(2, 1, 0), 3}, {md(3, 2, 0), 1}});
    CHECK(s.registry.entries().empty());
    CHECK(s.dual == dual_complex_of(coordinate_hyperplanes(3)));
    CHECK(state_violations(s).empty());
}

TEST_CASE("seed from a double point") {
    const auto s = seed_from_snc(coordinate_hyperplanes(2), {{"E1*E2", 1}});
    REQUIRE(s.charts.size() == 1);
    CHECK(mdeg(s.charts[0].chart) == md(2, 1, 0));
}

TEST_CASE("seed from a smooth component is already resolved") {
    const auto s = seed_from_snc(coordinate_hyperplanes(1), {});
    CHECK(s.charts.empty());
    CHECK(all_resolved(s));
    CHECK_FALSE(select_center(s, {}).has_value());
}

TEST_CASE("seed errors") {
    const auto snc = coordinate_hyperplanes(2);
    CHECK_THROWS_AS(seed_from_snc(snc, {}), InputError);
    CHECK_THROWS_AS(seed_from_snc(snc, {{"E1*E2", -1}}), InputError);
    CHECK_THROWS_AS(seed_from_snc(snc, {{"E1*E2", 1}, {"E9", 1}}), InputError);
    CHECK_THROWS_AS(seed_from_snc(snc, {{"E1*E2", 1}, {"E1", 1}}), InputError);
    SeedSpec bad{snc, {{"E1*E2", 1}}, {{"F1", 0}}, {}};
    CHECK_THROWS_AS(seed_from_snc(bad), InputError);
    SeedSpec unknown{snc, {{"E1*E2", 1}}, {}, {{"E1*E2", {"F1"}}}};
    CHECK_THROWS_AS(seed_from_snc(unknown), InputError);
}

TEST_CASE("seed divisors enter the charts with their coefficients") {
    SeedSpec s{coordinate_hyperplanes(2), {{"E1*E2", 0}}, {{"F1", 3}}, {{"E1*E2", {"F1"}}}};
    const auto st = seed_from_snc(s);
    REQUIRE(st.charts.size() == 1);
    CHECK(st.charts[0].chart.a == std::map<std::string, int>{{"F1", 3}});
    CHECK(st.registry.find("F1")->coefficient == 3);
}

TEST_CASE("select_center prefers the largest determinant") {
    const auto s = manual_state({make_chart({"E1", "E3"}, 2), make_chart({"E2", "E4"}, 3)});
    const auto c = select_center(s, {});
    REQUIRE(c);
    CHECK(*c == RuleApplication::det("E2", "E4", 3));
}

TEST_CASE("select_center picks MON1 once determinants are gone") {
    const auto s = manual_state({make_chart({"E1", "E2"}, 1), make_chart({"E2", "E3"}, 0, {{"F", 4}, {"G", 1}})},
                                {{"F", 4}, {"G", 1}});
    const auto c = select_center(s, {});
    REQUIRE(c);
    CHECK(*c == RuleApplication::mon1("E2", "E3", "F"));
}

TEST_CASE("select_center phase order B2, B3, C") {
    auto s = manual_state({make_chart({"E1", "E2"}, 1, {{"F", 1}}), make_chart({"E3", "E4"}, 0, {{"F", 1}, {"G", 1}}),
                           make_chart({"E1", "E4"}, 1)},
                          {{"F", 1}, {"G", 1}});
    CHECK(*select_center(s, {}) == RuleApplication::mon2("E3", "E4", "F", "G"));
    s.charts.erase(s.charts.begin() + 1);
    CHECK(*select_center(s, {}) == RuleApplication::mon3("E1", "E2", "F"));
    s.charts.erase(s.charts.begin());
    CHECK(*select_center(s, {}) == RuleApplication::bin("E1"));
}

TEST_CASE("ordering config breaks ties") {
    const auto s = manual_state({make_chart({"E1", "E2", "E3"}, 2)});
    CHECK(*select_center(s, {}) == RuleApplication::det("E1", "E2", 2));
    CHECK(*select_center(s, OrderingConfig{{"E3"}}) == RuleApplication::det("E3", "E1", 2));
    CHECK(*select_center(s, OrderingConfig{{"E3", "E2"}}) == RuleApplication::det("E3", "E2", 2));
}

TEST_CASE("step: DET on a single (3,2,0) chart") {
    const auto seed = seed_from_snc(deep_only_seed(2));
    SUBCASE("oracle policy") {
        const auto r = step(seed, {});
        CHECK(r.event.phase == Phase::kDeterminantal);
        CHECK(r.event.parents.size() == 1);
        REQUIRE(r.event.children.size() == 2);
        CHECK(r.event.children[0].multiplicity == 2);
        CHECK(r.event.children[1].multiplicity == 4);
        REQUIRE(r.event.new_divisor);
        CHECK(r.event.new_divisor->coefficient == 0);
        CHECK_FALSE(r.event.new_divisor->registered);
        CHECK(r.state.registry.entries().empty());
        CHECK(census(r.state)[md(2, 2, 0)] == 2);
        CHECK(census(r.state)[md(3, 1, 0)] == 4);
        for (const auto& c : r.event.certificates) CHECK(c.decreasing());
    }
    SUBCASE("paper policy registers the new divisor") {
        EngineConfig cfg;
        cfg.policy = ExponentPolicy::kSquareMinusTwo;
        const auto r = step(seed, cfg);
        REQUIRE(r.event.new_divisor);
        CHECK(r.event.new_divisor->coefficient == 2);
        CHECK(r.event.new_divisor->registered);
        const auto* d = r.state.registry.find(r.event.new_divisor->id);
        REQUIRE(d != nullptr);
        CHECK(d->birth_event == std::size_t{0});
        CHECK(census(r.state)[md(2, 2, 2)] == 2);
        CHECK(census(r.state)[md(3, 1, 2)] == 4);
    }
}

TEST_CASE("step on a double point is one BIN event") {
    const auto seed = seed_from_snc(coordinate_hyperplanes(2), {{"E1*E2", 1}});
    const auto r = step(seed, {});
    CHECK(r.event.phase == Phase::kBinomial);
    CHECK(census(r.state) == std::map<MultiDegree, Integer>{{md(1, 1, 0), 1}, {md(2, 0, 0), 1}});
    CHECK(all_resolved(r.state));
    CHECK_FALSE(r.event.new_divisor);
    CHECK_THROWS_AS(step(r.state, {}), PreconditionError);
}

TEST_CASE("apply_center refuses a center that meets no chart") {
    const auto seed = seed_from_snc(coordinate_hyperplanes(2), {{"E1*E2", 1}});
    CHECK_THROWS_AS(apply_center(seed, RuleApplication::det("E1", "E2", 2), {}), PreconditionError);
}

TEST_CASE("run on a double point") {
    const auto seed = seed_from_snc(coordinate_hyperplanes(2), {{"E1*E2", 1}});
    const auto t = run(seed, {});
    CHECK(t.events.size() == 1);
    CHECK(t.final_state.charts.size() == 2);
    CHECK(t.final_state.dual == seed.dual);
}

TEST_CASE("run on (3,2,0) matches the hand-derived trace") {
    // DET(E1,E2) and DET(E2,E3) leave (1,2,0)x4 and corank-1 charts
    // (3,1,0)x4, (2,1,0)x8; BIN(E1) then BIN(E2) finish. The three pairwise
    // strata contribute resolved (2,0,0) charts from the start.
    const auto seed = seed_from_snc(deep_only_seed(2));
    const auto t = run(seed, {});
    REQUIRE(t.events.size() == 4);
    CHECK(t.events[0].center == RuleApplication::det("E1", "E2", 2));
    CHECK(t.events[1].center == RuleApplication::det("E2", "E3", 2));
    CHECK(t.events[2].center == RuleApplication::bin("E1"));
    CHECK(t.events[3].center == RuleApplication::bin("E2"));
    CHECK(census(t.final_state) == std::map<MultiDegree, Integer>{
                                       {md(1, 1, 0), 12}, {md(1, 2, 0), 4}, {md(2, 0, 0), 15}, {md(3, 0, 0), 4}});
    CHECK(all_resolved(t.final_state));
    CHECK(t.final_state.dual == seed.dual);
    CHECK(replay(t) == t.final_state);
}

TEST_CASE("run on an empty seed gives an empty trace") {
    const auto seed = seed_from_snc(coordinate_hyperplanes(1), {});
    const auto t = run(seed, {});
    CHECK(t.events.empty());
    CHECK(t.final_state == seed);
}

TEST_CASE("event ceiling") {
    const auto seed = seed_from_snc(deep_only_seed(2));
    EngineConfig cfg;
    cfg.event_ceiling = 1;
    CHECK_THROWS_AS(run(seed, cfg), ScaleError);
    cfg.event_ceiling = 4;
    CHECK(run(seed, cfg).events.size() == 4);
    cfg.event_ceiling = 0;
    CHECK_THROWS_AS(run(seed, cfg), InputError);
}

TEST_CASE("replay detects a tampered trace") {
    auto t = run(seed_from_snc(triangle_seed(2)), {});
    REQUIRE(t.events.size() >= 2);
    SUBCASE("altered multiplicity") {
        t.events[0].children[0].multiplicity += 1;
        CHECK_THROWS_AS(replay(t), InvariantBreach);
    }
    SUBCASE("reordered events") {
        std::swap(t.events[0], t.events[1]);
        CHECK_THROWS_AS(replay(t), InvariantBreach);
    }
    SUBCASE("truncated trace") {
        t.events.pop_back();
        CHECK_THROWS_AS(replay(t), InvariantBreach);
    }
    SUBCASE("different config") {
        t.config.policy = ExponentPolicy::kSquareMinusTwo;
        CHECK_THROWS_AS(replay(t), InvariantBreach);
    }
}

TEST_CASE("multiset order") {
    using M = std::map<MultiDegree, Integer>;
    CHECK(multiset_decreases(M{{md(3, 2, 0), 1}}, M{{md(2, 2, 9), 2}, {md(3, 1, 9), 100}}));
    CHECK_FALSE(multiset_decreases(M{{md(3, 2, 0), 1}}, M{{md(3, 2, 0), 1}}));
    CHECK_FALSE(multiset_decreases(M{{md(2, 1, 0), 1}}, M{{md(3, 0, 0), 1}}));
    CHECK(multiset_decreases(M{{md(2, 1, 0), 2}}, M{{md(2, 1, 0), 1}, {md(1, 1, 0), 5}}));
    CHECK_FALSE(multiset_decreases(M{{md(2, 1, 0), 1}}, M{{md(2, 1, 0), 2}}));
}

TEST_CASE("phases and divisors round-trip by name") {
    for (auto p : {Phase::kDeterminantal, Phase::kMonomialHigh, Phase::kMonomialPair, Phase::kMonomialMixed,
                   Phase::kBinomial}) {
        CHECK(parse_phase(to_string(p)) == p);
    }
    CHECK(to_string(Phase::kDeterminantal) == "A-det");
    CHECK_THROWS_AS(parse_phase("Z"), InputError);
}

TEST_CASE("property: random seeds resolve with every invariant") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const SeedSpec spec = random_seed_spec(seed);
        for (auto policy : {ExponentPolicy::kSizeMinusTwo, ExponentPolicy::kSquareMinusTwo}) {
            CAPTURE(seed);
            EngineConfig cfg;
            cfg.policy = policy;
            const auto start = seed_from_snc(spec);
            const auto t = run(start, cfg);

            // Termination measure and certificates.
            ResolutionState s = start;
            int last_phase = -1;
            for (const auto& e : t.events) {
                for (const auto& c : e.certificates) CHECK(c.child_mdeg < c.parent_mdeg);
                const auto next = apply_center(s, e.center, cfg);
                CHECK(multiset_decreases(degree_multiset(s), degree_multiset(next.state)));
                CHECK(next.state.dual == start.dual);
                CHECK(static_cast<int>(e.phase) >= last_phase);
                last_phase = static_cast<int>(e.phase);
                s = next.state;
            }
            for (const auto& c : t.final_state.charts) {
                CHECK(is_resolved(c.chart));
                if (mdeg(c.chart).dx == 1) CHECK(snc_certified(c.chart));
            }
            CHECK(t.final_state.dual == dual_complex_of(spec.snc));
            CHECK(state_violations(t.final_state).empty());

            // Determinism.
            const auto again = run(start, cfg);
            CHECK(again.events == t.events);
            CHECK(again.final_state == t.final_state);
        }
    }
}

}
