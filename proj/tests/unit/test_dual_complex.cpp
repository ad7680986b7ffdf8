#include "dualres/dual_complex.hpp"
#include "dualres/errors.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace dualres;
using dualres::testing::brute_force_betti;
using dualres::testing::dense_boundary;
using dualres::testing::minor_invariant_factors;
using dualres::testing::projective_plane;
using dualres::testing::two_simplex;

namespace {

bool has_rule(const std::vector<Violation>& v, std::string_view rule) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == rule; });
}

DualComplex simplex_boundary() {
    auto d = two_simplex();
    return remove_open_star(d, "f");
}

DualComplex point() {
    DualComplex d;
    d.add({"p", 0, {}, std::nullopt});
    return d;
}

} // namespace

TEST_SUITE("dual_complex") {

TEST_CASE("validate accepts the 2-simplex") {
    CHECK(validate(two_simplex()).empty());
}

TEST_CASE("validate reports a dangling facet") {
    DualComplex d;
    d.add({"v", 0, {}, std::nullopt});
    d.add({"e", 1, {"v", "missing"}, std::nullopt});
    const auto v = validate(d);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == kDanglingFacet);
    CHECK(v[0].cell == "e");
}

TEST_CASE("validate reports a short facet list") {
    auto cells = two_simplex().cells();
    cells.back().facets.pop_back();
    const auto v = validate(DualComplex(cells));
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == kFacetCount);
    CHECK(v[0].cell == "f");
}

TEST_CASE("validate reports wrong facet dimension and nonzero boundary square") {
    DualComplex d;
    d.add({"a", 0, {}, std::nullopt});
    d.add({"b", 0, {}, std::nullopt});
    d.add({"e", 1, {"a", "b"}, std::nullopt});
    d.add({"f", 2, {"e", "a", "e"}, std::nullopt});
    CHECK(has_rule(validate(d), kFacetDimension));

    DualComplex g;
    g.add({"a", 0, {}, std::nullopt});
    g.add({"b", 0, {}, std::nullopt});
    g.add({"e", 1, {"a", "b"}, std::nullopt});
    g.add({"f", 2, {"e", "e", "e"}, std::nullopt});
    CHECK(has_rule(validate(g), kBoundarySquare));
}

TEST_CASE("validate checks labels against facet labels") {
    DualComplex d;
    d.add({"a", 0, {}, std::vector<std::string>{"E1"}});
    d.add({"b", 0, {}, std::vector<std::string>{"E2"}});
    d.add({"e", 1, {"b", "a"}, std::vector<std::string>{"E1", "E3"}});
    CHECK(has_rule(validate(d), kLabelMismatch));
}

TEST_CASE("duplicate ids are rejected on insertion") {
    DualComplex d;
    d.add({"a", 0, {}, std::nullopt});
    CHECK_THROWS_AS(d.add({"a", 0, {}, std::nullopt}), InputError);
}

TEST_CASE("homology of the boundary of the 2-simplex") {
    const auto d = simplex_boundary();
    const auto h = homology(d);
    CHECK(h.betti == std::vector<std::size_t>{1, 1});
    CHECK(h.torsion == std::vector<std::vector<Integer>>{{}, {}});
    CHECK(h.euler == 0);
    CHECK(brute_force_betti(d) == h.betti);
}

TEST_CASE("homology of a point") {
    const auto h = homology(point());
    CHECK(h.betti == std::vector<std::size_t>{1});
    CHECK(h.euler == 1);
}

TEST_CASE("homology of the projective plane") {
    const auto d = projective_plane();
    const auto h = homology(d);
    CHECK(h.betti == std::vector<std::size_t>{1, 0, 0});
    REQUIRE(h.torsion.size() == 3);
    CHECK(h.torsion[1] == std::vector<Integer>{2});
    CHECK(h.torsion[0].empty());
    CHECK(h.torsion[2].empty());
    CHECK(h.euler == 1);

    // Independent: rational ranks, and invariant factors from gcds of minors.
    CHECK(brute_force_betti(d) == h.betti);
    CHECK(minor_invariant_factors(dense_boundary(d, 2)) == std::vector<Integer>{1, 2});
    CHECK(minor_invariant_factors(dense_boundary(d, 1)) == std::vector<Integer>{1});
}

TEST_CASE("homology rejects an invalid complex") {
    DualComplex d;
    d.add({"e", 1, {"x", "y"}, std::nullopt});
    CHECK_THROWS_AS(homology(d), InputError);
    CHECK_THROWS_AS(is_q_acyclic(d), InputError);
}

TEST_CASE("is_q_acyclic") {
    CHECK(is_q_acyclic(two_simplex()));
    CHECK_FALSE(is_q_acyclic(simplex_boundary()));
    CHECK(is_q_acyclic(projective_plane()));
    CHECK(is_q_acyclic(DualComplex{}));
}

TEST_CASE("remove_open_star of the 2-cell leaves the boundary") {
    const auto d = remove_open_star(two_simplex(), "f");
    CHECK(d.cell_counts() == std::vector<std::size_t>{3, 3});
    CHECK(validate(d).empty());
    CHECK(homology(d).betti == std::vector<std::size_t>{1, 1});
}

TEST_CASE("remove_open_star of an edge takes the 2-cell with it") {
    const auto d = remove_open_star(two_simplex(), "e01");
    CHECK(d.cell_counts() == std::vector<std::size_t>{3, 2});
    CHECK_FALSE(d.contains("f"));
    CHECK_FALSE(d.contains("e01"));
    CHECK(validate(d).empty());
    CHECK(homology(d).betti == std::vector<std::size_t>{1, 0});
}

TEST_CASE("remove_open_star of the only vertex empties the complex") {
    const auto d = remove_open_star(point(), "p");
    CHECK(d.empty());
    CHECK(validate(d).empty());
}

TEST_CASE("remove_open_star rejects unknown and already removed ids") {
    CHECK_THROWS_AS(remove_open_star(two_simplex(), "nope"), InputError);
    const auto d = remove_open_star(two_simplex(), "e01");
    CHECK_THROWS_AS(remove_open_star(d, "e01"), InputError);
}

TEST_CASE("to_dot renders the 1-skeleton") {
    const auto dot = to_dot(two_simplex());
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("v0") != std::string::npos);
    CHECK(dot.find("e01") != std::string::npos);
    CHECK(dot.find("\"f\"") == std::string::npos);
}

TEST_CASE("property: consecutive boundary maps compose to zero") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const auto d = trial % 2 == 0 ? dualres::testing::random_delta_complex(rng, 120)
                                      : dualres::testing::random_simplicial_complex(rng, 7, 120);
        REQUIRE(validate(d).empty());
        for (int k = 2; k <= d.dimension(); ++k) {
            CHECK((boundary_matrix(d, k - 1) * boundary_matrix(d, k)).is_zero());
        }
    }
}

TEST_CASE("property: euler characteristic from cells and from betti numbers") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const auto d = trial % 2 == 0 ? dualres::testing::random_delta_complex(rng, 150)
                                      : dualres::testing::random_simplicial_complex(rng, 8, 150);
        const auto h = homology(d);
        long from_cells = 0;
        long from_betti = 0;
        const auto counts = d.cell_counts();
        for (std::size_t k = 0; k < counts.size(); ++k) {
            const long sign = k % 2 == 0 ? 1 : -1;
            from_cells += sign * static_cast<long>(counts[k]);
            from_betti += sign * static_cast<long>(h.betti[k]);
        }
        CHECK(h.euler == from_cells);
        CHECK(h.euler == from_betti);
    }
}

TEST_CASE("property: homology agrees with brute-force rational ranks") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 80; ++trial) {
        const auto d = trial % 2 == 0 ? dualres::testing::random_delta_complex(rng, 200)
                                      : dualres::testing::random_simplicial_complex(rng, 9, 200);
        REQUIRE(d.size() <= 200);
        CHECK(homology(d).betti == brute_force_betti(d));
    }
}

TEST_CASE("property: torsion agrees with gcds of minors on small complexes") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = dualres::testing::random_delta_complex(rng, 14);
        const auto h = homology(d);
        for (int k = 1; k <= d.dimension(); ++k) {
            const auto dense = dense_boundary(d, k);
            if (dense.size() > 7 || dense[0].size() > 7) continue;
            std::vector<Integer> expected;
            for (const auto& f : minor_invariant_factors(dense)) {
                if (f > 1) expected.push_back(f);
            }
            CHECK(h.torsion[static_cast<std::size_t>(k - 1)] == expected);
        }
    }
}

TEST_CASE("property: removing a cell then validating succeeds") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = dualres::testing::random_simplicial_complex(rng, 6, 80);
        const auto& cells = d.cells();
        const auto& victim = cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)];
        const auto r = remove_open_star(d, victim.id);
        CHECK(validate(r).empty());
        CHECK(r.size() < d.size());
        CHECK_THROWS_AS(remove_open_star(r, victim.id), InputError);
    }
}

}
