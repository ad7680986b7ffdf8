#pragma once

#include "dualres/integer.hpp"
#include "dualres/smith_normal_form.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dualres {

/// One cell of an unordered Delta-complex. A k-cell lists its k+1 facets in
/// order; facet position i contributes sign (-1)^i to the boundary.
struct Cell {
    std::string id;
    int dim = 0;
    std::vector<std::string> facets;
    // Component ids the cell sits over (the index set J of a stratum).
    std::optional<std::vector<std::string>> label;

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// A finite Delta-complex keyed by cell id. Several cells may share a vertex
/// set; ids are the primary keys. Cells keep insertion order, which fixes the
/// column order of boundary matrices and makes serialization deterministic.
class DualComplex {
public:
    DualComplex() = default;
    explicit DualComplex(std::vector<Cell> cells);

    /// Appends a cell. Throws InputError on a duplicate id; no other checks.
    void add(Cell cell);

    const Cell* find(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }

    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    /// Highest cell dimension, or -1 for the empty complex.
    int dimension() const;
    /// Number of cells in each dimension 0..dimension().
    std::vector<std::size_t> cell_counts() const;
    std::vector<const Cell*> cells_of_dim(int dim) const;

    friend bool operator==(const DualComplex& a, const DualComplex& b) { return a.cells_ == b.cells_; }

private:
    std::vector<Cell> cells_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

struct Violation {
    std::string cell;
    std::string rule;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

// Rule names used in Violation::rule.
inline constexpr std::string_view kDuplicateId = "duplicate id";
inline constexpr std::string_view kNegativeDim = "negative dimension";
inline constexpr std::string_view kFacetCount = "facet count";
inline constexpr std::string_view kDanglingFacet = "dangling facet";
inline constexpr std::string_view kFacetDimension = "facet dimension";
inline constexpr std::string_view kLabelMismatch = "label mismatch";
inline constexpr std::string_view kBoundarySquare = "boundary of boundary";

/// Checks every Cell/DualComplex invariant. Violations are data; an empty
/// result means the complex is valid.
std::vector<Violation> validate(const DualComplex& complex);

/// Throws InputError naming the first violation, if any.
void require_valid(const DualComplex& complex);

struct HomologyReport {
    std::vector<std::size_t> betti;
    // Invariant factors > 1 of H_k, per dimension.
    std::vector<std::vector<Integer>> torsion;
    long euler = 0;

    friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

/// Boundary map from k-cells to (k-1)-cells: rows are (k-1)-cells, columns
/// k-cells, both in insertion order. k must be >= 1.
IntegerMatrix boundary_matrix(const DualComplex& complex, int k);

/// Integral homology via Smith normal forms of the boundary matrices.
HomologyReport homology(const DualComplex& complex);

/// True iff every rational Betti number above degree 0 vanishes.
bool is_q_acyclic(const DualComplex& complex);

/// Removes the named cell together with every cell whose iterated facet
/// closure contains it.
DualComplex remove_open_star(const DualComplex& complex, std::string_view cell_id);

/// Graphviz rendering of the 1-skeleton.
std::string to_dot(const DualComplex& complex);

} // namespace dualres
