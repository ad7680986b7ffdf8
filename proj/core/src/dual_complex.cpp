#include "dualres/dual_complex.hpp"

#include "dualres/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dualres {

DualComplex::DualComplex(std::vector<Cell> cells) {
    cells_.reserve(cells.size());
    for (auto& c : cells) add(std::move(c));
}

void DualComplex::add(Cell cell) {
    if (index_.contains(cell.id)) {
        throw InputError("duplicate cell id '" + cell.id + "'");
    }
    index_.emplace(cell.id, cells_.size());
    cells_.push_back(std::move(cell));
}

const Cell* DualComplex::find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &cells_[it->second];
}

int DualComplex::dimension() const {
    int d = -1;
    for (const auto& c : cells_) d = std::max(d, c.dim);
    return d;
}

std::vector<std::size_t> DualComplex::cell_counts() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(dimension() + 1), 0);
    for (const auto& c : cells_) {
        if (c.dim >= 0) ++counts[static_cast<std::size_t>(c.dim)];
    }
    return counts;
}

std::vector<const Cell*> DualComplex::cells_of_dim(int dim) const {
    std::vector<const Cell*> out;
    for (const auto& c : cells_) {
        if (c.dim == dim) out.push_back(&c);
    }
    return out;
}

namespace {

std::vector<std::string> sorted_label(const std::vector<std::string>& label) {
    std::vector<std::string> s = label;
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

std::vector<Violation> validate(const DualComplex& complex) {
    std::vector<Violation> out;
    bool structural = true;

    for (const auto& cell : complex.cells()) {
        if (cell.dim < 0) {
            out.push_back({cell.id, std::string(kNegativeDim), "dim " + std::to_string(cell.dim)});
            structural = false;
            continue;
        }
        const std::size_t expected = cell.dim == 0 ? 0 : static_cast<std::size_t>(cell.dim) + 1;
        if (cell.facets.size() != expected) {
            out.push_back({cell.id, std::string(kFacetCount),
                           "expected " + std::to_string(expected) + " facets, found " +
                               std::to_string(cell.facets.size())});
            structural = false;
        }
        for (const auto& f : cell.facets) {
            const Cell* facet = complex.find(f);
            if (facet == nullptr) {
                out.push_back({cell.id, std::string(kDanglingFacet), "facet '" + f + "' does not exist"});
                structural = false;
            } else if (facet->dim != cell.dim - 1) {
                out.push_back({cell.id, std::string(kFacetDimension),
                               "facet '" + f + "' has dim " + std::to_string(facet->dim)});
                structural = false;
            }
        }
        if (cell.label) {
            const auto label = sorted_label(*cell.label);
            const bool unique = std::adjacent_find(label.begin(), label.end()) == label.end();
            if (!unique || label.size() != static_cast<std::size_t>(cell.dim) + 1) {
                out.push_back({cell.id, std::string(kLabelMismatch),
                               "label must list dim+1 distinct components"});
                continue;
            }
            for (std::size_t i = 0; i < cell.facets.size(); ++i) {
                const Cell* facet = complex.find(cell.facets[i]);
                if (facet == nullptr || !facet->label) continue;
                auto expect = label;
                expect.erase(expect.begin() + static_cast<std::ptrdiff_t>(i));
                if (sorted_label(*facet->label) != expect) {
                    out.push_back({cell.id, std::string(kLabelMismatch),
                                   "facet " + std::to_string(i) + " ('" + facet->id +
                                       "') is not the face opposite label entry '" + label[i] + "'"});
                }
            }
        }
    }

    // Consecutive boundary maps must compose to zero for signs to be well defined.
    if (structural) {
        const int top = complex.dimension();
        for (int k = 2; k <= top; ++k) {
            const IntegerMatrix prod = boundary_matrix(complex, k - 1) * boundary_matrix(complex, k);
            const auto cols = complex.cells_of_dim(k);
            for (std::size_t c = 0; c < prod.cols(); ++c) {
                for (std::size_t r = 0; r < prod.rows(); ++r) {
                    if (prod(r, c) != 0) {
                        out.push_back({cols[c]->id, std::string(kBoundarySquare),
                                       "boundary of the boundary is nonzero"});
                        break;
                    }
                }
            }
        }
    }
    return out;
}

void require_valid(const DualComplex& complex) {
    const auto violations = validate(complex);
    if (!violations.empty()) {
        const auto& v = violations.front();
        throw InputError("invalid complex: cell '" + v.cell + "': " + v.rule + " (" + v.detail + ")");
    }
}

IntegerMatrix boundary_matrix(const DualComplex& complex, int k) {
    const auto rows = complex.cells_of_dim(k - 1);
    const auto cols = complex.cells_of_dim(k);
    std::map<std::string_view, std::size_t> row_index;
    for (std::size_t r = 0; r < rows.size(); ++r) row_index.emplace(rows[r]->id, r);

    IntegerMatrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& facets = cols[c]->facets;
        for (std::size_t i = 0; i < facets.size(); ++i) {
            auto it = row_index.find(facets[i]);
            if (it == row_index.end()) continue;
            m(it->second, c) += (i % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

HomologyReport homology(const DualComplex& complex) {
    require_valid(complex);
    HomologyReport report;
    const int top = complex.dimension();
    if (top < 0) return report;

    const auto counts = complex.cell_counts();
    const auto n = static_cast<std::size_t>(top + 1);

    // factors[k] holds the invariant factors of the boundary map out of dimension k.
    std::vector<std::vector<Integer>> factors(n + 1);
    for (int k = 1; k <= top; ++k) {
        factors[static_cast<std::size_t>(k)] = smith_invariant_factors(boundary_matrix(complex, k));
    }

    report.betti.resize(n);
    report.torsion.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t rank_out = factors[k].size();
        const std::size_t rank_in = factors[k + 1].size();
        report.betti[k] = counts[k] - rank_out - rank_in;
        for (const auto& d : factors[k + 1]) {
            if (d > 1) report.torsion[k].push_back(d);
        }
        report.euler += (k % 2 == 0 ? 1L : -1L) * static_cast<long>(counts[k]);
    }
    return report;
}

bool is_q_acyclic(const DualComplex& complex) {
    const auto report = homology(complex);
    for (std::size_t k = 1; k < report.betti.size(); ++k) {
        if (report.betti[k] != 0) return false;
    }
    return true;
}

DualComplex remove_open_star(const DualComplex& complex, std::string_view cell_id) {
    const Cell* target = complex.find(cell_id);
    if (target == nullptr) {
        throw InputError("unknown cell id '" + std::string(cell_id) + "'");
    }

    std::set<std::string, std::less<>> removed{target->id};
    // Facets always have lower dimension, so one sweep per dimension suffices.
    for (int d = target->dim + 1; d <= complex.dimension(); ++d) {
        for (const Cell* c : complex.cells_of_dim(d)) {
            for (const auto& f : c->facets) {
                if (removed.contains(f)) {
                    removed.insert(c->id);
                    break;
                }
            }
        }
    }

    DualComplex out;
    for (const auto& c : complex.cells()) {
        if (!removed.contains(c.id)) out.add(c);
    }
    return out;
}

std::string to_dot(const DualComplex& complex) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"' || ch == '\\') q += '\\';
            q += ch;
        }
        return q + "\"";
    };

    std::ostringstream os;
    os << "graph dual_complex {\n";
    for (const Cell* v : complex.cells_of_dim(0)) {
        os << "  " << quote(v->id) << ";\n";
    }
    for (const Cell* e : complex.cells_of_dim(1)) {
        if (e->facets.size() != 2) continue;
        // Facet 0 is the head, facet 1 the tail.
        os << "  " << quote(e->facets[1]) << " -- " << quote(e->facets[0]) << " [label=" << quote(e->id)
           << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace dualres
