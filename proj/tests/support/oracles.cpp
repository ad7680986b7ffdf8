#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace dualres::testing {

DenseMatrix dense_boundary(const DualComplex& complex, int k) {
    std::map<std::string, std::size_t> row_of;
    std::size_t rows = 0;
    for (const auto& c : complex.cells()) {
        if (c.dim == k - 1) row_of[c.id] = rows++;
    }
    std::vector<const Cell*> cols;
    for (const auto& c : complex.cells()) {
        if (c.dim == k) cols.push_back(&c);
    }
    DenseMatrix m(rows, std::vector<Integer>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < cols[j]->facets.size(); ++i) {
            m[row_of.at(cols[j]->facets[i])][j] += (i % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

std::size_t rational_rank(const DenseMatrix& in) {
    if (in.empty()) return 0;
    std::vector<std::vector<Rational>> a(in.size());
    for (std::size_t r = 0; r < in.size(); ++r) a[r].assign(in[r].begin(), in[r].end());
    const std::size_t rows = a.size();
    const std::size_t cols = a[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::size_t> brute_force_betti(const DualComplex& complex) {
    int top = -1;
    for (const auto& c : complex.cells()) top = std::max(top, c.dim);
    std::vector<std::size_t> counts(static_cast<std::size_t>(top + 1), 0);
    for (const auto& c : complex.cells()) ++counts[static_cast<std::size_t>(c.dim)];
    std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);
    for (int k = 1; k <= top; ++k) ranks[static_cast<std::size_t>(k)] = rational_rank(dense_boundary(complex, k));
    std::vector<std::size_t> betti;
    for (int k = 0; k <= top; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        betti.push_back(counts[uk] - ranks[uk] - ranks[uk + 1]);
    }
    return betti;
}

Integer cofactor_determinant(const DenseMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Integer det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        DenseMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Integer> row;
            for (std::size_t cc = 0; cc < n; ++cc) {
                if (cc != c) row.push_back(m[r][cc]);
            }
            minor.push_back(std::move(row));
        }
        const Integer term = m[0][c] * cofactor_determinant(minor);
        det += (c % 2 == 0) ? term : Integer(-term);
    }
    return det;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> choose(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(n, k, 0, cur, out);
    return out;
}

} // namespace

std::vector<Integer> minor_invariant_factors(const DenseMatrix& m) {
    std::vector<Integer> factors;
    if (m.empty() || m[0].empty()) return factors;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    Integer previous = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        Integer g = 0;
        for (const auto& rs : choose(rows, k)) {
            for (const auto& cs : choose(cols, k)) {
                DenseMatrix sub;
                for (auto r : rs) {
                    std::vector<Integer> row;
                    for (auto c : cs) row.push_back(m[r][c]);
                    sub.push_back(std::move(row));
                }
                g = boost::multiprecision::gcd(g, cofactor_determinant(sub));
            }
        }
        if (g == 0) break;
        factors.push_back(g / previous);
        previous = g;
    }
    return factors;
}

DualComplex random_delta_complex(std::mt19937_64& rng, std::size_t max_cells) {
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const std::size_t budget = std::max<std::size_t>(1, pick(max_cells) + 1);
    DualComplex d;
    const std::size_t nv = 1 + pick(std::max<std::size_t>(1, std::min<std::size_t>(budget, 12)));
    for (std::size_t v = 0; v < nv; ++v) d.add({"v" + std::to_string(v), 0, {}, std::nullopt});

    // Edge from a to b has facets [b, a].
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    auto add_edge = [&](std::size_t a, std::size_t b) {
        const std::string id = "e" + std::to_string(ends.size());
        d.add({id, 1, {"v" + std::to_string(b), "v" + std::to_string(a)}, std::nullopt});
        ends.emplace_back(a, b);
        return ends.size() - 1;
    };
    auto edge_between = [&](std::size_t a, std::size_t b) {
        std::vector<std::size_t> found;
        for (std::size_t i = 0; i < ends.size(); ++i) {
            if (ends[i] == std::pair{a, b}) found.push_back(i);
        }
        if (!found.empty() && pick(4) != 0) return found[pick(found.size())];
        return add_edge(a, b);
    };

    const std::size_t ne = pick(std::max<std::size_t>(1, (budget - nv) / 3 + 1));
    for (std::size_t i = 0; i < ne && d.size() < budget; ++i) add_edge(pick(nv), pick(nv));

    std::size_t nf = 0;
    while (d.size() + 4 <= budget && pick(12) != 0) {
        const std::size_t v0 = pick(nv), v1 = pick(nv), v2 = pick(nv);
        const std::size_t e0 = edge_between(v1, v2);
        const std::size_t e1 = edge_between(v0, v2);
        const std::size_t e2 = edge_between(v0, v1);
        d.add({"f" + std::to_string(nf++), 2,
               {"e" + std::to_string(e0), "e" + std::to_string(e1), "e" + std::to_string(e2)}, std::nullopt});
    }
    return d;
}

DualComplex random_simplicial_complex(std::mt19937_64& rng, int vertices, std::size_t max_cells) {
    std::uniform_int_distribution<int> coin(0, 99);
    const int keep = 40 + coin(rng) / 2;
    std::set<std::vector<int>> simplices;
    for (int v = 0; v < vertices; ++v) simplices.insert({v});
    for (int k = 2; k <= 4; ++k) {
        std::vector<std::vector<int>> candidates;
        for (const auto& s : choose(static_cast<std::size_t>(vertices), static_cast<std::size_t>(k))) {
            std::vector<int> simplex(s.begin(), s.end());
            bool closed = true;
            for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
                auto face = simplex;
                face.erase(face.begin() + static_cast<long>(drop));
                if (!simplices.contains(face)) closed = false;
            }
            if (closed && coin(rng) < keep && simplices.size() < max_cells) candidates.push_back(simplex);
        }
        simplices.insert(candidates.begin(), candidates.end());
    }
    auto name = [](const std::vector<int>& s) {
        std::string id = "s";
        for (int v : s) id += "_" + std::to_string(v);
        return id;
    };
    std::vector<std::vector<int>> ordered(simplices.begin(), simplices.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    DualComplex d;
    for (const auto& s : ordered) {
        Cell c{name(s), static_cast<int>(s.size()) - 1, {}, std::nullopt};
        if (s.size() >= 2) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                auto face = s;
                face.erase(face.begin() + static_cast<long>(drop));
                c.facets.push_back(name(face));
            }
        }
        d.add(std::move(c));
    }
    return d;
}

DualComplex projective_plane() {
    DualComplex d;
    d.add({"v", 0, {}, std::nullopt});
    d.add({"w", 0, {}, std::nullopt});
    d.add({"a", 1, {"w", "v"}, std::nullopt});
    d.add({"b", 1, {"w", "v"}, std::nullopt});
    d.add({"c", 1, {"v", "v"}, std::nullopt});
    d.add({"U", 2, {"a", "b", "c"}, std::nullopt});
    d.add({"L", 2, {"b", "a", "c"}, std::nullopt});
    return d;
}

DualComplex two_simplex() {
    DualComplex d;
    d.add({"v0", 0, {}, std::nullopt});
    d.add({"v1", 0, {}, std::nullopt});
    d.add({"v2", 0, {}, std::nullopt});
    d.add({"e01", 1, {"v1", "v0"}, std::nullopt});
    d.add({"e02", 1, {"v2", "v0"}, std::nullopt});
    d.add({"e12", 1, {"v2", "v1"}, std::nullopt});
    d.add({"f", 2, {"e12", "e02", "e01"}, std::nullopt});
    return d;
}

} // namespace dualres::testing
