#include "dualres/smith_normal_form.hpp"

#include <stdexcept>
#include <utility>

namespace dualres {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("IntegerMatrix: shape mismatch in product");
    }
    IntegerMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

bool IntegerMatrix::is_zero() const {
    for (const auto& v : data_) {
        if (v != 0) return false;
    }
    return true;
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// Locates the nonzero entry of smallest magnitude in the trailing submatrix
// starting at (t, t). Returns false if the submatrix is zero.
bool find_pivot(const IntegerMatrix& m, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Integer best;
    for (std::size_t r = t; r < m.rows(); ++r) {
        for (std::size_t c = t; c < m.cols(); ++c) {
            const Integer& v = m(r, c);
            if (v == 0) continue;
            Integer mag = abs(v);
            if (!found || mag < best) {
                found = true;
                best = std::move(mag);
                pr = r;
                pc = c;
                if (best == 1) return true;
            }
        }
    }
    return found;
}

} // namespace

std::vector<Integer> smith_invariant_factors(IntegerMatrix m) {
    std::vector<Integer> factors;
    const std::size_t limit = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < limit; ++t) {
        std::size_t pr = 0;
        std::size_t pc = 0;
        if (!find_pivot(m, t, pr, pc)) break;
        swap_rows(m, t, pr);
        swap_cols(m, t, pc);

        // Each pass either clears row/column t or strictly shrinks |pivot|.
        for (;;) {
            bool clean = true;
            for (std::size_t r = t + 1; r < m.rows(); ++r) {
                if (m(r, t) == 0) continue;
                Integer q = m(r, t) / m(t, t);
                if (q != 0) {
                    for (std::size_t c = t; c < m.cols(); ++c) m(r, c) -= q * m(t, c);
                }
                if (m(r, t) != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < m.cols(); ++c) {
                if (m(t, c) == 0) continue;
                Integer q = m(t, c) / m(t, t);
                if (q != 0) {
                    for (std::size_t r = t; r < m.rows(); ++r) m(r, c) -= q * m(r, t);
                }
                if (m(t, c) != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot is left in row or column t.
                std::size_t br = t;
                std::size_t bc = t;
                Integer best = abs(m(t, t));
                for (std::size_t r = t + 1; r < m.rows(); ++r) {
                    if (m(r, t) != 0 && abs(m(r, t)) < best) {
                        best = abs(m(r, t));
                        br = r;
                        bc = t;
                    }
                }
                for (std::size_t c = t + 1; c < m.cols(); ++c) {
                    if (m(t, c) != 0 && abs(m(t, c)) < best) {
                        best = abs(m(t, c));
                        br = t;
                        bc = c;
                    }
                }
                swap_rows(m, t, br);
                swap_cols(m, t, bc);
                continue;
            }

            // Row and column t are clear; enforce divisibility of the rest.
            bool divides = true;
            for (std::size_t r = t + 1; r < m.rows() && divides; ++r) {
                for (std::size_t c = t + 1; c < m.cols(); ++c) {
                    if (m(r, c) % m(t, t) != 0) {
                        for (std::size_t k = t; k < m.cols(); ++k) m(t, k) += m(r, k);
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        factors.push_back(abs(m(t, t)));
    }
    return factors;
}

} // namespace dualres
