#pragma once

#include "dualres/integer.hpp"

#include <cstddef>
#include <vector>

namespace dualres {

// Dense row-major integer matrix. Boundary matrices at the sizes we handle
// (a few hundred cells) fit comfortably.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntegerMatrix operator*(const IntegerMatrix& rhs) const;
    bool is_zero() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Nonzero diagonal entries d_1 | d_2 | ... | d_r of the Smith normal form,
/// all positive. The length is the rank over the rationals.
std::vector<Integer> smith_invariant_factors(IntegerMatrix m);

} // namespace dualres
