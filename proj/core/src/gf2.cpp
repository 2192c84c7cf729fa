#include "enthash/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace enthash::gf2 {

Row::Row(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

Row& Row::operator^=(const Row& other) {
    if (bits_ != other.bits_) throw std::invalid_argument("GF(2) row width mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

bool Row::any() const {
    for (std::uint64_t w : words_)
        if (w) return true;
    return false;
}

bool Row::dot(const Row& other) const {
    if (bits_ != other.bits_) throw std::invalid_argument("GF(2) row width mismatch");
    unsigned parity = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        parity ^= static_cast<unsigned>(std::popcount(words_[i] & other.words_[i])) & 1u;
    return parity != 0;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Row(cols)) {}

void Matrix::append_row(Row r) {
    if (rows_.empty() && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("GF(2) row width mismatch");
    rows_.push_back(std::move(r));
}

namespace {

// Row echelon reduction; returns the pivot column of each eliminated row.
std::vector<std::size_t> reduce(std::vector<Row>& rows, std::size_t cols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < cols && next_row < rows.size(); ++col) {
        std::size_t pivot = next_row;
        while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[next_row]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != next_row && rows[r].get(col)) rows[r] ^= rows[next_row];
        pivot_cols.push_back(col);
        ++next_row;
    }
    return pivot_cols;
}

}  // namespace

std::size_t Matrix::rank() const {
    std::vector<Row> work = rows_;
    return reduce(work, cols_).size();
}

std::vector<Row> Matrix::nullspace_basis() const {
    std::vector<Row> work = rows_;
    std::vector<std::size_t> pivots = reduce(work, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<Row> basis;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        Row v(cols_);
        v.set(free_col, true);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (work[r].get(free_col)) v.set(pivots[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace enthash::gf2
