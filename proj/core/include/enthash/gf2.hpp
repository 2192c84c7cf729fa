#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace enthash::gf2 {

// Bit-packed GF(2) row vector.
class Row {
  public:
    Row() = default;
    explicit Row(std::size_t bits);

    std::size_t size() const { return bits_; }
    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    Row& operator^=(const Row& other);
    bool any() const;
    // Parity of the AND with another row (dot product over GF(2)).
    bool dot(const Row& other) const;

    friend bool operator==(const Row&, const Row&) = default;

  private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense GF(2) matrix as a list of rows of equal width.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    Row& row(std::size_t r) { return rows_[r]; }
    const Row& row(std::size_t r) const { return rows_[r]; }
    void append_row(Row r);

    std::size_t rank() const;
    // Basis of the right nullspace {x : Mx = 0}.
    std::vector<Row> nullspace_basis() const;

  private:
    std::size_t cols_ = 0;
    std::vector<Row> rows_;
};

}  // namespace enthash::gf2
