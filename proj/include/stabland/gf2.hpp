#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stabland/bits.hpp"

namespace stabland {

/// Dense GF(2) matrix with rows packed contiguously.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), data_(rows * stride_, 0) {}

    static BitMatrix from_rows(std::span<const BitVector> rows, std::size_t cols);
    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    std::span<Word> row_words(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
    std::span<const Word> row_words(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool value);
    void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits); }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    void append_row(const BitVector& v);
    void swap_rows(std::size_t a, std::size_t b);
    // rows[dst] ^= rows[src]
    void xor_row(std::size_t dst, std::size_t src);

    BitMatrix transpose() const;
    // A·x over GF(2).
    BitVector multiply(const BitVector& x) const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> data_;
};

/// Reduced row echelon form of a row set, with leftmost pivots.
/// reduce() maps every vector to the unique representative of its class
/// modulo the row space, so it doubles as a canonical-form map.
class RowReducer {
public:
    explicit RowReducer(BitMatrix rows);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return echelon_.cols(); }
    const std::vector<std::size_t>& pivot_columns() const { return pivots_; }
    const BitMatrix& echelon() const { return echelon_; }

    BitVector reduce(BitVector v) const;
    bool contains(const BitVector& v) const { return reduce(v).none(); }

    // Columns not used as pivots, ascending.
    std::vector<std::size_t> free_columns() const;

private:
    BitMatrix echelon_;
    std::vector<std::size_t> pivots_;
};

/// Factorization of A for repeated solves A·x = b with changing b.
/// Solutions are canonical: the same b always yields the same x.
class Gf2Solver {
public:
    explicit Gf2Solver(const BitMatrix& a);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return reducer_.rank() - kernel_.rows(); }

    std::optional<BitVector> solve(const BitVector& b) const;
    // Basis of {x : A·x = 0}, one vector per row.
    const BitMatrix& kernel() const { return kernel_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    // Columns of A, each tagged with its unit vector: [a_j | e_j].
    RowReducer reducer_;
    BitMatrix kernel_;
};

struct AffineSolution {
    BitVector particular;
    BitMatrix kernel;  // one basis vector per row
};

// Some x with A·x = b, or nullopt when the system is inconsistent. Free
// variables are set to zero after leftmost-pivot elimination.
std::optional<BitVector> gf2_solve(const BitMatrix& a, const BitVector& b);

// Full solution set {particular + span(kernel)}.
std::optional<AffineSolution> gf2_solve_affine(const BitMatrix& a, const BitVector& b);

bool gf2_in_span(const BitMatrix& basis, const BitVector& v);

std::size_t gf2_rank(const BitMatrix& a);

BitMatrix gf2_nullspace(const BitMatrix& a);

}  // namespace stabland
