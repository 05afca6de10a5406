#include "stabland/gf2.hpp"

#include <stdexcept>

namespace stabland {
namespace {

// In-place RREF with leftmost pivots. Pivot rows end up in positions
// [0, rank). `rhs`, when given, receives the same row operations.
std::vector<std::size_t> eliminate(BitMatrix& m, BitVector* rhs) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.rows();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < rows; ++col) {
        std::size_t found = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (m.get(r, col)) {
                found = r;
                break;
            }
        }
        if (found == rows) continue;
        if (found != rank) {
            m.swap_rows(found, rank);
            if (rhs != nullptr) {
                bool a = rhs->get(found), b = rhs->get(rank);
                rhs->set(found, b);
                rhs->set(rank, a);
            }
        }
        // Rows at or below `rank` are zero left of `col`, so the pivot row's
        // leading words can be skipped.
        const std::size_t first_word = col / kWordBits;
        auto pivot = m.row_words(rank).subspan(first_word);
        const bool pivot_rhs = rhs != nullptr && rhs->get(rank);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || !m.get(r, col)) continue;
            simd::xor_into(m.row_words(r).subspan(first_word), pivot);
            if (pivot_rhs) rhs->flip(r);
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

BitMatrix kernel_from_echelon(const BitMatrix& echelon, const std::vector<std::size_t>& pivots) {
    std::vector<bool> is_pivot(echelon.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    BitMatrix kernel(0, echelon.cols());
    for (std::size_t f = 0; f < echelon.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector v(echelon.cols());
        v.set(f, true);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (echelon.get(i, f)) v.set(pivots[i], true);
        kernel.append_row(v);
    }
    return kernel;
}

}  // namespace

BitMatrix BitMatrix::from_rows(std::span<const BitVector> rows, std::size_t cols) {
    BitMatrix out(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) out.set_row(r, rows[r]);
    return out;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, i, true);
    return out;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    Word mask = Word{1} << (c % kWordBits);
    Word& w = data_[r * stride_ + c / kWordBits];
    w = value ? (w | mask) : (w & ~mask);
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector out(cols_);
    auto src = row_words(r);
    std::copy(src.begin(), src.end(), out.words().begin());
    return out;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMatrix::set_row: length mismatch");
    auto dst = row_words(r);
    std::copy(v.words().begin(), v.words().end(), dst.begin());
}

void BitMatrix::append_row(const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMatrix::append_row: length mismatch");
    data_.insert(data_.end(), v.words().begin(), v.words().end());
    ++rows_;
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    auto ra = row_words(a);
    auto rb = row_words(b);
    std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) { simd::xor_into(row_words(dst), row_words(src)); }

BitMatrix BitMatrix::transpose() const {
    BitMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto words = row_words(r);
        for (std::size_t w = 0; w < words.size(); ++w) {
            Word word = words[w];
            while (word != 0) {
                std::size_t c = w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
                out.flip(c, r);
                word &= word - 1;
            }
        }
    }
    return out;
}

BitVector BitMatrix::multiply(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("BitMatrix::multiply: dimension mismatch");
    BitVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (simd::and_parity(row_words(r), x.words())) out.set(r, true);
    return out;
}

RowReducer::RowReducer(BitMatrix rows) : echelon_(std::move(rows)) {
    pivots_ = eliminate(echelon_, nullptr);
    BitMatrix trimmed(pivots_.size(), echelon_.cols());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        auto src = echelon_.row_words(i);
        std::copy(src.begin(), src.end(), trimmed.row_words(i).begin());
    }
    echelon_ = std::move(trimmed);
}

BitVector RowReducer::reduce(BitVector v) const {
    if (v.size() != echelon_.cols()) throw std::invalid_argument("RowReducer::reduce: length mismatch");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        std::size_t col = pivots_[i];
        if (!v.get(col)) continue;
        const std::size_t first_word = col / kWordBits;
        simd::xor_into(v.words().subspan(first_word), echelon_.row_words(i).subspan(first_word));
    }
    return v;
}

std::vector<std::size_t> RowReducer::free_columns() const {
    std::vector<std::size_t> out;
    std::size_t next = 0;
    for (std::size_t c = 0; c < echelon_.cols(); ++c) {
        if (next < pivots_.size() && pivots_[next] == c) {
            ++next;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

std::optional<AffineSolution> gf2_solve_affine(const BitMatrix& a, const BitVector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("gf2_solve: right-hand side length mismatch");
    BitMatrix work = a;
    BitVector rhs = b;
    auto pivots = eliminate(work, &rhs);
    for (std::size_t r = pivots.size(); r < work.rows(); ++r)
        if (rhs.get(r)) return std::nullopt;
    BitVector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (rhs.get(i)) x.set(pivots[i], true);
    return AffineSolution{std::move(x), kernel_from_echelon(work, pivots)};
}

std::optional<BitVector> gf2_solve(const BitMatrix& a, const BitVector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("gf2_solve: right-hand side length mismatch");
    BitMatrix work = a;
    BitVector rhs = b;
    auto pivots = eliminate(work, &rhs);
    for (std::size_t r = pivots.size(); r < work.rows(); ++r)
        if (rhs.get(r)) return std::nullopt;
    BitVector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (rhs.get(i)) x.set(pivots[i], true);
    return x;
}

bool gf2_in_span(const BitMatrix& basis, const BitVector& v) {
    if (v.size() != basis.cols()) throw std::invalid_argument("gf2_in_span: dimension mismatch");
    return RowReducer(basis).contains(v);
}

std::size_t gf2_rank(const BitMatrix& a) {
    BitMatrix work = a;
    return eliminate(work, nullptr).size();
}

BitMatrix gf2_nullspace(const BitMatrix& a) {
    BitMatrix work = a;
    auto pivots = eliminate(work, nullptr);
    return kernel_from_echelon(work, pivots);
}

namespace {

BitMatrix tagged_columns(const BitMatrix& a) {
    BitMatrix t = a.transpose();
    BitMatrix out(a.cols(), a.rows() + a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        BitVector tag(a.cols());
        tag.set(j, true);
        out.set_row(j, BitVector::concat(t.row(j), tag));
    }
    return out;
}

}  // namespace

Gf2Solver::Gf2Solver(const BitMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), reducer_(tagged_columns(a)), kernel_(0, a.cols()) {
    const BitMatrix& e = reducer_.echelon();
    for (std::size_t r = 0; r < e.rows(); ++r)
        if (reducer_.pivot_columns()[r] >= rows_) kernel_.append_row(e.row(r).slice(rows_, cols_));
}

std::optional<BitVector> Gf2Solver::solve(const BitVector& b) const {
    if (b.size() != rows_) throw std::invalid_argument("gf2 solve: right-hand side length differs from row count");
    BitVector r = reducer_.reduce(BitVector::concat(b, BitVector(cols_)));
    if (r.slice(0, rows_).any()) return std::nullopt;
    return r.slice(rows_, cols_);
}

}  // namespace stabland
