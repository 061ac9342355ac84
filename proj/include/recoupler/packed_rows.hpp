#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "recoupler/errors.hpp"

namespace recoupler {

// Dense matrix over {+1,-1} with one bit per entry (set bit = -1).
// All row/row comparisons reduce to XOR + popcount, so orthogonality
// checks stay in exact integer arithmetic.
class PackedRows {
public:
    PackedRows() : rows_(0), cols_(0), words_(0) {}

    PackedRows(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(static_cast<std::size_t>(rows) * words_, 0) {
        if (rows < 0 || cols < 0) throw IndexOutOfRangeError("negative matrix shape");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    // Entry as +1 / -1.
    int get(int r, int c) const {
        check(r, c);
        return (word(r, c / 64) >> (c % 64)) & 1 ? -1 : +1;
    }

    void set(int r, int c, int sign) {
        check(r, c);
        if (sign != 1 && sign != -1) throw NonSignEntriesError();
        uint64_t mask = uint64_t{1} << (c % 64);
        if (sign < 0)
            word(r, c / 64) |= mask;
        else
            word(r, c / 64) &= ~mask;
    }

    void negate_row(int r) {
        check(r, 0);
        for (int w = 0; w < words_; ++w) word(r, w) ^= tail_mask(w);
    }

    void negate_col(int c) {
        check(0, c);
        uint64_t mask = uint64_t{1} << (c % 64);
        for (int r = 0; r < rows_; ++r) word(r, c / 64) ^= mask;
    }

    // Number of columns where rows a and b carry the same sign.
    int agreement(int a, int b) const {
        check(a, 0);
        check(b, 0);
        int disagree = 0;
        for (int w = 0; w < words_; ++w) disagree += std::popcount(word(a, w) ^ word(b, w));
        return cols_ - disagree;
    }

    // Integer dot product of rows a and b.
    int dot(int a, int b) const { return 2 * agreement(a, b) - cols_; }

    int row_sum(int r) const {
        check(r, 0);
        int minus = 0;
        for (int w = 0; w < words_; ++w) minus += std::popcount(word(r, w));
        return cols_ - 2 * minus;
    }

    bool rows_equal(int a, int b) const { return agreement(a, b) == cols_; }

    std::vector<int> row_signs(int r) const {
        std::vector<int> out(cols_);
        for (int c = 0; c < cols_; ++c) out[c] = get(r, c);
        return out;
    }

    bool operator==(const PackedRows& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
    }

private:
    uint64_t& word(int r, int w) { return bits_[static_cast<std::size_t>(r) * words_ + w]; }
    const uint64_t& word(int r, int w) const { return bits_[static_cast<std::size_t>(r) * words_ + w]; }

    // Keeps bits beyond `cols_` zero so popcounts stay exact.
    uint64_t tail_mask(int w) const {
        if (w < words_ - 1 || cols_ % 64 == 0) return ~uint64_t{0};
        return (uint64_t{1} << (cols_ % 64)) - 1;
    }

    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw IndexOutOfRangeError("(" + std::to_string(r) + "," + std::to_string(c) + ") in " +
                                       std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    int rows_, cols_, words_;
    std::vector<uint64_t> bits_;
};

}  // namespace recoupler
