#pragma once

#include <random>
#include <string>
#include <vector>

#include "recoupler/signmatrix.hpp"

namespace test_helpers {

using recoupler::PackedRows;

// Builds a packed matrix from rows of '+'/'-' strings.
inline PackedRows from_strings(const std::vector<std::string>& rows) {
    PackedRows m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.set(r, c, rows[r][c] == '+' ? +1 : -1);
    return m;
}

// The two-interval refocusing schedule.
inline PackedRows refocus_s2() { return from_strings({"++", "+-"}); }

// The four-spin schedule where any two rows disagree in exactly two entries.
inline PackedRows fourspin_s4() {
    return from_strings({
        "++++",
        "++--",
        "+--+",
        "+-+-",
    });
}

// A known order-12 matrix; negating its 7th row and column normalizes it.
inline PackedRows sample_h12() {
    return from_strings({
        "++++++-+++++",
        "+++--++-+--+",
        "++++--++-+--",
        "+-+++-+-+-+-",
        "+--++++--+-+",
        "++--++++--+-",
        "-+++++------",
        "+-+--+---++-",
        "++-+------++",
        "+-+-+--+---+",
        "+--+-+-++---",
        "++--+---++--",
    });
}

// Independent orthogonality oracle: dense integer Gram matrix against n*I.
inline bool dense_gram_is_n_identity(const PackedRows& m) {
    if (m.rows() != m.cols()) return false;
    const int n = m.rows();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            long dot = 0;
            for (int c = 0; c < n; ++c) dot += static_cast<long>(m.get(a, c)) * m.get(b, c);
            if (dot != (a == b ? n : 0)) return false;
        }
    return true;
}

inline std::mt19937_64 seeded_rng(uint64_t seed = 0x5eed) { return std::mt19937_64(seed); }

inline PackedRows random_signs(int rows, int cols, std::mt19937_64& rng) {
    PackedRows m(rows, cols);
    std::bernoulli_distribution flip(0.5);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (flip(rng)) m.set(r, c, -1);
    return m;
}

}  // namespace test_helpers
