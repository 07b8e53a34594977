#ifndef DEGONE_LINALG_HPP
#define DEGONE_LINALG_HPP

#include <optional>
#include <vector>

#include "integer.hpp"

namespace degone {

using RatMatrix = std::vector<std::vector<Rat>>;

/// Solves cols * x = rhs (cols given column by column) when the system is
/// consistent and the columns are independent; nullopt otherwise.
inline std::optional<std::vector<Rat>> solve_columns(const std::vector<std::vector<Rat>>& cols,
                                                     const std::vector<Rat>& rhs) {
    const std::size_t rows = rhs.size(), n = cols.size();
    RatMatrix m(rows, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = cols[j][i];
        m[i][n] = rhs[i];
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) return std::nullopt;
        std::swap(m[r], m[piv]);
        Rat inv = 1 / m[r][c];
        for (std::size_t k = c; k <= n; ++k) m[r][k] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t k = c; k <= n; ++k) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (m[i][n] != 0) return std::nullopt;
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = m[i][n];
    return x;
}

inline Rat determinant(RatMatrix m) {
    const std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[c], m[piv]);
            det = -det;
        }
        det *= m[c][c];
        Rat inv = 1 / m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] * inv;
            for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace degone

#endif
