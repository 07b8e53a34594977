#ifndef DEGONE_LATTICE_HPP
#define DEGONE_LATTICE_HPP

#include <algorithm>
#include <vector>

#include "integer.hpp"

namespace degone {

/// Integer matrix stored by rows.
using IntMatrix = std::vector<std::vector<Int>>;

/// Upper-triangular Hermite normal form (rows span the lattice, positive
/// diagonal, entries above each pivot reduced into [0, pivot)) of the lattice
/// spanned by `rows` together with modulus * Z^n. The modulus must lie in
/// the lattice being described; it keeps intermediate entries small.
inline IntMatrix hnf_with_modulus(IntMatrix rows, std::size_t n, const Int& modulus) {
    for (auto& r : rows)
        for (auto& x : r) x = mod_floor(x, modulus);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> e(n, Int(0));
        e[i] = modulus;
        rows.push_back(std::move(e));
    }
    IntMatrix h;
    for (std::size_t c = 0; c < n; ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
            }
            if (best == rows.size()) throw Error(ErrorCode::InvalidArgument, "lattice is not of full rank");
            bool done = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[best][c].get_mpz_t());
                for (std::size_t k = c; k < n; ++k) rows[i][k] -= q * rows[best][k];
                if (rows[i][c] != 0) done = false;
            }
            if (done) {
                std::vector<Int> piv = std::move(rows[best]);
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
                if (piv[c] < 0)
                    for (auto& x : piv) x = -x;
                h.push_back(std::move(piv));
                break;
            }
        }
        // Remaining rows have a zero in column c; keep their tails reduced and
        // restore the modulus rows that reduction may have cleared.
        for (auto& r : rows)
            for (std::size_t k = c + 1; k < n; ++k) r[k] = mod_floor(r[k], modulus);
        for (std::size_t k = c + 1; k < n; ++k) {
            std::vector<Int> e(n, Int(0));
            e[k] = modulus;
            rows.push_back(std::move(e));
        }
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const std::vector<Int>& r) {
                                      return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
                                  }),
                   rows.end());
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h[k][i].get_mpz_t(), h[i][i].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t j = i; j < n; ++j) h[k][j] -= q * h[i][j];
        }
    }
    return h;
}

/// Whether v lies in the lattice with upper-triangular HNF basis h.
inline bool in_lattice(const IntMatrix& h, std::vector<Int> v) {
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        if (!mpz_divisible_p(v[i].get_mpz_t(), h[i][i].get_mpz_t())) return false;
        Int q = v[i] / h[i][i];
        for (std::size_t k = i; k < n; ++k) v[k] -= q * h[i][k];
    }
    return true;
}

/// Index of the lattice in Z^n: the product of the HNF diagonal.
inline Int lattice_index(const IntMatrix& h) {
    Int r = 1;
    for (std::size_t i = 0; i < h.size(); ++i) r *= h[i][i];
    return r;
}

}  // namespace degone

#endif
