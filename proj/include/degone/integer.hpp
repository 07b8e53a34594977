#ifndef DEGONE_INTEGER_HPP
#define DEGONE_INTEGER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "errors.hpp"

namespace degone {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rpow(const Rat& base, long e) {
    Rat r;
    unsigned long ae = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), ae);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), ae);
    r.canonicalize();
    if (e < 0) {
        if (r == 0) throw Error(ErrorCode::ZeroElement, "negative power of zero");
        r = 1 / r;
    }
    return r;
}

/// Exponent of p in n (n != 0).
inline int padic_valuation(const Int& n, const Int& p) {
    if (n == 0) throw Error(ErrorCode::ZeroElement, "p-adic valuation of zero");
    Int q = n;
    int v = 0;
    while (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

inline int padic_valuation(const Rat& r, const Int& p) {
    return padic_valuation(r.get_num(), p) - padic_valuation(r.get_den(), p);
}

inline bool is_probable_prime(const Int& n) {
    return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// Nonnegative residue of a modulo m.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline const std::vector<unsigned>& small_primes() {
    static const std::vector<unsigned> primes = [] {
        constexpr unsigned limit = 1u << 15;
        std::vector<bool> composite(limit + 1, false);
        std::vector<unsigned> out;
        for (unsigned i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = static_cast<unsigned long>(i) * i; j <= limit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

inline std::vector<Int> primes_below(unsigned long bound) {
    std::vector<Int> out;
    for (unsigned p : small_primes()) {
        if (p >= bound) break;
        out.emplace_back(p);
    }
    return out;
}

/// Effort cap for integer factorization; exceeding it raises BudgetExceeded.
struct FactorBudget {
    std::uint64_t rho_iterations = 40'000'000;
};

namespace detail {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 when the
// iteration budget runs out.
inline Int brent_rho(const Int& n, std::uint64_t& budget) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    for (unsigned long c = 1; c < 64; ++c) {
        Int y = 2, x, ys, q = 1, g = 1, t;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                y = (y * y + c) % n;
            }
            std::uint64_t k = 0;
            do {
                ys = y;
                std::uint64_t steps = std::min(m, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    t = x - y;
                    q = (q * abs(t)) % n;
                }
                if (budget < steps) return Int(0);
                budget -= steps;
                g = int_gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                t = x - ys;
                g = int_gcd(abs(t), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
    return Int(0);
}

inline void split_composite(const Int& n, int mult, std::map<Int, int>& out, std::uint64_t& budget) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += mult;
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k < mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                split_composite(root, mult * static_cast<int>(k), out, budget);
                return;
            }
        }
    }
    Int d = brent_rho(n, budget);
    if (d == 0) {
        throw Error(ErrorCode::BudgetExceeded,
                    "integer factorization budget exhausted on a " +
                        std::to_string(mpz_sizeinbase(n.get_mpz_t(), 10)) + "-digit cofactor");
    }
    Int e = n / d;
    split_composite(d, mult, out, budget);
    split_composite(e, mult, out, budget);
}

}  // namespace detail

/// Factorization of |n| into primes. `hints` are primes tried before any
/// search, which is how callers pass primes they already know about.
inline std::map<Int, int> factor_integer(const Int& n, const std::vector<Int>& hints = {},
                                         FactorBudget budget = {}) {
    if (n == 0) throw Error(ErrorCode::ZeroElement, "cannot factor zero");
    std::map<Int, int> out;
    Int m = abs(n);
    for (const Int& p : hints) {
        if (p < 2 || m == 1) continue;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
            out[p] += 1;
        }
    }
    for (unsigned p : small_primes()) {
        if (m == 1) break;
        if (Int(p) * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            out[Int(p)] += 1;
        }
    }
    if (m == 1) return out;
    std::uint64_t iters = budget.rho_iterations;
    detail::split_composite(m, 1, out, iters);
    return out;
}

inline std::vector<Int> prime_divisors(const Int& n, const std::vector<Int>& hints = {},
                                       FactorBudget budget = {}) {
    std::vector<Int> out;
    for (const auto& [p, e] : factor_integer(n, hints, budget)) out.push_back(p);
    return out;
}

}  // namespace degone

#endif
