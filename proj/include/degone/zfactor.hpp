#ifndef DEGONE_ZFACTOR_HPP
#define DEGONE_ZFACTOR_HPP

#include <optional>
#include <set>
#include <vector>

#include "fp_poly.hpp"

namespace degone {

namespace detail {

/// Lifts g = h*c (mod p) to g = H*C (mod p^k) with H monic and H = h (mod p).
inline ZPoly hensel_lift_factor(const ZPoly& g, const ZPoly& h, const ZPoly& c, const Int& p, unsigned k) {
    PrimeField fp(p);
    auto bez = fp.ext_gcd(h, c);  // s*h + t*c = 1
    if (bez.g.degree() != 0) throw Error(ErrorCode::InvalidArgument, "Hensel factors not coprime");
    ZPoly H = h, C = c;
    Int pk = p;
    for (unsigned i = 1; i < k; ++i) {
        ZPoly diff = g - H * C;
        std::vector<Int> e;
        for (const auto& a : diff.coeffs()) e.push_back(a / pk);
        ZPoly err = fp.reduce(ZPoly(std::move(e)));
        auto [q, r] = fp.divmod(fp.mul(bez.t, err), h);
        ZPoly dC = fp.add(fp.mul(bez.s, err), fp.mul(q, c));
        H += r * pk;
        C += dC * pk;
        pk *= p;
    }
    std::vector<Int> v;
    for (const auto& a : H.coeffs()) v.push_back(mod_floor(a, pk));
    return ZPoly(std::move(v));
}

inline ZPoly symmetric_mod(const ZPoly& a, const Int& m) {
    std::vector<Int> v;
    Int half = m / 2;
    for (const auto& c : a.coeffs()) {
        Int r = mod_floor(c, m);
        if (r > half) r -= m;
        v.push_back(r);
    }
    return ZPoly(std::move(v));
}

inline std::set<int> achievable_degrees(const std::vector<std::pair<ZPoly, int>>& fac) {
    std::set<int> sums{0};
    for (const auto& [f, m] : fac) {
        for (int i = 0; i < m; ++i) {
            std::set<int> next = sums;
            for (int s : sums) next.insert(s + f.degree());
            sums = std::move(next);
        }
    }
    return sums;
}

}  // namespace detail

/// A nontrivial monic factor of the monic integer polynomial g over Q, or
/// nullopt when g is irreducible. Degree filtering over several primes, then
/// Zassenhaus recombination of Hensel-lifted modular factors.
inline std::optional<ZPoly> find_rational_factor(const ZPoly& g) {
    if (!g.is_monic()) throw Error(ErrorCode::NotMonic, "polynomial is not monic");
    const int d = g.degree();
    if (d <= 1) return std::nullopt;
    QPoly sq = poly_gcd(to_qpoly(g), to_qpoly(g.derivative()));
    if (sq.degree() > 0) return primitive_part(sq);
    const Int disc = discriminant(g);

    std::set<int> possible;
    for (int i = 1; i < d; ++i) possible.insert(i);
    std::optional<std::pair<Int, std::vector<std::pair<ZPoly, int>>>> best;
    int tried = 0;
    for (unsigned p : small_primes()) {
        if (p < 3 || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        PrimeField fp{Int(p)};
        auto fac = fp.factor(g);
        auto deg = detail::achievable_degrees(fac);
        std::set<int> keep;
        for (int x : possible)
            if (deg.count(x)) keep.insert(x);
        possible = std::move(keep);
        if (!best || fac.size() < best->second.size()) best = {{Int(p), fac}};
        if (possible.empty()) return std::nullopt;
        if (++tried >= 8) break;
    }

    const Int& p = best->first;
    const auto& fac = best->second;
    std::vector<ZPoly> factors;
    for (const auto& [f, m] : fac) factors.push_back(f);
    const std::size_t r = factors.size();

    // Any monic factor of g over Z has coefficients bounded by 2^d * |g|_2.
    Int norm2 = 0;
    for (const auto& a : g.coeffs()) norm2 += a * a;
    Int bound = (ipow(Int(2), d) * (sqrt(norm2) + 1)) * 2 + 1;
    unsigned k = 1;
    Int pk = p;
    while (pk <= bound) {
        pk *= p;
        ++k;
    }

    PrimeField fp(p);
    std::vector<ZPoly> lifted;
    for (std::size_t i = 0; i < r; ++i) {
        ZPoly cof = ZPoly::constant(Int(1));
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) cof = fp.mul(cof, factors[j]);
        lifted.push_back(detail::hensel_lift_factor(g, factors[i], cof, p, k));
    }

    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << r); ++mask) {
        int deg = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (std::size_t{1} << i)) deg += factors[i].degree();
        if (2 * deg > d || !possible.count(deg)) continue;
        ZPoly prod = ZPoly::constant(Int(1));
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (std::size_t{1} << i)) prod = detail::symmetric_mod(prod * lifted[i], pk);
        if (divides_exact(prod, g)) return prod;
    }
    return std::nullopt;
}

inline bool is_irreducible_over_q(const ZPoly& g) { return !find_rational_factor(g).has_value(); }

}  // namespace degone

#endif
