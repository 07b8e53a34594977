#ifndef DEGONE_FP_POLY_HPP
#define DEGONE_FP_POLY_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace degone {

/// Polynomial arithmetic over Z/pZ for an arbitrary-size prime p.
/// Polynomials are ZPoly values with coefficients kept in [0, p).
class PrimeField {
   public:
    explicit PrimeField(Int p) : p_(std::move(p)) {}

    const Int& modulus() const noexcept { return p_; }

    ZPoly reduce(const ZPoly& a) const {
        std::vector<Int> v;
        v.reserve(a.coeffs().size());
        for (const auto& c : a.coeffs()) v.push_back(mod_floor(c, p_));
        return ZPoly(std::move(v));
    }
    Int inv(const Int& a) const {
        Int r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0)
            throw Error(ErrorCode::ZeroElement, "no inverse modulo p");
        return r;
    }
    ZPoly add(const ZPoly& a, const ZPoly& b) const { return reduce(a + b); }
    ZPoly sub(const ZPoly& a, const ZPoly& b) const { return reduce(a - b); }
    ZPoly mul(const ZPoly& a, const ZPoly& b) const { return reduce(a * b); }
    ZPoly scale(const ZPoly& a, const Int& s) const { return reduce(a * s); }

    ZPoly monic(const ZPoly& a) const {
        if (a.is_zero()) return a;
        return scale(a, inv(a.lead()));
    }

    std::pair<ZPoly, ZPoly> divmod(const ZPoly& a, const ZPoly& b) const {
        if (b.is_zero()) throw Error(ErrorCode::ZeroElement, "division by zero polynomial mod p");
        std::vector<Int> r = reduce(a).coeffs();
        int db = b.degree();
        int da = static_cast<int>(r.size()) - 1;
        if (da < db) return {ZPoly(), ZPoly(std::move(r))};
        std::vector<Int> q(da - db + 1, Int(0));
        Int li = inv(b.lead());
        for (int i = da; i >= db; --i) {
            r[i] = mod_floor(r[i], p_);
            if (r[i] == 0) continue;
            Int t = mod_floor(r[i] * li, p_);
            q[i - db] = t;
            for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b[j];
        }
        return {reduce(ZPoly(std::move(q))), reduce(ZPoly(std::move(r)))};
    }
    ZPoly rem(const ZPoly& a, const ZPoly& b) const { return divmod(a, b).second; }

    ZPoly gcd(ZPoly a, ZPoly b) const {
        a = reduce(a);
        b = reduce(b);
        while (!b.is_zero()) {
            ZPoly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    /// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
    struct Bezout {
        ZPoly g, s, t;
    };
    Bezout ext_gcd(const ZPoly& a, const ZPoly& b) const {
        ZPoly r0 = reduce(a), r1 = reduce(b);
        ZPoly s0 = ZPoly::constant(Int(1)), s1;
        ZPoly t0, t1 = ZPoly::constant(Int(1));
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            ZPoly s2 = sub(s0, mul(q, s1));
            ZPoly t2 = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        Int li = inv(r0.lead());
        return {scale(r0, li), scale(s0, li), scale(t0, li)};
    }

    ZPoly powmod(ZPoly base, Int e, const ZPoly& m) const {
        ZPoly result = rem(ZPoly::constant(Int(1)), m);
        base = rem(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            result = rem(mul(result, result), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base), m);
        }
        return result;
    }

    /// Irreducible factors of a with multiplicities, canonically ordered by
    /// (degree, coefficients).
    std::vector<std::pair<ZPoly, int>> factor(const ZPoly& a) const {
        ZPoly g = monic(reduce(a));
        std::vector<std::pair<ZPoly, int>> out;
        if (g.degree() <= 0) return out;
        if (g.degree() == 1) return {{g, 1}};

        std::vector<ZPoly> irreducibles;
        int covered = 0;
        const int n = g.degree();
        ZPoly xp = rem(ZPoly::x(), g);
        for (int i = 1; i <= n && covered < n; ++i) {
            xp = powmod(xp, p_, g);
            ZPoly pi = gcd(sub(xp, ZPoly::x()), g);
            for (const auto& q : irreducibles) {
                if (i % q.degree() != 0) continue;
                auto [quot, r] = divmod(pi, q);
                if (r.is_zero()) pi = quot;
            }
            if (pi.degree() < i) continue;
            std::vector<ZPoly> found;
            equal_degree_split(monic(pi), i, found);
            for (auto& f : found) {
                int mult = 0;
                ZPoly rest = g;
                while (true) {
                    auto [quot, r] = divmod(rest, f);
                    if (!r.is_zero()) break;
                    rest = quot;
                    ++mult;
                }
                covered += mult * f.degree();
                out.emplace_back(f, mult);
                irreducibles.push_back(f);
            }
        }
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
            if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
            return x.first.coeffs() < y.first.coeffs();
        });
        return out;
    }

   private:
    // Splits a squarefree product of distinct irreducibles of degree k
    // (Cantor-Zassenhaus; trace map when p = 2). Deterministic seed.
    void equal_degree_split(const ZPoly& h, int k, std::vector<ZPoly>& out) const {
        if (h.degree() == k) {
            out.push_back(h);
            return;
        }
        gmp_randclass rng(gmp_randinit_default);
        rng.seed(Int(h.degree() * 7919 + k));
        const int n = h.degree();
        while (true) {
            std::vector<Int> c(n);
            for (auto& x : c) x = rng.get_z_range(p_);
            ZPoly a = reduce(ZPoly(std::move(c)));
            if (a.degree() <= 0) continue;
            ZPoly b;
            if (p_ == 2) {
                ZPoly t = a, acc = a;
                for (int i = 1; i < k; ++i) {
                    t = rem(mul(t, t), h);
                    acc = add(acc, t);
                }
                b = acc;
            } else {
                Int e = (ipow(p_, k) - 1) / 2;
                b = sub(powmod(a, e, h), ZPoly::constant(Int(1)));
            }
            ZPoly d = gcd(b, h);
            if (d.degree() > 0 && d.degree() < n) {
                equal_degree_split(d, k, out);
                equal_degree_split(divmod(h, d).first, k, out);
                return;
            }
        }
    }

    Int p_;
};

}  // namespace degone

#endif
