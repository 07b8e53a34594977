#ifndef DEGONE_ROOTS_HPP
#define DEGONE_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "poly.hpp"
#include "real.hpp"

namespace degone {

/// Root approximations of a squarefree rational polynomial with certified
/// inclusion disks: the true roots are in one-to-one correspondence with the
/// pairwise disjoint disks |z - center[i]| <= radius[i].
struct CertifiedRoots {
    std::vector<Complex> center;
    std::vector<Real> radius;
    std::vector<bool> is_real;
    int real_count = 0;

    Real max_radius() const {
        Real m(radius.empty() ? 64 : radius.front().prec());
        for (const auto& r : radius) m = max(m, r);
        return m;
    }
};

namespace detail {

inline Complex horner(const std::vector<Real>& a, const Complex& z) {
    Complex acc(z.prec());
    for (std::size_t i = a.size(); i-- > 0;) {
        acc = acc * z;
        acc.re += a[i];
    }
    return acc;
}

inline Complex horner_derivative(const std::vector<Real>& a, const Complex& z) {
    Complex acc(z.prec());
    for (std::size_t i = a.size(); i-- > 1;) {
        acc = acc * z;
        acc.re += a[i] * Real(static_cast<double>(i), a[i].prec());
    }
    return acc;
}

// Upper bound on the rounding error of horner(a, z) at working precision.
inline Real horner_rounding_bound(const std::vector<Real>& a, const Complex& z, mpfr_prec_t wp) {
    Real az = z.abs();
    Real acc(wp);
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * az + abs(a[i]);
    Real n(static_cast<double>(4 * a.size() + 8), wp);
    return acc * n * Real::pow2(-static_cast<long>(wp) + 2, wp);
}

}  // namespace detail

/// Aberth iteration followed by Weierstrass-disk certification. Throws
/// PrecisionExhausted if the disks cannot be separated or are wider than
/// 2^(-prec/2) relative to max(1, |root|).
inline CertifiedRoots certified_roots(const QPoly& poly, mpfr_prec_t prec) {
    const int n = poly.degree();
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "root isolation needs degree >= 1");
    const mpfr_prec_t wp = prec + 64;
    std::vector<Real> a;
    for (int i = 0; i <= n; ++i) a.push_back(Real(poly[i] / poly.lead(), wp));

    CertifiedRoots out;
    if (n == 1) {
        Complex z(-a[0], Real(wp));
        out.center.push_back(z);
        out.radius.push_back(Real(wp));
        out.is_real.push_back(true);
        out.real_count = 1;
        return out;
    }

    // Initial points on a circle of radius |a0|^(1/n), offset from the axes.
    double rad = std::pow(std::max(std::abs(a[0].to_double()), 1e-300), 1.0 / n);
    if (!std::isfinite(rad) || rad == 0) rad = 1;
    std::vector<Complex> z;
    for (int i = 0; i < n; ++i) {
        double ang = 2 * M_PI * i / n + 0.4;
        z.emplace_back(Real(rad * std::cos(ang), wp), Real(rad * std::sin(ang), wp));
    }

    const Real tiny = Real::pow2(-static_cast<long>(wp) + 16, wp);
    const Real one(1.0, wp);
    for (int iter = 0; iter < 4000; ++iter) {
        Real worst(wp);
        for (int i = 0; i < n; ++i) {
            Complex pv = detail::horner(a, z[i]);
            Complex dv = detail::horner_derivative(a, z[i]);
            if (dv.re.is_zero() && dv.im.is_zero()) {
                z[i].re += tiny;
                continue;
            }
            Complex w = pv / dv;
            Complex s(wp);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex diff = z[i] - z[j];
                if (diff.re.is_zero() && diff.im.is_zero()) continue;
                s = s + Complex(one, Real(wp)) / diff;
            }
            Complex denom = Complex(one, Real(wp)) - w * s;
            Complex step = (denom.re.is_zero() && denom.im.is_zero()) ? w : w / denom;
            z[i] = z[i] - step;
            Real rel = step.abs() / max(one, z[i].abs());
            worst = max(worst, rel);
        }
        if (worst < tiny) break;
    }

    // Weierstrass corrections give disks of radius n|W_i|.
    std::vector<Real> r(n, Real(wp));
    for (int i = 0; i < n; ++i) {
        Complex prod(one, Real(wp));
        for (int j = 0; j < n; ++j)
            if (j != i) prod = prod * (z[i] - z[j]);
        Real pabs = detail::horner(a, z[i]).abs() + detail::horner_rounding_bound(a, z[i], wp);
        Real pd = prod.abs();
        if (pd.is_zero()) throw Error(ErrorCode::PrecisionExhausted, "root approximations collided");
        r[i] = Real(static_cast<double>(n), wp) * pabs / pd;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((z[i] - z[j]).abs() <= r[i] + r[j])
                throw Error(ErrorCode::PrecisionExhausted, "root inclusion disks overlap");

    const Real target = Real::pow2(-static_cast<long>(prec) / 2, wp);
    for (int i = 0; i < n; ++i)
        if (r[i] / max(one, z[i].abs()) > target)
            throw Error(ErrorCode::PrecisionExhausted, "root inclusion radius above requested precision");

    // Realness: the mirror of disk i meets no other disk and meets disk i.
    std::vector<bool> real(n, false);
    for (int i = 0; i < n; ++i) {
        if (abs(z[i].im) > r[i]) continue;
        bool clean = true;
        for (int j = 0; j < n && clean; ++j)
            if (j != i && (z[i].conj() - z[j]).abs() <= r[i] + r[j]) clean = false;
        if (!clean) throw Error(ErrorCode::PrecisionExhausted, "cannot decide whether a root is real");
        real[i] = true;
        z[i].im = Real(wp);
    }

    // Canonical order: real roots ascending, then conjugate pairs by real part
    // with the positive imaginary member first.
    std::vector<int> reals, uppers;
    for (int i = 0; i < n; ++i) {
        if (real[i])
            reals.push_back(i);
        else if (z[i].im.sign() > 0)
            uppers.push_back(i);
    }
    auto by_re = [&](int x, int y) { return z[x].re < z[y].re || (z[x].re == z[y].re && z[x].im < z[y].im); };
    std::sort(reals.begin(), reals.end(), by_re);
    std::sort(uppers.begin(), uppers.end(), by_re);
    for (int i : reals) {
        out.center.push_back(z[i]);
        out.radius.push_back(r[i]);
        out.is_real.push_back(true);
    }
    out.real_count = static_cast<int>(reals.size());
    for (int i : uppers) {
        int best = -1;
        for (int j = 0; j < n; ++j) {
            if (real[j] || z[j].im.sign() > 0) continue;
            if ((z[i].conj() - z[j]).abs() <= r[i] + r[j]) best = j;
        }
        if (best < 0) throw Error(ErrorCode::PrecisionExhausted, "conjugate root not matched");
        Real rr = max(r[i], r[best]);
        out.center.push_back(z[i]);
        out.radius.push_back(rr);
        out.is_real.push_back(false);
        out.center.push_back(z[i].conj());
        out.radius.push_back(rr);
        out.is_real.push_back(false);
    }
    if (static_cast<int>(out.center.size()) != n)
        throw Error(ErrorCode::PrecisionExhausted, "root pairing incomplete");
    return out;
}

}  // namespace degone

#endif
