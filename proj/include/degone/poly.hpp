#ifndef DEGONE_POLY_HPP
#define DEGONE_POLY_HPP

#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "integer.hpp"

namespace degone {

/// Dense univariate polynomial, coefficients stored low degree first.
/// The zero polynomial has no coefficients and degree -1.
template <class T>
class Poly {
   public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> l) : c_(l) { trim(); }

    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    static Poly monomial(const T& a, std::size_t k) {
        std::vector<T> v(k + 1, T(0));
        v[k] = a;
        return Poly(std::move(v));
    }
    static Poly x() { return monomial(T(1), 1); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const T& lead() const { return c_.back(); }
    T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const std::vector<T>& coeffs() const noexcept { return c_; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    void set(std::size_t i, const T& a) {
        if (i >= c_.size()) c_.resize(i + 1, T(0));
        c_[i] = a;
        trim();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const T& s) {
        for (auto& a : c_) a *= s;
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(r));
    }

    /// Horner evaluation at any type that mixes with T.
    template <class U>
    U eval(const U& x, U acc) const {
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + U(c_[i]);
        return acc;
    }
    T operator()(const T& x) const {
        T acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using ZPoly = Poly<Int>;
using QPoly = Poly<Rat>;

inline QPoly to_qpoly(const ZPoly& p) {
    std::vector<Rat> v;
    for (const auto& a : p.coeffs()) v.emplace_back(a);
    return QPoly(std::move(v));
}

/// Quotient and remainder over Q.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::ZeroElement, "polynomial division by zero");
    std::vector<Rat> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<Rat> q(a.degree() - db + 1, Rat(0));
    Rat inv = 1 / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        Rat t = r[i] * inv;
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

/// Remainder of an integer polynomial modulo a monic integer polynomial.
inline ZPoly rem_monic(const ZPoly& a, const ZPoly& m) {
    std::vector<Int> r = a.coeffs();
    int dm = m.degree();
    for (int i = a.degree(); i >= dm; --i) {
        if (r[i] == 0) continue;
        Int t = r[i];
        for (int j = 0; j <= dm; ++j) r[i - dm + j] -= t * m[j];
    }
    return ZPoly(std::move(r));
}

/// Exact division over Z; returns false when b does not divide a.
inline bool divides_exact(const ZPoly& b, const ZPoly& a, ZPoly* quotient = nullptr) {
    if (b.is_zero()) return a.is_zero();
    std::vector<Int> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) {
        if (quotient) *quotient = ZPoly();
        return a.is_zero();
    }
    std::vector<Int> q(a.degree() - db + 1, Int(0));
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.lead().get_mpz_t())) return false;
        Int t = r[i] / b.lead();
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b[j];
    }
    for (const auto& c : r)
        if (c != 0) return false;
    if (quotient) *quotient = ZPoly(std::move(q));
    return true;
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (1 / a.lead());
}

inline Int content(const ZPoly& p) {
    Int g = 0;
    for (const auto& a : p.coeffs()) g = int_gcd(g, a);
    return g;
}

/// Scale a rational polynomial to a primitive integer polynomial with
/// positive leading coefficient.
inline ZPoly primitive_part(const QPoly& p) {
    Int den = 1;
    for (const auto& a : p.coeffs()) den = int_lcm(den, a.get_den());
    std::vector<Int> v;
    for (const auto& a : p.coeffs()) v.push_back(Int(a * den));
    ZPoly z(std::move(v));
    Int g = content(z);
    if (g == 0) return z;
    if (z.lead() < 0) g = -g;
    std::vector<Int> w;
    for (const auto& a : z.coeffs()) w.push_back(a / g);
    return ZPoly(std::move(w));
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline Int resultant(const ZPoly& a, const ZPoly& b) {
    const int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0) return ipow(a[0], n);
    if (n == 0) return ipow(b[0], m);
    const int size = m + n;
    std::vector<std::vector<Int>> s(size, std::vector<Int>(size, Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
    return bareiss_det(std::move(s));
}

/// Discriminant of a monic polynomial.
inline Int discriminant(const ZPoly& g) {
    const int d = g.degree();
    if (d <= 1) return 1;
    Int r = resultant(g, g.derivative());
    if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) r = -r;
    return r;
}

template <class T>
std::string to_string(const Poly<T>& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        T a = p[i];
        if (a == 0) continue;
        bool neg = a < 0;
        T mag = neg ? T(-a) : a;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
        } else {
            if (mag != 1) os << mag << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace degone

#endif
