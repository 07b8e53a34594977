#ifndef DEGONE_QFIELD_HPP
#define DEGONE_QFIELD_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linalg.hpp"
#include "parse.hpp"
#include "roots.hpp"
#include "zfactor.hpp"

namespace degone {

class NumberField;
class FieldElement;

namespace detail {

struct AutomorphismData {
    std::vector<Rat> image;
    int order = 1;
    std::string label;
};

struct FieldData {
    ZPoly g;
    int d = 0;
    Int disc;
    std::vector<Int> index_primes;
    mpfr_prec_t precision = 192;
    CertifiedRoots roots;
    // reduce[k] holds the power-basis coordinates of theta^(d+k).
    std::vector<std::vector<Int>> reduce;
    std::vector<AutomorphismData> automorphisms;
};

}  // namespace detail

/// Element of k = Q[x]/(g), stored by its coordinates in 1, t, ..., t^(d-1).
class FieldElement {
   public:
    FieldElement() = default;
    FieldElement(std::shared_ptr<const detail::FieldData> f, std::vector<Rat> coords)
        : f_(std::move(f)), c_(std::move(coords)) {
        c_.resize(f_->d, Rat(0));
    }

    const std::vector<Rat>& coords() const noexcept { return c_; }
    int degree() const noexcept { return f_ ? f_->d : 0; }
    NumberField field() const;
    const std::shared_ptr<const detail::FieldData>& data() const noexcept { return f_; }

    bool is_zero() const {
        for (const auto& a : c_)
            if (a != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    /// Least common denominator of the coordinates.
    Int denominator() const {
        Int den = 1;
        for (const auto& a : c_) den = int_lcm(den, a.get_den());
        return den;
    }
    /// denominator() * this, as integer coordinates.
    std::vector<Int> scaled_numerator() const {
        Int den = denominator();
        std::vector<Int> out;
        for (const auto& a : c_) out.push_back(Int(a * den));
        return out;
    }

    FieldElement operator-() const {
        FieldElement r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    FieldElement& operator+=(const FieldElement& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    FieldElement& operator-=(const FieldElement& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        const int d = a.f_->d;
        std::vector<Rat> prod(2 * d - 1, Rat(0));
        for (int i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < d; ++j) prod[i + j] += a.c_[i] * b.c_[j];
        }
        std::vector<Rat> out(prod.begin(), prod.begin() + d);
        for (int k = d; k < 2 * d - 1; ++k) {
            if (prod[k] == 0) continue;
            const auto& red = a.f_->reduce[k - d];
            for (int i = 0; i < d; ++i) out[i] += prod[k] * red[i];
        }
        return FieldElement(a.f_, std::move(out));
    }
    friend FieldElement operator*(FieldElement a, const Rat& s) {
        for (auto& x : a.c_) x *= s;
        return a;
    }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    /// Multiplicative inverse by solving (a * t^j) x = 1.
    FieldElement inverse() const {
        if (is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
        std::vector<std::vector<Rat>> cols;
        FieldElement basis = unit(0);
        for (int j = 0; j < f_->d; ++j) {
            cols.push_back((*this * basis).c_);
            if (j + 1 < f_->d) basis = basis * unit(1);
        }
        std::vector<Rat> rhs(f_->d, Rat(0));
        rhs[0] = 1;
        auto x = solve_columns(cols, rhs);
        if (!x) throw Error(ErrorCode::ZeroElement, "element not invertible");
        return FieldElement(f_, std::move(*x));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

    FieldElement pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        FieldElement result = unit(0), base = *this;
        while (n > 0) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return result;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.same_field(b) && a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    bool same_field(const FieldElement& o) const {
        return f_ == o.f_ || (f_ && o.f_ && f_->g == o.f_->g);
    }

    /// Coordinates as a rational polynomial in t.
    QPoly as_poly() const { return QPoly(c_); }

    std::string str() const {
        std::string s = to_string(as_poly(), "t");
        return s;
    }

   private:
    FieldElement unit(int k) const {
        std::vector<Rat> v(f_->d, Rat(0));
        v[k] = 1;
        return FieldElement(f_, std::move(v));
    }
    void check_same(const FieldElement& o) const {
        if (!f_ || !same_field(o)) throw Error(ErrorCode::InvalidArgument, "elements of different fields");
    }

    std::shared_ptr<const detail::FieldData> f_;
    std::vector<Rat> c_;
};

/// Field automorphism given by the image of the generator.
struct Automorphism {
    FieldElement image_of_theta;
    int order = 1;
    std::string label;
};

/// An archimedean place: a real root, or one root of a conjugate pair (weight 2).
struct ArchimedeanPlace {
    int root_index = 0;
    int weight = 1;
};

class NumberField {
   public:
    explicit NumberField(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

    int degree() const noexcept { return d_->d; }
    const ZPoly& defining_poly() const noexcept { return d_->g; }
    const Int& disc() const noexcept { return d_->disc; }
    const std::vector<Int>& index_primes() const noexcept { return d_->index_primes; }
    mpfr_prec_t precision() const noexcept { return d_->precision; }
    const CertifiedRoots& roots() const noexcept { return d_->roots; }
    const std::shared_ptr<const detail::FieldData>& data() const noexcept { return d_; }

    std::vector<Automorphism> automorphisms() const {
        std::vector<Automorphism> out;
        for (const auto& a : d_->automorphisms) out.push_back({element(a.image), a.order, a.label});
        return out;
    }

    std::vector<ArchimedeanPlace> archimedean_places() const {
        std::vector<ArchimedeanPlace> out;
        const auto& r = d_->roots;
        for (int i = 0; i < r.real_count; ++i) out.push_back({i, 1});
        for (int i = r.real_count; i < d_->d; i += 2) out.push_back({i, 2});
        return out;
    }

    FieldElement element(std::vector<Rat> coords) const { return FieldElement(d_, std::move(coords)); }
    FieldElement from_rational(const Rat& q) const {
        std::vector<Rat> v(d_->d, Rat(0));
        v[0] = q;
        return element(std::move(v));
    }
    FieldElement zero() const { return from_rational(0); }
    FieldElement one() const { return from_rational(1); }
    /// The generator t (for d = 1, the rational root of g).
    FieldElement gen() const {
        if (d_->d == 1) return from_rational(Rat(-d_->g[0]));
        std::vector<Rat> v(d_->d, Rat(0));
        v[1] = 1;
        return element(std::move(v));
    }
    /// Evaluates a rational polynomial at the generator.
    FieldElement eval_poly(const QPoly& p) const {
        FieldElement acc = zero();
        FieldElement t = gen();
        for (int i = p.degree(); i >= 0; --i) acc = acc * t + from_rational(p[i]);
        return acc;
    }
    /// Parses text such as "1/2 + 1/2*t".
    FieldElement parse(std::string_view text) const {
        BiPoly b = parse_bipoly(text);
        if (b.max_x() > 0) throw ParseError("polynomial variable 'x' not allowed in a field element", 0);
        std::vector<Rat> c(std::max(b.max_t(), 0) + 1, Rat(0));
        for (const auto& [k, v] : b.terms) c[k.second] = v;
        return eval_poly(QPoly(std::move(c)));
    }

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.d_ == b.d_ || a.d_->g == b.d_->g;
    }

   private:
    std::shared_ptr<const detail::FieldData> d_;
};

inline NumberField FieldElement::field() const {
    if (!f_) throw Error(ErrorCode::InvalidArgument, "element has no field");
    return NumberField(f_);
}

/// Exact minimal polynomial over Q (monic), from the first linear dependency
/// among 1, a, a^2, ...
inline QPoly element_minimal_poly(const FieldElement& a) {
    const int d = a.degree();
    std::vector<std::vector<Rat>> cols;
    FieldElement pw = a.field().one();
    cols.push_back(pw.coords());
    for (int k = 1; k <= d; ++k) {
        pw = pw * a;
        auto sol = solve_columns(cols, pw.coords());
        if (sol) {
            std::vector<Rat> mp(k + 1);
            for (int i = 0; i < k; ++i) mp[i] = -(*sol)[i];
            mp[k] = 1;
            return QPoly(std::move(mp));
        }
        cols.push_back(pw.coords());
    }
    throw Error(ErrorCode::InvalidArgument, "no minimal polynomial found (corrupt field)");
}

inline QPoly element_minimal_poly(const NumberField&, const FieldElement& a) { return element_minimal_poly(a); }

inline bool is_algebraic_integer(const FieldElement& a) {
    const QPoly m = element_minimal_poly(a);
    for (const auto& c : m.coeffs())
        if (c.get_den() != 1) return false;
    return true;
}

/// Norm N^k_Q(a) as the determinant of multiplication by a.
inline Rat element_norm(const FieldElement& a) {
    const int d = a.degree();
    RatMatrix m(d, std::vector<Rat>(d));
    FieldElement basis = a.field().one();
    FieldElement t = a.field().gen();
    for (int j = 0; j < d; ++j) {
        FieldElement col = a * basis;
        for (int i = 0; i < d; ++i) m[i][j] = col.coords()[i];
        basis = basis * t;
    }
    return determinant(std::move(m));
}

/// p(x) evaluated at a field element.
inline FieldElement poly_eval(const QPoly& p, const FieldElement& x) {
    NumberField K = x.field();
    FieldElement acc = K.zero();
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + K.from_rational(p[i]);
    return acc;
}

inline FieldElement apply_automorphism(const Automorphism& sigma, const FieldElement& a) {
    FieldElement acc = a.field().zero();
    const auto& c = a.coords();
    for (int i = a.degree(); i-- > 0;) acc = acc * sigma.image_of_theta + a.field().from_rational(c[i]);
    return acc;
}

inline FieldElement apply_automorphism(const NumberField&, const Automorphism& sigma, const FieldElement& a) {
    return apply_automorphism(sigma, a);
}

/// Values of a under every embedding, each with a propagated absolute error bound.
struct EmbeddingValues {
    std::vector<Complex> values;
    std::vector<Real> bounds;
};

/// Evaluates a at every certified root. Throws PrecisionExhausted if some
/// bound exceeds rel_tol * max(1, |value|); rel_tol <= 0 selects 2^(-prec/3).
inline EmbeddingValues complex_values(const FieldElement& a, double rel_tol = 0) {
    NumberField K = a.field();
    const auto& roots = K.roots();
    const mpfr_prec_t wp = K.precision() + 64;
    Real tol = rel_tol > 0 ? Real(rel_tol, wp) : Real::pow2(-static_cast<long>(K.precision()) / 3, wp);
    EmbeddingValues out;
    const int d = K.degree();
    std::vector<Real> coeffs;
    for (const auto& c : a.coords()) coeffs.push_back(Real(c, wp));
    const Real one(1.0, wp);
    for (int i = 0; i < d; ++i) {
        const Complex& z = roots.center[i];
        const Real& r = roots.radius[i];
        Complex acc(wp);
        for (int j = d; j-- > 0;) {
            acc = acc * z;
            acc.re += coeffs[j];
        }
        // |a(z) - a(root)| <= sum |c_j| ((|z|+r)^j - |z|^j), plus rounding.
        Real az = z.abs();
        Real hi = az + r;
        Real err(wp), pw_hi(1.0, wp), pw_lo(1.0, wp), mag(wp);
        for (int j = 0; j < d; ++j) {
            Real cj = abs(coeffs[j]);
            err += cj * (pw_hi - pw_lo);
            mag += cj * pw_hi;
            pw_hi *= hi;
            pw_lo *= az;
        }
        err += mag * Real(static_cast<double>(4 * d + 8), wp) * Real::pow2(-static_cast<long>(wp) + 2, wp);
        if (roots.is_real[i]) acc.im = Real(wp);
        if (err > tol * max(one, acc.abs()))
            throw Error(ErrorCode::PrecisionExhausted, "embedding error bound exceeds tolerance");
        out.values.push_back(std::move(acc));
        out.bounds.push_back(std::move(err));
    }
    return out;
}

inline EmbeddingValues complex_values(const NumberField&, const FieldElement& a, double rel_tol = 0) {
    return complex_values(a, rel_tol);
}

struct RootOfUnityTest {
    bool value = false;
    int order = 0;
};

/// Kronecker's criterion with an exact confirmation a^n = 1 for n <= 2d^2.
inline RootOfUnityTest is_root_of_unity(const FieldElement& a) {
    if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "root-of-unity test on zero");
    if (!is_algebraic_integer(a)) return {};
    const int d = a.degree();
    auto vals = complex_values(a);
    const mpfr_prec_t wp = a.field().precision() + 64;
    const Real one(1.0, wp);
    for (std::size_t i = 0; i < vals.values.size(); ++i)
        if (abs(vals.values[i].abs() - one) > vals.bounds[i]) return {};
    const int bound = 2 * d * d;
    FieldElement pw = a;
    const FieldElement unit = a.field().one();
    for (int n = 1; n <= bound; ++n) {
        if (pw == unit) return {true, n};
        pw = pw * a;
    }
    return {};
}

inline RootOfUnityTest is_root_of_unity(const NumberField&, const FieldElement& a) { return is_root_of_unity(a); }

namespace detail {

inline std::vector<Int> reduction_table_row(const ZPoly& g, int power) {
    const int d = g.degree();
    ZPoly r = rem_monic(ZPoly::monomial(Int(1), power), g);
    std::vector<Int> out(d, Int(0));
    for (int i = 0; i <= r.degree(); ++i) out[i] = r[i];
    return out;
}

inline int automorphism_order(const NumberField& K, const FieldElement& image) {
    Automorphism s{image, 0, ""};
    FieldElement t = K.gen();
    FieldElement cur = image;
    for (int k = 1; k <= K.degree(); ++k) {
        if (cur == t) return k;
        cur = apply_automorphism(s, cur);
    }
    throw Error(ErrorCode::InvalidArgument, "automorphism order exceeds field degree");
}

}  // namespace detail

/// Builds k = Q[x]/(g). For d = 2 the nontrivial automorphism t -> -c1 - t is
/// derived; for larger d the images of t under further automorphisms may be
/// supplied as text and are verified by g(image) = 0.
inline NumberField make_field(const ZPoly& g, mpfr_prec_t precision = 192,
                              const std::vector<std::string>& automorphism_images = {}) {
    if (g.degree() < 1) throw Error(ErrorCode::InvalidArgument, "defining polynomial must have degree >= 1");
    if (!g.is_monic()) throw Error(ErrorCode::NotMonic, "defining polynomial " + to_string(g) + " is not monic");
    if (auto f = find_rational_factor(g))
        throw Error(ErrorCode::NotIrreducible, to_string(g) + " has the factor " + to_string(*f));

    auto data = std::make_shared<detail::FieldData>();
    data->g = g;
    data->d = g.degree();
    data->precision = precision;
    data->disc = discriminant(g);
    for (const auto& [p, e] : factor_integer(data->disc))
        if (e >= 2) data->index_primes.push_back(p);
    for (int k = 0; k + 1 < data->d; ++k) data->reduce.push_back(detail::reduction_table_row(g, data->d + k));
    data->roots = certified_roots(to_qpoly(g), precision);

    NumberField K(data);
    std::vector<detail::AutomorphismData> auts;
    if (data->d == 2) {
        std::vector<Rat> img{Rat(-g[1]), Rat(-1)};
        auts.push_back({img, 2, "conj"});
    }
    int idx = 0;
    for (const auto& text : automorphism_images) {
        FieldElement im = K.parse(text);
        if (!poly_eval(to_qpoly(g), im).is_zero())
            throw Error(ErrorCode::InvalidArgument, "automorphism image " + text + " is not a root of g");
        int order = detail::automorphism_order(K, im);
        bool dup = false;
        for (const auto& a : auts) dup = dup || a.image == im.coords();
        if (!dup && order > 1) auts.push_back({im.coords(), order, "sigma" + std::to_string(++idx)});
    }
    data->automorphisms = std::move(auts);
    return K;
}

inline NumberField make_field(std::string_view g_text, mpfr_prec_t precision = 192,
                              const std::vector<std::string>& automorphism_images = {}) {
    return make_field(parse_zpoly(g_text), precision, automorphism_images);
}

/// A primitive m-th root of unity in K, if K has one. Candidates come from
/// solving the Vandermonde system for every consistent assignment of
/// embedding images, rounded with denominator |disc| and verified exactly.
inline std::optional<FieldElement> find_primitive_root_of_unity(const NumberField& K, int m) {
    if (m <= 2) return K.from_rational(m == 1 ? 1 : -1);
    const auto& roots = K.roots();
    if (roots.real_count > 0) return std::nullopt;
    const int d = K.degree();
    const mpfr_prec_t wp = K.precision() + 64;
    std::vector<int> ks;
    for (int k = 1; k < m; ++k)
        if (std::gcd(k, m) == 1) ks.push_back(k);
    const int pairs = d / 2;
    long combos = 1;
    for (int i = 0; i < pairs; ++i) combos *= static_cast<long>(ks.size());
    Real pi(wp);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    Int scale = abs(K.disc());

    auto root_image = [&](int k) {
        Real ang = pi * Real(2.0 * k / m, wp);
        Real c(wp), s(wp);
        mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
        return Complex(c, s);
    };
    for (long code = 0; code < combos; ++code) {
        std::vector<Complex> w;
        long rest = code;
        for (int i = 0; i < pairs; ++i) {
            Complex z = root_image(ks[rest % ks.size()]);
            rest /= static_cast<long>(ks.size());
            w.push_back(z);
            w.push_back(z.conj());
        }
        // Complex Gaussian elimination on V c = w with V[i][j] = root_i^j.
        std::vector<std::vector<Complex>> a(d, std::vector<Complex>(d + 1, Complex(wp)));
        for (int i = 0; i < d; ++i) {
            Complex pw(Real(1.0, wp), Real(wp));
            for (int j = 0; j < d; ++j) {
                a[i][j] = pw;
                pw = pw * roots.center[i];
            }
            a[i][d] = w[i];
        }
        bool singular = false;
        for (int c = 0; c < d && !singular; ++c) {
            int piv = c;
            for (int i = c + 1; i < d; ++i)
                if (a[i][c].abs() > a[piv][c].abs()) piv = i;
            if (a[piv][c].abs().is_zero()) {
                singular = true;
                break;
            }
            std::swap(a[c], a[piv]);
            for (int i = 0; i < d; ++i) {
                if (i == c) continue;
                Complex f = a[i][c] / a[c][c];
                for (int k = c; k <= d; ++k) a[i][k] = a[i][k] - f * a[c][k];
            }
        }
        if (singular) continue;
        std::vector<Rat> coords;
        for (int i = 0; i < d; ++i) {
            Complex x = a[i][d] / a[i][i];
            Real scaled = x.re * Real(scale, wp);
            Int rounded;
            mpfr_get_z(rounded.get_mpz_t(), scaled.get(), MPFR_RNDN);
            Rat q(rounded, scale);
            q.canonicalize();
            coords.push_back(q);
        }
        FieldElement cand = K.element(coords);
        if (cand.is_zero()) continue;
        auto t = is_root_of_unity(cand);
        if (t.value && t.order == m) return cand;
    }
    return std::nullopt;
}

}  // namespace degone

#endif
