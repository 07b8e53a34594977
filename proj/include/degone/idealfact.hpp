#ifndef DEGONE_IDEALFACT_HPP
#define DEGONE_IDEALFACT_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "qfield.hpp"

namespace degone {

namespace detail {

// Product of two integral elements given by power-basis coordinates.
inline std::vector<Int> mul_coords(const FieldData& f, const std::vector<Int>& a, const std::vector<Int>& b) {
    const int d = f.d;
    std::vector<Int> prod(2 * d - 1, Int(0));
    for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
    }
    std::vector<Int> out(prod.begin(), prod.begin() + d);
    for (int k = d; k < 2 * d - 1; ++k) {
        if (prod[k] == 0) continue;
        for (int i = 0; i < d; ++i) out[i] += prod[k] * f.reduce[k - d][i];
    }
    return out;
}

inline std::vector<Int> poly_at_theta(const FieldData& f, const ZPoly& h) {
    ZPoly r = rem_monic(h, f.g);
    std::vector<Int> out(f.d, Int(0));
    for (int i = 0; i <= r.degree(); ++i) out[i] = r[i];
    return out;
}

// Lazily extended list of HNF bases of P, P^2, ..., shared by copies of a prime.
struct PrimePowers {
    std::mutex mutex;
    std::vector<IntMatrix> powers;
};

}  // namespace detail

/// A prime of O_k above p, given as (p, h(t)) with h a lift of an irreducible
/// factor of g mod p. Valid when p does not divide the index of Z[t].
struct PrimeIdeal {
    Int p;
    int e = 1;
    int f = 1;
    ZPoly gen_poly;
    IntMatrix hnf;
    std::shared_ptr<detail::PrimePowers> cache;

    Int norm() const { return ipow(p, f); }
    std::string label() const { return "P(" + p.get_str() + "," + to_string(gen_poly) + ")"; }
};

inline bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.p == b.p && a.hnf == b.hnf; }

/// Canonical order (p, f, e, hnf).
struct PrimeLess {
    bool operator()(const PrimeIdeal& a, const PrimeIdeal& b) const {
        if (a.p != b.p) return a.p < b.p;
        if (a.f != b.f) return a.f < b.f;
        if (a.e != b.e) return a.e < b.e;
        return a.hnf < b.hnf;
    }
};

namespace detail {

// Dedekind's criterion: with g = prod G_i^e_i + p F, Z[t] is p-maximal iff no
// factor with e_i >= 2 divides F mod p.
inline bool dedekind_maximal(const ZPoly& g, const Int& p, const std::vector<std::pair<ZPoly, int>>& fac) {
    PrimeField fp(p);
    ZPoly prod = ZPoly::constant(Int(1));
    for (const auto& [h, e] : fac)
        for (int i = 0; i < e; ++i) prod = prod * h;
    ZPoly diff = g - prod;
    std::vector<Int> c;
    for (const auto& x : diff.coeffs()) c.push_back(x / p);
    ZPoly F = fp.reduce(ZPoly(std::move(c)));
    for (const auto& [h, e] : fac)
        if (e >= 2 && (F.is_zero() || fp.rem(F, h).is_zero())) return false;
    return true;
}

inline std::mutex& split_cache_mutex() {
    static std::mutex m;
    return m;
}
inline std::map<std::pair<std::string, Int>, std::vector<PrimeIdeal>>& split_cache() {
    static std::map<std::pair<std::string, Int>, std::vector<PrimeIdeal>> c;
    return c;
}

}  // namespace detail

/// Primes above p by Dedekind-Kummer. Throws IndexDivisor when Dedekind's
/// criterion fails at p.
inline std::vector<PrimeIdeal> split_prime(const NumberField& K, const Int& p) {
    if (p < 2 || !is_probable_prime(p)) throw Error(ErrorCode::InvalidArgument, p.get_str() + " is not prime");
    const ZPoly& g = K.defining_poly();
    auto key = std::make_pair(to_string(g), p);
    {
        std::lock_guard<std::mutex> lock(detail::split_cache_mutex());
        auto it = detail::split_cache().find(key);
        if (it != detail::split_cache().end()) return it->second;
    }
    PrimeField fp(p);
    auto fac = fp.factor(g);
    bool index_prime = false;
    for (const auto& q : K.index_primes()) index_prime = index_prime || q == p;
    if (index_prime && !detail::dedekind_maximal(g, p, fac))
        throw Error(ErrorCode::IndexDivisor,
                    p.get_str() + " divides the index of Z[t] in the maximal order of Q[x]/(" + to_string(g) + ")");

    const auto& data = *K.data();
    const int d = K.degree();
    std::vector<PrimeIdeal> out;
    for (const auto& [h, e] : fac) {
        PrimeIdeal P;
        P.p = p;
        P.e = e;
        P.f = h.degree();
        P.gen_poly = h;
        IntMatrix gens;
        std::vector<Int> ht = detail::poly_at_theta(data, h);
        std::vector<Int> tk(d, Int(0));
        tk[0] = 1;
        std::vector<Int> theta(d, Int(0));
        if (d > 1) theta[1] = 1;
        for (int i = 0; i < d; ++i) {
            gens.push_back(detail::mul_coords(data, ht, tk));
            if (d > 1) tk = detail::mul_coords(data, tk, theta);
        }
        P.hnf = hnf_with_modulus(std::move(gens), d, p);
        if (lattice_index(P.hnf) != P.norm())
            throw Error(ErrorCode::VerificationFailed, "prime lattice index differs from p^f for " + P.label());
        P.cache = std::make_shared<detail::PrimePowers>();
        P.cache->powers.push_back(P.hnf);
        out.push_back(std::move(P));
    }
    std::sort(out.begin(), out.end(), PrimeLess{});
    int sum = 0;
    for (const auto& P : out) sum += P.e * P.f;
    if (sum != d) throw Error(ErrorCode::VerificationFailed, "sum of e*f differs from the degree at p = " + p.get_str());

    std::lock_guard<std::mutex> lock(detail::split_cache_mutex());
    auto [it, inserted] = detail::split_cache().emplace(key, out);
    return it->second;
}

inline std::vector<PrimeIdeal> split_prime(const NumberField& K, long p) { return split_prime(K, Int(p)); }

/// HNF basis of P^j (j >= 1), computed by repeated multiplication and cached.
inline IntMatrix prime_power_lattice(const NumberField& K, const PrimeIdeal& P, int j) {
    if (j < 1) throw Error(ErrorCode::InvalidArgument, "prime power exponent must be positive");
    std::lock_guard<std::mutex> lock(P.cache->mutex);
    auto& pw = P.cache->powers;
    const auto& data = *K.data();
    const int d = K.degree();
    std::vector<Int> ht = detail::poly_at_theta(data, P.gen_poly);
    while (static_cast<int>(pw.size()) < j) {
        const int next = static_cast<int>(pw.size()) + 1;
        const Int modulus = ipow(P.p, (next + P.e - 1) / P.e);
        IntMatrix gens;
        for (const auto& row : pw.back()) {
            std::vector<Int> r = row;
            for (auto& x : r) x *= P.p;
            gens.push_back(std::move(r));
            gens.push_back(detail::mul_coords(data, ht, row));
        }
        pw.push_back(hnf_with_modulus(std::move(gens), d, modulus));
    }
    return pw[j - 1];
}

namespace detail {

struct IntegralPart {
    std::vector<Int> numerator;  // a = numerator(t) / denominator
    Int denominator;
};

inline IntegralPart integral_part(const FieldElement& a) {
    Int m = 1;
    for (const auto& c : a.coords()) m = int_lcm(m, Int(c.get_den()));
    IntegralPart out{{}, m};
    for (const auto& c : a.coords()) out.numerator.push_back(Int(c * m));
    return out;
}

inline Int integer_norm(const NumberField& K, const std::vector<Int>& coords) {
    std::vector<Rat> c(coords.begin(), coords.end());
    Rat n = element_norm(K.element(std::move(c)));
    return abs(Int(n));
}

// v_P of a nonzero integral element, given |N(A)| to bound the search.
inline int integral_valuation(const NumberField& K, const PrimeIdeal& P, std::vector<Int> A, const Int& normA) {
    Int c = 0;
    for (const auto& x : A) c = int_gcd(c, x);
    const int vc = padic_valuation(c, P.p);
    if (vc > 0) {
        Int pc = ipow(P.p, vc);
        for (auto& x : A) x /= pc;
    }
    const int bound = (padic_valuation(normA, P.p) - vc * K.degree()) / P.f;
    int v = 0;
    while (v < bound && in_lattice(prime_power_lattice(K, P, v + 1), A)) ++v;
    return vc * P.e + v;
}

}  // namespace detail

/// v_P(a) via membership of the integral numerator in successive powers of P.
inline int valuation(const NumberField& K, const PrimeIdeal& P, const FieldElement& a) {
    if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "valuation of zero");
    auto ip = detail::integral_part(a);
    Int normA = detail::integer_norm(K, ip.numerator);
    return detail::integral_valuation(K, P, ip.numerator, normA) - P.e * padic_valuation(ip.denominator, P.p);
}

/// A fractional ideal as a finite product of primes with nonzero exponents.
class IdealFactorization {
   public:
    explicit IdealFactorization(NumberField K) : field_(std::move(K)) {}

    const NumberField& field() const noexcept { return field_; }
    const std::map<PrimeIdeal, long, PrimeLess>& factors() const noexcept { return factors_; }
    bool is_unit() const noexcept { return factors_.empty(); }

    void add(const PrimeIdeal& P, long exponent) {
        if (exponent == 0) return;
        auto [it, inserted] = factors_.emplace(P, exponent);
        if (!inserted) {
            it->second += exponent;
            if (it->second == 0) factors_.erase(it);
        }
    }
    long exponent(const PrimeIdeal& P) const {
        auto it = factors_.find(P);
        return it == factors_.end() ? 0 : it->second;
    }

    friend IdealFactorization operator*(IdealFactorization a, const IdealFactorization& b) {
        for (const auto& [P, e] : b.factors_) a.add(P, e);
        return a;
    }
    IdealFactorization inverse() const {
        IdealFactorization out(field_);
        for (const auto& [P, e] : factors_) out.add(P, -e);
        return out;
    }

   private:
    NumberField field_;
    std::map<PrimeIdeal, long, PrimeLess> factors_;
};

/// Factorization of the principal fractional ideal aO_k. Every rational prime
/// is checked against v_p(N(a)) = sum over P | p of f_P v_P(a).
inline IdealFactorization factor_principal(const NumberField& K, const FieldElement& a,
                                           const std::vector<Int>& hint_primes = {},
                                           const FactorBudget& budget = {}) {
    if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "factorization of zero");
    auto ip = detail::integral_part(a);
    Int normA = detail::integer_norm(K, ip.numerator);
    std::map<Int, int> normfac = factor_integer(normA, hint_primes, budget);
    std::vector<Int> primes;
    for (const auto& [p, e] : normfac) primes.push_back(p);
    for (const auto& p : prime_divisors(ip.denominator))
        if (!normfac.count(p)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());

    IdealFactorization out(K);
    for (const auto& p : primes) {
        const int vm = padic_valuation(ip.denominator, p);
        const int vn = normfac.count(p) ? normfac.at(p) : 0;
        long sum = 0;
        for (const auto& P : split_prime(K, p)) {
            int v = detail::integral_valuation(K, P, ip.numerator, normA) - P.e * vm;
            sum += static_cast<long>(P.f) * v;
            out.add(P, v);
        }
        if (sum != vn - static_cast<long>(K.degree()) * vm)
            throw Error(ErrorCode::VerificationFailed, "valuations at " + p.get_str() + " do not add up to v_p(N(a))");
    }
    return out;
}

/// The part of aO_k with negative exponents. Only the coordinate denominator
/// of a is factored, so this stays cheap when the numerator is large.
inline IdealFactorization denominator_ideal(const NumberField& K, const FieldElement& a,
                                            const std::vector<Int>& hint_primes = {},
                                            const FactorBudget& budget = {}) {
    if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "denominator ideal of zero");
    auto ip = detail::integral_part(a);
    IdealFactorization out(K);
    if (ip.denominator == 1) return out;
    Int normA = detail::integer_norm(K, ip.numerator);
    for (const auto& p : prime_divisors(ip.denominator, hint_primes, budget)) {
        const int vm = padic_valuation(ip.denominator, p);
        for (const auto& P : split_prime(K, p)) {
            int v = detail::integral_valuation(K, P, ip.numerator, normA) - P.e * vm;
            if (v < 0) out.add(P, v);
        }
    }
    return out;
}

/// Finite part of a set S of places (the archimedean places are always in S).
struct PlaceSet {
    std::vector<PrimeIdeal> finite_places;
    bool include_archimedean = true;

    bool contains(const PrimeIdeal& P) const {
        for (const auto& Q : finite_places)
            if (Q == P) return true;
        return false;
    }
    std::vector<Int> rational_primes() const {
        std::vector<Int> out;
        for (const auto& P : finite_places)
            if (std::find(out.begin(), out.end(), P.p) == out.end()) out.push_back(P.p);
        return out;
    }
};

/// S from a list of primes; with `close_over_p` every prime above the same
/// rational prime is added as well.
inline PlaceSet make_place_set(const NumberField& K, const std::vector<PrimeIdeal>& primes, bool close_over_p = true) {
    PlaceSet S;
    auto push = [&S](const PrimeIdeal& P) {
        if (!S.contains(P)) S.finite_places.push_back(P);
    };
    for (const auto& P : primes) {
        if (close_over_p)
            for (const auto& Q : split_prime(K, P.p)) push(Q);
        else
            push(P);
    }
    std::sort(S.finite_places.begin(), S.finite_places.end(), PrimeLess{});
    return S;
}

/// S consisting of the archimedean places and every prime above the given rational primes.
inline PlaceSet places_above(const NumberField& K, const std::vector<Int>& rational_primes) {
    std::vector<PrimeIdeal> primes;
    for (const auto& p : rational_primes)
        for (const auto& P : split_prime(K, p)) primes.push_back(P);
    return make_place_set(K, primes, false);
}

/// The ideal of O_{k,S}: drops S-primes; the rest must have nonnegative exponents.
inline IdealFactorization s_reduce(const IdealFactorization& F, const PlaceSet& S) {
    IdealFactorization out(F.field());
    for (const auto& [P, e] : F.factors()) {
        if (S.contains(P)) continue;
        if (e < 0)
            throw Error(ErrorCode::NegativeExponentOutsideS,
                        P.label() + " has exponent " + std::to_string(e) + " outside S");
        out.add(P, e);
    }
    return out;
}

/// The part supported on primes of residue degree > 1.
inline IdealFactorization deg_gt1_part(const IdealFactorization& F) {
    IdealFactorization out(F.field());
    for (const auto& [P, e] : F.factors())
        if (P.f > 1) out.add(P, e);
    return out;
}

inline Rat ideal_norm(const IdealFactorization& F) {
    Rat n = 1;
    for (const auto& [P, e] : F.factors()) n *= rpow(Rat(P.p), static_cast<long>(P.f) * e);
    return n;
}

inline bool ideal_equal(const IdealFactorization& a, const IdealFactorization& b) {
    if (!(a.field() == b.field()) || a.factors().size() != b.factors().size()) return false;
    auto it = b.factors().begin();
    for (const auto& [P, e] : a.factors()) {
        if (!(P == it->first) || e != it->second) return false;
        ++it;
    }
    return true;
}

/// The prime sigma(P) for an automorphism sigma of K.
inline PrimeIdeal apply_automorphism(const NumberField& K, const Automorphism& sigma, const PrimeIdeal& P) {
    FieldElement h = poly_eval(to_qpoly(P.gen_poly), sigma.image_of_theta);
    auto ip = detail::integral_part(h);
    if (mpz_divisible_p(ip.denominator.get_mpz_t(), P.p.get_mpz_t()))
        throw Error(ErrorCode::IndexDivisor, "automorphism image not integral at " + P.p.get_str());
    for (const auto& Q : split_prime(K, P.p))
        if (in_lattice(Q.hnf, ip.numerator)) return Q;
    throw Error(ErrorCode::VerificationFailed, "no prime contains the image of " + P.label());
}

inline IdealFactorization apply_automorphism(const Automorphism& sigma, const IdealFactorization& F) {
    IdealFactorization out(F.field());
    for (const auto& [P, e] : F.factors()) out.add(apply_automorphism(F.field(), sigma, P), e);
    return out;
}

/// For k embedded in l by t_k -> iota (an element of l), the prime of k
/// below the prime w of l.
inline PrimeIdeal prime_below(const NumberField& k, const FieldElement& iota, const PrimeIdeal& w) {
    for (const auto& v : split_prime(k, w.p)) {
        FieldElement h = poly_eval(to_qpoly(v.gen_poly), iota);
        auto ip = detail::integral_part(h);
        if (mpz_divisible_p(ip.denominator.get_mpz_t(), w.p.get_mpz_t())) continue;
        if (in_lattice(w.hnf, ip.numerator)) {
            if (w.f % v.f != 0 || w.e % v.e != 0)
                throw Error(ErrorCode::VerificationFailed, "ramification data of " + w.label() + " not in a tower");
            return v;
        }
    }
    throw Error(ErrorCode::VerificationFailed, "no prime of the base field lies below " + w.label());
}

/// f_{w/v}: residue degree of w over the prime of k below it.
inline int relative_residue_degree(const NumberField& k, const FieldElement& iota, const PrimeIdeal& w) {
    return w.f / prime_below(k, iota, w).f;
}

/// e_{w/v}: ramification index of w over the prime of k below it.
inline int relative_ramification(const NumberField& k, const FieldElement& iota, const PrimeIdeal& w) {
    return w.e / prime_below(k, iota, w).e;
}

}  // namespace degone

#endif
