#ifndef DEGONE_HEIGHTS_HPP
#define DEGONE_HEIGHTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idealfact.hpp"

namespace degone {

/// An exact real of the form sum c_p log p with rational c_p. Finite local
/// heights and ideal norms (with half-integer exponents) live here.
class LogCombination {
   public:
    void add(const Int& p, const Rat& c) {
        if (c == 0) return;
        Rat& slot = terms_[p];
        slot += c;
        if (slot == 0) terms_.erase(p);
    }
    LogCombination& operator+=(const LogCombination& o) {
        for (const auto& [p, c] : o.terms_) add(p, c);
        return *this;
    }
    friend LogCombination operator+(LogCombination a, const LogCombination& b) { return a += b; }
    friend bool operator==(const LogCombination& a, const LogCombination& b) { return a.terms_ == b.terms_; }
    LogCombination scaled(const Rat& s) const {
        LogCombination out;
        for (const auto& [p, c] : terms_) out.add(p, c * s);
        return out;
    }

    const std::map<Int, Rat>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Real value(mpfr_prec_t prec) const {
        Real acc(prec);
        for (const auto& [p, c] : terms_) acc += Real(c, prec) * log_of(p, prec);
        return acc;
    }
    /// exp(value) when it is rational, i.e. all exponents are integers.
    std::optional<Rat> exp_rational() const {
        Rat r = 1;
        for (const auto& [p, c] : terms_) {
            if (c.get_den() != 1) return std::nullopt;
            r *= rpow(Rat(p), c.get_num().get_si());
        }
        return r;
    }
    /// exp(value) written as a product of prime powers, e.g. "2*5^(1/2)".
    std::string exp_str() const {
        if (auto r = exp_rational()) return r->get_str();
        std::string out;
        for (const auto& [p, c] : terms_) {
            if (!out.empty()) out += "*";
            out += p.get_str();
            if (c != 1) out += c.get_den() == 1 ? "^" + c.get_str() : "^(" + c.get_str() + ")";
        }
        return out;
    }

   private:
    std::map<Int, Rat> terms_;
};

/// log N(F) exactly.
inline LogCombination log_norm(const IdealFactorization& F) {
    LogCombination out;
    for (const auto& [P, e] : F.factors()) out.add(P.p, Rat(static_cast<long>(P.f) * e));
    return out;
}

namespace detail {

inline mpfr_prec_t work_prec(const NumberField& K) { return K.precision() + 64; }

// log|sigma_i(x)| at each archimedean place; the embedding error must be tiny
// relative to the value itself so that the logarithm is accurate.
inline std::vector<Real> archimedean_logs(const NumberField& K, const FieldElement& x) {
    auto vals = complex_values(x);
    const mpfr_prec_t wp = work_prec(K);
    const Real rel = Real::pow2(-64, wp);
    std::vector<Real> out;
    for (const auto& place : K.archimedean_places()) {
        Real mag = vals.values[place.root_index].abs();
        if (mag.is_zero() || vals.bounds[place.root_index] > rel * mag)
            throw Error(ErrorCode::PrecisionExhausted, "embedding too close to zero for a certified logarithm");
        out.push_back(log(mag));
    }
    return out;
}

}  // namespace detail

/// h(a) via the Mahler measure of the minimal polynomial:
/// (log a0 + sum log+|root|) / deg with a0 the leading coefficient of the
/// primitive integer multiple.
inline Real mahler_height(const FieldElement& a) {
    NumberField K = a.field();
    const mpfr_prec_t wp = detail::work_prec(K);
    if (a.is_zero()) return Real(wp);
    QPoly m = element_minimal_poly(a);
    ZPoly prim = primitive_part(m);
    Real acc = log_of(prim.lead(), wp);
    auto roots = certified_roots(m, K.precision());
    for (const auto& z : roots.center) acc += log_plus(z.abs());
    return acc / Real(static_cast<double>(m.degree()), wp);
}

/// h(a) from the places of K: archimedean log+ at each embedding and the
/// negative valuations at primes dividing the coordinate denominator.
inline Real places_height(const NumberField& K, const FieldElement& a) {
    const mpfr_prec_t wp = detail::work_prec(K);
    if (a.is_zero()) return Real(wp);
    auto vals = complex_values(a);
    Real acc(wp);
    for (const auto& place : K.archimedean_places())
        acc += Real(static_cast<double>(place.weight), wp) * log_plus(vals.values[place.root_index].abs());
    Int den = 1;
    for (const auto& c : a.coords()) den = int_lcm(den, Int(c.get_den()));
    LogCombination fin;
    for (const auto& p : prime_divisors(den))
        for (const auto& P : split_prime(K, p)) {
            int v = valuation(K, P, a);
            if (v < 0) fin.add(p, Rat(static_cast<long>(-v) * P.f));
        }
    acc += fin.value(wp);
    return acc / Real(static_cast<double>(K.degree()), wp);
}

struct AbsHeight {
    Real value;     // Mahler route
    Real residual;  // |Mahler route - places route|
};

/// Absolute logarithmic height, computed by both routes. Throws
/// VerificationFailed when they disagree by more than `tolerance`.
inline AbsHeight abs_height(const NumberField& K, const FieldElement& a, double tolerance = 1e-9) {
    Real m = mahler_height(a);
    Real p = places_height(K, a);
    Real r = abs(m - p);
    if (r > Real(tolerance, r.prec()))
        throw Error(ErrorCode::VerificationFailed, "height routes disagree for " + a.str());
    return {m, r};
}

/// sum over all places of log|a|_v in the absolute normalization; zero by the
/// product formula up to rounding.
inline Real product_formula_sum(const NumberField& K, const FieldElement& a, const FactorBudget& budget = {}) {
    if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "product formula for zero");
    const mpfr_prec_t wp = detail::work_prec(K);
    auto logs = detail::archimedean_logs(K, a);
    auto places = K.archimedean_places();
    Real acc(wp);
    for (std::size_t i = 0; i < places.size(); ++i) acc += Real(static_cast<double>(places[i].weight), wp) * logs[i];
    acc -= log_norm(factor_principal(K, a, {}, budget)).value(wp);
    return acc / Real(static_cast<double>(K.degree()), wp);
}

/// D given by a polynomial f with O_k coefficients and f(0) != 0.
struct DivisorSpecGm {
    std::vector<FieldElement> coeffs;  // f = sum coeffs[i] x^i
    std::vector<std::string> factors_over_L;
    std::string text;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline DivisorSpecGm make_divisor_gm(std::vector<FieldElement> coeffs, std::string text = "") {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.size() < 2) throw Error(ErrorCode::InvalidArgument, "divisor polynomial must be nonconstant");
    if (coeffs[0].is_zero()) throw Error(ErrorCode::InvalidArgument, "divisor polynomial must satisfy f(0) != 0");
    for (const auto& c : coeffs)
        if (!is_algebraic_integer(c))
            throw Error(ErrorCode::InvalidArgument, "divisor coefficient " + c.str() + " is not integral");
    return {std::move(coeffs), {}, std::move(text)};
}

/// Parses f from text in x with coefficients polynomial in t, e.g. "x + 1" or "x^2 - t x + 1".
inline DivisorSpecGm parse_divisor_gm(const NumberField& K, std::string_view text) {
    BiPoly b = parse_bipoly(text);
    std::vector<std::vector<Rat>> rows(std::max(b.max_x(), 0) + 1);
    for (const auto& [k, v] : b.terms) {
        auto& r = rows[k.first];
        if (static_cast<int>(r.size()) <= k.second) r.resize(k.second + 1, Rat(0));
        r[k.second] = v;
    }
    std::vector<FieldElement> coeffs;
    for (auto& r : rows) coeffs.push_back(K.eval_poly(QPoly(std::move(r))));
    return make_divisor_gm(std::move(coeffs), std::string(text));
}

inline FieldElement evaluate(const DivisorSpecGm& D, const FieldElement& a) {
    FieldElement acc = a.field().zero();
    for (std::size_t i = D.coeffs.size(); i-- > 0;) acc = acc * a + D.coeffs[i];
    return acc;
}

/// A place of k: an archimedean place or a prime ideal.
struct Place {
    bool archimedean = false;
    ArchimedeanPlace arch;
    std::optional<PrimeIdeal> prime;

    int residue_degree() const { return archimedean ? 1 : prime->f; }
    std::string label() const {
        if (archimedean) return "inf" + std::to_string(arch.root_index) + (arch.weight == 2 ? "c" : "r");
        return prime->label();
    }
    static Place infinite(ArchimedeanPlace a) { return {true, a, std::nullopt}; }
    static Place finite(PrimeIdeal P) { return {false, {}, std::move(P)}; }
};

inline bool in_place_set(const PlaceSet& S, const Place& v) {
    return v.archimedean ? S.include_archimedean : S.contains(*v.prime);
}

/// h_{D,v}(a) = max(0, -log|f(a)|_v) in the absolute normalization.
inline Real local_height_gm(const NumberField& K, const DivisorSpecGm& D, const Place& v, const FieldElement& a) {
    FieldElement fa = evaluate(D, a);
    if (fa.is_zero()) throw Error(ErrorCode::OnDivisor, "f(a) = 0 for a = " + a.str());
    const mpfr_prec_t wp = detail::work_prec(K);
    const Real d(static_cast<double>(K.degree()), wp);
    if (v.archimedean) {
        auto vals = complex_values(fa);
        Real mag = vals.values[v.arch.root_index].abs();
        return Real(static_cast<double>(v.arch.weight), wp) * log_plus(Real(1.0, wp) / mag) / d;
    }
    int val = valuation(K, *v.prime, fa);
    if (val <= 0) return Real(wp);
    return Real(static_cast<double>(val) * v.prime->f, wp) * log_of(v.prime->p, wp) / d;
}

/// One summand of the local-height decomposition.
struct LocalHeightTerm {
    std::string place;
    bool archimedean = false;
    int f_v = 1;
    bool in_s = false;
    Real value;
};

/// Definition-level quantities for one point. Finite contributions are kept
/// exactly; archimedean ones (all with f_v = 1) as certified reals.
struct HeightReport {
    Real h_abs;             // h of the input point or element
    Real h_abs_residual;    // cross-check between the two height routes
    Real h_D;               // sum of all included local heights
    Real h_deg1;
    Real h_deg_gt1;
    Real arch_part;         // archimedean local heights (part of h_deg1)
    LogCombination fin_deg1;     // finite f_v = 1 part times log, exact
    LogCombination fin_deg_gt1;  // finite f_v > 1 part, exact
    LogCombination fin_total;    // all finite terms, summed independently
    LogCombination norm_I;       // log N(I), exact
    LogCombination norm_J;       // log N(J), exact
    Real log_c_u;
    Real log_H;             // log of the relative height of f(u) (or of the point)
    Real cu_residual;       // log H - log c_u - log N(I)
    Real ratio;             // log N(J) / (d h(u))
    bool half_integral = false;  // some exponent of I is not an integer
    std::vector<LocalHeightTerm> terms;

    /// h_deg1 + h_deg_gt1 is the sum over all terms, exactly.
    bool partition_exact() const {
        Real arch(arch_part.prec());
        for (const auto& t : terms)
            if (t.archimedean) arch += t.value;
        return fin_deg1 + fin_deg_gt1 == fin_total && arch == arch_part;
    }
};

struct HeightOptions {
    double tolerance = 1e-9;
    bool exclude_s_places = false;  // drop S-places from both buckets
    FactorBudget budget;
};

/// Throws NotAnSUnit unless every prime in the support of uO_k lies in S.
inline void require_s_unit(const NumberField& K, const PlaceSet& S, const FieldElement& u, const FactorBudget& budget = {}) {
    if (u.is_zero()) throw Error(ErrorCode::NotAnSUnit, "zero is not an S-unit");
    auto F = factor_principal(K, u, S.rational_primes(), budget);
    for (const auto& [P, e] : F.factors())
        if (!S.contains(P)) throw Error(ErrorCode::NotAnSUnit, u.str() + " has a nonzero valuation at " + P.label());
}

/// The full decomposition for u an S-unit: I = f(u)O_{k,S}, J its part at
/// primes of degree > 1, the local heights split by f_v, and the identity
/// H_k(f(u)) = c_u N(I) checked to the tolerance.
inline HeightReport gm_height_report(const NumberField& K, const DivisorSpecGm& D, const PlaceSet& S,
                                     const FieldElement& u, const HeightOptions& opt = {}) {
    require_s_unit(K, S, u, opt.budget);
    FieldElement x = evaluate(D, u);
    if (x.is_zero()) throw Error(ErrorCode::OnDivisor, "f(u) = 0 for u = " + u.str());
    const mpfr_prec_t wp = detail::work_prec(K);
    const Real d(static_cast<double>(K.degree()), wp);
    const Rat dq(K.degree());

    HeightReport r;
    auto hu = abs_height(K, u, opt.tolerance);
    r.h_abs = hu.value;
    r.h_abs_residual = hu.residual;

    auto F = factor_principal(K, x, S.rational_primes(), opt.budget);
    auto I = s_reduce(F, S);
    auto J = deg_gt1_part(I);
    r.norm_I = log_norm(I);
    r.norm_J = log_norm(J);

    r.arch_part = Real(wp);
    r.log_c_u = Real(wp);
    r.log_H = Real(wp);
    auto logs = detail::archimedean_logs(K, x);
    auto arch = K.archimedean_places();
    for (std::size_t i = 0; i < arch.size(); ++i) {
        const Real w(static_cast<double>(arch[i].weight), wp);
        const Real zero(wp);
        Real local = w * max(zero, -logs[i]) / d;
        r.log_c_u += w * max(zero, -logs[i]);
        r.log_H += w * max(zero, logs[i]);
        Place v = Place::infinite(arch[i]);
        if (opt.exclude_s_places && S.include_archimedean) continue;
        r.arch_part += local;
        r.terms.push_back({v.label(), true, 1, S.include_archimedean, local});
    }

    // Finite places: S-primes and the support of f(u).
    std::vector<PrimeIdeal> finite = S.finite_places;
    for (const auto& [P, e] : F.factors())
        if (!S.contains(P)) finite.push_back(P);
    std::sort(finite.begin(), finite.end(), PrimeLess{});
    LogCombination neg;  // finite part of log H_k(x)
    for (const auto& P : finite) {
        const long v = F.exponent(P);
        if (v < 0) neg.add(P.p, Rat(-v * P.f));
        const bool in_s = S.contains(P);
        if (in_s && v > 0) {
            LogCombination c;
            c.add(P.p, Rat(v * P.f));
            r.log_c_u += c.value(wp);
        }
        if (in_s && opt.exclude_s_places) continue;
        LogCombination local;
        if (v > 0) local.add(P.p, Rat(v * P.f) / dq);
        r.fin_total += local;
        (P.f == 1 ? r.fin_deg1 : r.fin_deg_gt1) += local;
        r.terms.push_back({P.label(), false, P.f, in_s, local.value(wp)});
    }
    r.log_H += neg.value(wp);

    r.h_deg1 = r.arch_part + r.fin_deg1.value(wp);
    r.h_deg_gt1 = r.fin_deg_gt1.value(wp);
    r.h_D = r.arch_part + r.fin_total.value(wp);
    r.cu_residual = r.log_H - r.log_c_u - r.norm_I.value(wp);
    if (abs(r.cu_residual) > Real(opt.tolerance, wp))
        throw Error(ErrorCode::VerificationFailed, "H_k(f(u)) differs from c_u N(I) for u = " + u.str());
    Real denom = d * r.h_abs;
    Real lj = r.norm_J.value(wp);
    if (lj.is_zero())
        r.ratio = Real(wp);
    else
        r.ratio = lj / denom;  // +inf when h(u) = 0
    return r;
}

}  // namespace degone

#endif
