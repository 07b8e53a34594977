#ifndef DEGONE_ELLCURVE_HPP
#define DEGONE_ELLCURVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "gmlab.hpp"

namespace degone {

/// y^2 = x^3 + a x + b with a, b integral in k, points taken over l. The
/// field k sits inside l through t_k -> iota.
struct EllCurve {
    NumberField k;
    NumberField l;
    FieldElement iota;
    FieldElement a_k, b_k;
    FieldElement a, b;  // images in l
    FieldElement disc;  // -16(4a^3 + 27b^2)
};

/// Image in l of an element of k.
inline FieldElement embed(const EllCurve& E, const FieldElement& x) {
    std::vector<Rat> c = x.coords();
    return poly_eval(QPoly(std::move(c)), E.iota);
}

/// Builds the curve. iota_text gives the image of k's generator in l; it may
/// be omitted when k has degree 1 or k and l coincide.
inline EllCurve make_curve(const NumberField& k, const NumberField& l, std::string_view a_text, std::string_view b_text,
                           std::string_view iota_text = "") {
    FieldElement iota;
    if (!iota_text.empty())
        iota = l.parse(iota_text);
    else if (k.degree() == 1)
        iota = l.from_rational(k.gen().coords()[0]);
    else if (k == l)
        iota = l.gen();
    else
        throw Error(ErrorCode::InvalidArgument, "an embedding of k into l is required");
    if (!poly_eval(to_qpoly(k.defining_poly()), iota).is_zero())
        throw Error(ErrorCode::InvalidArgument, "embedding image is not a root of k's defining polynomial");
    if (l.degree() % k.degree() != 0) throw Error(ErrorCode::InvalidArgument, "[l:Q] is not a multiple of [k:Q]");
    EllCurve E{k, l, iota, k.parse(a_text), k.parse(b_text), {}, {}, {}};
    if (!is_algebraic_integer(E.a_k) || !is_algebraic_integer(E.b_k))
        throw Error(ErrorCode::InvalidArgument, "curve coefficients must be integral");
    E.a = embed(E, E.a_k);
    E.b = embed(E, E.b_k);
    E.disc = (E.a.pow(3) * Rat(4) + E.b.pow(2) * Rat(27)) * Rat(-16);
    if (E.disc.is_zero()) throw Error(ErrorCode::InvalidArgument, "curve is singular");
    return E;
}

/// The point at infinity or an affine point with coordinates in l.
struct EllPoint {
    bool inf = true;
    FieldElement x, y;

    static EllPoint infinity() { return {}; }
    static EllPoint affine(FieldElement x, FieldElement y) { return {false, std::move(x), std::move(y)}; }
    std::string str() const { return inf ? "inf" : "(" + x.str() + ", " + y.str() + ")"; }
};

inline bool operator==(const EllPoint& P, const EllPoint& Q) {
    if (P.inf || Q.inf) return P.inf == Q.inf;
    return P.x == Q.x && P.y == Q.y;
}

inline bool on_curve(const EllCurve& E, const EllPoint& P) {
    if (P.inf) return true;
    return P.y * P.y == P.x * P.x * P.x + E.a * P.x + E.b;
}

inline void require_on_curve(const EllCurve& E, const EllPoint& P) {
    if (!on_curve(E, P)) throw Error(ErrorCode::NotOnCurve, P.str() + " is not on the curve");
}

inline EllPoint make_point(const EllCurve& E, std::string_view x_text, std::string_view y_text) {
    EllPoint P = EllPoint::affine(E.l.parse(x_text), E.l.parse(y_text));
    require_on_curve(E, P);
    return P;
}

inline EllPoint ell_neg(const EllPoint& P) { return P.inf ? P : EllPoint::affine(P.x, -P.y); }

/// Chord-tangent addition.
inline EllPoint ell_add(const EllCurve& E, const EllPoint& P, const EllPoint& Q) {
    require_on_curve(E, P);
    require_on_curve(E, Q);
    if (P.inf) return Q;
    if (Q.inf) return P;
    FieldElement lambda;
    if (P.x == Q.x) {
        if (P.y == -Q.y) return EllPoint::infinity();  // includes 2-torsion doubling
        lambda = (P.x * P.x * Rat(3) + E.a) * (P.y * Rat(2)).inverse();
    } else {
        lambda = (Q.y - P.y) * (Q.x - P.x).inverse();
    }
    FieldElement x3 = lambda * lambda - P.x - Q.x;
    FieldElement y3 = lambda * (P.x - x3) - P.y;
    return EllPoint::affine(std::move(x3), std::move(y3));
}

inline EllPoint ell_sub(const EllCurve& E, const EllPoint& P, const EllPoint& Q) { return ell_add(E, P, ell_neg(Q)); }

/// n P by double-and-add.
inline EllPoint ell_mul(const EllCurve& E, long n, const EllPoint& P) {
    require_on_curve(E, P);
    EllPoint base = n < 0 ? ell_neg(P) : P;
    unsigned long k = n < 0 ? 0UL - static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    EllPoint acc = EllPoint::infinity();
    while (k) {
        if (k & 1UL) acc = ell_add(E, acc, base);
        k >>= 1;
        if (k) base = ell_add(E, base, base);
    }
    return acc;
}

/// Automorphisms of l that fix k (identity excluded).
inline std::vector<Automorphism> relative_automorphisms(const EllCurve& E) {
    std::vector<Automorphism> out;
    for (const auto& s : E.l.automorphisms())
        if (apply_automorphism(s, E.iota) == E.iota) out.push_back(s);
    return out;
}

inline EllPoint apply_automorphism(const Automorphism& sigma, const EllPoint& P) {
    if (P.inf) return P;
    return EllPoint::affine(apply_automorphism(sigma, P.x), apply_automorphism(sigma, P.y));
}

/// The curve automorphism (x, y) -> (u^2 x, u^3 y) for a root of unity u in l.
struct CurveAutomorphism {
    std::string label;
    FieldElement u;
};

inline EllPoint apply_curve_automorphism(const CurveAutomorphism& nu, const EllPoint& P) {
    if (P.inf) return P;
    FieldElement u2 = nu.u * nu.u;
    return EllPoint::affine(u2 * P.x, u2 * nu.u * P.y);
}

/// Aut(E) over l: {id, neg}, plus the order-4 maps when b = 0 and i is in l,
/// or the order-6 maps when a = 0 and a primitive cube root of unity is in l.
inline std::vector<CurveAutomorphism> curve_automorphisms(const EllCurve& E) {
    const FieldElement one = E.l.one();
    std::vector<CurveAutomorphism> out{{"id", one}, {"neg", -one}};
    auto extend = [&](int m, const char* name) {
        auto g = find_primitive_root_of_unity(E.l, m);
        if (!g) return;
        FieldElement pw = *g;
        for (int j = 1; j < m; ++j, pw = pw * *g) {
            if (pw == one || pw == -one) continue;
            out.push_back({std::string(name) + (j > 1 ? "^" + std::to_string(j) : ""), pw});
        }
    };
    if (E.b.is_zero()) extend(4, "i_twist");
    if (E.a.is_zero()) extend(6, "zeta3_twist");
    return out;
}

/// Smallest m <= max_order with m P = infinity, if any.
inline std::optional<int> torsion_order(const EllCurve& E, const EllPoint& P, int max_order = 16) {
    EllPoint Q = P;
    for (int m = 1; m <= max_order; ++m) {
        if (Q.inf) return m;
        Q = ell_add(E, Q, P);
    }
    return std::nullopt;
}

struct ExceptionalWitness {
    bool found = false;
    int m = 0;
    std::string nu;
    std::string sigma;
};

/// sigma(mP) = nu(mP) for some m <= m_max and nu in Aut(E), sigma acting on coordinates.
inline ExceptionalWitness is_exceptional_ell(const EllCurve& E, const Automorphism& sigma, const EllPoint& P,
                                             int m_max = 8) {
    auto auts = curve_automorphisms(E);
    EllPoint Q = P;
    for (int m = 1; m <= m_max; ++m, Q = ell_add(E, Q, P)) {
        if (Q.inf) continue;
        EllPoint sQ = apply_automorphism(sigma, Q);
        for (const auto& nu : auts)
            if (sQ == apply_curve_automorphism(nu, Q)) return {true, m, nu.label, sigma.label};
    }
    return {};
}

inline Rat ratio(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Ideal of O_l with nonnegative rational exponents.
class HalfExponentIdeal {
   public:
    explicit HalfExponentIdeal(NumberField l) : field_(std::move(l)) {}

    const NumberField& field() const noexcept { return field_; }
    const std::map<PrimeIdeal, Rat, PrimeLess>& factors() const noexcept { return factors_; }
    bool is_unit() const noexcept { return factors_.empty(); }

    void add(const PrimeIdeal& P, const Rat& e) {
        if (e == 0) return;
        Rat& slot = factors_[P];
        slot += e;
        if (slot == 0) factors_.erase(P);
    }
    Rat exponent(const PrimeIdeal& P) const {
        auto it = factors_.find(P);
        return it == factors_.end() ? Rat(0) : it->second;
    }
    HalfExponentIdeal& operator*=(const HalfExponentIdeal& o) {
        for (const auto& [P, e] : o.factors_) add(P, e);
        return *this;
    }
    HalfExponentIdeal scaled(long m) const {
        HalfExponentIdeal out(field_);
        for (const auto& [P, e] : factors_) out.add(P, e * m);
        return out;
    }
    /// log of the absolute norm, exact.
    LogCombination log_norm() const {
        LogCombination out;
        for (const auto& [P, e] : factors_) out.add(P.p, e * P.f);
        return out;
    }
    bool half_integral() const {
        for (const auto& [P, e] : factors_)
            if (e.get_den() != 1) return true;
        return false;
    }
    friend bool operator==(const HalfExponentIdeal& a, const HalfExponentIdeal& b) {
        if (a.factors_.size() != b.factors_.size()) return false;
        auto it = b.factors_.begin();
        for (const auto& [P, e] : a.factors_) {
            if (!(P == it->first) || e != it->second) return false;
            ++it;
        }
        return true;
    }

   private:
    NumberField field_;
    std::map<PrimeIdeal, Rat, PrimeLess> factors_;
};

/// I_Q(P): primes where x(P - Q) has negative order, with exponent -ord/2.
inline HalfExponentIdeal ideal_IQ(const EllCurve& E, const EllPoint& Q, const EllPoint& P,
                                  const FactorBudget& budget = {}) {
    if (P == Q) throw Error(ErrorCode::EqualPoints, "I_Q(P) needs P != Q");
    EllPoint R = ell_sub(E, P, Q);
    HalfExponentIdeal out(E.l);
    if (R.x.is_zero()) return out;
    const auto den = denominator_ideal(E.l, R.x, {}, budget);
    for (const auto& [Pr, v] : den.factors()) out.add(Pr, ratio(-v, 2));
    return out;
}

/// D = sum m_i (Q_i), effective and nonzero.
struct DivisorSpecEll {
    std::vector<std::pair<EllPoint, int>> points;
    std::vector<std::string> labels;
};

inline DivisorSpecEll make_divisor_ell(const EllCurve& E, std::vector<std::pair<EllPoint, int>> points) {
    if (points.empty()) throw Error(ErrorCode::InvalidArgument, "divisor must be nonzero");
    DivisorSpecEll D;
    for (auto& [Q, m] : points) {
        if (m <= 0) throw Error(ErrorCode::InvalidArgument, "divisor multiplicities must be positive");
        require_on_curve(E, Q);
        D.labels.push_back(Q.str());
    }
    D.points = std::move(points);
    return D;
}

inline void require_off_support(const DivisorSpecEll& D, const EllPoint& P) {
    for (const auto& [Q, m] : D.points)
        if (P == Q) throw Error(ErrorCode::OnSupport, P.str() + " lies in the support of D");
}

inline HalfExponentIdeal ideal_ID(const EllCurve& E, const DivisorSpecEll& D, const EllPoint& P,
                                  const FactorBudget& budget = {}) {
    require_off_support(D, P);
    HalfExponentIdeal out(E.l);
    for (const auto& [Q, m] : D.points) out *= ideal_IQ(E, Q, P, budget).scaled(m);
    return out;
}

/// The part of I at primes w of l with f_{w/v} > 1.
inline HalfExponentIdeal deg_gt1_part(const EllCurve& E, const HalfExponentIdeal& I) {
    HalfExponentIdeal out(E.l);
    for (const auto& [P, e] : I.factors())
        if (relative_residue_degree(E.k, E.iota, P) > 1) out.add(P, e);
    return out;
}

inline HalfExponentIdeal ideal_JD(const EllCurve& E, const DivisorSpecEll& D, const EllPoint& P,
                                  const FactorBudget& budget = {}) {
    return deg_gt1_part(E, ideal_ID(E, D, P, budget));
}

/// Local heights lambda_{Q,w}(P) = (1/2) log+ |x(P - Q)|_w over the places of l,
/// bucketed by f_{w/v} (archimedean places count as f = 1). S consists of the
/// archimedean places and the primes ramified over k.
inline HeightReport ell_height_report(const EllCurve& E, const DivisorSpecEll& D, const EllPoint& P,
                                      const HeightOptions& opt = {}) {
    require_off_support(D, P);
    const NumberField& l = E.l;
    const mpfr_prec_t wp = detail::work_prec(l);
    const long n = l.degree();
    const Real nr(static_cast<double>(n), wp);
    const Real half(0.5, wp);

    HeightReport r;
    r.h_abs = P.inf ? Real(wp) : mahler_height(P.x);
    r.h_abs_residual = Real(wp);
    r.arch_part = Real(wp);
    r.log_H = Real(wp);
    HalfExponentIdeal I(l);
    for (std::size_t i = 0; i < D.points.size(); ++i) {
        const auto& [Q, mult] = D.points[i];
        EllPoint R = ell_sub(E, P, Q);
        const FieldElement& x0 = R.x;
        const Real m(static_cast<double>(mult), wp);
        if (!x0.is_zero()) r.log_H += m * half * nr * mahler_height(x0);
        auto vals = complex_values(x0);
        for (const auto& place : l.archimedean_places()) {
            Real local = m * half * Real(static_cast<double>(place.weight), wp) *
                         log_plus(vals.values[place.root_index].abs()) / nr;
            if (opt.exclude_s_places) continue;
            r.arch_part += local;
            r.terms.push_back({Place::infinite(place).label() + "/Q" + std::to_string(i), true, 1, true, local});
        }
        if (x0.is_zero()) continue;
        auto den = denominator_ideal(l, x0, {}, opt.budget);
        for (const auto& [w, v] : den.factors()) {
            I.add(w, ratio(-v * mult, 2));
            const int frel = relative_residue_degree(E.k, E.iota, w);
            const bool in_s = relative_ramification(E.k, E.iota, w) > 1;
            if (in_s && opt.exclude_s_places) continue;
            LogCombination local;
            local.add(w.p, ratio(-v * mult * w.f, 2 * n));
            r.fin_total += local;
            (frel == 1 ? r.fin_deg1 : r.fin_deg_gt1) += local;
            r.terms.push_back({w.label() + "/Q" + std::to_string(i), false, frel, in_s, local.value(wp)});
        }
    }
    r.norm_I = I.log_norm();
    r.norm_J = deg_gt1_part(E, I).log_norm();
    r.half_integral = I.half_integral();
    if (!opt.exclude_s_places) {
        // log N(I_D(P)) and log N(J_D(P)) are [l:Q] times the finite local sums.
        if (!(r.fin_total.scaled(Rat(n)) == r.norm_I) || !(r.fin_deg_gt1.scaled(Rat(n)) == r.norm_J))
            throw Error(ErrorCode::VerificationFailed, "finite local heights do not match N(I_D(P))");
    }
    r.h_deg1 = r.arch_part + r.fin_deg1.value(wp);
    r.h_deg_gt1 = r.fin_deg_gt1.value(wp);
    r.h_D = r.arch_part + r.fin_total.value(wp);
    r.log_c_u = nr * r.arch_part;
    r.cu_residual = opt.exclude_s_places ? Real(wp) : r.log_H - r.log_c_u - r.norm_I.value(wp);
    if (abs(r.cu_residual) > Real(opt.tolerance, wp))
        throw Error(ErrorCode::VerificationFailed, "relative height of P differs from its local decomposition");
    r.ratio = r.h_D.is_zero() ? Real(wp) : r.h_deg_gt1 / r.h_D;
    return r;
}

struct EllExperiment {
    EllCurve E;
    DivisorSpecEll D;
    EllPoint P;
    long n_min = 1;
    long n_max = 10;
    double epsilon = 0.1;
    int m_max = 8;
    HeightOptions height;
    // Rows whose x-coordinate needs more bits than this are not evaluated.
    std::size_t coordinate_bits = 4096;
    bool stop_on_budget = true;
    unsigned threads = 1;
};

inline std::size_t coordinate_bits(const EllPoint& P) {
    std::size_t bits = 0;
    if (P.inf) return 0;
    for (const auto& c : P.x.coords()) {
        bits = std::max(bits, mpz_sizeinbase(c.get_num_mpz_t(), 2));
        bits = std::max(bits, mpz_sizeinbase(c.get_den_mpz_t(), 2));
    }
    return bits;
}

/// Exceptionality of the family: the first witness over the automorphisms of l/k.
inline ExceptionalWitness family_witness(const EllCurve& E, const EllPoint& P, int m_max) {
    for (const auto& s : relative_automorphisms(E)) {
        auto w = is_exceptional_ell(E, s, P, m_max);
        if (w.found) return w;
    }
    return {};
}

/// Rows for nP, n in [n_min, n_max]. P must have order > 16 (Torsion otherwise).
/// If sigma(mP) = nu(mP) then the same holds for every multiple, so the
/// witness is computed once for P and attached to every row.
inline std::vector<ExperimentRow> run_ell_family(const EllExperiment& X) {
    if (X.epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    require_on_curve(X.E, X.P);
    if (auto ord = torsion_order(X.E, X.P))
        throw Error(ErrorCode::Torsion, X.P.str() + " is a torsion point of order " + std::to_string(*ord));
    if (X.n_max < X.n_min) return {};
    const ExceptionalWitness wit = family_witness(X.E, X.P, X.m_max);

    const std::size_t count = static_cast<std::size_t>(X.n_max - X.n_min + 1);
    std::vector<ExperimentRow> rows(count);
    std::vector<EllPoint> points(count);
    EllPoint Q = ell_mul(X.E, X.n_min, X.P);
    bool over = false;
    for (std::size_t i = 0; i < count; ++i) {
        rows[i].n = X.n_min + static_cast<long>(i);
        if (over || coordinate_bits(Q) > X.coordinate_bits) {
            over = true;
            rows[i].skip = "BudgetExceeded";
            continue;
        }
        points[i] = Q;
        rows[i].u = Q.str();
        if (i + 1 < count) Q = ell_add(X.E, Q, X.P);
    }
    parallel_for(count, X.threads, [&](std::size_t i) {
        ExperimentRow& row = rows[i];
        if (!row.skip.empty()) return;
        if (wit.found) {
            row.m_witness = wit.m;
            row.nu_witness = wit.nu;
            row.exceptional = true;
        }
        try {
            row.report = ell_height_report(X.E, X.D, points[i], X.height);
            const mpfr_prec_t wp = row.report->h_D.prec();
            row.flag_eps = row.report->h_deg_gt1 < Real(X.epsilon, wp) * row.report->h_D;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::OnSupport)
                row.skip = "OnSupport";
            else if (e.code() == ErrorCode::BudgetExceeded)
                row.skip = "BudgetExceeded";
            else
                throw;
        }
    });
    if (X.stop_on_budget) {
        bool cut = false;
        for (auto& row : rows) {
            if (cut) {
                row = ExperimentRow{row.n, "", std::nullopt, false, "BudgetExceeded", std::nullopt, "", false};
            } else if (row.skip == "BudgetExceeded") {
                cut = true;
            }
        }
    }
    return rows;
}

/// Square root in a field of degree <= 2, if one exists.
inline std::optional<FieldElement> field_sqrt(const FieldElement& s) {
    NumberField K = s.field();
    auto rat_sqrt = [](const Rat& q) -> std::optional<Rat> {
        if (q < 0) return std::nullopt;
        if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
        Rat r(sqrt(Int(q.get_num())), sqrt(Int(q.get_den())));
        r.canonicalize();
        return r;
    };
    if (K.degree() == 1) {
        auto r = rat_sqrt(s.coords()[0]);
        if (!r) return std::nullopt;
        return K.from_rational(*r);
    }
    if (K.degree() != 2) throw Error(ErrorCode::InvalidArgument, "square roots only in fields of degree <= 2");
    // y = y0 + y1 t with t^2 = -c1 t - c0; Y = y1^2 solves a quadratic.
    const Rat c0(K.defining_poly()[0]), c1(K.defining_poly()[1]);
    const Rat s0 = s.coords()[0], s1 = s.coords()[1];
    const Rat A = c1 * c1 - 4 * c0, B = 2 * s1 * c1 - 4 * s0, C = s1 * s1;
    auto disc = rat_sqrt(B * B - 4 * A * C);
    if (!disc) return std::nullopt;
    for (const Rat& Y : {Rat((-B + *disc) / (2 * A)), Rat((-B - *disc) / (2 * A))}) {
        auto y1 = rat_sqrt(Y);
        if (!y1) continue;
        std::optional<Rat> y0;
        if (*y1 == 0)
            y0 = rat_sqrt(s0);
        else
            y0 = Rat((s1 + c1 * Y) / (2 * *y1));
        if (!y0) continue;
        FieldElement y = K.element({*y0, *y1});
        if (y * y == s) return y;
    }
    return std::nullopt;
}

/// Affine points with integral x = c0 + c1 t, |c_i| <= bound, for l of degree <= 2.
inline std::vector<EllPoint> ell_point_search(const EllCurve& E, long bound) {
    std::vector<EllPoint> out;
    const int d = E.l.degree();
    if (d > 2) throw Error(ErrorCode::InvalidArgument, "point search only over fields of degree <= 2");
    const long c1_bound = d == 2 ? bound : 0;
    for (long c1 = -c1_bound; c1 <= c1_bound; ++c1) {
        for (long c0 = -bound; c0 <= bound; ++c0) {
            std::vector<Rat> c{Rat(c0)};
            if (d == 2) c.push_back(Rat(c1));
            FieldElement x = E.l.element(c);
            FieldElement s = x * x * x + E.a * x + E.b;
            if (s.is_zero()) {
                out.push_back(EllPoint::affine(x, E.l.zero()));
                continue;
            }
            if (auto y = field_sqrt(s)) out.push_back(EllPoint::affine(x, *y));
        }
    }
    return out;
}

}  // namespace degone

#endif
