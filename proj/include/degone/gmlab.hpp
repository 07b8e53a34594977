#ifndef DEGONE_GMLAB_HPP
#define DEGONE_GMLAB_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "heights.hpp"

namespace degone {

/// One family member's measurements. The elliptic scans fill the witness columns.
struct ExperimentRow {
    long n = 0;
    std::string u;
    std::optional<HeightReport> report;
    bool flag_eps = false;
    std::string skip;  // empty unless the row was skipped, then the reason
    // Elliptic extras.
    std::optional<int> m_witness;
    std::string nu_witness;
    bool exceptional = false;
};

/// Runs body(i) for i in [0, count) on `threads` workers. The first failure
/// (by index) is rethrown after all workers finish.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        mpfr_free_cache2(MPFR_FREE_LOCAL_CACHE);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct GmExperiment {
    NumberField field;
    DivisorSpecGm divisor;
    PlaceSet S;
    FieldElement base;
    long n_min = 1;
    long n_max = 1;
    double epsilon = 0.1;
    int m_max = 12;
    // Compare N(J) with H_k(u)^eps = H(u)^(d eps) instead of H(u)^eps.
    bool relative_comparator = false;
    HeightOptions height;
    unsigned threads = 1;
};

/// log N(J) < eps * h(u), or eps * d * h(u) with the relative comparator.
inline bool epsilon_flag(const HeightReport& r, double epsilon, int degree, bool relative) {
    const mpfr_prec_t wp = r.h_abs.prec();
    Real rhs = Real(epsilon * (relative ? degree : 1), wp) * r.h_abs;
    return r.norm_J.value(wp) < rhs;
}

/// Height reports for u = a^n, n in [n_min, n_max], in increasing n. Rows
/// where f(a^n) = 0 or factoring exceeds its budget are kept with a skip marker.
inline std::vector<ExperimentRow> run_gm_family(const GmExperiment& X) {
    if (X.epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    require_s_unit(X.field, X.S, X.base, X.height.budget);
    if (X.n_max < X.n_min) return {};
    const std::size_t count = static_cast<std::size_t>(X.n_max - X.n_min + 1);
    std::vector<ExperimentRow> rows(count);
    parallel_for(count, X.threads, [&](std::size_t i) {
        ExperimentRow& row = rows[i];
        row.n = X.n_min + static_cast<long>(i);
        FieldElement u = X.base.pow(row.n);
        row.u = u.str();
        try {
            row.report = gm_height_report(X.field, X.divisor, X.S, u, X.height);
            row.flag_eps = epsilon_flag(*row.report, X.epsilon, X.field.degree(), X.relative_comparator);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::OnDivisor)
                row.skip = "OnDivisor";
            else if (e.code() == ErrorCode::BudgetExceeded)
                row.skip = "BudgetExceeded";
            else
                throw;
        }
    });
    return rows;
}

/// Outcome of the exceptionality screen for a family a^n.
struct FamilyClass {
    enum class Kind { Clean, ViolatesA, ViolatesB };
    Kind kind = Kind::Clean;
    int m = 0;          // ViolatesA: a^m lies in a proper subfield
    std::string sigma;  // ViolatesB: label of the order-2 automorphism

    std::string str() const {
        switch (kind) {
            case Kind::Clean: return "clean";
            case Kind::ViolatesA: return "violates_a(" + std::to_string(m) + ")";
            case Kind::ViolatesB: return "violates_b(" + sigma + ")";
        }
        return "";
    }
};

/// (a): the minimal polynomial of a^m has degree < d for some m <= m_max.
/// (b): a * sigma(a) is a root of unity for a stored automorphism sigma of order 2.
inline FamilyClass classify_family(const NumberField& K, const FieldElement& a, int m_max = 12) {
    if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "classification of zero");
    if (is_root_of_unity(a).value) throw Error(ErrorCode::InvalidArgument, "a is a root of unity");
    FieldElement pw = a;
    for (int m = 1; m <= m_max; ++m) {
        if (element_minimal_poly(pw).degree() < K.degree()) return {FamilyClass::Kind::ViolatesA, m, ""};
        pw = pw * a;
    }
    for (const auto& s : K.automorphisms())
        if (s.order == 2 && is_root_of_unity(a * apply_automorphism(s, a)).value)
            return {FamilyClass::Kind::ViolatesB, 0, s.label};
    return {};
}

/// A translate u0 O^sigma (or u0 O^{sigma tau} when twisted) of a subgroup of S-units.
struct CosetSpec {
    FieldElement u0;
    Automorphism sigma;
    bool twisted = false;
};

/// Untwisted: sigma(w) = w; twisted: sigma(w) = w^-1; w = u / u0.
inline bool coset_member(const CosetSpec& C, const FieldElement& u) {
    if (C.sigma.order <= 1) throw Error(ErrorCode::InvalidArgument, "coset automorphism must not be the identity");
    FieldElement w = u * C.u0.inverse();
    FieldElement sw = apply_automorphism(C.sigma, w);
    return C.twisted ? sw * w == w.field().one() : sw == w;
}

/// One odd n of the Fibonacci check in Q(sqrt 5).
struct FibRow {
    long n = 0;
    Int fib;
    bool ideal_ok = false;   // (phi^2n + 1) O_{k,S} = F_n O_{k,S}
    bool scalar_ok = false;  // (phi^2n + 1) / (phi^n sqrt5) = F_n
    bool inert_prime = false;
    IdealFactorization ideal;
    Rat norm_J;
};

struct FibReport {
    NumberField field;
    std::vector<FibRow> rows;
    bool passed() const {
        for (const auto& r : rows)
            if (!r.ideal_ok || !r.scalar_ok) return false;
        return true;
    }
};

/// f = x + 1, k = Q(phi), S = {inf, P5}, odd n <= n_max. With `strict`, any
/// failed identity throws VerificationFailed.
inline FibReport fib_demo(long n_max, bool strict = true, mpfr_prec_t precision = 192) {
    if (n_max < 1 || n_max % 2 == 0) throw Error(ErrorCode::InvalidArgument, "n_max must be odd and >= 1");
    NumberField K = make_field("x^2 - x - 1", precision);
    const FieldElement phi = K.gen();
    const FieldElement sqrt5 = K.parse("2t - 1");
    const PlaceSet S = places_above(K, {Int(5)});
    FibReport rep{K, {}};
    Int f_prev = 0, f_cur = 1;  // F_0, F_1
    for (long n = 1; n <= n_max; ++n) {
        if (n > 1) {
            Int next = f_prev + f_cur;
            f_prev = f_cur;
            f_cur = next;
        }
        if (n % 2 == 0) continue;
        FibRow row{n, f_cur, false, false, false, IdealFactorization(K), Rat(1)};
        FieldElement lhs = phi.pow(2 * n) + K.one();
        row.ideal = s_reduce(factor_principal(K, lhs, {Int(5)}), S);
        auto rhs = s_reduce(factor_principal(K, K.from_rational(Rat(f_cur))), S);
        row.ideal_ok = ideal_equal(row.ideal, rhs);
        row.scalar_ok = lhs * (phi.pow(n) * sqrt5).inverse() == K.from_rational(Rat(f_cur));
        Int r = mod_floor(f_cur, Int(5));
        row.inert_prime = is_probable_prime(f_cur) && (r == 2 || r == 3);
        row.norm_J = ideal_norm(deg_gt1_part(row.ideal));
        if (strict && !(row.ideal_ok && row.scalar_ok))
            throw Error(ErrorCode::VerificationFailed, "Fibonacci identity fails at n = " + std::to_string(n));
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace degone

#endif
