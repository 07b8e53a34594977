#ifndef DEGONE_REAL_HPP
#define DEGONE_REAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "integer.hpp"

namespace degone {

/// Multiprecision real backed by MPFR. Each value carries its own precision
/// and binary operations produce the larger precision of their operands.
class Real {
   public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(double d, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    Real(const Int& z, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    Real(const Rat& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_ptr get() noexcept { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// 2^e at the given precision.
    static Real pow2(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

#define DEGONE_REAL_BINOP(op, fn)                                  \
    friend Real operator op(const Real& a, const Real& b) {        \
        Real r(std::max(a.prec(), b.prec()));                      \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                           \
        return r;                                                  \
    }                                                              \
    Real& operator op##=(const Real& b) {                          \
        if (b.prec() > prec()) mpfr_prec_round(v_, b.prec(), MPFR_RNDN); \
        fn(v_, v_, b.v_, MPFR_RNDN);                               \
        return *this;                                              \
    }
    DEGONE_REAL_BINOP(+, mpfr_add)
    DEGONE_REAL_BINOP(-, mpfr_sub)
    DEGONE_REAL_BINOP(*, mpfr_mul)
    DEGONE_REAL_BINOP(/, mpfr_div)
#undef DEGONE_REAL_BINOP

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real log(const Real& a) {
        Real r(a.prec());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real exp(const Real& a) {
        Real r(a.prec());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) {
        Real r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }

    /// log(max(1, a)) for a >= 0.
    friend Real log_plus(const Real& a) {
        if (mpfr_cmp_ui(a.v_, 1) <= 0) return Real(a.prec());
        return log(a);
    }

    std::string str(int digits = 20) const {
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(digits) + "Rg";
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

   private:
    mpfr_t v_;
};

inline Real log_of(const Int& z, mpfr_prec_t prec) { return log(Real(z, prec)); }
inline Real log_of(const Rat& q, mpfr_prec_t prec) { return log(Real(q, prec)); }

struct Complex {
    Real re;
    Real im;

    explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    Complex operator-() const { return {-re, -im}; }
    Complex conj() const { return {re, -im}; }
    Real abs() const { return hypot(re, im); }
};

}  // namespace degone

#endif
