#include <gtest/gtest.h>

#include <random>

#include "degone/parse.hpp"
#include "degone/roots.hpp"
#include "degone/zfactor.hpp"

using namespace degone;

namespace {

// Brute-force: does the monic polynomial a have a monic factor of degree k mod p?
bool has_factor_of_degree(const PrimeField& fp, const ZPoly& a, int k) {
    const long p = fp.modulus().get_si();
    long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
        std::vector<Int> c(k + 1);
        long rest = code;
        for (int i = 0; i < k; ++i) {
            c[i] = rest % p;
            rest /= p;
        }
        c[k] = 1;
        if (fp.rem(a, ZPoly(c)).is_zero()) return true;
    }
    return false;
}

bool brute_irreducible(const PrimeField& fp, const ZPoly& a) {
    for (int k = 1; 2 * k <= a.degree(); ++k)
        if (has_factor_of_degree(fp, a, k)) return false;
    return true;
}

}  // namespace

TEST(Parse, PolynomialsAndElements) {
    EXPECT_EQ(parse_zpoly("x^2 - x - 1"), (ZPoly{Int(-1), Int(-1), Int(1)}));
    EXPECT_EQ(parse_zpoly("(x-1)(x+1)"), (ZPoly{Int(-1), Int(0), Int(1)}));
    EXPECT_EQ(parse_qpoly("1/2 x^3 + 2x"), (QPoly{Rat(0), Rat(2), Rat(0), Rat(1, 2)}));
    BiPoly b = parse_bipoly("1/2 + 1/2*t");
    EXPECT_EQ(b.terms.size(), 2u);
    EXPECT_EQ((b.terms[{0, 1}]), Rat(1, 2));
}

TEST(Parse, ErrorsCarryPositions) {
    try {
        parse_zpoly("x^2 + * 3");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 6u);
    }
    EXPECT_THROW(parse_zpoly("x/(x+1)"), ParseError);
    EXPECT_THROW(parse_zpoly("x + 1/2"), ParseError);
    EXPECT_THROW(parse_zpoly(""), ParseError);
}

TEST(Poly, DiscriminantMatchesQuadraticFormula) {
    // b^2 - 4ac for x^2 - x - 1 and x^2 + 1.
    EXPECT_EQ(discriminant(parse_zpoly("x^2-x-1")), 5);
    EXPECT_EQ(discriminant(parse_zpoly("x^2+1")), -4);
    EXPECT_EQ(discriminant(parse_zpoly("x^2-2")), 8);
    // -4a^3 - 27b^2 for cubics x^3 + a x + b.
    EXPECT_EQ(discriminant(parse_zpoly("x^3-2")), -108);
    EXPECT_EQ(discriminant(parse_zpoly("x^3-x-1")), -23);
}

TEST(FiniteField, HandSplittings) {
    PrimeField f5(Int(5));
    auto a = f5.factor(parse_zpoly("x^2-x-1"));
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].first, parse_zpoly("x+2"));
    EXPECT_EQ(a[0].second, 2);

    PrimeField f2(Int(2));
    auto b = f2.factor(parse_zpoly("x^2-x-1"));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].first.degree(), 2);

    auto c = f5.factor(parse_zpoly("x^2+1"));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].first, parse_zpoly("x+2"));
    EXPECT_EQ(c[1].first, parse_zpoly("x+3"));
}

TEST(FiniteField, RandomFactorizationsAgainstBruteForce) {
    std::mt19937_64 rng(5);
    for (long p : {2L, 3L, 5L, 7L}) {
        PrimeField fp{Int(p)};
        for (int trial = 0; trial < 40; ++trial) {
            int n = 2 + static_cast<int>(rng() % 5);
            std::vector<Int> c(n + 1);
            for (int i = 0; i < n; ++i) c[i] = static_cast<long>(rng() % p);
            c[n] = 1;
            ZPoly a(c);
            auto fac = fp.factor(a);
            ZPoly prod = ZPoly::constant(Int(1));
            for (const auto& [f, m] : fac) {
                EXPECT_TRUE(f.is_monic());
                EXPECT_TRUE(brute_irreducible(fp, f)) << to_string(f) << " mod " << p;
                for (int i = 0; i < m; ++i) prod = fp.mul(prod, f);
            }
            EXPECT_EQ(prod, fp.reduce(a)) << to_string(a) << " mod " << p;
        }
    }
}

TEST(FiniteField, LargePrimeSplitting) {
    Int p("1000000000000000003");
    PrimeField fp(p);
    // x^2 + 1 splits iff p = 1 mod 4.
    auto f = fp.factor(parse_zpoly("x^2+1"));
    int total = 0;
    for (const auto& [g, m] : f) total += g.degree() * m;
    EXPECT_EQ(total, 2);
    EXPECT_EQ(f.size(), (p % 4 == 1) ? 2u : 1u);
}

TEST(Irreducibility, KnownCases) {
    EXPECT_TRUE(is_irreducible_over_q(parse_zpoly("x^2-x-1")));
    EXPECT_TRUE(is_irreducible_over_q(parse_zpoly("x^3-2")));
    EXPECT_TRUE(is_irreducible_over_q(parse_zpoly("x-1")));
    EXPECT_FALSE(is_irreducible_over_q(parse_zpoly("x^2-1")));
    // Reducible modulo every prime, irreducible over Q.
    EXPECT_TRUE(is_irreducible_over_q(parse_zpoly("x^4+1")));
    // No rational roots but a quadratic factorization.
    auto f = find_rational_factor(parse_zpoly("(x^2+x+1)(x^2+3)"));
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->degree(), 2);
    EXPECT_FALSE(is_irreducible_over_q(parse_zpoly("(x^2+1)^2")));
    EXPECT_THROW(find_rational_factor(parse_zpoly("2x^2+1")), Error);
}

TEST(Roots, CertifiedDisksAndRealness) {
    auto r = certified_roots(parse_qpoly("x^2-x-1"), 192);
    ASSERT_EQ(r.center.size(), 2u);
    EXPECT_EQ(r.real_count, 2);
    EXPECT_NEAR(r.center[0].re.to_double(), (1 - std::sqrt(5.0)) / 2, 1e-15);
    EXPECT_NEAR(r.center[1].re.to_double(), (1 + std::sqrt(5.0)) / 2, 1e-15);
    EXPECT_TRUE(r.max_radius() < Real::pow2(-96, 256));

    auto c = certified_roots(parse_qpoly("x^3-2"), 192);
    EXPECT_EQ(c.real_count, 1);
    EXPECT_NEAR(c.center[1].im.to_double(), std::cbrt(2.0) * std::sqrt(3.0) / 2, 1e-14);
    EXPECT_TRUE(c.center[1].im == -c.center[2].im);
}

TEST(Roots, ExpandedRootsReproduceCoefficients) {
    for (const char* text : {"x^2-x-1", "x^2+1", "x^3-x-1", "x^5-3x+1", "x^4+1"}) {
        QPoly g = parse_qpoly(text);
        auto r = certified_roots(g, 192);
        std::vector<Complex> prod{Complex(Real(1.0, 256), Real(256))};
        for (const auto& z : r.center) {
            std::vector<Complex> next(prod.size() + 1, Complex(256));
            for (std::size_t i = 0; i < prod.size(); ++i) {
                next[i + 1] = next[i + 1] + prod[i];
                next[i] = next[i] - prod[i] * z;
            }
            prod = next;
        }
        for (int i = 0; i <= g.degree(); ++i) {
            EXPECT_NEAR(prod[i].re.to_double(), g[i].get_d(), 1e-40) << text;
            EXPECT_NEAR(prod[i].im.to_double(), 0.0, 1e-40) << text;
        }
    }
}
