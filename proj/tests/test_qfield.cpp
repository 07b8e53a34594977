#include <gtest/gtest.h>

#include <random>

#include "degone/qfield.hpp"

using namespace degone;

namespace {

FieldElement random_element(const NumberField& K, std::mt19937_64& rng, int range = 9) {
    std::vector<Rat> c(K.degree());
    for (auto& x : c) {
        long num = static_cast<long>(rng() % (2 * range + 1)) - range;
        long den = 1 + static_cast<long>(rng() % 4);
        x = Rat(num, den);
        x.canonicalize();
    }
    return K.element(c);
}

const std::vector<std::string>& corpus() {
    static const std::vector<std::string> polys{"x^2-x-1", "x^2+1", "x^2-2", "x^3-2", "x^3-x-1"};
    return polys;
}

}  // namespace

TEST(Field, GoldenRatioField) {
    auto K = make_field("x^2 - x - 1");
    EXPECT_EQ(K.degree(), 2);
    EXPECT_EQ(K.disc(), 5);
    EXPECT_TRUE(K.index_primes().empty());
    ASSERT_EQ(K.automorphisms().size(), 1u);
    EXPECT_EQ(K.automorphisms()[0].order, 2);
}

TEST(Field, RationalFieldAndErrors) {
    auto Q = make_field("x - 1");
    EXPECT_EQ(Q.degree(), 1);
    EXPECT_EQ(Q.gen(), Q.one());
    try {
        make_field("x^2 - 1");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotIrreducible);
    }
    try {
        make_field("2x^2 + 1");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotMonic);
    }
}

TEST(Field, IndexPrimesFromSquaredDiscriminantFactors) {
    // disc(x^2 - 8) = 32 = 2^5.
    auto K = make_field("x^2 - 8");
    ASSERT_EQ(K.index_primes().size(), 1u);
    EXPECT_EQ(K.index_primes()[0], 2);
}

TEST(Field, MinimalPolynomials) {
    auto K = make_field("x^2-x-1");
    EXPECT_EQ(element_minimal_poly(K.gen()), parse_qpoly("x^2-x-1"));
    EXPECT_EQ(element_minimal_poly(K.gen() + (K.one() - K.gen())), parse_qpoly("x-1"));
    auto G = make_field("x^2+1");
    EXPECT_EQ(element_minimal_poly(G.parse("1+2t")), parse_qpoly("x^2-2x+5"));
}

TEST(Field, Automorphisms) {
    auto K = make_field("x^2-x-1");
    auto s = K.automorphisms()[0];
    EXPECT_EQ(apply_automorphism(s, K.gen()), K.parse("1-t"));
    EXPECT_EQ(apply_automorphism(s, K.from_rational(3)), K.from_rational(3));
    auto G = make_field("x^2+1");
    EXPECT_EQ(apply_automorphism(G.automorphisms()[0], G.parse("1+2t")), G.parse("1-2t"));
}

TEST(Field, SuppliedAutomorphismsAreVerified) {
    // Q(zeta_7 + zeta_7^-1) is cyclic cubic with t -> t^2 - 2.
    auto K = make_field("x^3 + x^2 - 2x - 1", 192, {"t^2 - 2"});
    ASSERT_EQ(K.automorphisms().size(), 1u);
    EXPECT_EQ(K.automorphisms()[0].order, 3);
    EXPECT_THROW(make_field("x^3 + x^2 - 2x - 1", 192, {"t + 1"}), Error);
}

TEST(Field, RootsOfUnity) {
    auto K = make_field("x^2-x-1");
    auto r = is_root_of_unity(K.from_rational(-1));
    EXPECT_TRUE(r.value);
    EXPECT_EQ(r.order, 2);
    EXPECT_FALSE(is_root_of_unity(K.gen()).value);
    auto G = make_field("x^2+1");
    auto i = is_root_of_unity(G.gen());
    EXPECT_TRUE(i.value);
    EXPECT_EQ(i.order, 4);
    // (3+4i)/5 has absolute value 1 everywhere but is not integral.
    EXPECT_FALSE(is_root_of_unity(G.parse("3/5 + 4/5 t")).value);
    EXPECT_THROW(is_root_of_unity(G.zero()), Error);
}

TEST(Field, FindPrimitiveRoots) {
    auto G = make_field("x^2+1");
    auto i = find_primitive_root_of_unity(G, 4);
    ASSERT_TRUE(i.has_value());
    EXPECT_EQ(*i * *i, G.from_rational(-1));
    EXPECT_FALSE(find_primitive_root_of_unity(G, 3).has_value());
    auto E = make_field("x^2+x+1");
    auto w = find_primitive_root_of_unity(E, 3);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->pow(3), E.one());
}

TEST(Field, ComplexValues) {
    auto K = make_field("x^2-x-1");
    auto v = complex_values(K.gen());
    const double phi = (1 + std::sqrt(5.0)) / 2;
    EXPECT_NEAR(v.values[0].re.to_double(), 1 - phi, 1e-15);
    EXPECT_NEAR(v.values[1].re.to_double(), phi, 1e-15);
    auto two = complex_values(K.from_rational(2));
    for (const auto& z : two.values) EXPECT_TRUE(z.re == Real(2.0, 64));
    auto G = make_field("x^2+1");
    auto gv = complex_values(G.parse("1+2t"));
    for (const auto& z : gv.values) EXPECT_NEAR(z.abs().to_double(), std::sqrt(5.0), 1e-15);
}

TEST(FieldProperties, RingLaws) {
    std::mt19937_64 rng(1);
    for (const auto& g : corpus()) {
        auto K = make_field(g);
        for (int i = 0; i < 50; ++i) {
            auto a = random_element(K, rng), b = random_element(K, rng), c = random_element(K, rng);
            EXPECT_EQ((a + b) + c, a + (b + c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ((a * b) * c, a * (b * c));
            if (!a.is_zero()) {
                EXPECT_EQ(a * a.inverse(), K.one());
            }
        }
    }
}

TEST(FieldProperties, AutomorphismsAreHomomorphisms) {
    std::mt19937_64 rng(2);
    std::vector<NumberField> fields{make_field("x^2-x-1"), make_field("x^2+1"),
                                    make_field("x^3 + x^2 - 2x - 1", 192, {"t^2 - 2"})};
    for (const auto& K : fields) {
        for (const auto& s : K.automorphisms()) {
            for (int i = 0; i < 40; ++i) {
                auto a = random_element(K, rng), b = random_element(K, rng);
                EXPECT_EQ(apply_automorphism(s, a * b), apply_automorphism(s, a) * apply_automorphism(s, b));
                EXPECT_EQ(apply_automorphism(s, a + b), apply_automorphism(s, a) + apply_automorphism(s, b));
            }
        }
    }
}

TEST(FieldProperties, MinimalPolynomialAnnihilates) {
    std::mt19937_64 rng(3);
    for (const auto& g : corpus()) {
        auto K = make_field(g);
        for (int i = 0; i < 30; ++i) {
            auto a = random_element(K, rng);
            QPoly m = element_minimal_poly(a);
            EXPECT_TRUE(poly_eval(m, a).is_zero());
            EXPECT_EQ(K.degree() % m.degree(), 0);
        }
    }
}

TEST(FieldProperties, EmbeddingsAreMultiplicative) {
    std::mt19937_64 rng(4);
    for (const auto& g : corpus()) {
        auto K = make_field(g);
        for (int i = 0; i < 30; ++i) {
            auto a = random_element(K, rng), b = random_element(K, rng);
            auto va = complex_values(a), vb = complex_values(b), vab = complex_values(a * b);
            for (int j = 0; j < K.degree(); ++j) {
                Complex prod = va.values[j] * vb.values[j];
                Real bound = vab.bounds[j] + va.bounds[j] * vb.values[j].abs() +
                             vb.bounds[j] * va.values[j].abs() + va.bounds[j] * vb.bounds[j];
                EXPECT_TRUE((prod - vab.values[j]).abs() <= bound * Real(2.0, 64));
            }
        }
    }
}

TEST(FieldProperties, GaloisOrbitMatchesEmbeddings) {
    std::mt19937_64 rng(5);
    std::vector<NumberField> fields{make_field("x^2-x-1"), make_field("x^2+1"),
                                    make_field("x^3 + x^2 - 2x - 1", 192, {"t^2 - 2"})};
    for (const auto& K : fields) {
        std::vector<Automorphism> group;
        // Close the supplied generator under composition to get all d automorphisms.
        FieldElement cur = K.gen();
        auto s = K.automorphisms()[0];
        for (int k = 0; k < K.degree(); ++k) {
            group.push_back({cur, 0, ""});
            cur = apply_automorphism(s, cur);
        }
        ASSERT_EQ(static_cast<int>(group.size()), K.degree());
        for (int i = 0; i < 20; ++i) {
            auto a = random_element(K, rng);
            auto vals = complex_values(a).values;
            std::vector<bool> used(vals.size(), false);
            for (const auto& g : group) {
                auto image0 = complex_values(apply_automorphism(g, a)).values[0];
                bool matched = false;
                for (std::size_t j = 0; j < vals.size() && !matched; ++j) {
                    if (!used[j] && (vals[j] - image0).abs().to_double() < 1e-30) {
                        used[j] = true;
                        matched = true;
                    }
                }
                EXPECT_TRUE(matched);
            }
        }
    }
}
