#include "zreg/number_theory/bernoulli.hpp"
#include "zreg/number_theory/dirichlet.hpp"

#include <gtest/gtest.h>

using namespace zreg;

namespace {

const DirichletCharacter& odd_mod4() {
    static const DirichletCharacter c = primitive_characters(4).at(0);
    return c;
}

// Bernoulli oracle straight from the recurrence, independent of the memo.
Rational bernoulli_oracle(long n) {
    std::vector<Rational> b{Rational(1)};
    for (long m = 1; m <= n; ++m) {
        Rational s(0);
        for (long k = 0; k < m; ++k) s += binomial(m + 1, k) * b[static_cast<std::size_t>(k)];
        b.push_back(-s / Rational(m + 1));
    }
    return b[static_cast<std::size_t>(n)];
}

}  // namespace

TEST(Bernoulli, Values) {
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(2), Rational(1, 6));
    EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
    for (long n = 0; n <= 30; ++n) EXPECT_EQ(bernoulli(n), bernoulli_oracle(n));
}

TEST(Zeta, NegativeIntegers) {
    EXPECT_EQ(zeta_neg(1), Rational(-1, 12));
    EXPECT_EQ(zeta_neg(2), Rational(0));
    EXPECT_EQ(zeta_neg(3), Rational(1, 120));
    EXPECT_EQ(zeta_neg(5), Rational(-1, 252));
    EXPECT_EQ(zeta_neg(11), Rational(691, 32760));
}

TEST(Zeta, HurwitzHalf) {
    EXPECT_EQ(hurwitz_half(2), Rational(1, 24));
    EXPECT_EQ(hurwitz_half(3), Rational(0));
    EXPECT_EQ(hurwitz_half(4), Rational(-7, 960));
    for (long n = 1; n <= 20; ++n) EXPECT_EQ(hurwitz_half(n), hurwitz_half_by_duplication(n)) << n;
    for (long n = 1; n <= 12; ++n) EXPECT_EQ(hurwitz_half(n), hurwitz_half_from_series(n)) << n;
    EXPECT_EQ(hurwitz_neg(1, Rational(1)), zeta_neg(1));
}

TEST(Dirichlet, Enumeration) {
    EXPECT_EQ(enumerate_characters(1).size(), 1U);
    auto c4 = enumerate_characters(4);
    EXPECT_EQ(c4.size(), 2U);
    EXPECT_EQ(std::count_if(c4.begin(), c4.end(), [](auto& c) { return c.is_primitive(); }), 1);
    EXPECT_EQ(odd_mod4().parity(), -1);
    auto c8 = enumerate_characters(8);
    EXPECT_EQ(c8.size(), 4U);
    EXPECT_EQ(std::count_if(c8.begin(), c8.end(), [](auto& c) { return c.is_primitive(); }), 2);
    EXPECT_EQ(enumerate_characters(24).size(), 8U);
    EXPECT_EQ(enumerate_characters(13).size(), 12U);
    auto c5 = enumerate_characters(5);
    EXPECT_EQ(c5.size(), 4U);
    EXPECT_EQ(c5.back().order(), 4);
}

TEST(Dirichlet, CharacterInvariants) {
    for (long n : {3L, 4L, 5L, 7L, 8L, 9L, 12L, 15L, 16L}) {
        for (const auto& chi : enumerate_characters(n)) {
            EXPECT_EQ(chi.value(1), Cyclotomic(1));
            EXPECT_EQ(n % chi.conductor(), 0);
            for (long a = 1; a < n; ++a)
                for (long b = 1; b < n; ++b) {
                    if (chi.exponent(a) < 0 || chi.exponent(b) < 0) continue;
                    EXPECT_EQ(chi.value(a * b), chi.value(a) * chi.value(b));
                }
        }
    }
}

TEST(Dirichlet, GaussSums) {
    EXPECT_EQ(gauss_sum(enumerate_characters(1)[0]), Cyclotomic(1));
    auto chi3 = primitive_characters(3).at(0);
    EXPECT_EQ(gauss_sum(chi3), Cyclotomic::zeta(3, 1) - Cyclotomic::zeta(3, 2));
    for (long n : {3L, 4L, 5L, 7L, 8L, 12L}) {
        for (const auto& chi : primitive_characters(n)) {
            Cyclotomic g = gauss_sum(chi);
            EXPECT_EQ(g * g.conj(), Cyclotomic(n));
            EXPECT_EQ(g * gauss_sum(chi.conj()), Cyclotomic(chi.parity() * n));
            for (long k = 0; k <= n; ++k) EXPECT_TRUE(verify_gauss_twist(chi, k)) << chi.label() << " k=" << k;
        }
    }
    auto imprimitive = enumerate_characters(8);
    auto it = std::find_if(imprimitive.begin(), imprimitive.end(), [](auto& c) { return !c.is_primitive(); });
    EXPECT_THROW(verify_gauss_twist(*it, 1), std::invalid_argument);
}

TEST(Dirichlet, GaussTwistMod5Quartic) {
    auto c5 = primitive_characters(5);
    auto quartic = *std::find_if(c5.begin(), c5.end(), [](auto& c) { return c.order() == 4; });
    EXPECT_TRUE(verify_gauss_twist(quartic, 2));
}

TEST(Dirichlet, GeneralizedBernoulli) {
    for (long n : {3L, 4L, 5L, 7L, 8L, 12L})
        for (const auto& chi : enumerate_characters(n))
            if (!chi.is_trivial()) { EXPECT_TRUE(gen_bernoulli(chi, 0).is_zero()); }
    EXPECT_EQ(gen_bernoulli(odd_mod4(), 1), Cyclotomic(Rational(-1, 2)));
    EXPECT_EQ(gen_bernoulli(enumerate_characters(1)[0], 2), Cyclotomic(Rational(1, 6)));
    EXPECT_EQ(l_value_neg(odd_mod4(), 1), Cyclotomic(Rational(1, 2)));
    EXPECT_EQ(l_value_neg(enumerate_characters(1)[0], 2), Cyclotomic(Rational(-1, 12)));
    auto c5 = primitive_characters(5);
    auto legendre5 = *std::find_if(c5.begin(), c5.end(), [](auto& c) { return c.order() == 2; });
    EXPECT_TRUE(l_value_neg(legendre5, 1).is_zero());
    // oracle B_{1,χ} = (1/N) sum a χ(a) for nontrivial χ
    for (const auto& chi : primitive_characters(7)) {
        Cyclotomic s(0);
        for (long a = 1; a <= 7; ++a) s += chi.value(a) * Cyclotomic(a);
        EXPECT_EQ(gen_bernoulli(chi, 1), s * Cyclotomic(Rational(1, 7)));
    }
}

TEST(Dirichlet, PartialFractionIdentity) {
    for (long n : {3L, 4L, 5L, 7L, 8L, 12L}) {
        for (const auto& chi : primitive_characters(n)) {
            auto rep = partial_fraction_report(chi, 8);
            EXPECT_TRUE(rep.pole.is_zero());
            EXPECT_TRUE(rep.pass) << chi.label() << " first bad order " << rep.first_bad_order;
        }
    }
    EXPECT_THROW(verify_partial_fraction(enumerate_characters(3).at(0), 4), std::invalid_argument);
}

TEST(Dirichlet, ProductCharacterClosure) {
    for (long n : {5L, 7L, 8L, 12L}) {
        auto prim = primitive_characters(n);
        for (const auto& x : prim)
            for (const auto& y : prim) {
                DirichletCharacter p = x * y;
                EXPECT_EQ(p.value(1), Cyclotomic(1));
                long l = std::lcm(x.order(), y.order());
                for (long a = 1; a < n; ++a)
                    if (p.exponent(a) >= 0) { EXPECT_EQ(p.value(a), x.value_at_level(a, l) * y.value_at_level(a, l)); }
                if (x == y.conj()) { EXPECT_TRUE(p.is_trivial()); }
            }
    }
}

TEST(Dirichlet, TwistWeightsFromGaussAverage) {
    for (const auto& chi : primitive_characters(5))
        for (long n = -6; n <= 6; ++n) EXPECT_EQ(twist_weight_via_gauss(chi, n), chi.value(-n));
}

TEST(Dirichlet, CorrectionSeriesPoleFree) {
    auto prim = primitive_characters(5);
    for (const auto& x : prim)
        for (const auto& y : prim) {
            auto s = twisted_correction_series(x, y, 6);
            if (!(x * y).is_trivial()) { EXPECT_TRUE(s.coeff(-1).is_zero()); }
            else EXPECT_FALSE(s.coeff(-1).is_zero());
        }
}
