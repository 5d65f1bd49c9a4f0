#include "zreg/kernel/cyclotomic.hpp"
#include "zreg/kernel/linalg.hpp"
#include "zreg/kernel/multiseries.hpp"
#include "zreg/kernel/series.hpp"

#include <gtest/gtest.h>

using namespace zreg;

TEST(Rational, CanonicalForm) {
    Rational a(6, -4);
    EXPECT_EQ(a.to_string(), "-3/2");
    EXPECT_EQ(Rational(0, 5).to_string(), "0");
    EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
    EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
}

TEST(Rational, BinomialsAndFactorials) {
    EXPECT_EQ(factorial(7), Rational(5040));
    EXPECT_EQ(binomial(10, 3), Rational(120));
    EXPECT_EQ(gen_binomial(Rational(-2), 3), Rational(-4));  // (-2)(-3)(-4)/6
    EXPECT_EQ(gen_binomial(Rational(1, 2), 2), Rational(-1, 8));
}

TEST(Polynomial, DivmodAndGcd) {
    RatPoly x = RatPoly::x();
    RatPoly p = x.pow(3) - RatPoly(Rational(1));
    RatPoly d = x - RatPoly(Rational(1));
    auto [q, r] = p.divmod(d);
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(q, x * x + x + RatPoly(Rational(1)));
    auto [g, s, t] = poly_gcdext(x * x - RatPoly(Rational(1)), x * x + x * Rational(2) + RatPoly(Rational(1)));
    EXPECT_EQ(g, x + RatPoly(Rational(1)));
    EXPECT_EQ(s * (x * x - RatPoly(Rational(1))) + t * (x * x + x * Rational(2) + RatPoly(Rational(1))), g);
    EXPECT_EQ(p.shift(Rational(1)), x.pow(3) + x * x * Rational(3) + x * Rational(3));
}

TEST(Cyclotomic, PolynomialsByRecursiveDivision) {
    EXPECT_EQ(cyclotomic_polynomial(1).to_string(), "(1)*x + (-1)");
    EXPECT_EQ(cyclotomic_polynomial(4).degree(), 2);
    EXPECT_EQ(cyclotomic_polynomial(12).degree(), 4);
    EXPECT_EQ(cyclotomic_polynomial(20).degree(), 8);
}

TEST(Cyclotomic, MultiplicationExamples) {
    Cyclotomic i = Cyclotomic::zeta(4);
    EXPECT_EQ(i * i, Cyclotomic(-1));
    Cyclotomic w = Cyclotomic::zeta(3);
    EXPECT_EQ((Cyclotomic(1) + w) * (Cyclotomic(1) + w * w), Cyclotomic(1));
    Cyclotomic a = Cyclotomic::zeta(7, 3) + Cyclotomic(Rational(2, 5));
    EXPECT_EQ(a * Cyclotomic(1), a);
    EXPECT_THROW(Cyclotomic::zeta(3) * Cyclotomic::zeta(4), LevelMismatch);
}

TEST(Cyclotomic, InverseExamples) {
    EXPECT_EQ(Cyclotomic(1).inverse(), Cyclotomic(1));
    Cyclotomic w = Cyclotomic::zeta(3);
    EXPECT_EQ(w.inverse(), w * w);
    Cyclotomic d = w - w * w;
    Cyclotomic v = d.inverse();
    EXPECT_EQ(v * d, Cyclotomic(1));
    EXPECT_EQ(v * Cyclotomic(3), -d);
    EXPECT_THROW(Cyclotomic(0).inverse(), std::domain_error);
}

TEST(Cyclotomic, RootsSumToZero) {
    for (long l = 2; l <= 24; ++l) {
        Cyclotomic s(0);
        for (long k = 0; k < l; ++k) s += Cyclotomic::zeta(l, k);
        EXPECT_TRUE(s.is_zero()) << "level " << l;
    }
}

TEST(Cyclotomic, EmbeddingAndConjugation) {
    Cyclotomic i = Cyclotomic::zeta(4);
    EXPECT_EQ(i.embed(8), Cyclotomic::zeta(8, 2));
    EXPECT_EQ(i, Cyclotomic::zeta(8, 2));
    EXPECT_EQ(i.conj(), -i);
    Cyclotomic z = Cyclotomic::zeta(8, 3) - Cyclotomic::zeta(8, 1);
    EXPECT_EQ(z.to_string(), "ζ8^3 - ζ8");
    EXPECT_EQ(Cyclotomic(Rational(-1, 12)).to_string(), "-1/12");
}

TEST(Series, ExpandQuotientHalfShift) {
    // e^{x/2}/(e^x - 1) = x^-1 - x/24 + 7x^3/5760 + ...
    RatSeries num = RatSeries::exp_linear(Rational(1, 2), 6);
    RatSeries den = RatSeries::exp_linear(Rational(1), 6) - RatSeries::constant(Rational(1), 6);
    RatSeries q = expand_quotient(num, den, 3);
    EXPECT_EQ(q.coeff(-1), Rational(1));
    EXPECT_EQ(q.coeff(0), Rational(0));
    EXPECT_EQ(q.coeff(1), Rational(-1, 24));
    EXPECT_EQ(q.coeff(2), Rational(0));
    EXPECT_EQ(q.coeff(3), Rational(7, 5760));
    EXPECT_THROW((void)q.coeff(4), WindowError);
}

TEST(Series, GeometricAndTrivialQuotients) {
    RatSeries one = RatSeries::constant(Rational(1), 5);
    RatSeries omx = RatSeries::polynomial({Rational(1), Rational(-1)}, 5);
    RatSeries g = expand_quotient(one, omx, 3);
    for (long n = 0; n <= 3; ++n) EXPECT_EQ(g.coeff(n), Rational(1));
    RatSeries x = RatSeries::polynomial({Rational(0), Rational(1)}, 5);
    RatSeries unit = expand_quotient(x, x, 2);
    EXPECT_EQ(unit.coeff(0), Rational(1));
    EXPECT_EQ(unit.coeff(1), Rational(0));
    EXPECT_THROW(expand_quotient(x, RatSeries(1, 5), 2), std::domain_error);
}

TEST(Series, ProductWindowShrinks) {
    RatSeries a = RatSeries::polynomial({Rational(0), Rational(1)}, 4);  // x + O(x^5)
    RatSeries b = RatSeries::polynomial({Rational(1), Rational(2)}, 3);  // 1 + 2x + O(x^4)
    RatSeries c = a * b;
    EXPECT_EQ(c.prec(), 4);  // min(4 + 0, 3 + 1)
    EXPECT_EQ(c.coeff(2), Rational(2));
}

TEST(Series, FractionalExponentsAndRendering) {
    RatSeries s = RatSeries::monomial(Rational(1), 1, 2, 4);  // q^{1/2}
    RatSeries t = s * s;
    EXPECT_EQ(t.coeff(1), Rational(1));
    EXPECT_EQ(s.to_string("q"), "q^(1/2)");
    RatSeries e = RatSeries::polynomial({Rational(-1, 24), Rational(1), Rational(3), Rational(4)}, 3);
    EXPECT_EQ(e.to_string("q"), "-1/24 + q + 3*q^2 + 4*q^3");
}

TEST(MultiSeries, Examples) {
    std::vector<std::string> v{"y1", "y2"};
    using MS = MultiSeries<Rational>;
    MS a = MS::one(v, {6, 6});
    a.add_term({1, 0}, Rational(1));
    MS b = MS::one(v, {6, 6});
    b.add_term({0, 1}, Rational(1));
    MS ab = a * b;
    EXPECT_EQ(ab.coeff({1, 1}), Rational(1));
    EXPECT_EQ(ab.terms().size(), 4U);

    MS e = MS::exp_var(v, {6, 6}, 0, Rational(1)) * MS::exp_var(v, {6, 6}, 0, Rational(-1));
    EXPECT_EQ(e, MS::one(v, {6, 6}));

    MS f = MS::exp_var(v, {6, 6}, 0, Rational(1)) * MS::exp_var(v, {6, 6}, 1, Rational(1));
    EXPECT_EQ(f.coeff({2, 3}), Rational(1, 12));
}

TEST(Linalg, SolveAndRank) {
    std::vector<std::vector<Rational>> a{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}, {Rational(5), Rational(6)}};
    auto r = solve_linear(a, {Rational(5), Rational(11), Rational(17)});
    ASSERT_TRUE(r.consistent);
    EXPECT_EQ(r.x[0], Rational(1));
    EXPECT_EQ(r.x[1], Rational(2));
    auto bad = solve_linear(a, {Rational(5), Rational(11), Rational(18)});
    EXPECT_FALSE(bad.consistent);
    EXPECT_EQ(matrix_rank(a), 2U);
}
