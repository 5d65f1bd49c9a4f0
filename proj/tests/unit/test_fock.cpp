#include "zreg/fock/fock.hpp"
#include "zreg/fock/iterate.hpp"
#include "zreg/fock/represent.hpp"
#include "zreg/fock/twisted.hpp"
#include "zreg/symbolic/genfunc.hpp"

#include <gtest/gtest.h>

using namespace zreg;
using Op = FockOp<Rational>;
using SV = StateVector<Rational>;

namespace {

FockState st(std::vector<long> b, std::vector<long> f2 = {}, bool z = false) { return {std::move(b), std::move(f2), z}; }
SV vec(const FockState& s, const Rational& c = Rational(1)) { return SV{{s, c}}; }

void expect_same(const Op& a, const Op& b, const FockSpace& sp, long max_w2, const std::string& what) {
    auto diff = first_difference(a, b, sp, max_w2);
    EXPECT_FALSE(diff.has_value()) << what << " differs on " << (diff ? diff->to_string() : "");
}

Op h(long n) { return boson_mode<Rational>(n); }
Op phi(long r2, FermionSector sec = FermionSector::NS) { return fermion_mode<Rational>(sec, r2); }
Op id(const Rational& c = Rational(1)) { return Op::scalar(c); }

}  // namespace

TEST(FockBasis, Dimensions) {
    auto sp = FockSpace::ns();
    EXPECT_EQ(fock_basis(sp, 1).size(), 1U);
    EXPECT_EQ(fock_basis(sp, 2).size(), 1U);
    EXPECT_EQ(fock_basis(sp, 3).size(), 2U);
    EXPECT_EQ(fock_basis(sp, 4).size(), 3U);
    std::vector<std::size_t> partitions{1, 1, 2, 3, 5, 7, 11, 15};
    for (long n = 0; n < 8; ++n) EXPECT_EQ(fock_basis(FockSpace::heisenberg(), 2 * n).size(), partitions[n]);
    EXPECT_TRUE(fock_basis(FockSpace::heisenberg(), 3).empty());
    // Ramond fermions: strict partitions, doubled by the zero mode
    EXPECT_EQ(fock_basis(FockSpace::ramond_fermions(false), 2 * 6).size(), 4U);
    EXPECT_EQ(fock_basis(FockSpace::ramond_fermions(true), 2 * 6).size(), 8U);
    for (const auto& s : fock_basis(sp, 9)) EXPECT_EQ(s.weight2(), 9);
}

TEST(FockModes, Examples) {
    EXPECT_EQ(h(1)(st({1})), vec(st({})));
    EXPECT_EQ(phi(1)(st({}, {3, 1})), vec(st({}, {3}), Rational(-1)));
    EXPECT_TRUE(h(2)(st({1, 1})).empty());
    EXPECT_EQ(h(1)(st({1, 1})), vec(st({1}), Rational(2)));
    EXPECT_TRUE(phi(-1)(st({}, {1})).empty());
    EXPECT_THROW(phi(2)(st({})), std::invalid_argument);
    EXPECT_THROW(apply_mode(Mode::phi2(1), FermionSector::Ramond, vec(st({}))), std::invalid_argument);
    // φ(0)² = 1/2 in the Ramond sector
    Op z = phi(0, FermionSector::Ramond);
    EXPECT_EQ((z * z)(st({}, {2})), vec(st({}, {2}), Rational(1, 2)));
}

TEST(FockModes, HeisenbergAndCliffordRelations) {
    auto sp = FockSpace::ns();
    for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n) {
            Op expect = m + n == 0 ? id(Rational(m)) : Op::zero(2 * (m + n));
            expect_same(super_commutator(h(m), h(n)), expect, sp, 8, "[h,h]");
        }
    for (long r2 = -5; r2 <= 5; r2 += 2)
        for (long s2 = -5; s2 <= 5; s2 += 2) {
            Op expect = r2 + s2 == 0 ? id() : Op::zero(r2 + s2);
            expect_same(super_commutator(phi(r2), phi(s2)), expect, sp, 8, "{phi,phi}");
            expect_same(super_commutator(h(s2 / 2), phi(r2)), Op::zero(r2 + s2 / 2 * 2, 1), sp, 8, "[h,phi]");
        }
    auto rp = FockSpace::ramond(true);
    for (long r = -2; r <= 2; ++r)
        for (long s = -2; s <= 2; ++s) {
            Op expect = r + s == 0 ? id() : Op::zero(2 * (r + s));
            expect_same(super_commutator(phi(2 * r, FermionSector::Ramond), phi(2 * s, FermionSector::Ramond)), expect,
                        rp, 6, "Ramond {phi,phi}");
        }
}

TEST(FockModes, NormalOrderingMatchesDirectReduction) {
    auto sp = FockSpace::ns();
    for (long j = -3; j <= 3; ++j)
        for (long k = -3; k <= 3; ++k) {
            if (j == 0 || k == 0) continue;
            Op direct = j <= k ? h(j) * h(k) : h(k) * h(j);
            Op q = boson_quadratic<Rational>(j + k, [j, k](const Rational& a, const Rational& b) {
                return Rational(a == Rational(j) && b == Rational(k) ? 1 : 0);
            });
            expect_same(q, direct, sp, 8, "boson :hh:");
        }
    for (long r2 = -5; r2 <= 5; r2 += 2)
        for (long s2 = -5; s2 <= 5; s2 += 2) {
            Op direct = r2 == s2 ? Op::zero(r2 + s2) : r2 < s2 ? phi(r2) * phi(s2) : Rational(-1) * (phi(s2) * phi(r2));
            Op q = fermion_quadratic<Rational>(FermionSector::NS, (r2 + s2) / 2, [r2, s2](const Rational& a, const Rational& b) {
                return Rational(a == Rational(r2, 2) && b == Rational(s2, 2) ? 1 : 0);
            });
            expect_same(q, direct, sp, 8, "fermion :phi phi:");
        }
}

TEST(FockOperators, ZeroModeEigenvalues) {
    Op l0 = ns_virasoro(0);
    EXPECT_EQ(l0(st({1})), vec(st({1})));
    EXPECT_EQ(l0(st({}, {3, 1})), vec(st({}, {3, 1}), Rational(2)));
    for (const auto& s : fock_basis_upto(FockSpace::ns(), 10))
        if (!s.is_vacuum()) { EXPECT_EQ(l0(s), vec(s, s.weight())) << s.to_string(); }
    EXPECT_TRUE(l0(FockState{}).empty());
    // L^{(1)}(0) h(-n) = n (-n²) h(-n); the engine agrees
    Op l10 = family_operator<Rational>({Family::Boson, 1, 0});
    EXPECT_EQ(l10(st({2})), vec(st({2}), Rational(-8)));
    EXPECT_EQ(represent_gf(embed_even(boson_generator(1, 0)))(st({2})), vec(st({2}), Rational(-8)));
}

TEST(FockOperators, ClosedFormsMatchExtractionEngine) {
    auto sp = FockSpace::ns();
    for (long r = 0; r <= 3; ++r) {
        Rational rf = factorial(r), rf1 = factorial(r + 1);
        for (long m = -4; m <= 4; ++m) {
            auto cb = extract_gf_coeff<Rational>(GfFamily::DPlus, r, r, Rational(-m));
            expect_same(represent_gf(rf * rf / Rational(2) * cb), family_operator<Rational>({Family::Boson, r, 2 * m}), sp, 8,
                        "boson r=" + std::to_string(r) + " m=" + std::to_string(m));
            auto cf = extract_gf_coeff<Rational>(GfFamily::DMinus, r + 1, r, Rational(-m));
            expect_same(represent_gf(rf1 * rf / Rational(2) * cf), family_operator<Rational>({Family::Fermion, r, 2 * m}), sp, 8,
                        "fermion s=" + std::to_string(r) + " m=" + std::to_string(m));
        }
        for (long n2 = -7; n2 <= 7; n2 += 2) {
            auto co = extract_gf_coeff<Rational>(GfFamily::Odd, r, 0, Rational(-n2, 2));
            expect_same(represent_gf(rf * co), family_operator<Rational>({Family::Odd, r, n2}), sp, 8,
                        "odd r=" + std::to_string(r) + " n=" + std::to_string(n2) + "/2");
        }
    }
}

TEST(FockOperators, DegreeBookkeeping) {
    for (long m = -3; m <= 3; ++m) {
        Op op = family_operator<Rational>({Family::Boson, 1, 2 * m});
        EXPECT_EQ(op.degree2(), 2 * m);
        for (const auto& s : fock_basis_upto(FockSpace::ns(), 10))
            for (const auto& [t, c] : op(s)) EXPECT_EQ(t.weight2(), s.weight2() - 2 * m);
        auto blk = operator_block(op, FockSpace::ns(), 10);
        for (const auto& t : blk.target) EXPECT_EQ(t.weight2(), 10 - 2 * m);
    }
    GradedOperator<Rational> g(ns_virasoro(0), FockSpace::ns());
    const auto& b = g.block(6);
    ASSERT_EQ(b.source.size(), b.target.size());
    for (std::size_t i = 0; i < b.source.size(); ++i) EXPECT_EQ(b.entries[i][i], Rational(3));
    EXPECT_EQ(&g.block(6), &b);
}

TEST(FockOperators, ZetaCorrection) {
    FamilySpec l1{Family::Boson, 1, 0};
    Op diff = family_operator<Rational>(zeta_correct(l1)) - family_operator<Rational>(l1);
    EXPECT_EQ(scalar_value(diff, FockSpace::ns(), 8), std::optional<Rational>(Rational(-1, 240)));
    FamilySpec vir{Family::Boson, 0, 0};
    EXPECT_EQ(zero_mode_correction(zeta_correct(vir)), Rational(-1, 24));
    EXPECT_EQ(zero_mode_correction(zeta_correct(FamilySpec{Family::Fermion, 0, 0})), Rational(-1, 48));
    FamilySpec l12{Family::Boson, 1, 4};
    expect_same(family_operator<Rational>(zeta_correct(l12)), family_operator<Rational>(l12), FockSpace::ns(), 8, "m != 0");
    EXPECT_THROW(zeta_correct(FamilySpec{Family::Odd, 0, 1}), std::domain_error);
}

TEST(FockOperators, VirasoroCentralChargeOne) {
    auto sp = FockSpace::heisenberg();
    for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n) {
            Op lhs = super_commutator(virasoro_boson(m), virasoro_boson(n));
            Op rhs = Rational(m - n) * virasoro_boson(m + n);
            if (m + n == 0) rhs = rhs + id(Rational(m * m * m - m, 12));
            expect_same(lhs, rhs, sp, 12, "Virasoro m=" + std::to_string(m) + " n=" + std::to_string(n));
        }
}

TEST(FockOperators, NeveuSchwarzCentralChargeThreeHalves) {
    auto sp = FockSpace::ns();
    const Rational c(3, 2);
    for (long m = -2; m <= 2; ++m)
        for (long n = -2; n <= 2; ++n) {
            Op rhs = Rational(m - n) * ns_virasoro(m + n);
            if (m + n == 0) rhs = rhs + id(c * Rational(m * m * m - m, 12));
            expect_same(super_commutator(ns_virasoro(m), ns_virasoro(n)), rhs, sp, 12, "[L,L]");
        }
    for (long m = -2; m <= 2; ++m)
        for (long r2 = -5; r2 <= 5; r2 += 2) {
            Op rhs = (Rational(m, 2) - Rational(r2, 2)) * ns_supercurrent(2 * m + r2);
            expect_same(super_commutator(ns_virasoro(m), ns_supercurrent(r2)), rhs, sp, 12, "[L,G]");
        }
    // the free-field supercurrent G^{(0)}(r) = Σ φ(j)h(r-j) itself satisfies the relation
    for (long r2 = -5; r2 <= 5; r2 += 2)
        for (long s2 = -5; s2 <= 5; s2 += 2) {
            Op lhs = super_commutator(ns_supercurrent(r2), ns_supercurrent(s2));
            Op rhs = Rational(2) * ns_virasoro((r2 + s2) / 2);
            if (r2 + s2 == 0) rhs = rhs + id(c / Rational(3) * (Rational(r2 * r2, 4) - Rational(1, 4)));
            expect_same(lhs, rhs, sp, 12, "{G,G} r=" + std::to_string(r2) + "/2 s=" + std::to_string(s2) + "/2");
        }
}

TEST(TwistedOperators, ModesAndEngine) {
    auto chars = primitive_characters(5);
    ASSERT_EQ(chars.size(), 3U);
    for (const auto& chi : chars)
        for (const auto& mu : chars) {
            long level = twist_level({chi, mu});
            for (long n = -4; n <= 4; ++n)
                EXPECT_EQ(at_level(twist_weight_via_gauss(chi, n), level), chi.value_at_level(-n, level));
            for (long m = -3; m <= 3; ++m)
                for (long n = -3; n <= 3; ++n) {
                    auto lhs = super_commutator(twisted_boson_mode(chi, m, level), twisted_boson_mode(mu, n, level));
                    FockOp<Cyclotomic> rhs = FockOp<Cyclotomic>::zero(2 * (m + n));
                    if (m + n == 0)
                        rhs = FockOp<Cyclotomic>::scalar(Cyclotomic(chi.parity()) * (chi * mu).value_at_level(m, level) *
                                                         Cyclotomic(m));
                    auto diff = first_difference(lhs, rhs, FockSpace::heisenberg(), 8);
                    EXPECT_FALSE(diff.has_value()) << chi.label() << " " << mu.label() << " m=" << m << " n=" << n;
                }
            for (long r = 0; r <= 2; ++r)
                for (long m = -2; m <= 2; ++m) {
                    auto diff = first_difference(twisted_family_via_engine(r, m, chi, mu, level),
                                                 twisted_family_operator(r, m, chi, mu, false, level), FockSpace::heisenberg(), 8);
                    EXPECT_FALSE(diff.has_value()) << chi.label() << " " << mu.label() << " r=" << r << " m=" << m;
                }
        }
}

TEST(TwistedOperators, ZeroModeCorrection) {
    auto chars = primitive_characters(5);
    const auto& chi = chars[0];
    const auto& mu = chars[2];
    long level = twist_level({chi, mu});
    auto diff = twisted_family_operator(1, 0, chi, mu, true, level) - twisted_family_operator(1, 0, chi, mu, false, level);
    auto val = scalar_value(diff, FockSpace::heisenberg(), 6);
    ASSERT_TRUE(val.has_value());
    EXPECT_EQ(*val, at_level(l_value_neg(chi * mu, 4), level) * Cyclotomic(Rational(-1, 2)));
    // χμ trivial: the uncorrected zero mode kills the vacuum
    auto inv = chi.conj();
    auto l0 = twisted_family_operator(1, 0, chi, inv, false, twist_level({chi, inv}));
    EXPECT_TRUE(l0(FockState{}).empty());
    EXPECT_THROW(twisted_family_operator(1, 0, chi, DirichletCharacter(enumerate_characters(5)[0]), false, level),
                 std::invalid_argument);
}

TEST(IterateBridge, FreePairs) {
    using G = FreeGenerator;
    auto bb = iterate_vertex_check(G::Boson, G::Boson, 4, 8);
    EXPECT_TRUE(bb.pass()) << bb.mismatches;
    std::map<long, Rational> corr(bb.correction.begin(), bb.correction.end());
    EXPECT_EQ(corr[-2], Rational(1));
    EXPECT_EQ(corr.count(-1), 0U);
    EXPECT_EQ(corr[0], Rational(-1, 12));
    EXPECT_EQ(corr[2], Rational(1, 240));
    auto ff = iterate_vertex_check(G::Fermion, G::Fermion, 4, 8);
    EXPECT_TRUE(ff.pass()) << ff.mismatches;
    std::map<long, Rational> fc(ff.correction.begin(), ff.correction.end());
    RatSeries hz = half_shift_generating_series(4);
    for (long e = -1; e <= 4; ++e) EXPECT_EQ(fc[e], hz.coeff(e)) << e;
    EXPECT_TRUE(iterate_vertex_check(G::Boson, G::Fermion, 4, 8).pass());
    EXPECT_TRUE(iterate_vertex_check(G::Fermion, G::Boson, 4, 8).pass());
}
