#pragma once

#include "zreg/characters/generalized.hpp"
#include "zreg/fock/iterate.hpp"
#include "zreg/fock/twisted.hpp"
#include "zreg/lab/commutator.hpp"
#include "zreg/number_theory/dirichlet.hpp"
#include "zreg/symbolic/genfunc.hpp"
#include "zreg/symbolic/random.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace zreg {

/// One verified statement. value/expected are exact strings; numeric feeds the optional decimal column.
struct Check {
    std::string id;
    std::string anchor;
    bool pass = false;
    std::string detail;
    std::string value;
    std::string expected;
    std::optional<Rational> numeric;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0;
    [[nodiscard]] long failed() const {
        return static_cast<long>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
    }
    [[nodiscard]] bool pass() const { return failed() == 0 && !checks.empty(); }
};

struct SuiteConfig {
    long max_weight = 4;
    long max_power = 2;
    long order = 12;
    long x_range = 2;
    long m_range = 2;
    long cases = 200;
    std::vector<long> moduli = {3, 4, 5, 7, 8, 12};
    RamondPrefactor ramond = RamondPrefactor::Displayed;
    std::vector<std::string> suites;
    unsigned workers = 0;  // 0: hardware concurrency
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"symbolic", "commutators", "zeta", "dirichlet", "characters", "quasimod", "iterates"};
    return names;
}

namespace detail {

inline std::string str(const Rational& r) { return r.to_string(); }
inline std::string str(const Cyclotomic& c) { return c.to_string(); }

template <class T>
Check value_check(std::string id, std::string anchor, const T& value, const T& expected) {
    Check c{std::move(id), std::move(anchor), value == expected, "", str(value), str(expected), std::nullopt};
    if constexpr (std::is_same_v<T, Rational>) c.numeric = value;
    return c;
}

inline Check bool_check(std::string id, std::string anchor, bool pass, std::string detail = "") {
    return Check{std::move(id), std::move(anchor), pass, std::move(detail), "", "", std::nullopt};
}

inline std::string mode_label(const Rational& m) { return m.to_string(); }

}  // namespace detail

// ----------------------------------------------------------------------- symbolic

inline std::vector<Check> symbolic_property_checks(long cases, unsigned seed = 20261016) {
    RandomSymbolic g(seed);
    auto sgn = [](int p) { return Rational(p % 2 == 0 ? 1 : -1); };
    long jacobi = 0, antisym = 0, inv = 0, morph = 0, fixed = 0, cocyc = 0;
    for (long i = 0; i < cases; ++i) {
        int pa = static_cast<int>(i % 2), pb = static_cast<int>((i / 2) % 2), pc = static_cast<int>((i / 4) % 2);
        auto a = g.homogeneous(pa), b = g.homogeneous(pb), c = g.homogeneous(pc);
        auto j = sgn(pa * pc) * super_bracket(a, super_bracket(b, c)) + sgn(pb * pa) * super_bracket(b, super_bracket(c, a)) +
                 sgn(pc * pb) * super_bracket(c, super_bracket(a, b));
        jacobi += j.is_zero() ? 0 : 1;
        antisym += super_bracket(a, b) == -sgn(pa * pb) * super_bracket(b, a) ? 0 : 1;
        Rational sc = sgn(pa * pc) * super_cocycle(super_bracket(a, b), c) + sgn(pb * pa) * super_cocycle(super_bracket(b, c), a) +
                      sgn(pc * pb) * super_cocycle(super_bracket(c, a), b);
        cocyc += sc.is_zero() ? 0 : 1;

        auto d1 = g.diff(4), d2 = g.diff(4), e = g.any(3), f = g.any(3);
        SuperDiffOp<Rational> x;
        x[Comp::DthTh] = g.diff();
        x[Comp::Th] = g.diff();
        x[Comp::Dth] = g.any();
        x[Comp::ThDth] = g.any();
        bool sq = theta1(theta1(d1)) == d1 && theta2(theta2(e)) == e && gamma(gamma(x)) == x;
        inv += sq ? 0 : 1;
        bool mo = theta1(bracket(d1, d2)) == bracket(theta1(d1), theta1(d2)) && theta2(bracket(e, f)) == bracket(theta2(e), theta2(f));
        morph += mo ? 0 : 1;
        bool ns = i % 2 == 1;
        auto u = g.sym(pb, ns), v = g.sym(pc, ns);
        Fixed sector = ns ? Fixed::SuperNS : Fixed::SuperRamond;
        bool cl = in_fixed_subalgebra(Fixed::DPlus, bracket(d1 + theta1(d1), d2 + theta1(d2))) &&
                  in_fixed_subalgebra(Fixed::DMinus, bracket(e + theta2(e), f + theta2(f))) && in_fixed_subalgebra(sector, super_bracket(u, v));
        fixed += cl ? 0 : 1;
    }
    auto row = [cases](const std::string& id, const std::string& anchor, long bad) {
        return detail::bool_check(id, anchor, bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases) + " random cases");
    };
    return {row("super-jacobi", "[a,b]=ab-(-1)^{p(a)p(b)}ba", jacobi), row("super-antisymmetry", "[a,b]=ab-(-1)^{p(a)p(b)}ba", antisym),
            row("super-cocycle", "supercocycle", cocyc), row("involutions-square", "theta_1, theta_2, gamma", inv),
            row("involutions-morphisms", "theta_1, theta_2", morph), row("fixed-subalgebras-close", "D^+, D^-, SD_NS^+, SD_R^+", fixed)};
}

inline std::vector<Check> bracket_identity_checks(long max_power, long x_range) {
    std::vector<Check> out;
    for (const char* id : {"dplus", "dminus", "odd-odd", "odd-dplus", "odd-dminus"}) {
        auto rep = verify_symbolic_bracket(id, max_power, x_range);
        std::ostringstream os;
        os << rep.compared << " coefficients, " << rep.mismatches << " mismatches";
        if (!rep.examples.empty()) {
            const auto& e = rep.examples.front();
            os << "; first at m=" << e.m << " n=" << e.n << ": " << e.lhs << " vs " << e.rhs;
        }
        out.push_back(detail::bool_check(std::string("bracket-") + id, rep.anchor, rep.pass(), os.str()));
    }
    // the displayed argument order of the odd/D^- bracket is pinned as differing
    auto printed = verify_symbolic_bracket("odd-dminus-printed", max_power, x_range);
    out.push_back(detail::bool_check("bracket-odd-dminus-printed-order-differs", printed.anchor, !printed.pass(),
                                     std::to_string(printed.mismatches) + " coefficient mismatches with the arguments as displayed"));
    return out;
}

inline SuiteReport suite_symbolic(const SuiteConfig& cfg) {
    SuiteReport r{"symbolic", {}, 0};
    r.checks = bracket_identity_checks(cfg.max_power, cfg.x_range);
    auto props = symbolic_property_checks(cfg.cases);
    r.checks.insert(r.checks.end(), props.begin(), props.end());
    return r;
}

// ------------------------------------------------------------------- commutators

inline Check virasoro_central_check(long m, long max_w2, bool corrected) {
    auto sp = FockSpace::heisenberg();
    FamilySpec zero{Family::Boson, 0, 0};
    if (corrected) zero = zeta_correct(zero);
    auto c = super_commutator(virasoro_boson(m), virasoro_boson(-m)) - Rational(2 * m) * family_operator<Rational>(zero);
    std::string witness;
    auto v = scalar_on_window(c, sp, max_w2, &witness);
    Rational expected = corrected ? Rational(m * m * m, 12) : Rational(m * m * m - m, 12);
    std::string id = std::string(corrected ? "virasoro-corrected" : "virasoro") + " m=" + std::to_string(m);
    if (!v) return detail::bool_check(id, "\\frac{m^3}{12}\\delta_{m+n,0}c", false, "not scalar on " + witness);
    auto chk = detail::value_check(id, corrected ? "\\frac{m^3}{12}\\delta_{m+n,0}c" : "(m^3-m)/12", *v, expected);
    chk.detail = "window weight <= " + Rational(max_w2, 2).to_string();
    return chk;
}

inline Check central_monomial_check(CentralFamily f, long r, long s, const Rational& m, long max_w2) {
    auto rep = check_central_monomial(f, r, s, m, max_w2);
    static const char* anchors[] = {"\\frac{m^3}{12}\\delta_{m+n,0}c", "\\frac{m^2}{12}\\delta_{m+n,0}c",
                                    "\\frac{(r+s+1)!^2}{2(2r+2s+3)!}m^{2r+2s+3}",
                                    "\\frac{(r+s+1)!^2-(r+s)!(r+s+2)!}{(2r+2s+3)!}m^{2r+2s+3}",
                                    "\\frac{(-1)^s}{(r+s+1)(r+s+2)} m^{r+s+2}"};
    Check c;
    c.id = rep.defect.pair;
    c.anchor = anchors[static_cast<int>(f)];
    c.expected = rep.expected.to_string();
    std::ostringstream os;
    if (!rep.defect.scalar) {
        c.pass = false;
        os << "not scalar on " << rep.defect.witness;
    } else {
        Rational v = *rep.defect.value;
        c.value = v.to_string();
        c.numeric = v;
        c.pass = rep.defect.pass;
        os << "regularized path " << rep.regularized << (rep.regularized == v ? " (agrees)" : " (differs)") << ", before correction "
           << rep.uncorrected;
        if (!c.pass && !rep.expected.is_zero()) os << ", ratio to displayed form " << v / rep.expected;
    }
    c.detail = os.str();
    return c;
}

inline std::vector<Check> central_family_checks(CentralFamily f, long r, long s, long m_range, long max_w2) {
    std::vector<Check> out;
    bool half = f == CentralFamily::OddSS4 || f == CentralFamily::NS;
    for (long i = 0; i < m_range; ++i) {
        Rational m = half ? Rational(2 * i + 1, 2) : Rational(i + 1);
        out.push_back(central_monomial_check(f, r, s, m, max_w2));
    }
    auto fit = fit_central_monomial(f, r, s);
    long top = central_degree(f, r, s);
    bool single = fit.consistent && fit.nonzero_terms() == 1;
    std::string id = std::string(central_family_name(f)) + " r=" + std::to_string(r) + " s=" + std::to_string(s) + " monomial fit";
    Check c = detail::bool_check(id, "pure monomial in m", single, fit.to_string());
    // the displayed power
    long want = f == CentralFamily::Virasoro ? 3 : f == CentralFamily::NS ? 2 : f == CentralFamily::OddSS4 ? r + s + 2 : 2 * r + 2 * s + 3;
    if (single && (static_cast<long>(fit.coefficients.size()) <= want || fit.coefficients[static_cast<std::size_t>(want)].is_zero()))
        c.pass = false;
    (void)top;
    out.push_back(c);
    return out;
}

inline Check projectivity_check(long max_r, long m_range, long max_w2, long stable_w2) {
    auto sum = projectivity_sweep(max_r, m_range, max_w2, stable_w2);
    std::ostringstream os;
    os << sum.pairs << " pairs: " << sum.scalar << " scalar on weight <= " << Rational(max_w2, 2) << ", " << sum.stable
       << " stable on weight <= " << Rational(stable_w2, 2) << ", " << sum.antisymmetric << " antisymmetric, " << sum.central.size()
       << " with nonzero central scalar";
    if (!sum.failures.empty()) os << "; first failure " << sum.failures.front().pair << " " << sum.failures.front().witness;
    return detail::bool_check("projectivity r<=" + std::to_string(max_r) + " |m|<=" + std::to_string(m_range),
                              "defines a projective representation of the Lie superalgebra", sum.pass(), os.str());
}

inline std::vector<Check> ns_relation_checks(long max_w2, long max_mode) {
    std::vector<Check> out;
    for (const auto& r : verify_ns_relations(max_w2, max_mode))
        out.push_back(detail::bool_check(r.name, "[G(m),G(n)]=2L(r+s)+\\frac{1}{3}(m^2-\\frac{1}{4})\\delta_{m+n,0}c", r.pass(),
                                         std::to_string(r.compared) + " operator identities" +
                                             (r.first_failure.empty() ? "" : ", first failure " + r.first_failure)));
    return out;
}

inline std::vector<Check> twisted_center_checks(long modulus, long r, long s, long m) {
    std::vector<Check> out;
    auto chars = primitive_characters(modulus);
    long gated = 0, total = 0, zero = 0, poles = 0;
    std::vector<std::string> samples;
    for (const auto& a : chars)
        for (const auto& b : chars)
            for (const auto& c : chars)
                for (const auto& d : chars) {
                    if ((a * b * c * d).is_trivial()) {
                        ++gated;
                        continue;
                    }
                    ++total;
                    auto rep = check_twisted_trivial_center(r, s, m, a, b, c, d);
                    if (rep.defect.value && rep.defect.value->is_zero()) ++zero;
                    if (!rep.series_pole_free) ++poles;
                    if (samples.empty() && rep.defect.value) samples.push_back("e.g. " + rep.defect.value->to_string() + " for " + rep.characters);
                }
    std::ostringstream os;
    os << zero << "/" << total << " combinations with zero central term (" << gated << " refused: trivial product)";
    for (const auto& x : samples) os << "; " << x;
    out.push_back(detail::bool_check("twisted zero central term N=" + std::to_string(modulus), "have the trivial central terms",
                                     total > 0 && zero == total, os.str()));
    out.push_back(detail::bool_check("twisted correction series pole-free N=" + std::to_string(modulus),
                                     "{\\rm does not} involve any negative powers of $y_1$ and $y_2$", total > 0 && poles == 0,
                                     std::to_string(total - poles) + "/" + std::to_string(total) + " pole-free"));
    return out;
}

inline SuiteReport suite_commutators(const SuiteConfig& cfg) {
    SuiteReport rep{"commutators", {}, 0};
    long w2 = 2 * cfg.max_weight;
    for (long m = 1; m <= std::max(cfg.m_range, 1L); ++m) {
        rep.checks.push_back(virasoro_central_check(m, w2, false));
        rep.checks.push_back(virasoro_central_check(m, w2, true));
    }
    auto ns = ns_relation_checks(w2, cfg.m_range);
    rep.checks.insert(rep.checks.end(), ns.begin(), ns.end());
    rep.checks.push_back(projectivity_check(2, cfg.m_range, w2, w2 + 2));
    auto add = [&](const std::vector<Check>& v) { rep.checks.insert(rep.checks.end(), v.begin(), v.end()); };
    add(central_family_checks(CentralFamily::NS, 0, 0, cfg.m_range, w2));
    for (long r = 1; r <= 2; ++r)
        for (long s = 1; s <= 2; ++s) {
            add(central_family_checks(CentralFamily::BosonSS0, r, s, cfg.m_range, w2));
            add(central_family_checks(CentralFamily::FermionSS2, r, s, cfg.m_range, w2));
        }
    for (long r = 0; r <= 2; ++r)
        for (long s = 0; s <= 2; ++s) add(central_family_checks(CentralFamily::OddSS4, r, s, cfg.m_range, w2));
    add(twisted_center_checks(5, 1, 1, 1));
    return rep;
}

// -------------------------------------------------------------------------- zeta

inline SuiteReport suite_zeta(const SuiteConfig& cfg) {
    SuiteReport rep{"zeta", {}, 0};
    rep.checks.push_back(detail::value_check("zeta(-1)", "\\zeta(-1)=-\\frac{1}{12}", zeta_neg(1), Rational(-1, 12)));
    rep.checks.push_back(detail::value_check("zeta(-3)", "\\zeta(-3)", zeta_neg(3), Rational(1, 120)));
    rep.checks.push_back(detail::value_check("B_12", "B_{12}", bernoulli(12), Rational(-691, 2730)));
    rep.checks.push_back(detail::value_check("zeta(-11)", "\\zeta(1-k)=-B_k/k", zeta_neg(11), Rational(691, 32760)));
    long dup_bad = 0, gf_bad = 0;
    for (long n = 1; n <= std::max(cfg.order, 20L); ++n)
        if (hurwitz_half(n) != hurwitz_half_by_duplication(n)) ++dup_bad;
    for (long n = 1; n <= cfg.order; ++n)
        if (hurwitz_half(n) != hurwitz_half_from_series(n)) ++gf_bad;
    rep.checks.push_back(detail::bool_check("hurwitz duplication n<=" + std::to_string(std::max(cfg.order, 20L)),
                                            "\\zeta(1-j,\\frac{1}{2})=(2^{1-j}-1)\\zeta(1-j)", dup_bad == 0,
                                            std::to_string(dup_bad) + " mismatches"));
    rep.checks.push_back(detail::bool_check("hurwitz generating function n<=" + std::to_string(cfg.order), "\\frac{e^{x/2}}{e^x-1}",
                                            gf_bad == 0, std::to_string(gf_bad) + " mismatches"));
    return rep;
}

// ---------------------------------------------------------------------- dirichlet

inline SuiteReport suite_dirichlet(const SuiteConfig& cfg) {
    SuiteReport rep{"dirichlet", {}, 0};
    for (long n : cfg.moduli) {
        long twist_bad = 0, gauss_bad = 0, pf_bad = 0, b0_bad = 0, pole_bad = 0, count = 0;
        auto prim = primitive_characters(n);
        for (const auto& chi : prim) {
            ++count;
            for (long k = 0; k <= n; ++k)
                if (!verify_gauss_twist(chi, k)) ++twist_bad;
            if (!(gauss_sum(chi) * gauss_sum(chi.conj()) == Cyclotomic(chi.parity() * n))) ++gauss_bad;
            if (!verify_partial_fraction(chi, cfg.order)) ++pf_bad;
            if (!gen_bernoulli(chi, 0).is_zero()) ++b0_bad;
            for (const auto& mu : prim) {
                if ((chi * mu).is_trivial()) continue;
                if (!twisted_correction_series(chi, mu, 2).coeff(-1).is_zero()) ++pole_bad;
            }
        }
        std::string tag = " N=" + std::to_string(n) + " (" + std::to_string(count) + " primitive)";
        rep.checks.push_back(detail::bool_check("gauss twist" + tag, "\\chi(-n)", count > 0 && twist_bad == 0, std::to_string(twist_bad) + " failures"));
        rep.checks.push_back(detail::bool_check("gauss product" + tag, "g(\\chi)g(\\bar\\chi)=\\chi(-1)N", count > 0 && gauss_bad == 0,
                                                std::to_string(gauss_bad) + " failures"));
        rep.checks.push_back(detail::bool_check("partial fractions" + tag + " order " + std::to_string(cfg.order), "e^{Nx}-1",
                                                count > 0 && pf_bad == 0, std::to_string(pf_bad) + " failures"));
        rep.checks.push_back(detail::bool_check("B_{0,chi}=0" + tag, "B_{n,\\chi}", count > 0 && b0_bad == 0, std::to_string(b0_bad) + " failures"));
        rep.checks.push_back(detail::bool_check("correction series pole-free" + tag, "{\\rm does not} involve any negative powers",
                                                count > 0 && pole_bad == 0, std::to_string(pole_bad) + " failures"));
    }
    auto c4 = primitive_characters(4).at(0);
    rep.checks.push_back(detail::value_check("L(0,chi_-4)", "L(1-m,\\chi)=-B_{m,\\chi}/m", l_value_neg(c4, 1), Cyclotomic(Rational(1, 2))));

    // twisted modes and the twisted zero-mode shift, modulus 5
    auto p5 = primitive_characters(5);
    long mode_bad = 0, shift_bad = 0, pairs = 0;
    for (const auto& chi : p5)
        for (const auto& mu : p5) {
            ++pairs;
            long level = twist_level({chi, mu});
            for (long m = -4; m <= 4; ++m)
                for (long n = -4; n <= 4; ++n) {
                    auto lhs = super_commutator(twisted_boson_mode(chi, m, level), twisted_boson_mode(mu, n, level));
                    FockOp<Cyclotomic> rhs = FockOp<Cyclotomic>::zero(2 * (m + n));
                    if (m + n == 0)
                        rhs = FockOp<Cyclotomic>::scalar(Cyclotomic(chi.parity()) * (chi * mu).value_at_level(m, level) * Cyclotomic(m));
                    if (first_difference(lhs, rhs, FockSpace::heisenberg(), 8)) ++mode_bad;
                }
            if ((chi * mu).is_trivial()) continue;
            auto d = scalar_value(twisted_family_operator(1, 0, chi, mu, true, level) - twisted_family_operator(1, 0, chi, mu, false, level),
                                  FockSpace::heisenberg(), 6);
            Cyclotomic want = at_level(l_value_neg(chi * mu, 4), level) * Cyclotomic(Rational(-1, 2));
            if (!d || !(*d == want)) ++shift_bad;
        }
    rep.checks.push_back(detail::bool_check("twisted mode commutator N=5 |m|<=4", "\\chi(-1)(\\chi\\mu)(m)m\\delta_{m+n,0}", mode_bad == 0,
                                            std::to_string(pairs) + " character pairs, " + std::to_string(mode_bad) + " failures"));
    rep.checks.push_back(detail::bool_check("twisted zero-mode shift N=5 r=1", "-\\frac{1}{2}L(-3,\\chi\\mu)", shift_bad == 0,
                                            std::to_string(shift_bad) + " failures"));
    return rep;
}

// --------------------------------------------------------------------- characters

inline Check trace_check(CharacterSector s, long k, const Rational& w, RamondPrefactor rp) {
    auto r = trace_vs_product(s, k, w, rp);
    std::ostringstream os;
    os << r.states << " states, " << r.monomials << " monomials, prefactor (";
    for (std::size_t i = 0; i < r.product_prefactor.size(); ++i) os << (i ? ", " : "") << r.product_prefactor[i];
    os << ")";
    if (!r.mismatch.empty()) os << "; " << r.mismatch;
    return detail::bool_check(std::string("trace vs product ") + sector_name(s) + " K=" + std::to_string(k) + " weight<=" + w.to_string(),
                              "{\\rm tr}|_M \\prod_{i \\geq 0}^\\infty q_i^{\\bar{L}^{(i)}(0)}", r.pass(), os.str());
}

inline SuiteReport suite_characters(const SuiteConfig& cfg) {
    SuiteReport rep{"characters", {}, 0};
    Rational w(cfg.max_weight);
    rep.checks.push_back(trace_check(CharacterSector::Boson, 2, w + Rational(1), cfg.ramond));
    rep.checks.push_back(trace_check(CharacterSector::NSFermion, 2, w + Rational(1, 2), cfg.ramond));
    rep.checks.push_back(trace_check(CharacterSector::RamondFermion, 2, w, cfg.ramond));
    rep.checks.push_back(trace_check(CharacterSector::FullW, 2, w, cfg.ramond));
    auto eta = eta_quotient_check(std::max(cfg.order, 20L));
    rep.checks.push_back(detail::bool_check("eta quotient order " + std::to_string(std::max(cfg.order, 20L)),
                                            "\\frac{\\eta(q)^2}{\\eta(q^2) \\eta(q^{1/2})}", eta.pass(),
                                            std::to_string(eta.compared) + " coefficients"));
    auto full = generalized_character(CharacterSector::FullW, 2, w);
    auto ns = generalized_character(CharacterSector::NSFermion, 2, w);
    auto bos = detail::mode_product(MultiSeries<Rational>::one(ns.body.vars(), ns.body.caps(), ns.body.dens()), detail::modes_upto(w, false), false);
    rep.checks.push_back(detail::bool_check("full character factorizes", "W(\\tau_1,\\tau_3,\\ldots)=M(\\tau_1,\\tau_3,\\ldots)F(\\tau_1, \\tau_3,\\ldots)",
                                            full.body == bos * ns.body));
    auto g2 = eisenstein(2, 4);
    rep.checks.push_back(detail::bool_check("G_2 coefficients", "G_k(q)=\\frac{\\zeta(1-k)}{2}+\\sum_{n=1}^{\\infty}", g2.to_string("q") == "-1/24 + q + 3*q^2 + 4*q^3 + 7*q^4",
                                            g2.to_string("q")));
    return rep;
}

// ---------------------------------------------------------------------- quasimod

inline SuiteReport suite_quasimod(const SuiteConfig& cfg) {
    SuiteReport rep{"quasimod", {}, 0};
    for (long j = 1; j <= 3; ++j) {
        auto c = level_two_identity(j, cfg.order);
        rep.checks.push_back(detail::bool_check(c.name + " order " + std::to_string(cfg.order), "F^{(2)}_{2j}(q^2)-\\frac{(1-2^{2j-1})}{2}\\zeta(1-2j)",
                                                c.pass(), std::to_string(c.compared) + " coefficients"));
    }
    long o3 = std::max(cfg.order, 20L);
    for (long j = 1; j <= 3; ++j) {
        auto c = quasimod_form3_check(j, o3);
        rep.checks.push_back(detail::bool_check(c.name + " order " + std::to_string(o3), "\\frac{F_{2j}^{(2)}(q)}{2^{2j-1}}-\\frac{F^{(2)}_{2j}(q^2)}{2^{2j-2}}",
                                                c.pass(), std::to_string(c.compared) + " coefficients, constant " + c.lhs.coeff(0).to_string()));
    }
    long o6 = std::max(cfg.order, 24L);
    for (const auto& js : std::vector<std::vector<long>>{{1, 1}, {2, 1}, {2, 2}}) {
        auto m = quasimod_form6_check(js, o6);
        std::ostringstream id, os;
        id << "form6 j=(" << js[0] << "," << js[1] << ") order " << o6;
        os << "w=" << m.weight << ", coefficients " << m.coefficients[0] << ", " << m.coefficients[1] << ", surplus " << m.surplus()
           << ", residual " << m.residual;
        rep.checks.push_back(detail::bool_check(id.str(), "can be expressed as a linear combination of", m.pass(), os.str()));
    }
    return rep;
}

// ----------------------------------------------------------------------- iterates

inline Check iterate_check(FreeGenerator u, FreeGenerator v, long x_order, long max_w2) {
    auto r = iterate_vertex_check(u, v, x_order, max_w2);
    std::ostringstream os;
    os << r.compared << " operator coefficients on weight <= " << Rational(max_w2, 2) << ", correction";
    if (r.correction.empty()) os << " 0";
    for (const auto& [e, c] : r.correction) os << " " << c << "x^" << e;
    if (!r.examples.empty()) os << "; first mismatch x^" << r.examples[0].x_power << " mode " << r.examples[0].mode << " on " << r.examples[0].state;
    return detail::bool_check(r.pair, "Y[u,x]:=Y(e^{xL(0)}u,e^x-1)", r.pass(), os.str());
}

inline SuiteReport suite_iterates(const SuiteConfig& cfg) {
    SuiteReport rep{"iterates", {}, 0};
    using G = FreeGenerator;
    long w2 = 2 * cfg.max_weight;
    for (auto [u, v] : {std::pair{G::Boson, G::Boson}, std::pair{G::Fermion, G::Fermion}, std::pair{G::Boson, G::Fermion}, std::pair{G::Fermion, G::Boson}})
        rep.checks.push_back(iterate_check(u, v, 6, w2));
    return rep;
}

// ------------------------------------------------------------------- orchestration

inline SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    using Fn = SuiteReport (*)(const SuiteConfig&);
    static const std::vector<std::pair<std::string, Fn>> table = {
        {"symbolic", suite_symbolic}, {"commutators", suite_commutators}, {"zeta", suite_zeta},      {"dirichlet", suite_dirichlet},
        {"characters", suite_characters}, {"quasimod", suite_quasimod}, {"iterates", suite_iterates}};
    for (const auto& [n, f] : table)
        if (n == name) {
            auto t0 = std::chrono::steady_clock::now();
            SuiteReport r = f(cfg);
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return r;
        }
    throw std::invalid_argument("unknown suite: " + name);
}

/// Runs independent jobs on at most `workers` threads; results keep the job order.
template <class R>
std::vector<R> run_bounded(const std::vector<std::function<R()>>& jobs, unsigned workers) {
    std::vector<R> out(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                out[i] = jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

inline std::vector<SuiteReport> run_suites(const SuiteConfig& cfg) {
    std::vector<std::string> names = cfg.suites.empty() ? suite_names() : cfg.suites;
    for (const auto& n : names)
        if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
            throw std::invalid_argument("unknown suite: " + n);
    std::vector<std::function<SuiteReport()>> jobs;
    for (const auto& n : names) jobs.emplace_back([n, &cfg] { return run_suite(n, cfg); });
    return run_bounded(jobs, cfg.workers);
}

}  // namespace zreg
