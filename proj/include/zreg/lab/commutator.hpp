#pragma once

#include "zreg/fock/represent.hpp"
#include "zreg/fock/twisted.hpp"
#include "zreg/kernel/linalg.hpp"
#include "zreg/number_theory/bernoulli.hpp"
#include "zreg/symbolic/diffop.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace zreg {

/// Outcome of one commutator check. value is the defect scalar (times ζ4^phase) when the defect is scalar.
template <class S>
struct DefectReport {
    std::string pair;
    long window_w2 = 0;
    bool scalar = false;
    std::optional<S> value;
    int phase = 0;
    std::string witness;  // first state where the defect is not scalar
    std::optional<S> expected;
    bool pass = false;
    std::string detail;
};

// ------------------------------------------------------------- scalar defects

/// If op acts on every state of weight <= max_w2 as one scalar, returns it; otherwise sets witness.
template <class S>
std::optional<S> scalar_on_window(const FockOp<S>& op, const FockSpace& sp, long max_w2, std::string* witness = nullptr) {
    std::optional<S> val;
    for (const auto& s : fock_basis_upto(sp, max_w2)) {
        auto img = op(s);
        S v(0);
        bool ok = true;
        if (!img.empty()) {
            ok = op.degree2() == 0 && img.size() == 1 && img.begin()->first == s;
            if (ok) v = img.begin()->second;
        }
        if (ok && val && !(*val == v)) ok = false;
        if (!ok) {
            if (witness) *witness = s.to_string();
            return std::nullopt;
        }
        val = v;
    }
    return val;
}

// --------------------------------------------------- symbolic degree-0 expansion

/// Coefficients of a degree-0 even element in the bases {boson_generator(j,0)} (∂θθ) and
/// {fermion_generator(j,0)} (θ∂θ), computed by exact elimination.
struct ZeroModeExpansion {
    std::vector<Rational> boson, fermion;
};

inline ZeroModeExpansion expand_zero_modes(const SuperDiffOp<Rational>& x) {
    ZeroModeExpansion e;
    auto solve_block = [](const DiffOp<Rational>& part, auto make) {
        std::vector<Rational> out;
        if (part.is_zero()) return out;
        for (const auto& [key, p] : part.terms())
            if (key.first != 0 || key.second != 0) throw std::domain_error("expand_zero_modes: element is not of degree 0");
        RatPoly p = part.coeff(Rational(0));
        long top = p.degree();
        long n = top / 2 + 1;
        std::vector<std::vector<Rational>> a(static_cast<std::size_t>(top + 1), std::vector<Rational>(static_cast<std::size_t>(n)));
        std::vector<Rational> b(static_cast<std::size_t>(top + 1));
        for (long j = 0; j < n; ++j) {
            RatPoly g = make(j).coeff(Rational(0));
            for (long i = 0; i <= top; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.coeff(i);
        }
        for (long i = 0; i <= top; ++i) b[static_cast<std::size_t>(i)] = p.coeff(i);
        auto res = solve_linear(a, b);
        if (!res.consistent) throw std::domain_error("expand_zero_modes: element leaves the fixed subalgebra");
        return res.x;
    };
    e.boson = solve_block(x[Comp::DthTh], [](long j) { return boson_generator<Rational>(j, 0); });
    e.fermion = solve_block(x[Comp::ThDth], [](long j) { return fermion_generator<Rational>(j, 0); });
    return e;
}

/// Ψ̄: the normalized image with each degree-0 basis component ζ-corrected.
inline RepImage<Rational> represent_corrected(const SuperDiffOp<Rational>& x, FermionSector sector = FermionSector::NS) {
    RepImage<Rational> img = represent(x, sector);
    if (x.is_zero() || x.parity() == 1) return img;
    auto k2 = detail::common_degree2(x);
    if (!k2 || *k2 != 0) return img;
    auto e = expand_zero_modes(x);
    Rational shift(0);
    for (std::size_t j = 0; j < e.boson.size(); ++j)
        shift += Rational(-1, 2) * e.boson[j] * zero_mode_correction(zeta_correct(FamilySpec{Family::Boson, static_cast<long>(j), 0}));
    for (std::size_t j = 0; j < e.fermion.size(); ++j)
        shift += e.fermion[j] * zero_mode_correction(zeta_correct(FamilySpec{Family::Fermion, static_cast<long>(j), 0}));
    if (!shift.is_zero()) img.op = img.op + FockOp<Rational>::scalar(shift);
    return img;
}

/// [Ψ(a), Ψ(b)] - Ψ([a,b]) with the ζ4 phases of odd images tracked exactly; ζ-corrected when asked.
/// The report value is the defect divided by ζ4^phase, phase being that of Ψ([a,b]).
inline DefectReport<Rational> projective_defect(const SuperDiffOp<Rational>& a, const SuperDiffOp<Rational>& b, long max_w2,
                                                bool corrected = false, const std::string& label = "") {
    DefectReport<Rational> rep;
    rep.pair = label;
    rep.window_w2 = max_w2;
    auto image = [corrected](const SuperDiffOp<Rational>& x) { return corrected ? represent_corrected(x) : represent(x); };
    auto ia = image(a), ib = image(b);
    SuperDiffOp<Rational> br = super_bracket(a, b);
    auto ic = image(br);
    int pc = br.is_zero() ? (ia.phase + ib.phase) % 2 : ic.phase;
    int rel = ia.phase + ib.phase - pc;  // 0 or 2
    FockOp<Rational> lhs = super_commutator(ia.op, ib.op);
    if (rel == 2) lhs = Rational(-1) * lhs;
    FockOp<Rational> defect = br.is_zero() ? lhs : lhs - ic.op;
    auto v = scalar_on_window(defect, FockSpace::ns(), max_w2, &rep.witness);
    rep.scalar = v.has_value();
    rep.value = v;
    rep.phase = pc;
    rep.pass = rep.scalar;
    return rep;
}

// ------------------------------------------------------ regularized central terms

/// Central term of a degree-0 commutator C = Q + K (K its vacuum value, Q a quadratic) after replacing Q
/// by its ζ-regularized normal ordering: K - ½ Σ^{reg} E_B(c) + ½ Σ^{reg} E_F(c), where E_B(c), E_F(c) are the
/// eigenvalues of Q on h(-c)vac and φ(-c)vac. E_B is fitted as a polynomial on each residue class mod N
/// (twists), with surplus samples as a consistency check; NS fermions only, N = 1 for them.
template <class S>
struct RegularizedCentral {
    S vacuum{0};
    S boson_sum{0};
    S fermion_sum{0};
    S central{0};
    bool fitted = true;
};

namespace detail {

template <class S>
S single_particle_eigenvalue(const FockOp<S>& c, const FockState& s, const S& vac) {
    auto img = c(s);
    S v(0);
    for (const auto& [t, x] : img) {
        if (t != s) throw std::logic_error("regularized_central: commutator is not diagonal on one-particle states");
        v = x;
    }
    return v - vac;
}

/// Σ_{c ≡ b (N), c > 0} p(c) for p given by coefficients, via Hurwitz values N^k ζ(-k, b/N).
template <class S>
S regularized_class_sum(const std::vector<S>& p, long b, long n) {
    S total(0);
    Rational nk(1);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!p[k].is_zero()) total += p[k] * S(nk * hurwitz_neg(static_cast<long>(k), Rational(b, n)));
        nk *= Rational(n);
    }
    return total;
}

template <class S>
std::optional<std::vector<S>> fit_polynomial(const std::vector<Rational>& xs, const std::vector<S>& ys, long degree) {
    std::vector<std::vector<S>> a;
    for (const auto& x : xs) {
        std::vector<S> row;
        Rational p(1);
        for (long k = 0; k <= degree; ++k, p *= x) row.push_back(S(p));
        a.push_back(row);
    }
    auto res = solve_linear(a, ys);
    if (!res.consistent) return std::nullopt;
    return res.x;
}

}  // namespace detail

template <class S>
RegularizedCentral<S> regularized_central(const FockOp<S>& c, long modulus, long degree, bool fermions, long surplus = 3) {
    RegularizedCentral<S> out;
    auto vimg = c(FockState{});
    for (const auto& [t, x] : vimg) {
        if (!t.is_vacuum()) throw std::logic_error("regularized_central: commutator moves the vacuum");
        out.vacuum = x;
    }
    long samples = degree + 1 + surplus;
    for (long b = 1; b <= modulus; ++b) {
        std::vector<Rational> xs;
        std::vector<S> ys;
        for (long t = 0; t < samples; ++t) {
            long cc = b + modulus * t;
            xs.emplace_back(cc);
            ys.push_back(detail::single_particle_eigenvalue(c, FockState{{cc}, {}, false}, out.vacuum));
        }
        auto p = detail::fit_polynomial(xs, ys, degree);
        if (!p) {
            out.fitted = false;
            continue;
        }
        out.boson_sum += detail::regularized_class_sum(*p, b, modulus);
    }
    if (fermions) {
        std::vector<Rational> xs;
        std::vector<S> ys;
        for (long t = 0; t < samples; ++t) {
            xs.emplace_back(2 * t + 1, 2);
            ys.push_back(detail::single_particle_eigenvalue(c, FockState{{}, {2 * t + 1}, false}, out.vacuum));
        }
        auto p = detail::fit_polynomial(xs, ys, degree);
        if (!p) out.fitted = false;
        else
            for (std::size_t k = 0; k < p->size(); ++k)
                if (!(*p)[k].is_zero()) out.fermion_sum += (*p)[k] * S(hurwitz_neg(static_cast<long>(k), Rational(1, 2)));
    }
    out.central = out.vacuum - out.boson_sum * S(Rational(1, 2)) + out.fermion_sum * S(Rational(1, 2));
    return out;
}

// ------------------------------------------------------------ central monomials

enum class CentralFamily { Virasoro, NS, BosonSS0, FermionSS2, OddSS4 };

inline const char* central_family_name(CentralFamily f) {
    switch (f) {
        case CentralFamily::Virasoro: return "virasoro";
        case CentralFamily::NS: return "ns";
        case CentralFamily::BosonSS0: return "ss0";
        case CentralFamily::FermionSS2: return "ss2";
        case CentralFamily::OddSS4: return "ss4";
    }
    return "?";
}

inline std::optional<CentralFamily> parse_central_family(const std::string& s) {
    for (auto f : {CentralFamily::Virasoro, CentralFamily::NS, CentralFamily::BosonSS0, CentralFamily::FermionSS2, CentralFamily::OddSS4})
        if (s == central_family_name(f)) return f;
    return std::nullopt;
}

/// The displayed closed forms for the ζ-corrected central term at mode m.
inline Rational displayed_central_value(CentralFamily f, long r, long s, const Rational& m) {
    switch (f) {
        case CentralFamily::Virasoro: return m.pow(3) / Rational(12);
        case CentralFamily::NS: return m.pow(2) / Rational(12) * Rational(3, 2);
        case CentralFamily::BosonSS0: {
            Rational a = factorial(r + s + 1);
            return a * a / (Rational(2) * factorial(2 * r + 2 * s + 3)) * m.pow(2 * r + 2 * s + 3);
        }
        case CentralFamily::FermionSS2: {
            Rational a = factorial(r + s + 1);
            return (a * a - factorial(r + s) * factorial(r + s + 2)) / factorial(2 * r + 2 * s + 3) * m.pow(2 * r + 2 * s + 3);
        }
        case CentralFamily::OddSS4:
            return Rational(s % 2 == 0 ? 1 : -1) / Rational((r + s + 1) * (r + s + 2)) * m.pow(r + s + 2);
    }
    return Rational(0);
}

/// Degree bound in m of the central term (for the monomial fit).
inline long central_degree(CentralFamily f, long r, long s) {
    switch (f) {
        case CentralFamily::Virasoro: return 3;
        case CentralFamily::NS: return 3;
        case CentralFamily::OddSS4: return r + s + 3;
        default: return 2 * r + 2 * s + 3;
    }
}

struct CentralPair {
    SuperDiffOp<Rational> a, b;  // symbolic elements at modes m and -m
    FamilySpec fa, fb;           // the corresponding family operators
    Rational norm;               // 1/(n_a n_b), n = -1/2 (boson), 1 (fermion), ζ4 (odd, so ζ4² = -1)
};

inline CentralPair central_pair(CentralFamily f, long r, long s, const Rational& m) {
    CentralPair p;
    switch (f) {
        case CentralFamily::Virasoro:
        case CentralFamily::BosonSS0: {
            long mm = m.to_long();
            p.a = embed_even(boson_generator<Rational>(r, mm));
            p.b = embed_even(boson_generator<Rational>(s, -mm));
            p.fa = {Family::Boson, r, 2 * mm};
            p.fb = {Family::Boson, s, -2 * mm};
            p.norm = Rational(4);
            break;
        }
        case CentralFamily::FermionSS2: {
            long mm = m.to_long();
            p.a = embed_even(DiffOp<Rational>(), fermion_generator<Rational>(r, mm));
            p.b = embed_even(DiffOp<Rational>(), fermion_generator<Rational>(s, -mm));
            p.fa = {Family::Fermion, r, 2 * mm};
            p.fb = {Family::Fermion, s, -2 * mm};
            p.norm = Rational(1);
            break;
        }
        case CentralFamily::NS:
        case CentralFamily::OddSS4: {
            p.a = odd_generator<Rational>(r, m);
            p.b = odd_generator<Rational>(s, -m);
            long m2 = (m * Rational(2)).to_long();
            p.fa = {Family::Odd, r, m2};
            p.fb = {Family::Odd, s, -m2};
            p.norm = Rational(-1);
            break;
        }
    }
    if (f != CentralFamily::OddSS4 && f != CentralFamily::NS) {
        p.fa = zeta_correct(p.fa);
        p.fb = zeta_correct(p.fb);
    }
    return p;
}

struct CentralMonomialReport {
    std::string family;
    long r = 0, s = 0;
    Rational m;
    DefectReport<Rational> defect;  // family-normalized, ζ-corrected
    Rational uncorrected;           // same commutator before ζ-correction
    Rational regularized;           // independent path: ζ-regularized normal ordering of the commutator
    Rational expected;
    std::vector<Rational> structure;  // symbolic bracket in the degree-0 basis: boson part then fermion part
};

/// [X̄_a(m), X̄_b(-m)] - norm·Ψ̄([a,b]) in the family normalization, compared with the displayed closed form.
inline CentralMonomialReport check_central_monomial(CentralFamily f, long r, long s, const Rational& m, long max_w2) {
    CentralMonomialReport rep;
    rep.family = central_family_name(f);
    rep.r = r;
    rep.s = s;
    rep.m = m;
    if (f == CentralFamily::Virasoro || f == CentralFamily::NS) rep.r = rep.s = r = s = 0;
    CentralPair p = central_pair(f, r, s, m);
    SuperDiffOp<Rational> br = super_bracket(p.a, p.b);
    auto e = expand_zero_modes(br);
    rep.structure = e.boson;
    rep.structure.insert(rep.structure.end(), e.fermion.begin(), e.fermion.end());

    FockOp<Rational> xa = family_operator<Rational>(p.fa), xb = family_operator<Rational>(p.fb);
    FockOp<Rational> comm = super_commutator(xa, xb);
    auto corrected_bracket = represent_corrected(br);
    auto plain_bracket = represent(br);
    FockOp<Rational> defect = comm - p.norm * corrected_bracket.op;
    FockOp<Rational> plain = comm - p.norm * plain_bracket.op;

    rep.defect.pair = std::string(rep.family) + " r=" + std::to_string(r) + " s=" + std::to_string(s) + " m=" + m.to_string();
    rep.defect.window_w2 = max_w2;
    auto v = scalar_on_window(defect, FockSpace::ns(), max_w2, &rep.defect.witness);
    rep.defect.scalar = v.has_value();
    rep.defect.value = v;
    auto u = scalar_on_window(plain, FockSpace::ns(), 0);
    rep.uncorrected = u.value_or(Rational(0));
    bool fermions = f != CentralFamily::Virasoro && f != CentralFamily::BosonSS0;
    rep.regularized = regularized_central(comm, 1, 2 * r + 2 * s + 4, fermions).central;
    rep.expected = displayed_central_value(f, r, s, m);
    rep.defect.expected = rep.expected;
    rep.defect.pass = v && *v == rep.expected;
    return rep;
}

/// Value of the ζ-corrected central term read on the vacuum only (cheap; used for the monomial fit).
inline Rational central_value_on_vacuum(CentralFamily f, long r, long s, const Rational& m) {
    if (f == CentralFamily::Virasoro || f == CentralFamily::NS) r = s = 0;
    CentralPair p = central_pair(f, r, s, m);
    SuperDiffOp<Rational> br = super_bracket(p.a, p.b);
    FockOp<Rational> defect =
        super_commutator(family_operator<Rational>(p.fa), family_operator<Rational>(p.fb)) - p.norm * represent_corrected(br).op;
    auto img = defect(FockState{});
    return img.empty() ? Rational(0) : img.begin()->second;
}

/// Fits central values at m = m0, m0+1, ... (degree+1 samples plus surplus) and returns the coefficients in m.
struct MonomialFit {
    std::vector<Rational> coefficients;  // of m^k
    bool consistent = false;
    [[nodiscard]] long nonzero_terms() const {
        long n = 0;
        for (const auto& c : coefficients) n += c.is_zero() ? 0 : 1;
        return n;
    }
    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = coefficients.size(); k-- > 0;) {
            if (coefficients[k].is_zero()) continue;
            os << (first ? "" : " + ") << "(" << coefficients[k] << ")m^" << k;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
};

inline MonomialFit fit_central_monomial(CentralFamily f, long r, long s, long surplus = 2) {
    long degree = central_degree(f, r, s);
    bool half = f == CentralFamily::OddSS4 || f == CentralFamily::NS;
    std::vector<Rational> xs, ys;
    for (long i = 0; i <= degree + surplus; ++i) {
        Rational m = half ? Rational(2 * i + 1, 2) : Rational(i + 1);
        xs.push_back(m);
        ys.push_back(central_value_on_vacuum(f, r, s, m));
    }
    MonomialFit fit;
    auto p = detail::fit_polynomial(xs, ys, degree);
    fit.consistent = p.has_value();
    if (p) fit.coefficients = *p;
    return fit;
}

// ------------------------------------------------------------ relation sweeps

struct RelationCheck {
    std::string name;
    long compared = 0;
    long failures = 0;
    std::string first_failure;
    [[nodiscard]] bool pass() const { return failures == 0 && compared > 0; }
};

namespace detail {

inline void compare_ops(RelationCheck& chk, const FockOp<Rational>& a, const FockOp<Rational>& b, const FockSpace& sp,
                        long max_w2, const std::string& where) {
    ++chk.compared;
    auto d = first_difference(a, b, sp, max_w2);
    if (!d) return;
    if (chk.failures++ == 0) chk.first_failure = where + " on " + d->to_string();
}

}  // namespace detail

/// The three NS relations with c = 3/2 as operator identities on W up to weight max_w2/2.
inline std::vector<RelationCheck> verify_ns_relations(long max_w2, long max_mode = 2) {
    const Rational c(3, 2);
    auto sp = FockSpace::ns();
    auto id = [](const Rational& k) { return FockOp<Rational>::scalar(k); };
    RelationCheck ll, lg, gg;
    ll.name = "[L(m),L(n)] = (m-n)L(m+n) + c(m^3-m)/12";
    lg.name = "[L(m),G(r)] = (m/2-r)G(m+r)";
    gg.name = "{G(r),G(s)} = 2L(r+s) + c(r^2-1/4)/3";
    for (long m = -max_mode; m <= max_mode; ++m)
        for (long n = -max_mode; n <= max_mode; ++n) {
            auto rhs = Rational(m - n) * ns_virasoro(m + n);
            if (m + n == 0) rhs = rhs + id(c * Rational(m * m * m - m, 12));
            detail::compare_ops(ll, super_commutator(ns_virasoro(m), ns_virasoro(n)), rhs, sp, max_w2,
                                "m=" + std::to_string(m) + " n=" + std::to_string(n));
        }
    for (long m = -max_mode; m <= max_mode; ++m)
        for (long r2 = -2 * max_mode + 1; r2 < 2 * max_mode; r2 += 2) {
            auto rhs = (Rational(m, 2) - Rational(r2, 2)) * ns_supercurrent(2 * m + r2);
            detail::compare_ops(lg, super_commutator(ns_virasoro(m), ns_supercurrent(r2)), rhs, sp, max_w2,
                                "m=" + std::to_string(m) + " r=" + Rational(r2, 2).to_string());
        }
    for (long r2 = -2 * max_mode + 1; r2 < 2 * max_mode; r2 += 2)
        for (long s2 = -2 * max_mode + 1; s2 < 2 * max_mode; s2 += 2) {
            auto rhs = Rational(2) * ns_virasoro((r2 + s2) / 2);
            if (r2 + s2 == 0) rhs = rhs + id(c / Rational(3) * (Rational(r2 * r2, 4) - Rational(1, 4)));
            detail::compare_ops(gg, super_commutator(ns_supercurrent(r2), ns_supercurrent(s2)), rhs, sp, max_w2,
                                "r=" + Rational(r2, 2).to_string() + " s=" + Rational(s2, 2).to_string());
        }
    return {ll, lg, gg};
}

struct LabeledGenerator {
    std::string label;
    SuperDiffOp<Rational> op;
};

/// Basis generators of the NS super algebra: l(r)_{m,+}, l(r)_{m,-}, g(r)_n with r <= max_r, |m|, |n| <= max_mode.
inline std::vector<LabeledGenerator> ns_generators(long max_r, long max_mode) {
    std::vector<LabeledGenerator> out;
    for (long r = 0; r <= max_r; ++r) {
        for (long m = -max_mode; m <= max_mode; ++m) {
            out.push_back({"l(" + std::to_string(r) + ")_{" + std::to_string(m) + ",+}", embed_even(boson_generator<Rational>(r, m))});
            out.push_back({"l(" + std::to_string(r) + ")_{" + std::to_string(m) + ",-}",
                           embed_even(DiffOp<Rational>(), fermion_generator<Rational>(r, m))});
        }
        for (long n2 = -2 * max_mode + 1; n2 < 2 * max_mode; n2 += 2)
            out.push_back({"g(" + std::to_string(r) + ")_{" + Rational(n2, 2).to_string() + "}", odd_generator<Rational>(r, Rational(n2, 2))});
    }
    return out;
}

/// Defects over all unordered generator pairs. Pairs of opposite degree (the only ones that can carry a
/// central term) are rechecked on the larger window stable_w2.
struct ProjectivitySummary {
    long pairs = 0;
    long scalar = 0;
    long stable = 0;
    long antisymmetric = 0;
    std::vector<DefectReport<Rational>> failures;
    std::vector<DefectReport<Rational>> central;  // nonzero scalars
    [[nodiscard]] bool pass() const { return pairs > 0 && scalar == pairs && stable == pairs && antisymmetric == pairs; }
};

inline ProjectivitySummary projectivity_sweep(long max_r, long max_mode, long max_w2, long stable_w2) {
    ProjectivitySummary sum;
    auto gens = ns_generators(max_r, max_mode);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i; j < gens.size(); ++j) {
            ++sum.pairs;
            const auto& a = gens[i];
            const auto& b = gens[j];
            auto rep = projective_defect(a.op, b.op, max_w2, false, a.label + "," + b.label);
            if (!rep.scalar) {
                sum.failures.push_back(rep);
                continue;
            }
            ++sum.scalar;
            bool opposite = false;
            for (int c = 0; c < 4 && !opposite; ++c)
                for (const auto& [ka, pa] : a.op.at(c).terms())
                    for (int d = 0; d < 4; ++d)
                        for (const auto& [kb, pb] : b.op.at(d).terms())
                            if (ka.first + kb.first == 0) opposite = true;
            bool ok = true;
            if (opposite) {
                auto big = projective_defect(a.op, b.op, stable_w2, false, rep.pair);
                ok = big.scalar && big.value == rep.value;
                if (!ok) sum.failures.push_back(big);
            }
            if (ok) ++sum.stable;
            // defect(b, a) = -(-1)^{p(a)p(b)} defect(a, b)
            auto rev = projective_defect(b.op, a.op, 0, false, b.label + "," + a.label);
            int pa = a.op.parity(), pb = b.op.parity();
            Rational sign = pa * pb == 1 ? Rational(1) : Rational(-1);
            if (rev.value && rep.value && *rev.value == sign * *rep.value) ++sum.antisymmetric;
            else sum.failures.push_back(rev);
            if (rep.value && !rep.value->is_zero()) sum.central.push_back(rep);
        }
    return sum;
}

// --------------------------------------------------------------- twisted pairs

struct TwistedCenterReport {
    DefectReport<Cyclotomic> defect;
    std::string characters;
    bool product_trivial = false;
    bool series_pole_free = true;
};

/// ζ-regularized central term of [L̄^{(r,χ1,μ1)}(m), L̄^{(s,χ2,μ2)}(-m)]; expected to vanish.
inline TwistedCenterReport check_twisted_trivial_center(long r, long s, long m, const DirichletCharacter& chi1,
                                                        const DirichletCharacter& mu1, const DirichletCharacter& chi2,
                                                        const DirichletCharacter& mu2) {
    for (const auto* c : {&chi1, &mu1, &chi2, &mu2}) require_twist_character(*c, "check_twisted_trivial_center");
    DirichletCharacter prod = chi1 * mu1 * chi2 * mu2;
    if (prod.is_trivial()) throw std::invalid_argument("check_twisted_trivial_center: product character is trivial");
    TwistedCenterReport rep;
    rep.characters = chi1.label() + "," + mu1.label() + "," + chi2.label() + "," + mu2.label();
    long level = twist_level({chi1, mu1, chi2, mu2});
    auto a = twisted_family_operator(r, m, chi1, mu1, true, level);
    auto b = twisted_family_operator(s, -m, chi2, mu2, true, level);
    auto comm = super_commutator(a, b);
    auto reg = regularized_central(comm, chi1.modulus(), 2 * r + 2 * s + 4, false);
    rep.defect.pair = "L(" + std::to_string(r) + ")(" + std::to_string(m) + "),L(" + std::to_string(s) + ")(" +
                      std::to_string(-m) + ") " + rep.characters;
    rep.defect.scalar = reg.fitted;
    rep.defect.value = reg.central;
    rep.defect.expected = Cyclotomic(0);
    for (const auto& [x, y] : {std::pair{chi1, mu1}, std::pair{chi2, mu2}}) {
        if ((x * y).is_trivial()) continue;
        auto series = twisted_correction_series(x, y, 2);
        if (!series.coeff(-1).is_zero()) rep.series_pole_free = false;
    }
    rep.defect.pass = reg.fitted && reg.central.is_zero() && rep.series_pole_free;
    std::ostringstream os;
    os << "vacuum " << reg.vacuum << ", regularized one-particle sum " << reg.boson_sum;
    rep.defect.detail = os.str();
    return rep;
}

}  // namespace zreg
