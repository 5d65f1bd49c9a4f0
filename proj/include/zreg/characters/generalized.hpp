#pragma once

#include "zreg/characters/qseries.hpp"
#include "zreg/fock/represent.hpp"
#include "zreg/kernel/multiseries.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace zreg {

enum class CharacterSector { Boson, NSFermion, RamondFermion, FullW };

/// Ramond vacuum exponents: the displayed values (equal to the NS ones) or the ζ-regularized -ζ(1-2i)/2.
enum class RamondPrefactor { Displayed, Standard };

inline const char* sector_name(CharacterSector s) {
    switch (s) {
        case CharacterSector::Boson: return "boson";
        case CharacterSector::NSFermion: return "ns";
        case CharacterSector::RamondFermion: return "ramond";
        case CharacterSector::FullW: return "full";
    }
    return "?";
}

inline std::optional<CharacterSector> parse_sector(const std::string& s) {
    for (auto x : {CharacterSector::Boson, CharacterSector::NSFermion, CharacterSector::RamondFermion, CharacterSector::FullW})
        if (s == sector_name(x)) return x;
    return std::nullopt;
}

/// Body in q_1, q_3, ..., q_{2K-1} (exponent denominators 2^{2i-1} when half-integer modes occur),
/// times Π q_{2i-1}^{prefactor[i]}.
struct MultiQSeries {
    MultiSeries<Rational> body;
    std::vector<Rational> prefactor;
};

namespace detail {

inline bool has_half_modes(CharacterSector s) { return s == CharacterSector::NSFermion || s == CharacterSector::FullW; }

inline std::vector<std::string> character_vars(long k) {
    std::vector<std::string> v;
    for (long i = 1; i <= k; ++i) v.push_back("q" + std::to_string(2 * i - 1));
    return v;
}

inline std::vector<long> character_dens(CharacterSector s, long k) {
    std::vector<long> d;
    for (long i = 1; i <= k; ++i) d.push_back(has_half_modes(s) ? (1L << (2 * i - 1)) : 1L);
    return d;
}

/// cap_i = floor(W^{2i-1} den_i): Σ λ^{2i-1} <= (Σ λ)^{2i-1} for positive parts.
inline std::vector<long> character_caps(const Rational& max_weight, const std::vector<long>& dens) {
    std::vector<long> caps;
    for (std::size_t i = 0; i < dens.size(); ++i) {
        caps.push_back((max_weight.pow(static_cast<long>(2 * i + 1)) * Rational(dens[i])).floor_long());
    }
    return caps;
}

/// Exponent numerators of one mode of size a: (a^{2i-1} den_i)_i.
inline std::vector<long> mode_exponents(const Rational& a, const std::vector<long>& dens) {
    std::vector<long> e;
    for (std::size_t i = 0; i < dens.size(); ++i) e.push_back((a.pow(static_cast<long>(2 * i + 1)) * Rational(dens[i])).to_long());
    return e;
}

inline std::vector<Rational> sector_prefactor(CharacterSector s, long k, RamondPrefactor rp) {
    std::vector<Rational> p;
    for (long i = 1; i <= k; ++i) {
        Rational boson = zeta_neg(2 * i - 1) / Rational(2);
        Rational ns = -hurwitz_half(2 * i) / Rational(2);
        switch (s) {
            case CharacterSector::Boson: p.push_back(boson); break;
            case CharacterSector::NSFermion: p.push_back(ns); break;
            case CharacterSector::FullW: p.push_back(boson + ns); break;
            case CharacterSector::RamondFermion:
                p.push_back(rp == RamondPrefactor::Displayed ? ns : -zeta_neg(2 * i - 1) / Rational(2));
                break;
        }
    }
    return p;
}

/// Π over modes a of (1 - x_a)^{-1} (bosons) or (1 + x_a) (fermions), x_a = Π q_{2i-1}^{a^{2i-1}}.
inline MultiSeries<Rational> mode_product(const MultiSeries<Rational>& acc0, const std::vector<Rational>& modes, bool fermionic) {
    MultiSeries<Rational> acc = acc0;
    auto one = MultiSeries<Rational>::one(acc0.vars(), acc0.caps(), acc0.dens());
    for (const auto& a : modes) {
        auto e = mode_exponents(a, one.dens());
        MultiSeries<Rational> factor = one;
        std::vector<long> pw(e.size(), 0);
        for (long k = 1; k <= (fermionic ? 1 : std::numeric_limits<long>::max()); ++k) {
            for (std::size_t i = 0; i < e.size(); ++i) pw[i] = k * e[i];
            if (!one.in_window(pw)) break;
            factor.add_term(pw, Rational(fermionic && k % 2 == 0 ? -1 : 1));
        }
        acc = acc * factor;
    }
    return acc;
}

inline std::vector<Rational> modes_upto(const Rational& max_weight, bool half) {
    std::vector<Rational> m;
    for (Rational a = half ? Rational(1, 2) : Rational(1); a <= max_weight; a += Rational(1)) m.push_back(a);
    return m;
}

}  // namespace detail

/// Product formula for the generalized character in K variables, all monomials with q_1-exponent <= max_weight.
inline MultiQSeries generalized_character(CharacterSector sector, long k, const Rational& max_weight,
                                          RamondPrefactor rp = RamondPrefactor::Displayed) {
    if (k < 1) throw std::invalid_argument("generalized_character: need at least one variable");
    auto dens = detail::character_dens(sector, k);
    auto one = MultiSeries<Rational>::one(detail::character_vars(k), detail::character_caps(max_weight, dens), dens);
    MultiQSeries out{one, detail::sector_prefactor(sector, k, rp)};
    if (sector == CharacterSector::Boson || sector == CharacterSector::FullW)
        out.body = detail::mode_product(out.body, detail::modes_upto(max_weight, false), false);
    if (sector == CharacterSector::NSFermion || sector == CharacterSector::FullW)
        out.body = detail::mode_product(out.body, detail::modes_upto(max_weight, true), true);
    if (sector == CharacterSector::RamondFermion)
        out.body = detail::mode_product(out.body, detail::modes_upto(max_weight, false), true);
    return out;
}

struct TraceReport {
    std::string sector;
    long k = 0;
    Rational max_weight;
    long states = 0;
    long monomials = 0;
    bool body_equal = false;
    bool diagonal = true;  // the grading operators act diagonally on the basis
    std::vector<Rational> trace_prefactor, product_prefactor;
    std::string mismatch;
    [[nodiscard]] bool pass() const { return body_equal && diagonal && trace_prefactor == product_prefactor; }
};

namespace detail {

inline FockSpace character_space(CharacterSector s) {
    switch (s) {
        case CharacterSector::Boson: return FockSpace::heisenberg();
        case CharacterSector::NSFermion: return FockSpace::ns_fermions();
        case CharacterSector::RamondFermion: return FockSpace::ramond_fermions(false);
        case CharacterSector::FullW: return FockSpace::ns();
    }
    return FockSpace::heisenberg();
}

/// (-1)^{i-1}(L̄^{(i-1)}(0) + 𝓛̄^{(i-1)}(0)), restricted to the families present in the sector.
inline FockOp<Rational> grading_operator(CharacterSector s, long i) {
    long r = i - 1;
    FockOp<Rational> op = FockOp<Rational>::zero(0, 0);
    if (s == CharacterSector::Boson || s == CharacterSector::FullW)
        op = op + family_operator<Rational>(zeta_correct(FamilySpec{Family::Boson, r, 0}));
    if (s == CharacterSector::NSFermion || s == CharacterSector::FullW)
        op = op + family_operator<Rational>(zeta_correct(FamilySpec{Family::Fermion, r, 0}));
    return r % 2 == 0 ? op : Rational(-1) * op;
}

}  // namespace detail

/// Trace over the Fock basis against the product formula. For bosons and NS fermions the exponents are the
/// eigenvalues of the ζ-corrected zero modes, read off the operators (vacuum constant included). The Ramond
/// fermion zero modes carry no correction, so there the exponent is Σ n^{2i-1} plus the chosen vacuum value.
inline TraceReport trace_vs_product(CharacterSector sector, long k, const Rational& max_weight,
                                    RamondPrefactor rp = RamondPrefactor::Displayed) {
    TraceReport rep;
    rep.sector = sector_name(sector);
    rep.k = k;
    rep.max_weight = max_weight;
    MultiQSeries prod = generalized_character(sector, k, max_weight, rp);
    rep.product_prefactor = prod.prefactor;
    const auto& dens = prod.body.dens();
    MultiSeries<Rational> trace(prod.body.vars(), prod.body.caps(), dens);

    std::vector<FockOp<Rational>> grading;
    if (sector != CharacterSector::RamondFermion)
        for (long i = 1; i <= k; ++i) grading.push_back(detail::grading_operator(sector, i));
    auto eigen = [&](const FockState& s, long i) -> std::optional<Rational> {
        if (sector == CharacterSector::RamondFermion) {
            Rational v = prod.prefactor[static_cast<std::size_t>(i - 1)];
            for (long f2 : s.fermions2) v += Rational(f2 / 2).pow(2 * i - 1);
            return v;
        }
        auto img = grading[static_cast<std::size_t>(i - 1)](s);
        if (img.empty()) return Rational(0);
        if (img.size() != 1 || img.begin()->first != s) return std::nullopt;
        return img.begin()->second;
    };

    FockState vac;
    for (long i = 1; i <= k; ++i) rep.trace_prefactor.push_back(eigen(vac, i).value_or(Rational(0)));
    long max_w2 = (max_weight * Rational(2)).floor_long();
    for (const auto& s : fock_basis_upto(detail::character_space(sector), max_w2)) {
        ++rep.states;
        std::vector<long> e;
        for (long i = 1; i <= k; ++i) {
            auto v = eigen(s, i);
            if (!v) {
                rep.diagonal = false;
                rep.mismatch = "not diagonal on " + s.to_string();
                return rep;
            }
            Rational num = (*v - rep.trace_prefactor[static_cast<std::size_t>(i - 1)]) * Rational(dens[static_cast<std::size_t>(i - 1)]);
            if (!num.is_integer()) {
                rep.mismatch = "exponent off the lattice on " + s.to_string();
                return rep;
            }
            e.push_back(num.to_long());
        }
        if (!trace.in_window(e)) {
            rep.mismatch = "state outside the product window: " + s.to_string();
            return rep;
        }
        trace.add_term(e, Rational(1));
    }
    rep.monomials = static_cast<long>(trace.terms().size());
    rep.body_equal = trace == prod.body;
    if (!rep.body_equal) {
        for (const auto& [e, c] : prod.body.terms())
            if (trace.coeff(e) != c) {
                rep.mismatch = "product term " + std::to_string(e[0]) + "/" + std::to_string(dens[0]) + " differs";
                break;
            }
        if (rep.mismatch.empty()) rep.mismatch = "trace has extra terms";
    }
    return rep;
}

/// Setting the higher times to zero: the q_1 marginal of the character body.
inline QSeries q1_marginal(const MultiQSeries& m) {
    long den = m.body.dens()[0];
    QSeries out(den, m.body.caps()[0]);
    for (const auto& [e, c] : m.body.terms()) out.set(e[0], out.coeff_num(e[0]) + c);
    return out;
}

}  // namespace zreg
