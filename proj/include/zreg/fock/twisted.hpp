#pragma once

#include "zreg/fock/represent.hpp"
#include "zreg/number_theory/dirichlet.hpp"
#include "zreg/symbolic/genfunc.hpp"

#include <initializer_list>
#include <numeric>

namespace zreg {

/// Common cyclotomic level for a set of characters mod N: lcm(N, orders).
inline long twist_level(std::initializer_list<DirichletCharacter> chars) {
    long l = 1;
    for (const auto& c : chars) l = std::lcm(l, std::lcm(c.modulus(), c.order()));
    return l;
}

inline Cyclotomic at_level(const Cyclotomic& c, long level) { return c.is_rational() ? c : c.embed(level); }

inline void require_twist_character(const DirichletCharacter& chi, const char* who) {
    if (chi.is_trivial() || !chi.is_primitive())
        throw std::invalid_argument(std::string(who) + ": characters must be primitive and nontrivial");
}

/// h_χ(n) = χ(-n) h(n).
inline FockOp<Cyclotomic> twisted_boson_mode(const DirichletCharacter& chi, long n, long level) {
    return Cyclotomic(chi.value_at_level(-n, level)) * boson_mode<Cyclotomic>(n);
}

/// (-1)^r ½ L(-2r-1, χμ), the zero-mode shift of the corrected twisted quadratic.
inline Cyclotomic twisted_zero_mode_correction(long r, const DirichletCharacter& chi, const DirichletCharacter& mu, long level) {
    Cyclotomic l = l_value_neg(chi * mu, 2 * r + 2);
    Rational sign = r % 2 == 0 ? Rational(1, 2) : Rational(-1, 2);
    return at_level(l, level) * Cyclotomic(sign);
}

/// L^{(r,χ,μ)}(m) = ½ Σ_{j+k=m} χ(-j)μ(-k)(jk)^r :h(j)h(k):, optionally ζ-corrected at m = 0.
inline FockOp<Cyclotomic> twisted_family_operator(long r, long m, const DirichletCharacter& chi, const DirichletCharacter& mu,
                                                  bool corrected, long level) {
    require_twist_character(chi, "twisted_family_operator");
    require_twist_character(mu, "twisted_family_operator");
    if (chi.modulus() != mu.modulus()) throw std::invalid_argument("twisted_family_operator: characters need a common modulus");
    auto op = boson_quadratic<Cyclotomic>(m, [chi, mu, r, level](const Rational& j, const Rational& k) {
        Cyclotomic w = chi.value_at_level(-j.to_long(), level) * mu.value_at_level(-k.to_long(), level);
        if (w.is_zero()) return w;
        return w * Cyclotomic((j * k).pow(r) / Rational(2));
    });
    if (corrected && m == 0) op = op + FockOp<Cyclotomic>::scalar(twisted_zero_mode_correction(r, chi, mu, level));
    return op;
}

/// Same operator through the generating-function engine: Gauss-average the root-of-unity shifted symmetric
/// family over (a, b) with weights conj χ(a) conj μ(b) / (g(conj χ) g(conj μ)), then map each coefficient.
inline FockOp<Cyclotomic> twisted_family_via_engine(long r, long m, const DirichletCharacter& chi, const DirichletCharacter& mu,
                                                    long level) {
    require_twist_character(chi, "twisted_family_via_engine");
    require_twist_character(mu, "twisted_family_via_engine");
    long n = chi.modulus();
    DirichletCharacter cb = chi.conj(), mb = mu.conj();
    Cyclotomic norm = (at_level(gauss_sum(cb), level) * at_level(gauss_sum(mb), level)).inverse() *
                      Cyclotomic(factorial(r) * factorial(r) / Rational(4));
    struct Piece {
        FockOp<Cyclotomic> op;
        Cyclotomic weight;
    };
    std::vector<Piece> pieces;
    for (long a = 1; a <= n; ++a)
        for (long b = 1; b <= n; ++b) {
            Cyclotomic w = cb.value_at_level(a, level) * mb.value_at_level(b, level);
            if (w.is_zero()) continue;
            auto coeff = extract_gf_coeff<Cyclotomic>(GfFamily::TwistedDPlus, r, r, Rational(-m), a, b, n);
            pieces.push_back({represent_gf(coeff, FermionSector::None), w * norm});
        }
    // the pieces carry level-N scalars; evaluate them with unit input and lift to the common level
    return FockOp<Cyclotomic>(2 * m, 0, [pieces, level](const FockState& s, const Cyclotomic& c, StateVector<Cyclotomic>& out) {
        for (const auto& p : pieces) {
            StateVector<Cyclotomic> img;
            p.op.apply(s, Cyclotomic(1), img);
            for (const auto& [t, v] : img) add_to(out, t, at_level(v, level) * p.weight * c);
        }
    });
}

}  // namespace zreg
