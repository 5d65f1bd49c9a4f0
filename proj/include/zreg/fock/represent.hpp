#pragma once

#include "zreg/fock/fock.hpp"
#include "zreg/number_theory/bernoulli.hpp"
#include "zreg/symbolic/diffop.hpp"

#include <optional>

namespace zreg {

namespace detail {

/// Single t-degree (doubled) shared by every term of x; throws on inhomogeneous input.
template <class S>
std::optional<long> common_degree2(const SuperDiffOp<S>& x) {
    std::optional<long> k2;
    for (int c = 0; c < 4; ++c)
        for (const auto& [key, p] : x.at(c).terms()) {
            if (k2 && *k2 != key.first) throw std::domain_error("represent: operator is not homogeneous in t");
            k2 = key.first;
        }
    return k2;
}

inline FermionSector sector_of_degree2(long k2) { return k2 % 2 == 0 ? FermionSector::Ramond : FermionSector::NS; }

}  // namespace detail

/// Free-field image of an element without normalization: ∂θθ t^p F(D)D goes to Σ F(-b):h(a)h(b):,
/// θ∂θ t^p F(D) to ½ Σ F(-s):φ(r)φ(s):, and the odd pair (θ t^n P(D)D, ∂θ t^n P(-D-n)) to
/// Σ P(-k) φ(j)h(k). Homogeneous parity required.
template <class S>
FockOp<S> represent_gf(const SuperDiffOp<S>& x, FermionSector sector = FermionSector::NS) {
    auto k2 = detail::common_degree2(x);
    int parity = x.is_zero() ? 0 : x.parity();
    if (!k2) return FockOp<S>::zero(0, parity);
    using Poly = Polynomial<S>;
    if (parity == 0) {
        if (*k2 % 2 != 0) throw std::domain_error("represent: even operators have integral degree");
        long m = *k2 / 2;
        FockOp<S> out = FockOp<S>::zero(*k2, 0);
        // a twist ζ^{cD} is a function of D and evaluates to ζ^{-cb} like the rest of the symbol
        const auto& bos = x[Comp::DthTh];
        if (!bos.is_zero()) {
            std::vector<std::pair<long, Poly>> parts;
            for (const auto& [key, p] : bos.terms()) parts.emplace_back(key.second, detail::strip_right_D(p));
            long n = bos.modulus();
            out = out + boson_quadratic<S>(m, [parts, n](const Rational&, const Rational& b) {
                      S v(0);
                      for (const auto& [tw, f] : parts) {
                          S val = f(S(-b));
                          if (tw != 0) val = val * detail::root_of_unity<S>(n, -tw * b.to_long());
                          v += val;
                      }
                      return v;
                  });
        }
        const auto& fer = x[Comp::ThDth].terms();
        if (!fer.empty()) {
            if (x[Comp::ThDth].is_twisted()) throw std::domain_error("represent: twisted fermion bilinears are not supported");
            if (sector == FermionSector::None) throw std::invalid_argument("represent: fermion part needs a fermion sector");
            Poly f = fer.begin()->second;
            out = out + fermion_quadratic<S>(sector, m, [f](const Rational&, const Rational& s) {
                      return f(S(-s)) * S(Rational(1, 2));
                  });
        }
        return out;
    }
    if (x[Comp::Th].is_twisted() || x[Comp::Dth].is_twisted()) throw std::domain_error("represent: twisted odd operators are not supported");
    const auto& lower = x[Comp::Th].terms();
    const auto& upper = x[Comp::Dth].terms();
    Poly p = upper.empty() ? Poly() : detail::reflect(upper.begin()->second, *k2);
    Poly th = lower.empty() ? Poly() : lower.begin()->second;
    if (!(th == p * Poly::x())) throw std::domain_error("represent: odd operator is not of the γ-fixed form");
    return mixed_quadratic<S>(detail::sector_of_degree2(*k2), *k2,
                              [p](const Rational&, const Rational& k) { return p(S(-k)); });
}

/// Normalized image ζ4^phase · op: -½ on the ∂θθ block, 1 on θ∂θ, ζ4 on odd operators.
template <class S>
struct RepImage {
    FockOp<S> op;
    int phase = 0;  // power of a fixed primitive 4th root of unity
};

template <class S>
RepImage<S> represent(const SuperDiffOp<S>& x, FermionSector sector = FermionSector::NS) {
    int parity = x.is_zero() ? 0 : x.parity();
    if (parity == 1) return {represent_gf(x, sector), 1};
    SuperDiffOp<S> b, f;
    b[Comp::DthTh] = x[Comp::DthTh];
    f[Comp::ThDth] = x[Comp::ThDth];
    FockOp<S> out = S(Rational(-1, 2)) * represent_gf(b, sector);
    if (!f.is_zero()) out = out + represent_gf(f, sector);
    return {out, 0};
}

// ------------------------------------------------------------- closed forms

enum class Family { Boson, Fermion, Odd };

/// L^{(r)}(m), 𝓛^{(r)}(m) or G^{(r)}(n); index2 is twice the mode index.
struct FamilySpec {
    Family family = Family::Boson;
    long r = 0;
    long index2 = 0;
    FermionSector sector = FermionSector::NS;
    bool corrected = false;

    [[nodiscard]] std::string label() const {
        const char* base = family == Family::Boson ? "L" : family == Family::Fermion ? "Lf" : "G";
        std::ostringstream os;
        os << base << (corrected ? "bar" : "") << "^(" << r << ")(" << Rational(index2, 2) << ")";
        return os.str();
    }
};

inline FamilySpec zeta_correct(FamilySpec spec) {
    if (spec.family == Family::Odd) throw std::domain_error("zeta_correct: odd operators carry no vacuum correction");
    if (spec.family == Family::Fermion && spec.sector != FermionSector::NS)
        throw std::domain_error("zeta_correct: fermion correction is defined for the NS sector");
    spec.corrected = true;
    return spec;
}

/// Scalar added to the zero mode by zeta_correct.
inline Rational zero_mode_correction(const FamilySpec& spec) {
    if (!spec.corrected || spec.index2 != 0) return Rational(0);
    Rational sign = spec.r % 2 == 0 ? Rational(1) : Rational(-1);
    if (spec.family == Family::Boson) return sign * zeta_neg(2 * spec.r + 1) / Rational(2);
    return -sign * hurwitz_half(2 * spec.r + 2) / Rational(2);
}

template <class S = Rational>
FockOp<S> family_operator(const FamilySpec& spec) {
    long r = spec.r;
    FockOp<S> op;
    switch (spec.family) {
        case Family::Boson:
            if (spec.index2 % 2 != 0) throw std::invalid_argument("family_operator: boson modes are integral");
            op = boson_quadratic<S>(spec.index2 / 2, [r](const Rational& j, const Rational& k) {
                return S((j * k).pow(r) / Rational(2));
            });
            break;
        case Family::Fermion:
            if (spec.index2 % 2 != 0) throw std::invalid_argument("family_operator: fermion bilinears have integral modes");
            op = fermion_quadratic<S>(spec.sector, spec.index2 / 2, [r](const Rational& j, const Rational& k) {
                return S(-j.pow(r + 1) * k.pow(r) / Rational(2));
            });
            break;
        case Family::Odd: {
            FermionSector sec = detail::sector_of_degree2(spec.index2);
            if (sec != spec.sector) throw std::invalid_argument("family_operator: mode index does not match the sector");
            op = mixed_quadratic<S>(sec, spec.index2, [r](const Rational& j, const Rational&) { return S((-j).pow(r)); });
            break;
        }
    }
    Rational shift = zero_mode_correction(spec);
    if (!shift.is_zero()) op = op + FockOp<S>::scalar(S(shift));
    return op;
}

template <class S = Rational>
FockOp<S> virasoro_boson(long m) {
    return family_operator<S>({Family::Boson, 0, 2 * m});
}

/// NS superconformal generators L = L^(0) + 𝓛^(0), G = G^(0), central charge 3/2.
template <class S = Rational>
FockOp<S> ns_virasoro(long m) {
    return family_operator<S>({Family::Boson, 0, 2 * m}) + family_operator<S>({Family::Fermion, 0, 2 * m});
}

template <class S = Rational>
FockOp<S> ns_supercurrent(long n2) {
    return family_operator<S>({Family::Odd, 0, n2});
}

}  // namespace zreg
