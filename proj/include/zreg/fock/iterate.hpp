#pragma once

#include "zreg/fock/fock.hpp"
#include "zreg/kernel/series.hpp"

#include <string>
#include <vector>

namespace zreg {

/// Free generators of W: h(-1)·vac (weight 1) and φ(-1/2)·vac (weight 1/2).
enum class FreeGenerator { Boson, Fermion };

inline Rational generator_weight(FreeGenerator g) { return g == FreeGenerator::Boson ? Rational(1) : Rational(1, 2); }
inline const char* generator_name(FreeGenerator g) { return g == FreeGenerator::Boson ? "h(-1)vac" : "phi(-1/2)vac"; }

namespace detail {

inline FockState generator_state(FreeGenerator g) {
    FockState s;
    if (g == FreeGenerator::Boson) s.bosons = {1};
    else s.fermions2 = {1};
    return s;
}

/// u_n for Y(u,z) = Σ u_n z^{-n-1}: h(n) for the boson, φ(n+1/2) for the fermion.
inline void apply_generator_mode(FreeGenerator g, long n, const FockState& s, const Rational& c, StateVector<Rational>& out) {
    if (g == FreeGenerator::Boson) apply_h(n, s, c, out);
    else apply_phi(FermionSector::NS, 2 * n + 1, s, c, out);
}

/// (e^x - 1)^e e^{w x} through x^order; e may be negative.
inline RatSeries shifted_power(long e, const Rational& w, long order) {
    long pad = order + 2 * std::abs(e) + 4;
    RatSeries base = RatSeries::exp_linear(Rational(1), pad) - RatSeries::constant(Rational(1), pad);
    RatSeries p = RatSeries::constant(Rational(1), pad);
    for (long i = 0; i < std::abs(e); ++i) p = p * base;
    RatSeries num = RatSeries::exp_linear(w, pad);
    if (e >= 0) return (num * p).truncated(order);
    return expand_quotient(num, p, order);
}

/// Σ_{j_u + j_v = M} c(j_u, j_v) :X_u(j_u) X_v(j_v): for free generators u, v (M doubled).
inline FockOp<Rational> generator_bilinear(FreeGenerator u, FreeGenerator v, long m2, const Coeff2<Rational>& c) {
    using G = FreeGenerator;
    if (u == G::Boson && v == G::Boson) return boson_quadratic<Rational>(m2 / 2, c);
    if (u == G::Fermion && v == G::Fermion) return fermion_quadratic<Rational>(FermionSector::NS, m2 / 2, c);
    if (u == G::Boson) return mixed_quadratic<Rational>(FermionSector::NS, m2, [c](const Rational& f, const Rational& b) { return c(b, f); });
    return mixed_quadratic<Rational>(FermionSector::NS, m2, c);
}

}  // namespace detail

struct IterateMismatch {
    long x_power = 0;
    Rational mode;
    std::string state;
};

struct IterateReport {
    std::string pair;
    long x_order = 0;
    long max_w2 = 0;
    long compared = 0;
    long mismatches = 0;
    std::vector<IterateMismatch> examples;
    std::vector<std::pair<long, Rational>> correction;  // (power of x, coefficient) of the scalar correction
    [[nodiscard]] bool pass() const { return mismatches == 0 && compared > 0; }
};

/// Checks X(Y[u,x]v, y) = :X(u, e^x y) X(v, y): + c_{u,v} e^{x wt u}/(e^x - 1)^{wt u + wt v} coefficientwise in
/// x^ℓ (ℓ <= x_order) and y^{-M} (|M| <= max_mode), comparing operators on all states of weight <= max_w2/2.
/// Y[u,x]v is assembled from the actual mode action u_n v; only free generator pairs are accepted.
inline IterateReport iterate_vertex_check(FreeGenerator u, FreeGenerator v, long x_order, long max_w2, long max_mode = 3) {
    IterateReport rep;
    rep.pair = std::string(generator_name(u)) + "," + generator_name(v);
    rep.x_order = x_order;
    rep.max_w2 = max_w2;
    Rational wu = generator_weight(u), wv = generator_weight(v);
    Rational wsum = wu + wv;
    FockState vs = detail::generator_state(v);

    // u_n v for n >= 0: a multiple of the vacuum at n = wt u + wt v - 1 (free pair), zero otherwise
    long pole = wsum.is_integer() ? wsum.to_long() : 0;
    RatSeries vac_series(1, x_order);
    Rational pairing(0);
    for (long n = 0; n <= 3; ++n) {
        StateVector<Rational> img;
        detail::apply_generator_mode(u, n, vs, Rational(1), img);
        for (const auto& [s, c] : img) {
            if (!s.is_vacuum()) throw std::domain_error("iterate_vertex_check: not a free pair");
            vac_series += detail::shifted_power(-n - 1, wu, x_order) * c;
            if (n == pole - 1) pairing = c;
        }
    }
    // u_{-d-1} v = κ_d X_u(-p) v, with κ_d read off the mode action
    std::vector<Rational> kappa;
    for (long d = 0; d <= x_order; ++d) {
        StateVector<Rational> img;
        detail::apply_generator_mode(u, -d - 1, vs, Rational(1), img);
        if (img.size() > 1) throw std::logic_error("iterate_vertex_check: unexpected iterate state");
        kappa.push_back(img.empty() ? Rational(0) : img.begin()->second);
    }

    RatSeries corr = pole == 0 ? RatSeries(1, x_order) : detail::shifted_power(-pole, wu, x_order) * pairing;
    for (const auto& [e, c] : corr.terms()) rep.correction.emplace_back(e, c);
    std::vector<RatSeries> series;
    for (long d = 0; d <= x_order; ++d) series.push_back(detail::shifted_power(d, wu, x_order));

    auto basis = fock_basis_upto(FockSpace::ns(), max_w2);
    const long m2_step = 2;
    long m2_first = wsum.is_integer() ? -2 * max_mode : -2 * max_mode + 1;
    for (long ell = -pole; ell <= x_order; ++ell) {
        for (long m2 = m2_first; m2 <= 2 * max_mode; m2 += m2_step) {
            FockOp<Rational> lhs = FockOp<Rational>::zero(m2, 0);
            if (m2 == 0 && !vac_series.coeff(ell).is_zero()) lhs = FockOp<Rational>::scalar(vac_series.coeff(ell));
            for (long d = 0; d <= ell; ++d) {
                Rational w = series[static_cast<std::size_t>(d)].coeff(ell) * kappa[static_cast<std::size_t>(d)];
                if (w.is_zero()) continue;
                Rational shift = -wu;
                lhs = lhs + detail::generator_bilinear(u, v, m2, [w, shift, d](const Rational& ju, const Rational&) {
                          return w * gen_binomial(-ju + shift, d);
                      });
            }
            FockOp<Rational> rhs = FockOp<Rational>::zero(m2, 0);
            if (ell >= 0) {
                Rational fact = factorial(ell);
                rhs = detail::generator_bilinear(u, v, m2, [ell, fact](const Rational& ju, const Rational&) {
                    return (-ju).pow(ell) / fact;
                });
            }
            if (m2 == 0) {
                Rational k = corr.coeff(ell);
                if (!k.is_zero()) rhs = rhs + FockOp<Rational>::scalar(k);
            }
            for (const auto& s : basis) {
                ++rep.compared;
                if (lhs(s) == rhs(s)) continue;
                ++rep.mismatches;
                if (rep.examples.size() < 5) rep.examples.push_back({ell, Rational(m2, 2), s.to_string()});
            }
        }
    }
    return rep;
}

}  // namespace zreg
