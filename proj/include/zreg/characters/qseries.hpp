#pragma once

#include "zreg/kernel/linalg.hpp"
#include "zreg/kernel/series.hpp"
#include "zreg/number_theory/bernoulli.hpp"

#include <string>
#include <vector>

namespace zreg {

/// A q-series whose exponents lie in (1/den)Z; order is the largest q-exponent kept (inclusive).
using QSeries = RatSeries;

namespace detail {

inline Rational pow2(long e) {
    mpz_class p = mpz_class(1) << std::abs(e);
    return e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

/// Σ_{d | n, d odd if odd_only} d^e.
inline Rational divisor_power_sum(long n, long e, bool odd_only = false) {
    Rational s(0);
    for (long d = 1; d <= n; ++d)
        if (n % d == 0 && (!odd_only || d % 2 == 1)) s += Rational(d).pow(e);
    return s;
}

}  // namespace detail

/// G_k(q) = ζ(1-k)/2 + Σ σ_{k-1}(n) q^n for even k >= 2.
inline QSeries eisenstein(long k, long order) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("eisenstein: weight must be even and >= 2");
    QSeries g(1, order);
    g.set(0, zeta_neg(k - 1) / Rational(2));
    for (long n = 1; n <= order; ++n) g.set(n, detail::divisor_power_sum(n, k - 1));
    return g;
}

/// F_{2j}(q) = G_{2j}(q^{1/2}) - 2^{2j-1} G_{2j}(q), exponents in (1/2)Z.
inline QSeries level_two(long j, long order) {
    if (j < 1) throw std::invalid_argument("level_two: j must be positive");
    QSeries half = eisenstein(2 * j, 2 * order);
    QSeries at_half(2, 2 * order);
    for (const auto& [n, c] : half.terms()) at_half.set(n, c);
    return at_half - eisenstein(2 * j, order) * detail::pow2(2 * j - 1);
}

struct SeriesComparison {
    std::string name;
    QSeries lhs, rhs;
    long compared = 0;
    std::optional<Rational> first_mismatch;  // exponent
    [[nodiscard]] bool pass() const { return !first_mismatch && compared > 0; }
};

inline SeriesComparison compare_series(std::string name, const QSeries& a, const QSeries& b) {
    SeriesComparison cmp{std::move(name), a, b, 0, std::nullopt};
    long den = std::lcm(a.den(), b.den());
    Rational top = std::min(a.prec_exponent(), b.prec_exponent());
    Rational low = std::min(Rational(a.valuation(), a.den()), Rational(b.valuation(), b.den()));
    for (Rational e = low; e <= top; e += Rational(1, den)) {
        ++cmp.compared;
        if (a.coeff(e) != b.coeff(e)) {
            cmp.first_mismatch = e;
            break;
        }
    }
    return cmp;
}

/// Odd-divisor sums Σ_{d | l, d odd} d^{2j-1} q^l against F_{2j}(q^2) - (1 - 2^{2j-1}) ζ(1-2j)/2.
inline SeriesComparison level_two_identity(long j, long order) {
    QSeries lhs(1, order);
    for (long l = 1; l <= order; ++l) lhs.set(l, detail::divisor_power_sum(l, 2 * j - 1, true));
    QSeries f = level_two(j, order).substitute_power(2).truncated_at(Rational(order));
    Rational shift = (Rational(1) - detail::pow2(2 * j - 1)) * zeta_neg(2 * j - 1) / Rational(2);
    QSeries rhs = f - QSeries::constant(shift, order);
    return compare_series("form4 j=" + std::to_string(j), lhs, rhs);
}

/// q^{-1/48} Π (1 + q^{n-1/2}) against η(q)^2 / (η(q^2) η(q^{1/2})), both with exponents in (1/48)Z.
inline SeriesComparison eta_quotient_check(long order) {
    // work in t = q^{1/2}, then move to q^{1/48}
    long tord = 2 * order;
    QSeries prod = QSeries::constant(Rational(1), tord);
    for (long n = 1; 2 * n - 1 <= tord; ++n) prod = prod * (QSeries::constant(Rational(1), tord) + QSeries::monomial(Rational(1), 2 * n - 1, 1, tord));
    auto one_minus = [tord](long step) {
        QSeries p = QSeries::constant(Rational(1), tord);
        for (long n = step; n <= tord; n += step) p = p * (QSeries::constant(Rational(1), tord) - QSeries::monomial(Rational(1), n, 1, tord));
        return p;
    };
    QSeries eta_body = one_minus(2) * one_minus(2) * (one_minus(4) * one_minus(1)).inverse();
    // 2·(1/24) - 2/24 - (1/2)(1/24)
    Rational net = Rational(2, 24) - Rational(2, 24) - Rational(1, 48);
    auto to48 = [order](const QSeries& t, const Rational& shift) {
        QSeries q(48, 48 * order);
        long s = (shift * Rational(48)).to_long();
        for (const auto& [n, c] : t.terms())
            if (24 * n + s <= 48 * order) q.set(24 * n + s, c);
        return q;
    };
    return compare_series("eta quotient", to48(prod, Rational(-1, 48)), to48(eta_body.truncated(tord), net));
}

/// Σ_{n,k >= 1} (-1)^{k+1} a^e k^p q^{ak}, a = n - 1/2: the half-integer log-derivative sums of the NS product.
inline QSeries half_integer_log_sum(long e, long p, long order) {
    QSeries s(2, 2 * order);
    for (long n2 = 1; n2 <= 2 * order; n2 += 2) {
        Rational a(n2, 2);
        for (long k = 1; k * n2 <= 2 * order; ++k) {
            Rational c = a.pow(e) * Rational(k).pow(p);
            s.set(k * n2, s.coeff_num(k * n2) + (k % 2 == 1 ? c : -c));
        }
    }
    return s;
}

/// ∂_{τ_{2j-1}} log F at the higher times zero, against F_{2j}(q)/2^{2j-1} - F_{2j}(q^2)/2^{2j-2}.
inline SeriesComparison quasimod_form3_check(long j, long order) {
    QSeries lhs = half_integer_log_sum(2 * j - 1, 0, order) - QSeries::constant(hurwitz_half(2 * j) / Rational(2), order);
    QSeries f = level_two(j, order);
    QSeries f2 = level_two(j, order).substitute_power(2).truncated_at(Rational(order));
    QSeries rhs = f * (Rational(1) / detail::pow2(2 * j - 1)) - f2 * (Rational(1) / detail::pow2(2 * j - 2));
    return compare_series("form3 j=" + std::to_string(j), lhs, rhs);
}

struct MembershipReport {
    std::vector<long> js;
    long weight = 0;  // w in F_{2w}
    long constraints = 0;
    long unknowns = 0;
    std::vector<Rational> coefficients;
    Rational residual;  // sum of |row residuals|, exactly zero on success
    bool consistent = false;
    [[nodiscard]] long surplus() const { return constraints - unknowns; }
    [[nodiscard]] bool pass() const { return consistent && residual.is_zero() && surplus() >= 5; }
};

/// r-fold mixed derivative of log F (r = js.size() >= 2) against the span of (q d/dq)^{r-1} F_{2w}(q) and
/// (q d/dq)^{r-1} F_{2w}(q^2), w = Σ j - r + 1, solved exactly coefficient by coefficient.
inline MembershipReport quasimod_form6_check(const std::vector<long>& js, long order) {
    long r = static_cast<long>(js.size());
    if (r < 2) throw std::invalid_argument("quasimod_form6_check: need at least two derivatives");
    long sum = 0;
    for (long j : js) {
        if (j < 1) throw std::invalid_argument("quasimod_form6_check: indices must be positive");
        sum += j;
    }
    MembershipReport rep;
    rep.js = js;
    rep.weight = sum - r + 1;
    if (rep.weight < 1) throw std::invalid_argument("quasimod_form6_check: no admissible weight");
    QSeries lhs = half_integer_log_sum(2 * sum - r, r - 1, order);
    auto deriv = [r](QSeries s) {
        for (long i = 0; i < r - 1; ++i) s = s.euler_derivative();
        return s;
    };
    std::vector<QSeries> span = {deriv(level_two(rep.weight, order)),
                                 deriv(level_two(rep.weight, order).substitute_power(2).truncated_at(Rational(order)))};
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (long n2 = 0; n2 <= 2 * order; ++n2) {
        Rational e(n2, 2);
        std::vector<Rational> row;
        for (const auto& s : span) row.push_back(s.coeff(e));
        a.push_back(row);
        b.push_back(lhs.coeff(e));
    }
    rep.constraints = static_cast<long>(a.size());
    rep.unknowns = static_cast<long>(span.size());
    auto res = solve_linear(a, b);
    rep.consistent = res.consistent;
    rep.coefficients = res.x;
    rep.residual = Rational(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational row(0);
        for (std::size_t k = 0; k < span.size(); ++k) row += a[i][k] * res.x[k];
        rep.residual += (row - b[i]).abs();
    }
    return rep;
}

}  // namespace zreg
