#pragma once

#include "zreg/kernel/rational.hpp"
#include "zreg/kernel/series.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace zreg {

/// B_n with B_1 = -1/2, from sum_{k<=n} C(n+1,k) B_k = 0. Memoized.
inline Rational bernoulli(long n) {
    if (n < 0) throw std::invalid_argument("bernoulli: negative index");
    static std::mutex mu;
    static std::vector<Rational> memo{Rational(1)};
    std::lock_guard lock(mu);
    while (static_cast<long>(memo.size()) <= n) {
        long m = static_cast<long>(memo.size());
        Rational s(0);
        for (long k = 0; k < m; ++k) s += binomial(m + 1, k) * memo[static_cast<std::size_t>(k)];
        memo.push_back(-s / Rational(m + 1));
    }
    return memo[static_cast<std::size_t>(n)];
}

/// Bernoulli polynomial B_n(x).
inline Rational bernoulli_poly(long n, const Rational& x) {
    Rational s(0);
    for (long k = 0; k <= n; ++k) s += binomial(n, k) * bernoulli(k) * x.pow(n - k);
    return s;
}

/// ζ(-n) = -B_{n+1}/(n+1) for n >= 1.
inline Rational zeta_neg(long n) {
    if (n < 1) throw std::invalid_argument("zeta_neg: n must be >= 1");
    return -bernoulli(n + 1) / Rational(n + 1);
}

/// Hurwitz ζ(-k, x) = -B_{k+1}(x)/(k+1), k >= 0, x > 0.
inline Rational hurwitz_neg(long k, const Rational& x) {
    if (k < 0) throw std::invalid_argument("hurwitz_neg: k must be >= 0");
    return -bernoulli_poly(k + 1, x) / Rational(k + 1);
}

/// ζ(1-n, 1/2) = -B_n(1/2)/n, n >= 1.
inline Rational hurwitz_half(long n) {
    if (n < 1) throw std::invalid_argument("hurwitz_half: n must be >= 1");
    return -bernoulli_poly(n, Rational(1, 2)) / Rational(n);
}

/// Same value through the duplication formula (2^{1-n} - 1) ζ(1-n).
inline Rational hurwitz_half_by_duplication(long n) {
    if (n < 1) throw std::invalid_argument("hurwitz_half_by_duplication: n must be >= 1");
    Rational z = n == 1 ? Rational(-1, 2) : -bernoulli(n) / Rational(n);
    return (Rational(2).pow(1 - n) - Rational(1)) * z;
}

/// Laurent expansion of e^{x/2}/(e^x - 1) through x^order.
inline RatSeries half_shift_generating_series(long order) {
    RatSeries num = RatSeries::exp_linear(Rational(1, 2), order + 2);
    RatSeries den = RatSeries::exp_linear(Rational(1), order + 2) - RatSeries::constant(Rational(1), order + 2);
    return expand_quotient(num, den, order);
}

/// ζ(1-n, 1/2) read off the generating series. Since e^{x/2}/(e^x-1) = sum_n B_n(1/2) x^{n-1}/n!,
/// ζ(1-n,1/2) = -(n-1)! [x^{n-1}].
inline Rational hurwitz_half_from_series(long n) {
    if (n < 1) throw std::invalid_argument("hurwitz_half_from_series: n must be positive");
    RatSeries s = half_shift_generating_series(n - 1);
    return -s.coeff(n - 1) * factorial(n - 1);
}

}  // namespace zreg
