#pragma once

#include "zreg/kernel/rational.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zreg {

/// Raised when a coefficient beyond the guaranteed window is requested.
class WindowError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Truncated Laurent series in one variable with exponents n/den.
/// Coefficients are known exactly for every numerator n <= prec(); nothing beyond is stored.
template <class S>
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(long den, long prec) : den_(den), prec_(prec) {
        if (den < 1) throw std::invalid_argument("TruncatedSeries: denominator scale must be positive");
    }

    /// c * x^(num/den), valid through numerator prec.
    static TruncatedSeries monomial(const S& c, long num, long den, long prec) {
        TruncatedSeries r(den, prec);
        r.set(num, c);
        return r;
    }
    /// The constant c, valid through x^order.
    static TruncatedSeries constant(const S& c, long order) { return monomial(c, 0, 1, order); }
    /// exp(a*x) through x^order.
    static TruncatedSeries exp_linear(const Rational& a, long order) {
        TruncatedSeries r(1, order);
        Rational term(1);
        for (long n = 0; n <= order; ++n) {
            r.set(n, S(term));
            term = term * a / Rational(n + 1);
        }
        return r;
    }
    /// Polynomial sum c_i x^i with coefficients low degree first, valid through x^order.
    static TruncatedSeries polynomial(const std::vector<S>& coeffs, long order) {
        TruncatedSeries r(1, order);
        for (std::size_t i = 0; i < coeffs.size(); ++i) r.set(static_cast<long>(i), coeffs[i]);
        return r;
    }

    [[nodiscard]] long den() const { return den_; }
    [[nodiscard]] long prec() const { return prec_; }
    [[nodiscard]] Rational prec_exponent() const { return Rational(prec_, den_); }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const std::map<long, S>& terms() const { return c_; }

    /// Lowest stored numerator; prec()+1 for the zero series.
    [[nodiscard]] long valuation() const { return c_.empty() ? prec_ + 1 : c_.begin()->first; }

    /// Coefficient of x^(num/den).
    [[nodiscard]] S coeff_num(long num) const {
        if (num > prec_) throw WindowError("TruncatedSeries: exponent beyond the valid window");
        auto it = c_.find(num);
        return it == c_.end() ? S(0) : it->second;
    }
    /// Coefficient of x^e for a rational exponent e.
    [[nodiscard]] S coeff(const Rational& e) const {
        Rational scaled = e * Rational(den_);
        if (!scaled.is_integer()) return S(0);
        return coeff_num(scaled.to_long());
    }
    [[nodiscard]] S coeff(long e) const { return coeff(Rational(e)); }

    void set(long num, const S& c) {
        if (num > prec_) return;
        if (c.is_zero()) c_.erase(num);
        else c_[num] = c;
    }

    /// Same series written with denominator scale den*k.
    [[nodiscard]] TruncatedSeries rescaled(long k) const {
        TruncatedSeries r(den_ * k, prec_ * k);
        for (const auto& [n, c] : c_) r.c_.emplace(n * k, c);
        return r;
    }
    /// Drop everything above numerator p (p <= prec()).
    [[nodiscard]] TruncatedSeries truncated(long p) const {
        TruncatedSeries r(den_, std::min(p, prec_));
        for (const auto& [n, c] : c_)
            if (n <= r.prec_) r.c_.emplace(n, c);
        return r;
    }
    /// Truncate at a rational exponent.
    [[nodiscard]] TruncatedSeries truncated_at(const Rational& e) const {
        Rational scaled = e * Rational(den_);
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), scaled.num().get_mpz_t(), scaled.den().get_mpz_t());
        return truncated(fl.get_si());
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = combine(*this, o, 1); }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = combine(*this, o, -1); }
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, 1); }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, -1); }
    friend TruncatedSeries operator-(TruncatedSeries a) {
        for (auto& kv : a.c_) kv.second = -kv.second;
        return a;
    }
    friend TruncatedSeries operator*(TruncatedSeries a, const S& s) {
        if (s.is_zero()) {
            a.c_.clear();
            return a;
        }
        for (auto& kv : a.c_) kv.second *= s;
        return a;
    }
    friend TruncatedSeries operator*(const S& s, TruncatedSeries a) { return std::move(a) * s; }

    friend TruncatedSeries operator*(const TruncatedSeries& a0, const TruncatedSeries& b0) {
        auto [a, b] = align(a0, b0);
        long va = a.valuation(), vb = b.valuation();
        TruncatedSeries r(a.den_, std::min(a.prec_ + vb, b.prec_ + va));
        for (const auto& [i, x] : a.c_) {
            if (i + vb > r.prec_) break;
            for (const auto& [j, y] : b.c_) {
                if (i + j > r.prec_) break;
                auto it = r.c_.find(i + j);
                if (it == r.c_.end()) r.c_.emplace(i + j, x * y);
                else it->second += x * y;
            }
        }
        r.prune();
        return r;
    }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    [[nodiscard]] TruncatedSeries pow(unsigned e) const {
        TruncatedSeries r = monomial(S(1), 0, den_, std::numeric_limits<long>::max() / 4);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// Multiplicative inverse; the lowest coefficient must be invertible.
    [[nodiscard]] TruncatedSeries inverse() const {
        if (c_.empty()) throw std::domain_error("TruncatedSeries: inverse of an identically zero series");
        long v = valuation();
        S lead_inv = c_.begin()->second.inverse();
        // u = x^{-v} * this, known through prec - v; 1/u through the same; result through prec - 2v.
        long up = prec_ - v;
        std::vector<S> u(static_cast<std::size_t>(up + 1), S(0));
        for (const auto& [n, c] : c_) u[static_cast<std::size_t>(n - v)] = c;
        std::vector<S> w(static_cast<std::size_t>(up + 1), S(0));
        w[0] = lead_inv;
        for (long n = 1; n <= up; ++n) {
            S acc(0);
            for (long k = 1; k <= n; ++k) {
                const S& uk = u[static_cast<std::size_t>(k)];
                if (uk.is_zero()) continue;
                acc += uk * w[static_cast<std::size_t>(n - k)];
            }
            w[static_cast<std::size_t>(n)] = -(acc * lead_inv);
        }
        TruncatedSeries r(den_, prec_ - 2 * v);
        for (long n = 0; n <= up; ++n) r.set(n - v, w[static_cast<std::size_t>(n)]);
        return r;
    }

    /// x -> x^k for a positive integer k.
    [[nodiscard]] TruncatedSeries substitute_power(long k) const {
        if (k < 1) throw std::invalid_argument("TruncatedSeries::substitute_power: k must be positive");
        TruncatedSeries r(den_, prec_ * k + (k - 1));
        // coefficients between k*prec and k*(prec+1) are known to be zero
        for (const auto& [n, c] : c_) r.c_.emplace(n * k, c);
        return r;
    }

    /// x d/dx.
    [[nodiscard]] TruncatedSeries euler_derivative() const {
        TruncatedSeries r(den_, prec_);
        for (const auto& [n, c] : c_) r.set(n, c * S(Rational(n, den_)));
        return r;
    }

    /// Plain d/dx for integer exponents.
    [[nodiscard]] TruncatedSeries derivative() const {
        if (den_ != 1) throw std::domain_error("TruncatedSeries::derivative needs integral exponents");
        TruncatedSeries r(1, prec_ - 1);
        for (const auto& [n, c] : c_) r.set(n - 1, c * S(Rational(n)));
        return r;
    }

    /// exp(f) for f with positive valuation.
    [[nodiscard]] TruncatedSeries exp() const {
        if (!c_.empty() && valuation() <= 0) throw std::domain_error("TruncatedSeries::exp needs positive valuation");
        TruncatedSeries r = monomial(S(1), 0, den_, prec_);
        TruncatedSeries term = r;
        for (long k = 1; !c_.empty() && k * valuation() <= prec_; ++k) {
            term = (term * *this) * S(Rational(1, k));
            term = term.truncated(prec_);
            r += term;
        }
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        auto [x, y] = align(a, b);
        long p = std::min(x.prec_, y.prec_);
        return x.truncated(p).c_ == y.truncated(p).c_;
    }

    /// e.g. "-1/24 + q + 3*q^2 + 4*q^3 + O(q^4)".
    [[nodiscard]] std::string to_string(const std::string& var = "x", bool show_order = false) const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [n, c0] : c_) {
            std::string cs = scalar_string(c0);
            bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+ ", 1) == std::string::npos;
            if (neg) cs.erase(0, 1);
            bool compound = cs.find_first_of("+- ") != std::string::npos;
            if (first) os << (neg ? "-" : "");
            else os << (neg ? " - " : " + ");
            first = false;
            Rational e(n, den_);
            if (e.is_zero()) {
                os << (compound ? "(" + cs + ")" : cs);
                continue;
            }
            if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
            os << var;
            if (!e.is_one()) {
                if (e.is_integer() && e.sign() > 0) os << "^" << e;
                else os << "^(" << e << ")";
            }
        }
        if (first) os << "0";
        if (show_order) os << " + O(" << var << "^" << (Rational(prec_ + 1, den_).is_integer() ? Rational(prec_ + 1, den_).to_string() : "(" + Rational(prec_ + 1, den_).to_string() + ")") << ")";
        return os.str();
    }

private:
    static std::string scalar_string(const S& c) {
        std::ostringstream os;
        os << c;
        return os.str();
    }
    static std::pair<TruncatedSeries, TruncatedSeries> align(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.den_ == b.den_) return {a, b};
        long l = std::lcm(a.den_, b.den_);
        return {a.rescaled(l / a.den_), b.rescaled(l / b.den_)};
    }
    static TruncatedSeries combine(const TruncatedSeries& a0, const TruncatedSeries& b0, int sign) {
        auto [a, b] = align(a0, b0);
        TruncatedSeries r = a.truncated(std::min(a.prec_, b.prec_));
        for (const auto& [n, c] : b.c_) {
            if (n > r.prec_) break;
            auto it = r.c_.find(n);
            if (it == r.c_.end()) r.c_.emplace(n, sign > 0 ? c : -c);
            else if (sign > 0) it->second += c;
            else it->second -= c;
        }
        r.prune();
        return r;
    }
    void prune() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (it->second.is_zero()) it = c_.erase(it);
            else ++it;
        }
    }

    long den_ = 1;
    long prec_ = 0;
    std::map<long, S> c_;
};

/// Laurent expansion of numerator/denominator valid through x^order (integral exponents scaled by den).
/// Throws if the inputs do not carry enough precision to reach the requested order.
template <class S>
TruncatedSeries<S> expand_quotient(const TruncatedSeries<S>& numerator, const TruncatedSeries<S>& denominator, long order) {
    if (denominator.is_zero()) throw std::domain_error("expand_quotient: identically zero denominator");
    TruncatedSeries<S> q = numerator * denominator.inverse();
    Rational want(order);
    if (q.prec_exponent() < want) throw WindowError("expand_quotient: inputs too short for the requested order");
    return q.truncated_at(want);
}

using RatSeries = TruncatedSeries<Rational>;

}  // namespace zreg
