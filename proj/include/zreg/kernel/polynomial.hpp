#pragma once

#include "zreg/kernel/rational.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace zreg {

/// Dense univariate polynomial, coefficients stored low degree first.
/// S must be a commutative ring with S(0), S(1) and is_zero().
template <class S>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(const S& constant) {  // NOLINT(google-explicit-constructor)
        if (!constant.is_zero()) c_.push_back(constant);
    }

    static Polynomial monomial(const S& coeff, std::size_t degree) {
        std::vector<S> v(degree + 1, S(0));
        v[degree] = coeff;
        return Polynomial(std::move(v));
    }
    /// The polynomial x.
    static Polynomial x() { return monomial(S(1), 1); }
    /// a*x + b
    static Polynomial linear(const S& a, const S& b) { return Polynomial(std::vector<S>{b, a}); }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Degree, -1 for the zero polynomial.
    [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<S>& coeffs() const { return c_; }
    [[nodiscard]] S coeff(long i) const {
        return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[static_cast<std::size_t>(i)] : S(0);
    }
    [[nodiscard]] const S& lead() const {
        if (c_.empty()) throw std::domain_error("Polynomial::lead of zero polynomial");
        return c_.back();
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(const S& s) {
        if (s.is_zero()) { c_.clear(); return *this; }
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
    friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(r));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    [[nodiscard]] Polynomial pow(unsigned e) const {
        Polynomial r(S(1)), b = *this;
        while (e) {
            if (e & 1U) r *= b;
            e >>= 1U;
            if (e) b *= b;
        }
        return r;
    }

    template <class T>
    [[nodiscard]] T eval(const T& x) const {
        T r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + T(*it);
        return r;
    }
    [[nodiscard]] S operator()(const S& x) const { return eval<S>(x); }

    /// p(x) -> p(a*x + b).
    [[nodiscard]] Polynomial compose_linear(const S& a, const S& b) const {
        Polynomial r;
        Polynomial lin = linear(a, b);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Polynomial(*it);
        return r;
    }
    /// p(x) -> p(x + k).
    [[nodiscard]] Polynomial shift(const S& k) const { return compose_linear(S(1), k); }
    /// General composition p(q(x)).
    [[nodiscard]] Polynomial compose(const Polynomial& q) const {
        Polynomial r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + Polynomial(*it);
        return r;
    }
    [[nodiscard]] Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<S> r(c_.size() - 1, S(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * S(static_cast<long>(i));
        return Polynomial(std::move(r));
    }

    /// Euclidean division; requires invertible leading coefficient of the divisor.
    [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw std::domain_error("Polynomial::divmod by zero");
        if (degree() < d.degree()) return {Polynomial(), *this};
        std::vector<S> rem = c_;
        std::vector<S> q(static_cast<std::size_t>(degree() - d.degree() + 1), S(0));
        S inv = d.lead().inverse();
        for (long i = degree(); i >= d.degree(); --i) {
            const S& top = rem[static_cast<std::size_t>(i)];
            if (top.is_zero()) continue;
            S f = top * inv;
            std::size_t shift = static_cast<std::size_t>(i - d.degree());
            q[shift] = f;
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[shift + j] -= f * d.c_[j];
        }
        rem.resize(static_cast<std::size_t>(d.degree()));
        return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
    }
    [[nodiscard]] Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

    [[nodiscard]] std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = degree(); i >= 0; --i) {
            const S& c = c_[static_cast<std::size_t>(i)];
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")";
            if (i >= 1) os << "*" << var;
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<S> c_;
};

using RatPoly = Polynomial<Rational>;

/// Extended gcd over a field: returns (g, s, t) with s*a + t*b = g, g monic.
template <class S>
std::tuple<Polynomial<S>, Polynomial<S>, Polynomial<S>> poly_gcdext(Polynomial<S> a, Polynomial<S> b) {
    Polynomial<S> s0(S(1)), s1, t0, t1(S(1));
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        a = std::move(b);
        b = std::move(r);
        Polynomial<S> s2 = s0 - q * s1;
        Polynomial<S> t2 = t0 - q * t1;
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!a.is_zero()) {
        S inv = a.lead().inverse();
        a *= inv; s0 *= inv; t0 *= inv;
    }
    return {a, s0, t0};
}

}  // namespace zreg
