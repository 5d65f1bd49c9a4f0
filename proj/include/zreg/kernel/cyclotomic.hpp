#pragma once

#include "zreg/kernel/polynomial.hpp"
#include "zreg/kernel/rational.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace zreg {

/// Raised when two non-rational cyclotomic elements of different levels meet.
class LevelMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline long positive_mod(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace detail

/// The cyclotomic polynomial Φ_L, computed as (x^L - 1) / Π_{d|L, d<L} Φ_d and cached.
inline const RatPoly& cyclotomic_polynomial(long level) {
    if (level < 1) throw std::invalid_argument("cyclotomic_polynomial: level must be >= 1");
    static std::mutex mu;
    static std::map<long, RatPoly> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(level);
        if (it != cache.end()) return it->second;
    }
    RatPoly p = RatPoly::monomial(Rational(1), static_cast<std::size_t>(level)) - RatPoly(Rational(1));
    for (long d = 1; d < level; ++d) {
        if (level % d != 0) continue;
        auto [q, r] = p.divmod(cyclotomic_polynomial(d));
        if (!r.is_zero()) throw std::logic_error("cyclotomic_polynomial: inexact division");
        p = std::move(q);
    }
    std::lock_guard lock(mu);
    return cache.emplace(level, std::move(p)).first->second;
}

/// Element of Q(ζ_L) in the power basis 1, ζ, ..., ζ^{φ(L)-1}.
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(long n) : p_(Rational(n)) {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(int n) : p_(Rational(n)) {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rational& q) : p_(q) {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(long level, const RatPoly& poly) : level_(level), p_(poly % cyclotomic_polynomial(level)) {
        if (level < 1) throw std::invalid_argument("Cyclotomic: level must be >= 1");
    }

    /// ζ_L^k.
    static Cyclotomic zeta(long level, long k = 1) {
        long e = detail::positive_mod(k, level);
        return Cyclotomic(level, RatPoly::monomial(Rational(1), static_cast<std::size_t>(e)));
    }

    [[nodiscard]] long level() const { return level_; }
    [[nodiscard]] const RatPoly& poly() const { return p_; }
    [[nodiscard]] bool is_zero() const { return p_.is_zero(); }
    [[nodiscard]] bool is_rational() const { return p_.degree() <= 0; }
    [[nodiscard]] Rational rational_value() const {
        if (!is_rational()) throw std::domain_error("Cyclotomic: not rational");
        return p_.coeff(0);
    }

    /// Image under ζ_L -> ζ_M^{M/L}; M must be a multiple of L.
    [[nodiscard]] Cyclotomic embed(long target) const {
        if (target % level_ != 0) throw std::invalid_argument("Cyclotomic::embed: target level must be a multiple");
        if (target == level_) return *this;
        long step = target / level_;
        RatPoly r;
        for (long i = 0; i <= p_.degree(); ++i) {
            const Rational& c = p_.coeffs()[static_cast<std::size_t>(i)];
            if (c.is_zero()) continue;
            r += RatPoly::monomial(c, static_cast<std::size_t>(i * step));
        }
        return Cyclotomic(target, r);
    }

    /// Complex conjugation ζ -> ζ^{-1}.
    [[nodiscard]] Cyclotomic conj() const {
        RatPoly r;
        for (long i = 0; i <= p_.degree(); ++i) {
            const Rational& c = p_.coeffs()[static_cast<std::size_t>(i)];
            if (c.is_zero()) continue;
            r += RatPoly::monomial(c, static_cast<std::size_t>(detail::positive_mod(-i, level_)));
        }
        return Cyclotomic(level_, r);
    }

    [[nodiscard]] Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("Cyclotomic: inverse of zero");
        if (is_rational()) return Cyclotomic(p_.coeff(0).inverse());
        auto [g, s, t] = poly_gcdext(p_, cyclotomic_polynomial(level_));
        if (g.degree() != 0) throw std::logic_error("Cyclotomic::inverse: not coprime to Φ_L");
        return Cyclotomic(level_, s);
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        align(o, [&](const RatPoly& a, const RatPoly& b) { return a + b; });
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) {
        align(o, [&](const RatPoly& a, const RatPoly& b) { return a - b; });
        return *this;
    }
    Cyclotomic& operator*=(const Cyclotomic& o) {
        if (o.is_rational()) {
            p_ *= o.p_.coeff(0);
            return *this;
        }
        if (is_rational()) {
            Rational c = p_.coeff(0);
            *this = o;
            p_ *= c;
            return *this;
        }
        if (level_ != o.level_) throw LevelMismatch("Cyclotomic: level mismatch " + std::to_string(level_) + " vs " + std::to_string(o.level_));
        p_ = (p_ * o.p_) % cyclotomic_polynomial(level_);
        return *this;
    }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend Cyclotomic operator-(Cyclotomic a) {
        a.p_ = -a.p_;
        return a;
    }

    /// Equality as elements of C: both sides are embedded into the lcm level.
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.is_rational() && b.is_rational()) return a.p_ == b.p_;
        long l = std::lcm(a.level_, b.level_);
        return a.embed(l).p_ == b.embed(l).p_;
    }

    /// Canonical text, highest power first, e.g. "ζ8^3 - ζ8", "1/2 - 3*ζ5^2".
    [[nodiscard]] std::string to_string() const {
        if (p_.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = p_.degree(); i >= 0; --i) {
            Rational c = p_.coeffs()[static_cast<std::size_t>(i)];
            if (c.is_zero()) continue;
            bool neg = c.sign() < 0;
            if (neg) c = -c;
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            if (i == 0) {
                os << c;
                continue;
            }
            if (!c.is_one()) os << c << "*";
            os << "ζ" << level_;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

private:
    template <class F>
    void align(const Cyclotomic& o, F&& op) {
        if (o.is_rational() || level_ == o.level_) {
            p_ = op(p_, o.p_);
            return;
        }
        if (is_rational()) {
            level_ = o.level_;
            p_ = op(p_, o.p_);
            return;
        }
        throw LevelMismatch("Cyclotomic: level mismatch " + std::to_string(level_) + " vs " + std::to_string(o.level_));
    }

    long level_ = 1;
    RatPoly p_;
};

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

/// Embed both operands into their lcm level.
inline std::pair<Cyclotomic, Cyclotomic> to_common_level(const Cyclotomic& a, const Cyclotomic& b) {
    long l = std::lcm(a.level(), b.level());
    return {a.embed(l), b.embed(l)};
}

}  // namespace zreg
