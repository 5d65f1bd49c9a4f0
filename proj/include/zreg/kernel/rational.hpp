#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zreg {

/// Exact rational number backed by GMP. Always canonical (reduced, positive denominator).
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : v_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
    Rational(long n, long d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    Rational(const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }

    /// Parses "a", "-a", "a/b".
    static Rational parse(std::string_view s) {
        std::string str(s);
        if (!str.empty() && str[0] == '+') str.erase(0, 1);
        mpq_class q;
        if (q.set_str(str, 10) != 0) throw std::invalid_argument("Rational::parse: bad input '" + str + "'");
        if (q.get_den() == 0) throw std::domain_error("Rational::parse: zero denominator");
        q.canonicalize();
        return Rational(q);
    }

    [[nodiscard]] const mpq_class& raw() const { return v_; }
    [[nodiscard]] mpz_class num() const { return v_.get_num(); }
    [[nodiscard]] mpz_class den() const { return v_.get_den(); }
    [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
    [[nodiscard]] bool is_one() const { return v_ == 1; }
    [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(v_); }

    /// Value as a machine integer; throws if not an integer or out of range.
    [[nodiscard]] long to_long() const {
        if (!is_integer()) throw std::domain_error("Rational::to_long: not an integer");
        if (!v_.get_num().fits_slong_p()) throw std::overflow_error("Rational::to_long: out of range");
        return v_.get_num().get_si();
    }
    [[nodiscard]] long floor_long() const {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        if (!f.fits_slong_p()) throw std::overflow_error("Rational::floor_long: out of range");
        return f.get_si();
    }
    [[nodiscard]] double to_double() const { return v_.get_d(); }

    [[nodiscard]] std::string to_string() const { return v_.get_str(10); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    [[nodiscard]] Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    [[nodiscard]] Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }

    [[nodiscard]] std::size_t hash() const {
        std::size_t h1 = std::hash<std::string>{}(v_.get_str(16));
        return h1;
    }

private:
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

inline Rational factorial(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

inline Rational binomial(long n, long k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

/// Generalized binomial C(x, k) = x(x-1)...(x-k+1)/k! for any rational x.
inline Rational gen_binomial(const Rational& x, long k) {
    if (k < 0) return Rational(0);
    Rational r(1);
    for (long i = 0; i < k; ++i) r *= (x - Rational(i));
    return r / factorial(k);
}

}  // namespace zreg

template <>
struct std::hash<zreg::Rational> {
    std::size_t operator()(const zreg::Rational& r) const noexcept { return r.hash(); }
};
