#pragma once

#include "zreg/kernel/cyclotomic.hpp"
#include "zreg/kernel/series.hpp"
#include "zreg/number_theory/bernoulli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zreg {

/// Dirichlet character mod N, stored as exponents of ζ_order (-1 marks non-units).
class DirichletCharacter {
public:
    DirichletCharacter() = default;

    /// Build from exponents of ζ_level; reduces to the character's own order and computes conductor/parity.
    DirichletCharacter(long modulus, long level, std::vector<long> exps) : modulus_(modulus) {
        if (modulus < 1 || static_cast<long>(exps.size()) != modulus) throw std::invalid_argument("DirichletCharacter: table size must equal modulus");
        long g = level;
        for (long e : exps)
            if (e >= 0) g = std::gcd(g, e);
        order_ = level / g;
        exps_.resize(exps.size());
        for (std::size_t a = 0; a < exps.size(); ++a) exps_[a] = exps[a] < 0 ? -1 : (exps[a] / g) % order_;
        compute_conductor();
        long em1 = exps_[static_cast<std::size_t>(detail::positive_mod(-1, modulus_))];
        parity_ = (em1 == 0) ? 1 : -1;
        if (em1 != 0 && 2 * em1 != order_) throw std::logic_error("DirichletCharacter: χ(-1) is not ±1");
    }

    [[nodiscard]] long modulus() const { return modulus_; }
    [[nodiscard]] long order() const { return order_; }
    [[nodiscard]] long conductor() const { return conductor_; }
    [[nodiscard]] bool is_primitive() const { return conductor_ == modulus_; }
    [[nodiscard]] bool is_trivial() const { return order_ == 1; }
    /// χ(-1).
    [[nodiscard]] int parity() const { return parity_; }
    [[nodiscard]] bool is_even() const { return parity_ == 1; }

    /// Exponent e with χ(a) = ζ_order^e, or -1 if gcd(a, N) > 1.
    [[nodiscard]] long exponent(long a) const { return exps_[static_cast<std::size_t>(detail::positive_mod(a, modulus_))]; }
    [[nodiscard]] Cyclotomic value(long a) const {
        long e = exponent(a);
        if (e < 0) return Cyclotomic(0);
        if (order_ <= 2) return Cyclotomic(e == 0 ? 1 : -1);
        return Cyclotomic::zeta(order_, e);
    }
    /// χ(a) embedded into level L (a multiple of the order).
    [[nodiscard]] Cyclotomic value_at_level(long a, long level) const {
        long e = exponent(a);
        if (e < 0) return Cyclotomic(0);
        if (level % order_ != 0) throw std::invalid_argument("DirichletCharacter: level must be a multiple of the order");
        if (order_ <= 2) return Cyclotomic(e == 0 ? 1 : -1);
        return Cyclotomic::zeta(level, e * (level / order_));
    }

    [[nodiscard]] DirichletCharacter conj() const {
        std::vector<long> e(exps_.size());
        for (std::size_t a = 0; a < e.size(); ++a) e[a] = exps_[a] < 0 ? -1 : detail::positive_mod(-exps_[a], order_);
        return DirichletCharacter(modulus_, order_, e);
    }

    /// Pointwise product; both characters must share the modulus.
    friend DirichletCharacter operator*(const DirichletCharacter& x, const DirichletCharacter& y) {
        if (x.modulus_ != y.modulus_) throw std::invalid_argument("DirichletCharacter: product needs equal moduli");
        long l = std::lcm(x.order_, y.order_);
        std::vector<long> e(x.exps_.size());
        for (std::size_t a = 0; a < e.size(); ++a) {
            if (x.exps_[a] < 0 || y.exps_[a] < 0) e[a] = -1;
            else e[a] = (x.exps_[a] * (l / x.order_) + y.exps_[a] * (l / y.order_)) % l;
        }
        return DirichletCharacter(x.modulus_, l, e);
    }
    friend bool operator==(const DirichletCharacter& x, const DirichletCharacter& y) {
        return x.modulus_ == y.modulus_ && x.order_ == y.order_ && x.exps_ == y.exps_;
    }

    /// Short label such as "mod 5, order 4, [0,1,3,2]" listing exponents on units.
    [[nodiscard]] std::string label() const {
        std::ostringstream os;
        os << "mod " << modulus_ << " order " << order_ << " [";
        bool first = true;
        for (long a = 1; a < std::max(modulus_, 2L); ++a) {
            long e = exponent(a);
            if (e < 0) continue;
            os << (first ? "" : ",") << a << ":" << e;
            first = false;
        }
        os << "]";
        return os.str();
    }

private:
    void compute_conductor() {
        for (long m = 1; m <= modulus_; ++m) {
            if (modulus_ % m != 0) continue;
            bool trivial_on_kernel = true;
            for (long a = 1; a <= modulus_ && trivial_on_kernel; ++a) {
                long e = exponent(a);
                if (e < 0) continue;
                if ((a - 1) % m == 0 && e != 0) trivial_on_kernel = false;
            }
            if (trivial_on_kernel) {
                conductor_ = m;
                return;
            }
        }
        conductor_ = modulus_;
    }

    long modulus_ = 1;
    long order_ = 1;
    long conductor_ = 1;
    int parity_ = 1;
    std::vector<long> exps_{0};
};

namespace detail {

inline long mul_order(long a, long n) {
    if (n == 1) return 1;
    long k = 1, x = a % n;
    while (x != 1) {
        x = x * a % n;
        ++k;
    }
    return k;
}

}  // namespace detail

/// All φ(N) characters mod N by brute force over a generating set of (Z/N)^x.
/// Sorted by order, then by exponent table.
inline std::vector<DirichletCharacter> enumerate_characters(long n) {
    if (n < 1) throw std::invalid_argument("enumerate_characters: N must be >= 1");
    if (n == 1) return {DirichletCharacter(1, 1, {0})};
    std::vector<long> units;
    for (long a = 1; a < n; ++a)
        if (std::gcd(a, n) == 1) units.push_back(a);

    // greedy generating set
    std::vector<long> gens;
    std::vector<char> in_h(static_cast<std::size_t>(n), 0);
    in_h[1] = 1;
    for (long a : units) {
        if (in_h[static_cast<std::size_t>(a)]) continue;
        gens.push_back(a);
        bool grew = true;
        while (grew) {
            grew = false;
            for (long h = 1; h < n; ++h) {
                if (!in_h[static_cast<std::size_t>(h)]) continue;
                long p = h * a % n;
                if (!in_h[static_cast<std::size_t>(p)]) {
                    in_h[static_cast<std::size_t>(p)] = 1;
                    grew = true;
                }
            }
        }
    }
    std::vector<long> ords;
    long expo = 1;
    for (long g : gens) {
        ords.push_back(detail::mul_order(g, n));
        expo = std::lcm(expo, ords.back());
    }

    std::vector<DirichletCharacter> out;
    std::vector<long> choice(gens.size(), 0);
    while (true) {
        std::vector<long> table(static_cast<std::size_t>(n), -2);
        table[1] = 0;
        std::vector<long> frontier{1};
        bool ok = true;
        while (!frontier.empty() && ok) {
            std::vector<long> next;
            for (long h : frontier) {
                for (std::size_t i = 0; i < gens.size() && ok; ++i) {
                    long p = h * gens[i] % n;
                    long e = (table[static_cast<std::size_t>(h)] + choice[i] * (expo / ords[i])) % expo;
                    long& slot = table[static_cast<std::size_t>(p)];
                    if (slot == -2) {
                        slot = e;
                        next.push_back(p);
                    } else if (slot != e) {
                        ok = false;
                    }
                }
            }
            frontier = std::move(next);
        }
        if (ok) {
            for (auto& t : table)
                if (t == -2) t = -1;
            out.emplace_back(n, expo, table);
        }
        std::size_t i = 0;
        while (i < gens.size() && ++choice[i] == ords[i]) choice[i++] = 0;
        if (i == gens.size()) break;
    }
    std::sort(out.begin(), out.end(), [n](const DirichletCharacter& x, const DirichletCharacter& y) {
        if (x.order() != y.order()) return x.order() < y.order();
        for (long a = 1; a < n; ++a) {
            long l = std::lcm(x.order(), y.order());
            long ex = x.exponent(a) < 0 ? -1 : x.exponent(a) * (l / x.order());
            long ey = y.exponent(a) < 0 ? -1 : y.exponent(a) * (l / y.order());
            if (ex != ey) return ex < ey;
        }
        return false;
    });
    return out;
}

inline std::vector<DirichletCharacter> primitive_characters(long n, bool include_trivial = false) {
    std::vector<DirichletCharacter> out;
    for (auto& c : enumerate_characters(n))
        if (c.is_primitive() && (include_trivial || !c.is_trivial())) out.push_back(c);
    return out;
}

/// Working level for identities that mix ζ_N with character values.
inline long gauss_level(const DirichletCharacter& chi) { return std::lcm(chi.modulus(), chi.order()); }

/// g(χ) = sum_{n=1}^N χ(n) ζ_N^n.
inline Cyclotomic gauss_sum(const DirichletCharacter& chi) {
    long n = chi.modulus(), l = gauss_level(chi);
    Cyclotomic s(0);
    for (long a = 1; a <= n; ++a) {
        long e = chi.exponent(a);
        if (e < 0) continue;
        s += Cyclotomic::zeta(l, e * (l / chi.order()) + a * (l / n));
    }
    return s;
}

/// Checks sum_a χ(a) ζ_N^{ak} = conj(χ)(k) g(χ). Requires χ primitive.
inline bool verify_gauss_twist(const DirichletCharacter& chi, long k) {
    if (!chi.is_primitive()) throw std::invalid_argument("verify_gauss_twist: character must be primitive");
    long n = chi.modulus(), l = gauss_level(chi);
    Cyclotomic lhs(0);
    for (long a = 1; a <= n; ++a) {
        long e = chi.exponent(a);
        if (e < 0) continue;
        lhs += Cyclotomic::zeta(l, e * (l / chi.order()) + a * k * (l / n));
    }
    Cyclotomic rhs = chi.conj().value_at_level(k, l) * gauss_sum(chi);
    return lhs == rhs;
}

/// sum_a χ(a) y e^{ay}/(e^{Ny}-1) through y^order, coefficients at the character's level.
inline TruncatedSeries<Cyclotomic> gen_bernoulli_series(const DirichletCharacter& chi, long order) {
    long n = chi.modulus();
    long p = order + 2;
    TruncatedSeries<Cyclotomic> num(1, p);
    for (long a = 1; a <= n; ++a) {
        Cyclotomic c = chi.value(a);
        if (c.is_zero()) continue;
        // y e^{ay} = sum_k a^{k-1}/(k-1)! y^k
        Rational term(1);
        for (long k = 1; k <= p; ++k) {
            num.set(k, num.coeff_num(k) + c * Cyclotomic(term));
            term = term * Rational(a) / Rational(k);
        }
    }
    TruncatedSeries<Cyclotomic> den(1, p);
    {
        Rational term(n);
        for (long k = 1; k <= p; ++k) {
            den.set(k, Cyclotomic(term));
            term = term * Rational(n) / Rational(k + 1);
        }
    }
    return expand_quotient(num, den, order);
}

/// B_{n,χ}.
inline Cyclotomic gen_bernoulli(const DirichletCharacter& chi, long n) {
    if (n < 0) throw std::invalid_argument("gen_bernoulli: n must be >= 0");
    return gen_bernoulli_series(chi, n).coeff(n) * Cyclotomic(factorial(n));
}

/// L(1-m, χ) = -B_{m,χ}/m.
inline Cyclotomic l_value_neg(const DirichletCharacter& chi, long m) {
    if (m < 1) throw std::invalid_argument("l_value_neg: m must be >= 1");
    return -gen_bernoulli(chi, m) * Cyclotomic(Rational(1, m));
}

struct PartialFractionReport {
    bool pass = false;
    Cyclotomic pole;  // coefficient of x^{-1} on the left
    long mismatches = 0;
    long first_bad_order = -1;
};

/// N g(χ)^{-1} sum_a χ(a) e^{ax}/(e^{Nx}-1) versus sum_a conj(χ)(a) w_a e^x/(w_a e^x - 1), w_a = ζ_N^{-a},
/// compared for x^0..x^order. χ must be primitive and nontrivial.
inline PartialFractionReport partial_fraction_report(const DirichletCharacter& chi, long order) {
    if (!chi.is_primitive() || chi.is_trivial()) throw std::invalid_argument("verify_partial_fraction: character must be primitive and nontrivial");
    long n = chi.modulus(), l = gauss_level(chi);
    long p = order + 3;
    using CS = TruncatedSeries<Cyclotomic>;
    CS num(1, p);
    for (long a = 1; a <= n; ++a) {
        Cyclotomic c = chi.value_at_level(a, l);
        if (c.is_zero()) continue;
        Rational term(1);
        for (long k = 0; k <= p; ++k) {
            num.set(k, num.coeff_num(k) + c * Cyclotomic(term));
            term = term * Rational(a) / Rational(k + 1);
        }
    }
    CS den(1, p);
    {
        Rational term(n);
        for (long k = 1; k <= p; ++k) {
            den.set(k, Cyclotomic(term));
            term = term * Rational(n) / Rational(k + 1);
        }
    }
    CS lhs = expand_quotient(num, den, order) * (Cyclotomic(n) * gauss_sum(chi).inverse());

    CS rhs(1, order);
    for (long a = 1; a <= n; ++a) {
        Cyclotomic c = chi.conj().value_at_level(a, l);
        if (c.is_zero()) continue;
        Cyclotomic w = Cyclotomic::zeta(l, -a * (l / n));
        CS wex(1, order + 1), wexm1(1, order + 1);
        Rational term(1);
        for (long k = 0; k <= order + 1; ++k) {
            wex.set(k, w * Cyclotomic(term));
            wexm1.set(k, w * Cyclotomic(term) - Cyclotomic(k == 0 ? 1 : 0));
            term = term / Rational(k + 1);
        }
        rhs += expand_quotient(wex, wexm1, order) * c;
    }
    PartialFractionReport rep;
    rep.pole = lhs.coeff(-1);
    for (long k = 0; k <= order; ++k) {
        if (!(lhs.coeff(k) == rhs.coeff(k))) {
            if (rep.first_bad_order < 0) rep.first_bad_order = k;
            ++rep.mismatches;
        }
    }
    rep.pass = rep.pole.is_zero() && rep.mismatches == 0;
    return rep;
}

inline bool verify_partial_fraction(const DirichletCharacter& chi, long order) { return partial_fraction_report(chi, order).pass; }

/// μ(-1) sum_b (μχ)(b) e^{by}/(e^{Ny}-1) through y^order (Laurent, may start at y^{-1}).
inline TruncatedSeries<Cyclotomic> twisted_correction_series(const DirichletCharacter& chi, const DirichletCharacter& mu, long order) {
    DirichletCharacter rho = chi * mu;
    long n = rho.modulus();
    long p = order + 3;
    using CS = TruncatedSeries<Cyclotomic>;
    CS num(1, p);
    for (long b = 1; b <= n; ++b) {
        Cyclotomic c = rho.value(b);
        if (c.is_zero()) continue;
        Rational term(1);
        for (long k = 0; k <= p; ++k) {
            num.set(k, num.coeff_num(k) + c * Cyclotomic(term));
            term = term * Rational(b) / Rational(k + 1);
        }
    }
    CS den(1, p);
    Rational term(n);
    for (long k = 1; k <= p; ++k) {
        den.set(k, Cyclotomic(term));
        term = term * Rational(n) / Rational(k + 1);
    }
    return expand_quotient(num, den, order) * Cyclotomic(mu.parity());
}

/// χ(-n) recovered as g(conj χ)^{-1} sum_a conj(χ)(a) ζ_N^{-an}, the root-of-unity average behind twisted fields.
inline Cyclotomic twist_weight_via_gauss(const DirichletCharacter& chi, long n) {
    DirichletCharacter cb = chi.conj();
    long l = gauss_level(chi), nmod = chi.modulus();
    Cyclotomic s(0);
    for (long a = 1; a <= nmod; ++a) {
        Cyclotomic c = cb.value_at_level(a, l);
        if (c.is_zero()) continue;
        s += c * Cyclotomic::zeta(l, -a * n * (l / nmod));
    }
    return s * gauss_sum(cb).inverse();
}

}  // namespace zreg
