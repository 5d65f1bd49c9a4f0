#pragma once

#include "zreg/kernel/cyclotomic.hpp"
#include "zreg/kernel/polynomial.hpp"
#include "zreg/kernel/rational.hpp"

#include <array>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace zreg {

namespace detail {

/// ζ_N^e as a scalar. Over Q only ±1 are available.
template <class S>
S root_of_unity(long modulus, long e) {
    long r = positive_mod(e, modulus);
    if (r == 0) return S(1);
    if constexpr (std::is_same_v<S, Cyclotomic>) {
        return Cyclotomic::zeta(modulus, r);
    } else {
        if (2 * r == modulus) return S(-1);
        throw std::domain_error("root_of_unity: non-rational root of unity needs cyclotomic scalars");
    }
}

inline long twice(const Rational& r) {
    Rational t = r * Rational(2);
    if (!t.is_integer()) throw std::domain_error("t-degree must lie in (1/2)Z");
    return t.to_long();
}

}  // namespace detail

/// Finite sum of t^k p(D) ζ_N^{aD}. t-degrees are stored doubled so that the
/// half-integer degrees of the odd NS part fit; twists are residues a mod N.
template <class S>
class DiffOp {
public:
    using Poly = Polynomial<S>;
    using Key = std::pair<long, long>;  // (2k, a)

    DiffOp() = default;
    explicit DiffOp(long modulus) : modulus_(modulus) {
        if (modulus < 1) throw std::invalid_argument("DiffOp: twist modulus must be >= 1");
    }

    /// t^k p(D) ζ^{aD}
    static DiffOp term(const Rational& k, const Poly& p, long twist = 0, long modulus = 1) {
        DiffOp r(modulus);
        r.add(detail::twice(k), twist, p);
        return r;
    }
    /// t^k D^l
    static DiffOp monomial(const Rational& k, std::size_t l) { return term(k, Poly::monomial(S(1), l)); }
    static Poly D() { return Poly::x(); }

    void add(long k2, long twist, const Poly& p) {
        if (p.is_zero()) return;
        Key key{k2, detail::positive_mod(twist, modulus_)};
        auto it = t_.find(key);
        if (it == t_.end()) {
            t_.emplace(key, p);
            return;
        }
        it->second += p;
        if (it->second.is_zero()) t_.erase(it);
    }

    [[nodiscard]] long modulus() const { return modulus_; }
    [[nodiscard]] const std::map<Key, Poly>& terms() const { return t_; }
    [[nodiscard]] bool is_zero() const { return t_.empty(); }
    [[nodiscard]] bool is_twisted() const {
        for (const auto& [k, p] : t_)
            if (k.second != 0) return true;
        return false;
    }
    [[nodiscard]] Poly coeff(const Rational& k, long twist = 0) const {
        auto it = t_.find({detail::twice(k), detail::positive_mod(twist, modulus_)});
        return it == t_.end() ? Poly() : it->second;
    }

    DiffOp& operator+=(const DiffOp& o) {
        unify(o);
        for (const auto& [k, p] : at_modulus(o, modulus_).t_) add(k.first, k.second, p);
        return *this;
    }
    DiffOp& operator-=(const DiffOp& o) {
        unify(o);
        for (const auto& [k, p] : at_modulus(o, modulus_).t_) add(k.first, k.second, -p);
        return *this;
    }
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator-(DiffOp a) {
        for (auto& [k, p] : a.t_) p = -p;
        return a;
    }
    friend DiffOp operator*(const S& s, const DiffOp& a) {
        DiffOp r(a.modulus_);
        for (const auto& [k, p] : a.t_) r.add(k.first, k.second, p * s);
        return r;
    }

    /// t^{k1} f(D) ζ^{a1 D} · t^{k2} g(D) ζ^{a2 D} = ζ^{a1 k2} t^{k1+k2} f(D+k2) g(D) ζ^{(a1+a2)D}.
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
        DiffOp r(a.common_modulus(b));
        long n = r.modulus_;
        for (const auto& [ka, f] : a.t_) {
            long ta = ka.second * (n / a.modulus_);
            for (const auto& [kb, g] : b.t_) {
                long tb = kb.second * (n / b.modulus_);
                Poly shifted = f.shift(S(Rational(kb.first, 2)));
                Poly prod = shifted * g;
                if (ta != 0) {
                    if (kb.first % 2 != 0) throw std::domain_error("DiffOp: twist past a half-integer t-degree");
                    prod *= detail::root_of_unity<S>(n, ta * (kb.first / 2));
                }
                r.add(ka.first + kb.first, ta + tb, prod);
            }
        }
        return r;
    }

    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        if (a.modulus_ == b.modulus_) return a.t_ == b.t_;
        DiffOp d = a - b;
        return d.is_zero();
    }

    [[nodiscard]] std::string to_string() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, p] : t_) {
            if (!first) os << " + ";
            first = false;
            os << "t^" << Rational(k.first, 2) << "*[" << p.to_string("D") << "]";
            if (k.second != 0) os << "*z" << modulus_ << "^(" << k.second << "D)";
        }
        return os.str();
    }

private:
    [[nodiscard]] long common_modulus(const DiffOp& o) const { return std::lcm(modulus_, o.modulus_); }
    /// Re-expresses twists at a modulus divisible by the current one.
    [[nodiscard]] DiffOp embedded(long n) const {
        if (n % modulus_ != 0) throw std::invalid_argument("DiffOp: embedding modulus must be a multiple");
        DiffOp r(n);
        for (const auto& [k, p] : t_) r.add(k.first, k.second * (n / modulus_), p);
        return r;
    }
    void unify(const DiffOp& o) {
        long n = common_modulus(o);
        if (n != modulus_) *this = embedded(n);
    }
    [[nodiscard]] static DiffOp at_modulus(const DiffOp& o, long n) { return o.modulus_ == n ? o : o.embedded(n); }

    long modulus_ = 1;
    std::map<Key, Poly> t_;
};

/// [a, b] = ab - ba.
template <class S>
DiffOp<S> bracket(const DiffOp<S>& a, const DiffOp<S>& b) {
    return a * b - b * a;
}

/// Clifford components as 2x2 matrix units.
enum class Comp : int { DthTh = 0, Dth = 1, Th = 2, ThDth = 3 };
inline constexpr std::array<const char*, 4> kCompNames{"dth*th", "dth", "th", "th*dth"};
inline constexpr int comp_parity(int c) { return c == 1 || c == 2 ? 1 : 0; }

/// Element of Diff[t, t^{-1}, θ]: the 2x2 matrix
///   [ ∂θθ  ∂θ  ]
///   [ θ    θ∂θ ]
/// of DiffOp entries, with E_ij E_kl = δ_jk E_il.
template <class S>
class SuperDiffOp {
public:
    using Op = DiffOp<S>;

    SuperDiffOp() = default;
    static SuperDiffOp single(Comp c, const Op& op) {
        SuperDiffOp r;
        r.c_[static_cast<std::size_t>(c)] = op;
        return r;
    }

    [[nodiscard]] const Op& operator[](Comp c) const { return c_[static_cast<std::size_t>(c)]; }
    [[nodiscard]] Op& operator[](Comp c) { return c_[static_cast<std::size_t>(c)]; }
    [[nodiscard]] const Op& at(int i) const { return c_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] Op& at(int i) { return c_[static_cast<std::size_t>(i)]; }

    [[nodiscard]] bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    [[nodiscard]] SuperDiffOp even_part() const {
        SuperDiffOp r;
        r.c_[0] = c_[0];
        r.c_[3] = c_[3];
        return r;
    }
    [[nodiscard]] SuperDiffOp odd_part() const {
        SuperDiffOp r;
        r.c_[1] = c_[1];
        r.c_[2] = c_[2];
        return r;
    }
    /// Parity of a homogeneous element; zero counts as even.
    [[nodiscard]] int parity() const {
        bool ev = !c_[0].is_zero() || !c_[3].is_zero();
        bool od = !c_[1].is_zero() || !c_[2].is_zero();
        if (ev && od) throw std::domain_error("SuperDiffOp: element is not parity-homogeneous");
        return od ? 1 : 0;
    }
    /// True when some odd component carries a half-integer t-degree (NS sector).
    [[nodiscard]] bool half_shift() const {
        for (int i : {1, 2})
            for (const auto& [k, p] : c_[static_cast<std::size_t>(i)].terms())
                if (k.first % 2 != 0) return true;
        return false;
    }

    SuperDiffOp& operator+=(const SuperDiffOp& o) {
        for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
        return *this;
    }
    SuperDiffOp& operator-=(const SuperDiffOp& o) {
        for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend SuperDiffOp operator+(SuperDiffOp a, const SuperDiffOp& b) { return a += b; }
    friend SuperDiffOp operator-(SuperDiffOp a, const SuperDiffOp& b) { return a -= b; }
    friend SuperDiffOp operator-(SuperDiffOp a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend SuperDiffOp operator*(const S& s, SuperDiffOp a) {
        for (auto& x : a.c_) x = s * x;
        return a;
    }
    friend SuperDiffOp operator*(const SuperDiffOp& a, const SuperDiffOp& b) {
        // index 2*row + col
        SuperDiffOp r;
        for (int i = 0; i < 2; ++i)
            for (int l = 0; l < 2; ++l)
                for (int j = 0; j < 2; ++j) {
                    const Op& x = a.c_[static_cast<std::size_t>(2 * i + j)];
                    const Op& y = b.c_[static_cast<std::size_t>(2 * j + l)];
                    if (x.is_zero() || y.is_zero()) continue;
                    r.c_[static_cast<std::size_t>(2 * i + l)] += x * y;
                }
        return r;
    }
    friend bool operator==(const SuperDiffOp& a, const SuperDiffOp& b) {
        for (std::size_t i = 0; i < 4; ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < 4; ++i) {
            if (c_[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[i].to_string() << ")*" << kCompNames[i];
        }
        return first ? "0" : os.str();
    }

private:
    std::array<Op, 4> c_;
};

/// [a,b] = ab - (-1)^{p(a)p(b)} ba, extended bilinearly over the parity decomposition.
template <class S>
SuperDiffOp<S> super_bracket(const SuperDiffOp<S>& a, const SuperDiffOp<S>& b) {
    SuperDiffOp<S> r;
    const std::array<SuperDiffOp<S>, 2> as{a.even_part(), a.odd_part()};
    const std::array<SuperDiffOp<S>, 2> bs{b.even_part(), b.odd_part()};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto& x = as[static_cast<std::size_t>(i)];
            const auto& y = bs[static_cast<std::size_t>(j)];
            if (x.is_zero() || y.is_zero()) continue;
            if (i * j == 1) r += x * y + y * x;
            else r += x * y - y * x;
        }
    return r;
}

// ---------------------------------------------------------------- involutions

namespace detail {

/// p(-D-k) for a polynomial p, with 2k given.
template <class S>
Polynomial<S> reflect(const Polynomial<S>& p, long k2) {
    return p.compose_linear(S(-1), S(Rational(-k2, 2)));
}

/// Splits p = q·D; throws when p(0) != 0.
template <class S>
Polynomial<S> strip_right_D(const Polynomial<S>& p) {
    if (!p.coeff(0).is_zero())
        throw std::domain_error("involution: term has no right factor D");
    auto [q, r] = p.divmod(Polynomial<S>::x());
    return q;
}

/// Twist bookkeeping for A(-D-k) when A carries ζ^{aD}: ζ^{a(-D-k)} = ζ^{-ak} ζ^{-aD}.
template <class S>
S reflect_twist_scalar(long modulus, long a, long k2) {
    if (a == 0) return S(1);
    if (k2 % 2 != 0) throw std::domain_error("involution: twisted term at half-integer degree");
    return root_of_unity<S>(modulus, -a * (k2 / 2));
}

}  // namespace detail

/// θ₁(t^k q(D) D) = t^k q(-D-k) D.
template <class S>
DiffOp<S> theta1(const DiffOp<S>& a) {
    DiffOp<S> r(a.modulus());
    for (const auto& [k, p] : a.terms()) {
        auto q = detail::strip_right_D(p);
        auto img = detail::reflect(q, k.first) * Polynomial<S>::x();
        img *= detail::reflect_twist_scalar<S>(a.modulus(), k.second, k.first);
        r.add(k.first, -k.second, img);
    }
    return r;
}

/// θ₂(t^k p(D)) = -t^k p(-D-k).
template <class S>
DiffOp<S> theta2(const DiffOp<S>& a) {
    DiffOp<S> r(a.modulus());
    for (const auto& [k, p] : a.terms()) {
        auto img = -detail::reflect(p, k.first);
        img *= detail::reflect_twist_scalar<S>(a.modulus(), k.second, k.first);
        r.add(k.first, -k.second, img);
    }
    return r;
}

/// γ: θ₁ on ∂θθ, θ₂ on θ∂θ, and
///   t^k F(D) D θ ↦ t^k F(-D-k) ∂θ,   t^k F(D) ∂θ ↦ t^k F(-D-k) D θ.
template <class S>
SuperDiffOp<S> gamma(const SuperDiffOp<S>& a) {
    using Op = DiffOp<S>;
    SuperDiffOp<S> r;
    r[Comp::DthTh] = theta1(a[Comp::DthTh]);
    r[Comp::ThDth] = theta2(a[Comp::ThDth]);
    Op to_dth(a[Comp::Th].modulus()), to_th(a[Comp::Dth].modulus());
    for (const auto& [k, p] : a[Comp::Th].terms()) {
        auto img = detail::reflect(detail::strip_right_D(p), k.first);
        img *= detail::reflect_twist_scalar<S>(a[Comp::Th].modulus(), k.second, k.first);
        to_dth.add(k.first, -k.second, img);
    }
    for (const auto& [k, p] : a[Comp::Dth].terms()) {
        auto img = detail::reflect(p, k.first) * Polynomial<S>::x();
        img *= detail::reflect_twist_scalar<S>(a[Comp::Dth].modulus(), k.second, k.first);
        to_th.add(k.first, -k.second, img);
    }
    r[Comp::Dth] = to_dth;
    r[Comp::Th] = to_th;
    return r;
}

// ------------------------------------------------------- fixed subalgebras

enum class Fixed { DPlus, DMinus, SuperRamond, SuperNS };

namespace detail {

template <class S>
bool right_D_form(const DiffOp<S>& a) {
    for (const auto& [k, p] : a.terms())
        if (!p.coeff(0).is_zero()) return false;
    return true;
}

template <class S>
bool degrees_in(const DiffOp<S>& a, bool half) {
    for (const auto& [k, p] : a.terms())
        if ((k.first % 2 != 0) != half) return false;
    return true;
}

}  // namespace detail

template <class S>
bool in_fixed_subalgebra(Fixed which, const DiffOp<S>& a) {
    if (!detail::degrees_in(a, false)) return false;
    switch (which) {
        case Fixed::DPlus: return detail::right_D_form(a) && theta1(a) == a;
        case Fixed::DMinus: return theta2(a) == a;
        default: throw std::invalid_argument("in_fixed_subalgebra: super sectors take a SuperDiffOp");
    }
}

template <class S>
bool in_fixed_subalgebra(Fixed which, const SuperDiffOp<S>& a) {
    if (which == Fixed::DPlus || which == Fixed::DMinus)
        throw std::invalid_argument("in_fixed_subalgebra: use the DiffOp overload for D+ and D-");
    bool ns = which == Fixed::SuperNS;
    for (int i = 0; i < 4; ++i)
        if (!detail::degrees_in(a.at(i), comp_parity(i) == 1 && ns)) return false;
    if (!detail::right_D_form(a[Comp::DthTh]) || !detail::right_D_form(a[Comp::Th])) return false;
    return gamma(a) == a;
}

// --------------------------------------------------------------- bases

/// t^l ((D+l)^{2k} D + D^{2k} D)
template <class S = Rational>
DiffOp<S> dplus_basis(long k, long l) {
    using P = Polynomial<S>;
    P d = P::x();
    P body = d.shift(S(l)).pow(static_cast<unsigned>(2 * k)) + d.pow(static_cast<unsigned>(2 * k));
    return DiffOp<S>::term(Rational(l), body * d);
}

/// t^l (D^m + (-1)^{m+1} (D+l)^m), m odd.
template <class S = Rational>
DiffOp<S> dminus_basis(long m, long l) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("dminus_basis: m must be odd and positive");
    using P = Polynomial<S>;
    P d = P::x();
    return DiffOp<S>::term(Rational(l), d.pow(static_cast<unsigned>(m)) + d.shift(S(l)).pow(static_cast<unsigned>(m)));
}

/// t^l D^{k+1} θ + t^l (-1)^k (D+l)^k ∂θ, with l ∈ Z (Ramond) or Z+1/2 (NS).
template <class S = Rational>
SuperDiffOp<S> odd_basis(long k, const Rational& l) {
    using P = Polynomial<S>;
    P d = P::x();
    SuperDiffOp<S> r;
    r[Comp::Th] = DiffOp<S>::term(l, d.pow(static_cast<unsigned>(k + 1)));
    S sign = k % 2 == 0 ? S(1) : S(-1);
    r[Comp::Dth] = DiffOp<S>::term(l, d.shift(S(l)).pow(static_cast<unsigned>(k)) * sign);
    return r;
}

/// Symmetric bosonic generator ½ t^m (-(D+m))^r D^r D.
template <class S = Rational>
DiffOp<S> boson_generator(long r, long m) {
    using P = Polynomial<S>;
    P d = P::x();
    P body = d.compose_linear(S(-1), S(-m)).pow(static_cast<unsigned>(r)) * d.pow(static_cast<unsigned>(r + 1));
    return DiffOp<S>::term(Rational(m), body * S(Rational(1, 2)));
}

/// Fermionic generator ½ t^m [(-(D+m))^{s+1} D^s - (-(D+m))^s D^{s+1}] (θ∂θ component).
template <class S = Rational>
DiffOp<S> fermion_generator(long s, long m) {
    using P = Polynomial<S>;
    P d = P::x();
    P neg = d.compose_linear(S(-1), S(-m));
    auto us = static_cast<unsigned>(s);
    P body = neg.pow(us + 1) * d.pow(us) - neg.pow(us) * d.pow(us + 1);
    return DiffOp<S>::term(Rational(m), body * S(Rational(1, 2)));
}

/// Odd generator t^n (-(D+n))^r D θ + t^n D^r ∂θ.
template <class S = Rational>
SuperDiffOp<S> odd_generator(long r, const Rational& n) {
    using P = Polynomial<S>;
    P d = P::x();
    auto ur = static_cast<unsigned>(r);
    SuperDiffOp<S> g;
    g[Comp::Th] = DiffOp<S>::term(n, d.compose_linear(S(-1), S(-n)).pow(ur) * d);
    g[Comp::Dth] = DiffOp<S>::term(n, d.pow(ur));
    return g;
}

/// Embeds the even algebras into the super algebra: D+ on ∂θθ, D- on θ∂θ.
template <class S>
SuperDiffOp<S> embed_even(const DiffOp<S>& plus, const DiffOp<S>& minus = DiffOp<S>()) {
    SuperDiffOp<S> r;
    r[Comp::DthTh] = plus;
    r[Comp::ThDth] = minus;
    return r;
}

// --------------------------------------------------------------- cocycles

namespace detail {

/// Σ_{i=-k1}^{-1} f(i) g(i+k1) for k1 > 0; i steps by 1 from -k1 and stays negative,
/// which covers half-integer k1 as well.
template <class S>
S cocycle_sum(const Polynomial<S>& f, const Polynomial<S>& g, long k1x2) {
    S s(0);
    for (long i2 = -k1x2; i2 < 0; i2 += 2) {
        S i(Rational(i2, 2));
        s += f(i) * g(i + S(Rational(k1x2, 2)));
    }
    return s;
}

template <class S>
void require_untwisted(const DiffOp<S>& a) {
    if (a.is_twisted()) throw std::domain_error("cocycle: defined on untwisted operators only");
}

}  // namespace detail

/// Ψ(t^{k1} f, t^{k2} g) = Σ_{-k1 <= i <= -1} f(i) g(i+k1) when k1 = -k2 >= 0, extended
/// antisymmetrically to k1 < 0.
template <class S>
S cocycle(const DiffOp<S>& a, const DiffOp<S>& b) {
    detail::require_untwisted(a);
    detail::require_untwisted(b);
    S total(0);
    for (const auto& [ka, f] : a.terms()) {
        auto it = b.terms().find({-ka.first, 0});
        if (it == b.terms().end()) continue;
        if (ka.first > 0) total += detail::cocycle_sum(f, it->second, ka.first);
        else if (ka.first < 0) total -= detail::cocycle_sum(it->second, f, -ka.first);
    }
    return total;
}

/// Ψˢ on Diff[t, t^{-1}, θ]: f1 g1 + f2 g3 - f3 g2 - f4 g4 summed as in Ψ, with
/// components (∂θθ, ∂θ, θ, θ∂θ) = (1, 2, 3, 4). For k1 < 0 the value is -(-1)^{p p'} Ψˢ(b, a).
template <class S>
S super_cocycle(const SuperDiffOp<S>& a, const SuperDiffOp<S>& b) {
    struct Pair { int fa, gb; int sign; };
    static constexpr std::array<Pair, 4> table{{{0, 0, 1}, {1, 2, 1}, {2, 1, -1}, {3, 3, -1}}};
    auto sign_of = [](int fc, int gc) {
        for (const auto& p : table)
            if (p.fa == fc && p.gb == gc) return p.sign;
        return 0;
    };
    S total(0);
    for (int ca = 0; ca < 4; ++ca) {
        const auto& x = a.at(ca);
        detail::require_untwisted(x);
        for (int cb = 0; cb < 4; ++cb) {
            const auto& y = b.at(cb);
            for (const auto& [kx, f] : x.terms()) {
                auto it = y.terms().find({-kx.first, 0});
                if (it == y.terms().end()) continue;
                if (kx.first > 0) {
                    int s = sign_of(ca, cb);
                    if (s != 0) total += S(s) * detail::cocycle_sum(f, it->second, kx.first);
                } else if (kx.first < 0) {
                    int s = sign_of(cb, ca);
                    if (s == 0) continue;
                    int pp = comp_parity(ca) * comp_parity(cb);
                    S v = S(s) * detail::cocycle_sum(it->second, f, -kx.first);
                    total += pp ? v : -v;
                }
            }
        }
    }
    return total;
}

}  // namespace zreg
