#pragma once

#include "zreg/symbolic/diffop.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace zreg {

/// A linear form Σ c_i y_i in the four formal variables y1..y4.
using YForm = std::array<Rational, 4>;

inline YForm yvar(int i) {
    YForm f{};
    f[static_cast<std::size_t>(i - 1)] = Rational(1);
    return f;
}
inline YForm operator+(YForm a, const YForm& b) {
    for (std::size_t i = 0; i < 4; ++i) a[i] += b[i];
    return a;
}
inline YForm operator-(YForm a, const YForm& b) {
    for (std::size_t i = 0; i < 4; ++i) a[i] -= b[i];
    return a;
}

/// One summand c · t^p · P(D) · exp(Σ_i y_i (α_i D + β_i)) · ζ_N^{aD} in a Clifford component.
/// Products of such terms stay of this shape, so generating functions are carried exactly
/// and only their y-coefficients are ever expanded.
template <class S>
struct GfTerm {
    int comp = 0;
    long p2 = 0;  // 2 × t-degree
    long twist = 0;
    S scalar{1};
    Polynomial<S> prefactor{S(1)};
    std::array<Rational, 4> alpha{};
    std::array<Rational, 4> beta{};
};

template <class S>
class GenFunc {
public:
    GenFunc() = default;
    explicit GenFunc(long modulus, int parity = 0) : modulus_(modulus), parity_(parity) {}

    [[nodiscard]] long modulus() const { return modulus_; }
    [[nodiscard]] int parity() const { return parity_; }
    [[nodiscard]] const std::vector<GfTerm<S>>& terms() const { return t_; }
    void push(GfTerm<S> t) { t_.push_back(std::move(t)); }

    /// Multiplies by e^{n·w}, i.e. the x-coefficient of a shifted delta function.
    [[nodiscard]] GenFunc times_exp(const YForm& w, const Rational& n) const {
        GenFunc r = *this;
        for (auto& t : r.t_)
            for (std::size_t i = 0; i < 4; ++i) t.beta[i] += n * w[i];
        return r;
    }
    /// ∂/∂y_j.
    [[nodiscard]] GenFunc d_dy(int j) const {
        GenFunc r = *this;
        auto idx = static_cast<std::size_t>(j - 1);
        for (auto& t : r.t_)
            t.prefactor = t.prefactor * Polynomial<S>::linear(S(t.alpha[idx]), S(t.beta[idx]));
        return r;
    }
    [[nodiscard]] GenFunc scaled(const S& s) const {
        GenFunc r = *this;
        for (auto& t : r.t_) t.scalar *= s;
        return r;
    }
    friend GenFunc operator+(GenFunc a, const GenFunc& b) {
        a.check(b);
        a.t_.insert(a.t_.end(), b.t_.begin(), b.t_.end());
        return a;
    }
    friend GenFunc operator-(GenFunc a, const GenFunc& b) { return a + b.scaled(S(-1)); }

    /// Operator product, term by term:
    /// t^{p1} P1(D) e^{Σ y(αD+β)} ζ^{aD} · t^{p2} P2(D) e^{Σ y(α'D+β')} ζ^{a'D}
    ///   = ζ^{a p2} t^{p1+p2} P1(D+p2) P2(D) e^{Σ y((α+α')D + β + α p2 + β')} ζ^{(a+a')D}.
    friend GenFunc operator*(const GenFunc& a, const GenFunc& b) {
        a.check(b);
        GenFunc r(a.modulus_, (a.parity_ + b.parity_) % 2);
        for (const auto& x : a.t_)
            for (const auto& y : b.t_) {
                int rx = x.comp / 2, cx = x.comp % 2, ry = y.comp / 2, cy = y.comp % 2;
                if (cx != ry) continue;
                GfTerm<S> z;
                z.comp = 2 * rx + cy;
                z.p2 = x.p2 + y.p2;
                z.twist = x.twist + y.twist;
                Rational shift(y.p2, 2);
                z.scalar = x.scalar * y.scalar;
                if (x.twist != 0) {
                    if (y.p2 % 2 != 0) throw std::domain_error("GenFunc: twist past a half-integer degree");
                    z.scalar *= detail::root_of_unity<S>(a.modulus_, x.twist * (y.p2 / 2));
                }
                z.prefactor = x.prefactor.shift(S(shift)) * y.prefactor;
                for (std::size_t i = 0; i < 4; ++i) {
                    z.alpha[i] = x.alpha[i] + y.alpha[i];
                    z.beta[i] = x.beta[i] + x.alpha[i] * shift + y.beta[i];
                }
                r.t_.push_back(std::move(z));
            }
        return r;
    }

    /// Coefficient of y1^e1 ... y4^e4 as a symbolic operator.
    [[nodiscard]] SuperDiffOp<S> coefficient(const std::array<long, 4>& e) const {
        SuperDiffOp<S> r;
        for (int c = 0; c < 4; ++c) r.at(c) = DiffOp<S>(modulus_);
        for (const auto& t : t_) {
            Polynomial<S> p = t.prefactor * t.scalar;
            Rational denom(1);
            for (std::size_t i = 0; i < 4; ++i) {
                if (e[i] == 0) continue;
                if (t.alpha[i].is_zero() && t.beta[i].is_zero()) {
                    p = Polynomial<S>();
                    break;
                }
                p = p * Polynomial<S>::linear(S(t.alpha[i]), S(t.beta[i])).pow(static_cast<unsigned>(e[i]));
                denom *= factorial(e[i]);
            }
            if (p.is_zero()) continue;
            r.at(t.comp).add(t.p2, t.twist, p * S(denom.inverse()));
        }
        return r;
    }

private:
    void check(const GenFunc& o) const {
        if (modulus_ != o.modulus_) throw std::invalid_argument("GenFunc: twist moduli differ");
    }
    long modulus_ = 1;
    int parity_ = 0;
    std::vector<GfTerm<S>> t_;
};

/// [A, B] = AB - (-1)^{p(A)p(B)} BA.
template <class S>
GenFunc<S> super_bracket(const GenFunc<S>& a, const GenFunc<S>& b) {
    GenFunc<S> ab = a * b, ba = b * a;
    return a.parity() * b.parity() == 1 ? ab + ba : ab - ba;
}

namespace detail {

/// t^p e^{-u(D+p) + vD}: α_i = v_i - u_i, β_i = -u_i p.
template <class S>
GfTerm<S> exp_term(int comp, const YForm& u, const YForm& v, const Rational& p, const S& scalar,
                   const Polynomial<S>& pre, long twist = 0) {
    GfTerm<S> t;
    t.comp = comp;
    t.p2 = twice(p);
    t.twist = twist;
    t.scalar = scalar;
    t.prefactor = pre;
    for (std::size_t i = 0; i < 4; ++i) {
        t.alpha[i] = v[i] - u[i];
        t.beta[i] = -u[i] * p;
    }
    return t;
}

}  // namespace detail

/// t^p-coefficient of c·(e^{-uD} δ(t/x) e^{vD} D + e^{-vD} δ(t/x) e^{uD} D), c = 1/2 for the
/// symmetric normalization and 1 for the un-halved one. Lives in the ∂θθ component.
template <class S = Rational>
GenFunc<S> dplus_gf(const YForm& u, const YForm& v, const Rational& p, const Rational& c = Rational(1, 2)) {
    GenFunc<S> g;
    auto d = Polynomial<S>::x();
    g.push(detail::exp_term<S>(0, u, v, p, S(c), d));
    g.push(detail::exp_term<S>(0, v, u, p, S(c), d));
    return g;
}

/// t^p-coefficient of e^{-uD} δ(t/x) e^{vD} - e^{-vD} δ(t/x) e^{uD}, θ∂θ component.
template <class S = Rational>
GenFunc<S> dminus_gf(const YForm& u, const YForm& v, const Rational& p) {
    GenFunc<S> g;
    Polynomial<S> one(S(1));
    g.push(detail::exp_term<S>(3, u, v, p, S(1), one));
    g.push(detail::exp_term<S>(3, v, u, p, S(-1), one));
    return g;
}

/// t^p-coefficient of e^{-uD} δ_{1/2}(t/x) e^{vD} D θ + e^{-vD} δ_{1/2}(t/x) e^{uD} ∂θ.
template <class S = Rational>
GenFunc<S> odd_gf(const YForm& u, const YForm& v, const Rational& p) {
    GenFunc<S> g(1, 1);
    g.push(detail::exp_term<S>(2, u, v, p, S(1), Polynomial<S>::x()));
    g.push(detail::exp_term<S>(1, v, u, p, S(1), Polynomial<S>(S(1))));
    return g;
}

/// Root-of-unity twisted family, a = 2πi a'/N, b = 2πi b'/N:
/// t^n-coefficient of e^{-uD} δ(e^{-a}t/x) e^{vD} e^{(b-a)D} D + e^{-vD} δ(e^{-b}t/x) e^{uD} e^{(a-b)D} D
///   = ζ^{-a'n} t^n e^{-u(D+n)+vD} ζ^{(b'-a')D} D + ζ^{-b'n} t^n e^{-v(D+n)+uD} ζ^{(a'-b')D} D.
template <class S = Cyclotomic>
GenFunc<S> twisted_dplus_gf(const YForm& u, const YForm& v, long n, long a, long b, long modulus) {
    GenFunc<S> g(modulus);
    auto d = Polynomial<S>::x();
    Rational p(n);
    g.push(detail::exp_term<S>(0, u, v, p, detail::root_of_unity<S>(modulus, -a * n), d,
                               detail::positive_mod(b - a, modulus)));
    g.push(detail::exp_term<S>(0, v, u, p, detail::root_of_unity<S>(modulus, -b * n), d,
                               detail::positive_mod(a - b, modulus)));
    return g;
}

enum class GfFamily { DPlus, DMinus, Odd, TwistedDPlus };

/// coeff_{y1^i y2^j x^m} of a family; the delta function puts t^{-m} at x^m (δ_{1/2} shifts m into Z+1/2).
template <class S>
SuperDiffOp<S> extract_gf_coeff(GfFamily family, long i, long j, const Rational& x_power, long a = 0, long b = 0,
                                long modulus = 1) {
    if (i < 0 || j < 0) throw std::invalid_argument("extract_gf_coeff: powers must be non-negative");
    Rational p = -x_power;
    GenFunc<S> g;
    switch (family) {
        case GfFamily::DPlus: g = dplus_gf<S>(yvar(1), yvar(2), p); break;
        case GfFamily::DMinus: g = dminus_gf<S>(yvar(1), yvar(2), p); break;
        case GfFamily::Odd:
            if (p.is_integer())
                throw std::invalid_argument("extract_gf_coeff: odd family lives at x^{Z+1/2}");
            g = odd_gf<S>(yvar(1), yvar(2), p);
            break;
        case GfFamily::TwistedDPlus:
            if (!p.is_integer()) throw std::invalid_argument("extract_gf_coeff: twisted family needs integral degree");
            if constexpr (std::is_same_v<S, Cyclotomic>) g = twisted_dplus_gf<S>(yvar(1), yvar(2), p.to_long(), a, b, modulus);
            else throw std::invalid_argument("extract_gf_coeff: twisted family needs cyclotomic scalars");
            break;
    }
    return g.coefficient({i, j, 0, 0});
}

// ------------------------------------------------------- bracket identities

struct BracketMismatch {
    std::array<long, 4> powers{};
    Rational m, n;
    std::string lhs, rhs;
};

struct BracketReport {
    std::string check;
    std::string anchor;
    long compared = 0;
    long mismatches = 0;
    std::vector<BracketMismatch> examples;  // first few only
    [[nodiscard]] bool pass() const { return mismatches == 0 && compared > 0; }
};

struct BracketIdentity {
    std::string id;
    std::string anchor;
    bool left_odd = false;
    bool right_odd = false;
    std::function<GenFunc<Rational>(const Rational& m, const Rational& n)> lhs;
    std::function<GenFunc<Rational>(const Rational& m, const Rational& n)> rhs;
};

/// The bracket identities for the generating functions, keyed by role.
inline const std::vector<BracketIdentity>& bracket_identities() {
    using G = GenFunc<Rational>;
    static const std::vector<BracketIdentity> ids = [] {
        const YForm y1 = yvar(1), y2 = yvar(2), y3 = yvar(3), y4 = yvar(4);
        const Rational half(1, 2), one(1);
        std::vector<BracketIdentity> v;

        v.push_back({"dplus", "\\frac{1}{2} \\frac{\\partial}{\\partial y_2} \\biggl( {\\cal D}^{y_4,y_3+y_1-y_2}(x_2)", false, false,
                     [=](const Rational& m, const Rational& n) {
                         return super_bracket(dplus_gf(y1, y2, m), dplus_gf(y3, y4, n));
                     },
                     [=](const Rational& m, const Rational& n) {
                         Rational p = m + n;
                         G t1 = dplus_gf(y4, y3 + y1 - y2, p).times_exp(y2 - y3, -m) +
                                dplus_gf(y3, y4 + y1 - y2, p).times_exp(y2 - y4, -m);
                         G t2 = dplus_gf(y3, y4 + y2 - y1, p).times_exp(y1 - y4, -m) +
                                dplus_gf(y4, y3 + y2 - y1, p).times_exp(y1 - y3, -m);
                         return t1.d_dy(2).scaled(half) + t2.d_dy(1).scaled(half);
                     }});

        v.push_back({"dminus", "\\bar{\\cal D}^{y_1,y_2}", false, false,
                     [=](const Rational& m, const Rational& n) {
                         return super_bracket(dminus_gf(y1, y2, m), dminus_gf(y3, y4, n));
                     },
                     [=](const Rational& m, const Rational& n) {
                         Rational p = m + n;
                         return dminus_gf(y1, y4 + y2 - y3, p).times_exp(y2 - y3, n) +
                                dminus_gf(y2, y1 + y3 - y4, p).times_exp(y1 - y4, n) -
                                dminus_gf(y1, y2 + y3 - y4, p).times_exp(y2 - y4, n) -
                                dminus_gf(y2, y4 + y1 - y3, p).times_exp(y1 - y3, n);
                     }});

        v.push_back({"odd-odd", "D^{y_2,y_4+y_1-y_3}(x_1)", true, true,
                     [=](const Rational& m, const Rational& n) {
                         return super_bracket(odd_gf(y1, y2, m), odd_gf(y3, y4, n));
                     },
                     [=](const Rational& m, const Rational& n) {
                         Rational p = m + n;
                         return dplus_gf(y2, y4 + y1 - y3, p, one).times_exp(y1 - y3, n) -
                                dminus_gf(y1, y2 + y3 - y4, p).times_exp(y2 - y4, n).d_dy(4);
                     }});

        v.push_back({"odd-dplus", "G^{y_1,y_4+y_2-y_3}(x_1)", true, false,
                     [=](const Rational& m, const Rational& n) {
                         return super_bracket(odd_gf(y1, y2, m), dplus_gf(y3, y4, n, one));
                     },
                     [=](const Rational& m, const Rational& n) {
                         Rational p = m + n;
                         return (odd_gf(y1, y4 + y2 - y3, p).times_exp(y2 - y3, n) +
                                 odd_gf(y1, y2 - y4 + y3, p).times_exp(y2 - y4, n))
                             .d_dy(2);
                     }});

        // Printed with the two upper arguments of G in the order (y2, ...); the bracket
        // itself produces (..., y2). Both are kept so the report shows the difference.
        v.push_back({"odd-dminus", "G^{y_2,y_4+y_1-y_3}(x_1)", true, false,
                     [=](const Rational& m, const Rational& n) {
                         return super_bracket(odd_gf(y1, y2, m), dminus_gf(y3, y4, n));
                     },
                     [=](const Rational& m, const Rational& n) {
                         Rational p = m + n;
                         return odd_gf(y4 + y1 - y3, y2, p).times_exp(y1 - y3, n) -
                                odd_gf(y1 - y4 + y3, y2, p).times_exp(y1 - y4, n);
                     }});
        v.push_back({"odd-dminus-printed", "G^{y_2,y_4+y_1-y_3}(x_1)", true, false,
                     [=](const Rational& m, const Rational& n) {
                         return super_bracket(odd_gf(y1, y2, m), dminus_gf(y3, y4, n));
                     },
                     [=](const Rational& m, const Rational& n) {
                         Rational p = m + n;
                         return odd_gf(y2, y4 + y1 - y3, p).times_exp(y1 - y3, n) -
                                odd_gf(y2, y1 - y4 + y3, p).times_exp(y1 - y4, n);
                     }});
        return v;
    }();
    return ids;
}

inline const BracketIdentity& find_bracket_identity(const std::string& id) {
    for (const auto& b : bracket_identities())
        if (b.id == id) return b;
    throw std::invalid_argument("unknown bracket identity: " + id);
}

/// Degrees |m| <= x_range: integers for even families, Z+1/2 for odd ones.
inline std::vector<Rational> degree_range(bool odd, long x_range) {
    std::vector<Rational> r;
    if (odd) {
        for (long k = -2 * x_range + 1; k <= 2 * x_range - 1; k += 2) r.emplace_back(k, 2);
    } else {
        for (long k = -x_range; k <= x_range; ++k) r.emplace_back(k);
    }
    return r;
}

/// Compares every coefficient y1^a y2^b y3^c y4^d (entries <= max_power) for every pair of
/// degrees in range.
inline BracketReport verify_symbolic_bracket(const std::string& id, long max_power, long x_range,
                                             std::size_t keep_examples = 5) {
    const auto& ident = find_bracket_identity(id);
    BracketReport rep{ident.id, ident.anchor, 0, 0, {}};
    for (const auto& m : degree_range(ident.left_odd, x_range))
        for (const auto& n : degree_range(ident.right_odd, x_range)) {
            GenFunc<Rational> l = ident.lhs(m, n), r = ident.rhs(m, n);
            std::array<long, 4> e{};
            for (e[0] = 0; e[0] <= max_power; ++e[0])
                for (e[1] = 0; e[1] <= max_power; ++e[1])
                    for (e[2] = 0; e[2] <= max_power; ++e[2])
                        for (e[3] = 0; e[3] <= max_power; ++e[3]) {
                            auto lc = l.coefficient(e), rc = r.coefficient(e);
                            ++rep.compared;
                            if (lc == rc) continue;
                            ++rep.mismatches;
                            if (rep.examples.size() < keep_examples)
                                rep.examples.push_back({e, m, n, lc.to_string(), rc.to_string()});
                        }
        }
    return rep;
}

}  // namespace zreg
