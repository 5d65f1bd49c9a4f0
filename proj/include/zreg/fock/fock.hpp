#pragma once

#include "zreg/kernel/rational.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zreg {

enum class FermionSector { None, NS, Ramond };

/// Which free fields are present. Ramond spaces may carry the zero mode φ(0).
struct FockSpace {
    bool bosons = true;
    FermionSector fermions = FermionSector::NS;
    bool zero_mode = false;

    static FockSpace heisenberg() { return {true, FermionSector::None, false}; }
    static FockSpace ns() { return {true, FermionSector::NS, false}; }
    static FockSpace ns_fermions() { return {false, FermionSector::NS, false}; }
    static FockSpace ramond(bool zero_mode = true) { return {true, FermionSector::Ramond, zero_mode}; }
    static FockSpace ramond_fermions(bool zero_mode = false) { return {false, FermionSector::Ramond, zero_mode}; }
};

/// Π h(-λ_i) Π φ(-μ_j) φ(0)^z |0>, λ descending, μ strictly decreasing and stored doubled.
struct FockState {
    std::vector<long> bosons;
    std::vector<long> fermions2;
    bool zero_mode = false;

    [[nodiscard]] long boson_weight() const {
        long s = 0;
        for (long x : bosons) s += x;
        return s;
    }
    [[nodiscard]] long fermion_weight2() const {
        long s = 0;
        for (long x : fermions2) s += x;
        return s;
    }
    [[nodiscard]] long weight2() const { return 2 * boson_weight() + fermion_weight2(); }
    [[nodiscard]] Rational weight() const { return Rational(weight2(), 2); }
    [[nodiscard]] bool is_vacuum() const { return bosons.empty() && fermions2.empty() && !zero_mode; }

    auto operator<=>(const FockState&) const = default;

    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        for (long b : bosons) os << "h(-" << b << ")";
        for (long f : fermions2) os << "phi(-" << Rational(f, 2) << ")";
        if (zero_mode) os << "phi(0)";
        os << "|0>";
        return os.str();
    }
};

template <class S>
using StateVector = std::map<FockState, S>;

template <class S>
void add_to(StateVector<S>& v, const FockState& s, const S& c) {
    if (c.is_zero()) return;
    auto it = v.find(s);
    if (it == v.end()) {
        v.emplace(s, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

// ------------------------------------------------------------------ basis

namespace detail {

inline void partitions(long n, long max_part, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (long p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

/// Strict partitions of n2 (doubled) into parts of a fixed parity class: odd doubled parts for
/// NS (weights in Z+1/2), even doubled parts for Ramond (positive integers).
inline void strict_partitions2(long n2, long max2, bool odd, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (n2 == 0) {
        out.push_back(cur);
        return;
    }
    long p = std::min(n2, max2);
    if ((p % 2 != 0) != odd) --p;
    for (; p >= 1; p -= 2) {
        cur.push_back(p);
        strict_partitions2(n2 - p, p - 2, odd, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Basis of the weight-(w2/2) subspace, in a fixed deterministic order.
inline std::vector<FockState> fock_basis(const FockSpace& sp, long w2) {
    std::vector<FockState> out;
    if (w2 < 0) return out;
    long max_b = sp.bosons ? w2 / 2 : 0;
    for (long b = 0; b <= max_b; ++b) {
        long f2 = w2 - 2 * b;
        if (sp.fermions == FermionSector::None && f2 != 0) continue;
        std::vector<std::vector<long>> bp, fp;
        std::vector<long> cur;
        detail::partitions(b, b, cur, bp);
        if (sp.fermions == FermionSector::None) fp.push_back({});
        else detail::strict_partitions2(f2, f2, sp.fermions == FermionSector::NS, cur, fp);
        for (const auto& x : bp)
            for (const auto& y : fp) {
                out.push_back({x, y, false});
                if (sp.fermions == FermionSector::Ramond && sp.zero_mode) out.push_back({x, y, true});
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<FockState> fock_basis_upto(const FockSpace& sp, long max_w2) {
    std::vector<FockState> out;
    for (long w = 0; w <= max_w2; ++w) {
        auto b = fock_basis(sp, w);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

// ------------------------------------------------------------------ modes

/// c · h(n) on a basis state, accumulated into out. h(0) acts as 0 on M(1).
template <class S>
void apply_h(long n, const FockState& s, const S& c, StateVector<S>& out) {
    if (n == 0) return;
    FockState t = s;
    if (n < 0) {
        auto pos = std::lower_bound(t.bosons.begin(), t.bosons.end(), -n, std::greater<long>());
        t.bosons.insert(pos, -n);
        add_to(out, t, c);
        return;
    }
    auto lo = std::lower_bound(t.bosons.begin(), t.bosons.end(), n, std::greater<long>());
    auto hi = std::upper_bound(t.bosons.begin(), t.bosons.end(), n, std::greater<long>());
    long mult = hi - lo;
    if (mult == 0) return;
    t.bosons.erase(lo);
    add_to(out, t, c * S(Rational(n * mult)));
}

/// c · φ(r2/2) on a basis state. Creation sign counts the larger entries it passes,
/// annihilation sign counts the entries in front of the contracted one; φ(0) passes all
/// nonzero modes and squares to 1/2.
template <class S>
void apply_phi(FermionSector sector, long r2, const FockState& s, const S& c, StateVector<S>& out) {
    if (sector == FermionSector::None) throw std::invalid_argument("apply_phi: space has no fermions");
    bool ns = sector == FermionSector::NS;
    if ((r2 % 2 != 0) != ns) throw std::invalid_argument("apply_phi: mode index does not match the sector");
    FockState t = s;
    if (r2 == 0) {
        S sign = t.fermions2.size() % 2 == 0 ? S(1) : S(-1);
        if (t.zero_mode) {
            t.zero_mode = false;
            add_to(out, t, c * sign * S(Rational(1, 2)));
        } else {
            t.zero_mode = true;
            add_to(out, t, c * sign);
        }
        return;
    }
    long mu = r2 < 0 ? -r2 : r2;
    auto pos = std::lower_bound(t.fermions2.begin(), t.fermions2.end(), mu, std::greater<long>());
    long before = pos - t.fermions2.begin();
    bool present = pos != t.fermions2.end() && *pos == mu;
    S sign = before % 2 == 0 ? S(1) : S(-1);
    if (r2 < 0) {
        if (present) return;
        t.fermions2.insert(pos, mu);
    } else {
        if (!present) return;
        t.fermions2.erase(pos);
    }
    add_to(out, t, c * sign);
}

struct Mode {
    enum class Kind { Boson, Fermion } kind;
    long index2;  // doubled mode index
    static Mode h(long n) { return {Kind::Boson, 2 * n}; }
    static Mode phi2(long r2) { return {Kind::Fermion, r2}; }
};

template <class S>
StateVector<S> apply_mode(const Mode& m, FermionSector sector, const StateVector<S>& v) {
    StateVector<S> out;
    for (const auto& [s, c] : v) {
        if (m.kind == Mode::Kind::Boson) {
            if (m.index2 % 2 != 0) throw std::invalid_argument("apply_mode: boson modes are integral");
            apply_h(m.index2 / 2, s, c, out);
        } else {
            apply_phi(sector, m.index2, s, c, out);
        }
    }
    return out;
}

// ------------------------------------------------------------- operators

/// Linear operator on the Fock space, given by its exact action on basis states.
/// It shifts weights by -degree (degree stored doubled) and has a Z/2 parity.
template <class S>
class FockOp {
public:
    using Action = std::function<void(const FockState&, const S&, StateVector<S>&)>;

    FockOp() = default;
    FockOp(long degree2, int parity, Action act) : degree2_(degree2), parity_(parity), act_(std::move(act)) {}

    static FockOp zero(long degree2 = 0, int parity = 0) { return FockOp(degree2, parity, nullptr); }
    static FockOp scalar(const S& c) {
        return FockOp(0, 0, [c](const FockState& s, const S& k, StateVector<S>& out) { add_to(out, s, k * c); });
    }

    [[nodiscard]] long degree2() const { return degree2_; }
    [[nodiscard]] int parity() const { return parity_; }
    [[nodiscard]] bool is_zero_op() const { return !act_; }

    void apply(const FockState& s, const S& c, StateVector<S>& out) const {
        if (act_) act_(s, c, out);
    }
    [[nodiscard]] StateVector<S> operator()(const FockState& s) const {
        StateVector<S> out;
        apply(s, S(1), out);
        return out;
    }
    [[nodiscard]] StateVector<S> operator()(const StateVector<S>& v) const {
        StateVector<S> out;
        for (const auto& [s, c] : v) apply(s, c, out);
        return out;
    }

    friend FockOp operator+(const FockOp& a, const FockOp& b) { return combine(a, S(1), b, S(1)); }
    friend FockOp operator-(const FockOp& a, const FockOp& b) { return combine(a, S(1), b, S(-1)); }
    friend FockOp operator*(const S& k, const FockOp& a) {
        if (a.is_zero_op() || k.is_zero()) return zero(a.degree2_, a.parity_);
        auto f = a.act_;
        return FockOp(a.degree2_, a.parity_, [f, k](const FockState& s, const S& c, StateVector<S>& out) { f(s, c * k, out); });
    }
    /// Composition: (a * b)(v) = a(b(v)).
    friend FockOp operator*(const FockOp& a, const FockOp& b) {
        long d = a.degree2_ + b.degree2_;
        int p = (a.parity_ + b.parity_) % 2;
        if (a.is_zero_op() || b.is_zero_op()) return zero(d, p);
        auto fa = a.act_, fb = b.act_;
        return FockOp(d, p, [fa, fb](const FockState& s, const S& c, StateVector<S>& out) {
            StateVector<S> mid;
            fb(s, c, mid);
            for (const auto& [t, k] : mid) fa(t, k, out);
        });
    }

private:
    static FockOp combine(const FockOp& a, const S& ka, const FockOp& b, const S& kb) {
        if (a.is_zero_op()) return kb * b;
        if (b.is_zero_op()) return ka * a;
        if (a.degree2_ != b.degree2_) throw std::invalid_argument("FockOp: sum of operators of different degree");
        if (a.parity_ != b.parity_) throw std::invalid_argument("FockOp: sum of operators of different parity");
        auto fa = a.act_, fb = b.act_;
        return FockOp(a.degree2_, a.parity_, [fa, fb, ka, kb](const FockState& s, const S& c, StateVector<S>& out) {
            fa(s, c * ka, out);
            fb(s, c * kb, out);
        });
    }

    long degree2_ = 0;
    int parity_ = 0;
    Action act_;
};

/// [A, B] = AB - (-1)^{p(A)p(B)} BA.
template <class S>
FockOp<S> super_commutator(const FockOp<S>& a, const FockOp<S>& b) {
    if (a.parity() * b.parity() == 1) return a * b + b * a;
    return a * b - b * a;
}

template <class S>
FockOp<S> boson_mode(long n) {
    return FockOp<S>(2 * n, 0, [n](const FockState& s, const S& c, StateVector<S>& out) { apply_h(n, s, c, out); });
}

template <class S>
FockOp<S> fermion_mode(FermionSector sector, long r2) {
    return FockOp<S>(r2, 1, [sector, r2](const FockState& s, const S& c, StateVector<S>& out) {
        apply_phi(sector, r2, s, c, out);
    });
}

/// Coefficient c(j, k) of a quadratic in modes j + k = m.
template <class S>
using Coeff2 = std::function<S(const Rational& j, const Rational& k)>;

/// Σ_{j+k=m} c(j,k) :h(j)h(k):, annihilator applied first.
template <class S>
FockOp<S> boson_quadratic(long m, Coeff2<S> coef) {
    return FockOp<S>(2 * m, 0, [m, coef](const FockState& s, const S& c, StateVector<S>& out) {
        long wb = s.boson_weight();
        long lo = m >= 0 ? (m + 1) / 2 : m / 2;  // ceil(m/2)
        for (long a = lo; a <= std::max(wb, 0L); ++a) {
            long b = m - a;
            if (a == 0 || b == 0) continue;
            Rational ra(a), rb(b);
            S k = a == b ? coef(ra, rb) : coef(ra, rb) + coef(rb, ra);
            if (k.is_zero()) continue;
            StateVector<S> mid;
            apply_h(a, s, c * k, mid);
            for (const auto& [t, x] : mid) apply_h(b, t, x, out);
        }
    });
}

/// Σ_{r+s=m} c(r,s) :φ(r)φ(s): with :φ(r)φ(s): = -:φ(s)φ(r): and :φ(0)φ(0): = 1/2 (Ramond).
template <class S>
FockOp<S> fermion_quadratic(FermionSector sector, long m, Coeff2<S> coef) {
    bool ns = sector == FermionSector::NS;
    return FockOp<S>(2 * m, 0, [sector, ns, m, coef](const FockState& s, const S& c, StateVector<S>& out) {
        long wf2 = s.fermion_weight2();
        long lo = m;  // doubled: a2 >= m
        if ((lo % 2 != 0) != ns) ++lo;
        for (long a2 = lo; a2 <= std::max(wf2, 0L); a2 += 2) {
            long b2 = 2 * m - a2;
            Rational ra(a2, 2), rb(b2, 2);
            if (a2 == b2) {
                if (a2 == 0) add_to(out, s, c * coef(ra, rb) * S(Rational(1, 2)));
                continue;
            }
            S k = coef(rb, ra) - coef(ra, rb);
            if (k.is_zero()) continue;
            StateVector<S> mid;
            apply_phi(sector, a2, s, c * k, mid);
            for (const auto& [t, x] : mid) apply_phi(sector, b2, t, x, out);
        }
    });
}

/// Σ_{j+k=n} c(j,k) φ(j) h(k), n given doubled.
template <class S>
FockOp<S> mixed_quadratic(FermionSector sector, long n2, Coeff2<S> coef) {
    return FockOp<S>(n2, 1, [sector, n2, coef](const FockState& s, const S& c, StateVector<S>& out) {
        long wb = s.boson_weight(), wf2 = s.fermion_weight2();
        // k >= n - wf, k <= wb
        long lo2 = n2 - wf2;
        long lo = lo2 >= 0 ? (lo2 + 1) / 2 : lo2 / 2;
        for (long k = lo; k <= std::max(wb, 0L); ++k) {
            if (k == 0) continue;
            long j2 = n2 - 2 * k;
            S x = coef(Rational(j2, 2), Rational(k));
            if (x.is_zero()) continue;
            StateVector<S> mid;
            apply_h(k, s, c * x, mid);
            for (const auto& [t, y] : mid) apply_phi(sector, j2, t, y, out);
        }
    });
}

// ------------------------------------------------------------- matrices

/// Exact matrix of an operator from the weight-w2 block to its target block.
template <class S>
struct OpBlock {
    std::vector<FockState> source, target;
    std::vector<std::vector<S>> entries;  // entries[row][col]
};

template <class S>
OpBlock<S> operator_block(const FockOp<S>& op, const FockSpace& sp, long source_w2) {
    OpBlock<S> b;
    b.source = fock_basis(sp, source_w2);
    b.target = fock_basis(sp, source_w2 - op.degree2());
    std::map<FockState, std::size_t> row;
    for (std::size_t i = 0; i < b.target.size(); ++i) row.emplace(b.target[i], i);
    b.entries.assign(b.target.size(), std::vector<S>(b.source.size(), S(0)));
    for (std::size_t j = 0; j < b.source.size(); ++j) {
        for (const auto& [t, c] : op(b.source[j])) {
            auto it = row.find(t);
            if (it == row.end()) throw std::logic_error("operator_block: image leaves the space");
            b.entries[it->second][j] = c;
        }
    }
    return b;
}

/// Lazily built, cached blocks of one operator.
template <class S>
class GradedOperator {
public:
    GradedOperator(FockOp<S> op, FockSpace sp) : op_(std::move(op)), sp_(sp) {}
    [[nodiscard]] const FockOp<S>& op() const { return op_; }
    const OpBlock<S>& block(long source_w2) {
        std::lock_guard lock(mu_);
        auto it = cache_.find(source_w2);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(source_w2, operator_block(op_, sp_, source_w2)).first->second;
    }

private:
    FockOp<S> op_;
    FockSpace sp_;
    std::mutex mu_;
    std::map<long, OpBlock<S>> cache_;
};

/// Checks a = b on every basis state of weight <= max_w2; returns the first differing state.
template <class S>
std::optional<FockState> first_difference(const FockOp<S>& a, const FockOp<S>& b, const FockSpace& sp, long max_w2) {
    for (const auto& s : fock_basis_upto(sp, max_w2))
        if (a(s) != b(s)) return s;
    return std::nullopt;
}

/// If op acts as one scalar on every state of weight <= max_w2, returns it.
template <class S>
std::optional<S> scalar_value(const FockOp<S>& op, const FockSpace& sp, long max_w2) {
    std::optional<S> val;
    for (const auto& s : fock_basis_upto(sp, max_w2)) {
        auto img = op(s);
        S v(0);
        if (!img.empty()) {
            if (img.size() != 1 || img.begin()->first != s) return std::nullopt;
            v = img.begin()->second;
        }
        if (op.degree2() != 0 && !img.empty()) return std::nullopt;
        if (val && !(*val == v)) return std::nullopt;
        val = v;
    }
    return val;
}

}  // namespace zreg
