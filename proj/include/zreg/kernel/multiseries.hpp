#pragma once

#include "zreg/kernel/rational.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zreg {

/// Truncated power series in several variables. Variable i carries exponents n/den[i]
/// with 0 <= n <= cap[i]; an optional weight cap bounds the exponent of one chosen variable.
template <class S>
class MultiSeries {
public:
    using Exponents = std::vector<long>;

    MultiSeries() = default;
    MultiSeries(std::vector<std::string> vars, std::vector<long> caps, std::vector<long> dens = {})
        : vars_(std::move(vars)), caps_(std::move(caps)), dens_(std::move(dens)) {
        if (vars_.size() != caps_.size()) throw std::invalid_argument("MultiSeries: one cap per variable");
        if (dens_.empty()) dens_.assign(vars_.size(), 1);
        if (dens_.size() != vars_.size()) throw std::invalid_argument("MultiSeries: one denominator per variable");
    }

    [[nodiscard]] std::size_t nvars() const { return vars_.size(); }
    [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
    [[nodiscard]] const std::vector<long>& caps() const { return caps_; }
    [[nodiscard]] const std::vector<long>& dens() const { return dens_; }
    [[nodiscard]] const std::map<Exponents, S>& terms() const { return c_; }

    [[nodiscard]] bool in_window(const Exponents& e) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < 0 || e[i] > caps_[i]) return false;
        return true;
    }

    /// Add c to the coefficient of the monomial with exponent numerators e; silently drops out-of-window terms.
    void add_term(const Exponents& e, const S& c) {
        if (e.size() != nvars()) throw std::invalid_argument("MultiSeries: exponent arity");
        if (!in_window(e) || c.is_zero()) return;
        auto it = c_.find(e);
        if (it == c_.end()) c_.emplace(e, c);
        else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    [[nodiscard]] S coeff(const Exponents& e) const {
        if (!in_window(e)) throw std::out_of_range("MultiSeries: coefficient outside the truncation window");
        auto it = c_.find(e);
        return it == c_.end() ? S(0) : it->second;
    }
    /// Coefficient at rational exponents.
    [[nodiscard]] S coeff_at(const std::vector<Rational>& e) const {
        Exponents n(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            Rational s = e[i] * Rational(dens_[i]);
            if (!s.is_integer()) return S(0);
            n[i] = s.to_long();
        }
        return coeff(n);
    }

    static MultiSeries one(std::vector<std::string> vars, std::vector<long> caps, std::vector<long> dens = {}) {
        MultiSeries r(std::move(vars), std::move(caps), std::move(dens));
        r.add_term(Exponents(r.nvars(), 0), S(1));
        return r;
    }
    /// exp(a * var_i) truncated at the cap of var i.
    static MultiSeries exp_var(std::vector<std::string> vars, std::vector<long> caps, std::size_t i, const Rational& a) {
        MultiSeries r(std::move(vars), std::move(caps));
        Rational term(1);
        for (long n = 0; n <= r.caps_[i]; ++n) {
            Exponents e(r.nvars(), 0);
            e[i] = n;
            r.add_term(e, S(term));
            term = term * a / Rational(n + 1);
        }
        return r;
    }

    friend MultiSeries operator+(MultiSeries a, const MultiSeries& b) {
        a.check_compatible(b);
        for (const auto& [e, c] : b.c_) a.add_term(e, c);
        return a;
    }
    friend MultiSeries operator-(MultiSeries a, const MultiSeries& b) {
        a.check_compatible(b);
        for (const auto& [e, c] : b.c_) a.add_term(e, -c);
        return a;
    }
    friend MultiSeries operator*(MultiSeries a, const S& s) {
        MultiSeries r(a.vars_, a.caps_, a.dens_);
        for (const auto& [e, c] : a.c_) r.add_term(e, c * s);
        return r;
    }

    /// Convolution truncated to the intersection of both windows.
    friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
        a.check_compatible(b);
        std::vector<long> caps(a.caps_.size());
        for (std::size_t i = 0; i < caps.size(); ++i) caps[i] = std::min(a.caps_[i], b.caps_[i]);
        MultiSeries r(a.vars_, caps, a.dens_);
        Exponents e(a.nvars());
        for (const auto& [ea, ca] : a.c_) {
            for (const auto& [eb, cb] : b.c_) {
                bool ok = true;
                for (std::size_t i = 0; i < e.size() && ok; ++i) {
                    e[i] = ea[i] + eb[i];
                    ok = e[i] <= caps[i];
                }
                if (ok) r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const MultiSeries& a, const MultiSeries& b) {
        return a.vars_ == b.vars_ && a.caps_ == b.caps_ && a.dens_ == b.dens_ && a.c_ == b.c_;
    }

    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : c_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")";
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                os << "*" << vars_[i] << "^" << Rational(e[i], dens_[i]);
            }
        }
        return first ? "0" : os.str();
    }

private:
    void check_compatible(const MultiSeries& o) const {
        if (vars_ != o.vars_ || dens_ != o.dens_) throw std::invalid_argument("MultiSeries: incompatible variable lists");
    }

    std::vector<std::string> vars_;
    std::vector<long> caps_;
    std::vector<long> dens_;
    std::map<Exponents, S> c_;
};

}  // namespace zreg
