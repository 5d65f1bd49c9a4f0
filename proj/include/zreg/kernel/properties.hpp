#pragma once

#include "zreg/kernel/cyclotomic.hpp"
#include "zreg/kernel/series.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace zreg {

/// Randomized algebraic law over a seeded stream; failures counts cases that broke it.
struct PropertyOutcome {
    std::string name;
    long cases = 0;
    long failures = 0;
    std::string first_failure;
    [[nodiscard]] bool pass() const { return failures == 0 && cases > 0; }
};

class RandomKernel {
public:
    explicit RandomKernel(std::uint64_t seed) : rng_(seed) {}

    Rational rational() {
        std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
        return Rational(num(rng_), den(rng_));
    }

    long level() {
        static const long levels[] = {3, 4, 5, 7, 8, 12, 20};
        return levels[std::uniform_int_distribution<int>(0, 6)(rng_)];
    }

    Cyclotomic cyclotomic(long level) {
        Cyclotomic r(0);
        std::uniform_int_distribution<long> k(0, level - 1);
        for (int i = 0; i < 3; ++i) r += Cyclotomic::zeta(level, k(rng_)) * Cyclotomic(rational());
        return r;
    }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

namespace detail {

inline PropertyOutcome run_property(std::string name, long cases, std::uint64_t seed, const std::function<std::string(RandomKernel&)>& body) {
    PropertyOutcome out{std::move(name), cases, 0, ""};
    RandomKernel g(seed);
    for (long i = 0; i < cases; ++i) {
        std::string bad = body(g);
        if (!bad.empty()) {
            if (out.failures++ == 0) out.first_failure = bad;
        }
    }
    return out;
}

}  // namespace detail

inline std::vector<PropertyOutcome> kernel_properties(long cases) {
    std::vector<PropertyOutcome> out;
    out.push_back(detail::run_property("rational ring axioms", cases, 1, [](RandomKernel& g) -> std::string {
        Rational a = g.rational(), b = g.rational(), c = g.rational();
        bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a * b == b * a &&
                  a - a == Rational(0) && (a.is_zero() || a * a.inverse() == Rational(1));
        return ok ? "" : a.to_string() + ", " + b.to_string() + ", " + c.to_string();
    }));
    out.push_back(detail::run_property("cyclotomic ring axioms", cases, 2, [](RandomKernel& g) -> std::string {
        long l = g.level();
        Cyclotomic a = g.cyclotomic(l), b = g.cyclotomic(l), c = g.cyclotomic(l);
        bool ok = (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a * b == b * a && (a + b) - b == a;
        return ok ? "" : a.to_string() + ", " + b.to_string() + ", " + c.to_string();
    }));
    out.push_back(detail::run_property("cyclotomic inverse round-trip", cases, 3, [](RandomKernel& g) -> std::string {
        Cyclotomic a = g.cyclotomic(g.level());
        return a.is_zero() || a * a.inverse() == Cyclotomic(1) ? "" : a.to_string();
    }));
    out.push_back(detail::run_property("conjugation involutive homomorphism", cases, 4, [](RandomKernel& g) -> std::string {
        long l = g.level();
        Cyclotomic a = g.cyclotomic(l), b = g.cyclotomic(l);
        bool ok = a.conj().conj() == a && (a * b).conj() == a.conj() * b.conj() && (a + b).conj() == a.conj() + b.conj();
        return ok ? "" : a.to_string() + ", " + b.to_string();
    }));
    out.push_back(detail::run_property("series mul/div round-trip", cases, 5, [](RandomKernel& g) -> std::string {
        const long k = 6;
        long v = g.uniform(0, 3);  // valuation of f
        std::vector<Rational> fc(static_cast<std::size_t>(v + k + 1), Rational(0));
        fc[static_cast<std::size_t>(v)] = g.rational();
        if (fc[static_cast<std::size_t>(v)].is_zero()) fc[static_cast<std::size_t>(v)] = Rational(1);
        for (std::size_t j = static_cast<std::size_t>(v) + 1; j < fc.size(); ++j) fc[j] = g.rational();
        std::vector<Rational> gc(4);
        for (auto& x : gc) x = g.rational();
        long prec = 2 * v + k;
        RatSeries f = RatSeries::polynomial(fc, prec);
        RatSeries h = RatSeries::polynomial(gc, prec);
        bool ok = expand_quotient(f * h, f, k) == h.truncated(k) &&
                  (f * h) * f.inverse() == h.truncated((f * h * f.inverse()).prec());
        return ok ? "" : "valuation " + std::to_string(v);
    }));
    return out;
}

}  // namespace zreg
