#pragma once

#include "zreg/symbolic/diffop.hpp"

#include <random>

namespace zreg {

/// Seeded random elements of the symbolic algebras, for property sweeps.
struct RandomSymbolic {
    std::mt19937 rng;
    explicit RandomSymbolic(unsigned seed = 20261016) : rng(seed) {}

    long uni(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    Rational q() { return Rational(uni(-4, 4), uni(1, 3)); }

    RatPoly poly(long max_deg, long min_deg = 0) {
        std::vector<Rational> c(static_cast<std::size_t>(max_deg + 1), Rational(0));
        for (long i = min_deg; i <= max_deg; ++i) c[static_cast<std::size_t>(i)] = q();
        return RatPoly(c);
    }
    /// Element of Diff[t, t^{-1}]: polynomials without constant term.
    DiffOp<Rational> diff(long max_deg = 3, long max_k = 3, long terms = 2, bool half = false) {
        DiffOp<Rational> a;
        for (long i = 0; i < terms; ++i) {
            Rational k(uni(-max_k, max_k));
            if (half) k += Rational(1, 2);
            a += DiffOp<Rational>::term(k, poly(max_deg, 1));
        }
        return a;
    }
    DiffOp<Rational> any(long max_deg = 4, long max_k = 3) {
        DiffOp<Rational> a;
        for (long i = 0; i < 2; ++i) a += DiffOp<Rational>::term(Rational(uni(-max_k, max_k)), poly(max_deg));
        return a;
    }
    /// γ-invariant element (even or odd) by symmetrization, odd degrees in Z or Z+1/2.
    SuperDiffOp<Rational> sym(int parity, bool ns) {
        SuperDiffOp<Rational> x;
        if (parity == 0) {
            x[Comp::DthTh] = diff();
            x[Comp::ThDth] = any(3);
        } else {
            x[Comp::Th] = diff(3, 2, 2, ns);
            x[Comp::Dth] = diff(3, 2, 1, ns);
        }
        return x + gamma(x);
    }
    SuperDiffOp<Rational> homogeneous(int parity) {
        SuperDiffOp<Rational> x;
        if (parity == 0) {
            x[Comp::DthTh] = any(3);
            x[Comp::ThDth] = any(3);
        } else {
            x[Comp::Th] = any(3);
            x[Comp::Dth] = any(3);
        }
        return x;
    }
};

}  // namespace zreg
