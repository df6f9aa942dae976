#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "kahan.hpp"
#include "splitting.hpp"

namespace logkappa {

namespace detail {

// One weighted prime-power term of the smoothed counting sum, at cutoff Y:
//   (log Np / Np^{m/2}) * (sqrt(Y) log Y / (Np^{m/2} log Np^m) - 1)
// with Np = p^f and U = p^{fm} passed in exactly.
inline double smoothed_term(double lognorm, double U, unsigned m, double sqrtY_logY) {
    double su = std::sqrt(U);
    double lU = static_cast<double>(m) * lognorm;
    return (lognorm / su) * (sqrtY_logY / (su * lU) - 1.0);
}

// Sum of the smoothed terms for one splitting entry under cutoff Y; identical
// evaluation order for identical factor lists, so the degree-1 profile
// cancels the rational-prime sum bit for bit.
inline double local_smoothed(const LocalSplitting& ls, double Y, double sqrtY_logY) {
    double acc = 0.0;
    for (auto& [f, e] : ls.factors) {
        (void)e;
        double lognorm = static_cast<double>(f) * std::log(static_cast<double>(ls.p));
        for (unsigned m = 1; prime_power_below(ls.p, static_cast<unsigned>(f) * m, Y); ++m) {
            double U = static_cast<double>(ipow_u64(ls.p, static_cast<unsigned>(f) * m));
            acc += smoothed_term(lognorm, U, m, sqrtY_logY);
        }
    }
    return acc;
}

inline double local_smoothed_rational(std::uint64_t p, double Y, double sqrtY_logY) {
    double acc = 0.0;
    double lp = std::log(static_cast<double>(p));
    for (unsigned m = 1; prime_power_below(p, m, Y); ++m) {
        double U = static_cast<double>(ipow_u64(p, m));
        acc += smoothed_term(lp, U, m, sqrtY_logY);
    }
    return acc;
}

} // namespace detail

// B_K(X) relative to Q, at the pair of cutoffs (X, X/9) in one splitting
// pass. Returned as {B(X), B(X/9)}.
inline std::pair<double, double> smoothed_sum_pair(const NumberFieldProfile& K, double X,
                                                   int threads = 1,
                                                   const OverrideTable* overrides = nullptr) {
    if (!(X > 0)) throw std::invalid_argument("cutoff must be positive");
    double X9 = X / 9.0;
    double cA = std::sqrt(X) * std::log(X);
    double cB = X9 > 1.0 ? std::sqrt(X9) * std::log(X9) : 0.0;
    KahanSum sA, sB;
    for_each_prime_splitting(K, X, threads, overrides, [&](const LocalSplitting& ls) {
        double a = detail::local_smoothed(ls, X, cA) - detail::local_smoothed_rational(ls.p, X, cA);
        if (a != 0.0) sA.add(a);
        if (static_cast<double>(ls.p) < X9) {
            double b =
                detail::local_smoothed(ls, X9, cB) - detail::local_smoothed_rational(ls.p, X9, cB);
            if (b != 0.0) sB.add(b);
        }
    });
    return {sA.value(), sB.value()};
}

struct FEstimate {
    double X = 0;
    double value = 0;
    double b_at_X = 0;
    double b_at_X9 = 0;
};

// The sharpened estimator: 3 (B(X) - B(X/9)) / (2 sqrt(X) log 3X), X > 9.
inline FEstimate f_estimator(const NumberFieldProfile& K, double X, int threads = 1,
                             const OverrideTable* overrides = nullptr) {
    if (!(X > 9)) throw std::invalid_argument("f estimator requires X > 9");
    auto [bX, bX9] = smoothed_sum_pair(K, X, threads, overrides);
    FEstimate r;
    r.X = X;
    r.b_at_X = bX;
    r.b_at_X9 = bX9;
    r.value = 3.0 * (bX - bX9) / (2.0 * std::sqrt(X) * std::log(3.0 * X));
    return r;
}

// The Euler-product comparison sum at cutoff X:
//   sum_{p<X} [ log(1-1/p) - sum_{P | p, NP < X} log(1 - 1/NP) ].
inline double euler_comparison_sum(const NumberFieldProfile& K, double X, int threads = 1,
                                   const OverrideTable* overrides = nullptr) {
    if (!(X > 0)) throw std::invalid_argument("cutoff must be positive");
    KahanSum s;
    for_each_prime_splitting(K, X, threads, overrides, [&](const LocalSplitting& ls) {
        double local = std::log1p(-1.0 / static_cast<double>(ls.p));
        for (auto& [f, e] : ls.factors) {
            (void)e;
            if (prime_power_below(ls.p, static_cast<unsigned>(f), X))
                local -= std::log1p(-1.0 / static_cast<double>(ipow_u64(ls.p, static_cast<unsigned>(f))));
        }
        if (local != 0.0) s.add(local);
    });
    return s.value();
}

// Weighted average of the comparison sum over the window [X/2, X):
//   g(X) = sum_{i=0}^{x-1} a_i A(x+i),  x = X/2,
//   a_i = (x+i) log(x+i) / sum_j (x+j) log(x+j).
// One ascending pass; A is advanced incrementally between evaluation points.
inline double averaged_comparison_sum(const NumberFieldProfile& K, std::uint64_t X,
                                      int threads = 1, const OverrideTable* overrides = nullptr) {
    if (X < 4 || X % 2 != 0) throw std::invalid_argument("averaged estimator requires even X >= 4");
    std::uint64_t x = X / 2;
    // events: key v contributes to A(w) for every w > v
    std::map<std::uint64_t, double> events;
    for_each_prime_splitting(K, static_cast<double>(X), threads, overrides,
                             [&](const LocalSplitting& ls) {
                                 events[ls.p] += std::log1p(-1.0 / static_cast<double>(ls.p));
                                 for (auto& [f, e] : ls.factors) {
                                     (void)e;
                                     if (!prime_power_below(ls.p, static_cast<unsigned>(f),
                                                            static_cast<double>(X)))
                                         continue;
                                     std::uint64_t norm = ipow_u64(ls.p, static_cast<unsigned>(f));
                                     events[norm] -= std::log1p(-1.0 / static_cast<double>(norm));
                                 }
                             });
    KahanSum weight_sum;
    for (std::uint64_t i = 0; i < x; ++i) {
        double v = static_cast<double>(x + i);
        weight_sum.add(v * std::log(v));
    }
    double W = weight_sum.value();
    KahanSum A, g;
    auto it = events.begin();
    for (std::uint64_t v = x; v < X; ++v) {
        while (it != events.end() && it->first < v) {
            if (it->second != 0.0) A.add(it->second);
            ++it;
        }
        double w = static_cast<double>(v) * std::log(static_cast<double>(v));
        double a = A.value();
        if (a != 0.0) g.add((w / W) * a);
    }
    return g.value();
}

// Truncated prime-ideal sum  sum_{NP < X} log NP / (NP^sigma - 1), the
// correction feeding the sigma-family bounds.
inline double prime_ideal_sigma_sum(const NumberFieldProfile& K, double X, double sigma,
                                    int threads = 1, const OverrideTable* overrides = nullptr) {
    if (!(sigma > 1.0)) throw std::invalid_argument("sigma must exceed 1");
    KahanSum s;
    for_each_prime_splitting(K, X, threads, overrides, [&](const LocalSplitting& ls) {
        for (auto& [f, e] : ls.factors) {
            (void)e;
            if (!prime_power_below(ls.p, static_cast<unsigned>(f), X)) continue;
            double ln = static_cast<double>(f) * std::log(static_cast<double>(ls.p));
            double xs = sigma * ln;
            double term = xs > 700.0 ? ln * std::exp(-xs) : ln / std::expm1(xs);
            s.add(term);
        }
    });
    return s.value();
}

} // namespace logkappa
