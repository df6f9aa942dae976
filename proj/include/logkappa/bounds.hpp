#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "numeric_utils.hpp"

namespace logkappa {

// Certified constants of the main bound. The leading constant is
// 2.325 = 1.5 * 1.55 >= (3/2)(1 + log(9)/4), the rounding the reference grid
// of minimal cutoffs was generated with.
inline constexpr double bound_C0 = 2.325;
inline constexpr double bound_c_ell = 3.88;
inline constexpr double bound_c_beta = 4.26;

// beta(t) = (1/2)(1/2 + 1/t) e^t log((e^t+1)/(e^t-1)); decreasing, -> 1/2.
// e^t log((e^t+1)/(e^t-1)) = e^t (log1p(y) - log1p(-y)) with y = e^{-t}
// below t = 36, and 2 + (2/3)e^{-2t} + O(e^{-4t}) beyond (the remainder is
// below double rounding there).
inline double beta_factor(double t) {
    if (!(t > 0)) throw std::invalid_argument("beta: requires t > 0");
    double val;
    if (t > 36.0) {
        val = 2.0 + (2.0 / 3.0) * std::exp(-2.0 * t);
    } else {
        double y = std::exp(-t);
        val = std::exp(t) * (std::log1p(y) - std::log1p(-y));
    }
    return 0.5 * (0.5 + 1.0 / t) * val;
}

inline void check_field_params(double log_delta, int n) {
    if (n < 2) throw std::invalid_argument("bound: degree must be >= 2");
    if (!(log_delta >= std::log(3.0) - 1e-12))
        throw std::invalid_argument("bound: log_delta must be >= log 3");
}

// Main certified bound on |f_K(X) - log kappa_K|:
//   C0/(sqrt(X) log 3X) * [ (1 + 3.88/log(X/9)) (sqrt(log D) + 2)^2
//                           + 4.26 (n-1) btilde / sqrt(X) ]
// where btilde = beta(log(X/9)) when include_beta, else 1 (valid for X >= 69).
inline double thm1_bound(double log_delta, int n, double X, bool include_beta = true) {
    check_field_params(log_delta, n);
    if (include_beta) {
        if (!(X > 9)) throw std::invalid_argument("bound: requires X > 9");
    } else {
        if (!(X >= 69)) throw std::invalid_argument("bound: requires X >= 69 without the beta factor");
    }
    double ell = std::log(X / 9.0);
    double sL = std::sqrt(log_delta);
    double btilde = include_beta ? beta_factor(ell) : 1.0;
    double pref = bound_C0 / (std::sqrt(X) * std::log(3.0 * X));
    return pref * ((1.0 + bound_c_ell / ell) * (sL + 2.0) * (sL + 2.0) +
                   bound_c_beta * (n - 1) * btilde / std::sqrt(X));
}

// The refined discriminant term of the sigma-family bound:
//   delta = log D + Z_Q/(2s-1) + 2/(s-1) + 2/s - 2 S
//           - n (log 2pi - psi(s)) - r1 (psi((s+1)/2) - psi(s/2))/2,
// Z_Q = gamma/2 + 1 - log(4 pi)/2 the zeta zero-sum constant.
inline double sigma_delta(double log_delta, int n, int r1, double sigma,
                          double truncated_prime_sum) {
    if (!(sigma > 1.0)) throw std::invalid_argument("sigma must exceed 1");
    if (r1 < 0 || r1 > n) throw std::invalid_argument("r1 must lie in [0, n]");
    if (truncated_prime_sum < 0) throw std::invalid_argument("truncated prime sum must be >= 0");
    double two_pi = 2.0 * std::acos(-1.0);
    return log_delta + zeta_zero_sum_target() / (2.0 * sigma - 1.0) + 2.0 / (sigma - 1.0) +
           2.0 / sigma - 2.0 * truncated_prime_sum - n * (std::log(two_pi) - digamma(sigma)) -
           r1 * (digamma((sigma + 1.0) / 2.0) - digamma(sigma / 2.0)) / 2.0;
}

struct BoundInputs {
    double log_delta = 0;
    int n = 2;
    int r1 = 0;
    double X = 0;
    double sigma = 1.5;
    double truncated_prime_sum = 0;
};

// Sigma-family certified bound:
//   C0 (2s-1)/(sqrt(X) log 3X) * [ delta (1 + 3.88/log(X/9))
//                                  + 4.26 (n-1) beta(log(X/9)) / ((2s-1) sqrt(X)) ].
inline double sigma_bound(const BoundInputs& in) {
    check_field_params(in.log_delta, in.n);
    if (!(in.X > 9)) throw std::invalid_argument("bound: requires X > 9");
    double delta = sigma_delta(in.log_delta, in.n, in.r1, in.sigma, in.truncated_prime_sum);
    if (!(delta > 0))
        throw std::domain_error("sigma bound: delta <= 0 (sigma unsuitable for this field)");
    double ell = std::log(in.X / 9.0);
    double pref = bound_C0 * (2.0 * in.sigma - 1.0) / (std::sqrt(in.X) * std::log(3.0 * in.X));
    return pref * (delta * (1.0 + bound_c_ell / ell) +
                   bound_c_beta * (in.n - 1) * beta_factor(ell) /
                       ((2.0 * in.sigma - 1.0) * std::sqrt(in.X)));
}

// Exact sigma = 1.5 specialization of sigma_bound, with the constant terms
// frozen to 25-digit literals:
//   K1 = Z_Q/2 + 4 + 4/3,  K2 = log 2pi - psi(3/2),  K3 = (psi(5/4) - psi(3/4))/2
inline double corollary_bound(double log_delta, int n, int r1, double X,
                              double truncated_prime_sum_sigma15) {
    check_field_params(log_delta, n);
    if (!(X > 9)) throw std::invalid_argument("bound: requires X > 9");
    if (r1 < 0 || r1 > n) throw std::invalid_argument("r1 must lie in [0, n]");
    constexpr double K1 = 5.344881187816393850240488;
    constexpr double K2 = 1.801387092430768963001636;
    constexpr double K3 = 0.4292036732051033807686783;
    double delta = log_delta + K1 - 2.0 * truncated_prime_sum_sigma15 - K2 * n - K3 * r1;
    if (!(delta > 0))
        throw std::domain_error("corollary bound: delta <= 0 (field outside the bound's range)");
    double ell = std::log(X / 9.0);
    return (4.65 / (std::sqrt(X) * std::log(3.0 * X))) *
           (delta * (1.0 + bound_c_ell / ell) +
            2.13 * (n - 1) * beta_factor(ell) / std::sqrt(X));
}

enum class BoundKind { thm1, thm1_beta };

struct MinimalXResult {
    std::uint64_t X = 0;
    double bound_at_X = 0;
    double bound_at_Xm1 = std::numeric_limits<double>::quiet_NaN(); // NaN when X-1 is out of domain
    double target = 0;
};

// Least integer X (>= 10 with beta, >= 69 without) whose bound falls strictly
// below target. Exponential search then bisection; valid because the bound
// decreases strictly in X.
inline MinimalXResult minimal_X(double log_delta, int n, double target = 0.5 * std::log(2.0),
                                BoundKind kind = BoundKind::thm1_beta) {
    if (!(target > 0)) throw std::invalid_argument("minimal_X: target must be positive");
    check_field_params(log_delta, n);
    bool with_beta = (kind == BoundKind::thm1_beta);
    auto bound = [&](std::uint64_t X) {
        return thm1_bound(log_delta, n, static_cast<double>(X), with_beta);
    };
    std::uint64_t floor_X = with_beta ? 10 : 69;
    MinimalXResult out;
    out.target = target;
    if (bound(floor_X) < target) {
        out.X = floor_X;
        out.bound_at_X = bound(floor_X);
        return out;
    }
    std::uint64_t lo = floor_X, hi = floor_X;
    while (bound(hi) >= target) {
        lo = hi;
        if (hi > (std::uint64_t(1) << 50)) throw std::logic_error("minimal_X: search exploded");
        hi *= 2;
    }
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (bound(mid) < target)
            hi = mid;
        else
            lo = mid;
    }
    out.X = hi;
    out.bound_at_X = bound(hi);
    out.bound_at_Xm1 = bound(hi - 1);
    return out;
}

// The minimal-cutoff grid: rows log10 |D| in {5,10,20,50,100,200}, columns
// degree in {2,6,10,20,50}. Cells without a field of that (D, n) signature
// (discriminant too small for the degree) are empty.
struct MinimalXTable {
    std::vector<int> delta_exponents{5, 10, 20, 50, 100, 200};
    std::vector<int> degrees{2, 6, 10, 20, 50};
    std::vector<std::vector<std::optional<std::uint64_t>>> cells;
};

inline MinimalXTable minimal_X_table() {
    MinimalXTable t;
    // infeasible (exponent, degree) pairs: discriminant below the geometric
    // minimum for the degree
    auto feasible = [](int exp10, int n) {
        if (exp10 == 5) return n <= 6;
        if (exp10 == 10) return n <= 10;
        if (exp10 == 20) return n <= 10;
        if (exp10 == 50) return n <= 20;
        return true;
    };
    for (int e : t.delta_exponents) {
        std::vector<std::optional<std::uint64_t>> row;
        for (int n : t.degrees) {
            if (!feasible(e, n)) {
                row.push_back(std::nullopt);
                continue;
            }
            double log_delta = e * std::log(10.0);
            row.push_back(minimal_X(log_delta, n).X);
        }
        t.cells.push_back(std::move(row));
    }
    return t;
}

} // namespace logkappa
