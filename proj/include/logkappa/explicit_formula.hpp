#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kahan.hpp"
#include "numeric_utils.hpp"
#include "primes.hpp"
#include "quadrature.hpp"

namespace logkappa {

struct ZeroDataset {
    std::vector<double> gammas; // ordinates of zeta zeros, strictly ascending
    double max_gamma() const { return gammas.back(); }
};

// Strict parser: one positive ordinate per line, strictly ascending, starting
// at the first zeta zero. Errors carry the offending line number.
inline ZeroDataset load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open zeros file: " + path);
    ZeroDataset out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(line, &pos);
        } catch (...) {
            throw std::runtime_error("zeros file line " + std::to_string(lineno) + ": malformed entry");
        }
        if (line.find_first_not_of(" \t\r", pos) != std::string::npos)
            throw std::runtime_error("zeros file line " + std::to_string(lineno) + ": trailing junk");
        if (!(v > 0))
            throw std::runtime_error("zeros file line " + std::to_string(lineno) + ": ordinate must be positive");
        if (!out.gammas.empty() && !(v > out.gammas.back()))
            throw std::runtime_error("zeros file line " + std::to_string(lineno) + ": ordinates must be strictly ascending");
        out.gammas.push_back(v);
    }
    if (out.gammas.empty()) throw std::runtime_error("zeros file is empty: " + path);
    if (std::abs(out.gammas.front() - 14.134725) > 1e-4)
        throw std::runtime_error("zeros file does not start at the first zeta zero (14.1347...)");
    return out;
}

// The plateau test function: F = 1 on [-T, T], then (T/|t|) e^{-h(|t|-T)},
// with h = s - 1/2 and T = log X.
struct TestFunction {
    double s, X, h, T;
    TestFunction(double s_, double X_) : s(s_), X(X_), h(s_ - 0.5), T(std::log(X_)) {
        if (!(s > 1.0)) throw std::invalid_argument("test function: s must exceed 1");
        if (!(X > 1.0)) throw std::invalid_argument("test function: X must exceed 1");
    }
};

inline double aux_F(double t, const TestFunction& tf) {
    double a = std::abs(t);
    if (a <= tf.T) return 1.0;
    return (tf.T / a) * std::exp(-tf.h * (a - tf.T));
}

// Fourier transform of F at a zero ordinate:
//   2 h^2 sin(gT)/((h^2+g^2) g) + 2 (h + 1/T) cos(gT)/(h^2+g^2)
//     - 4/(h^2+g^2) * int_T^inf cos(gt) f(t) (ht+1)/t^2 dt
// (first term -> 2T as g -> 0). The integral is cut at T + 30/h, remainder
// bounded by f(u)/u there; both the cut and the quadrature error estimate
// are reported for the caller's tail budget.
struct FhatResult {
    double value = 0;
    double slack = 0; // truncation remainder bound + quadrature error estimate
};

inline FhatResult fhat(double gamma, const TestFunction& tf, double abs_tol = 1e-10) {
    double h = tf.h, T = tf.T;
    double g2 = h * h + gamma * gamma;
    double first = gamma == 0.0 ? 2.0 * T : 2.0 * h * h * std::sin(gamma * T) / (g2 * gamma);
    double second = 2.0 * (h + 1.0 / T) * std::cos(gamma * T) / g2;
    double umax = T + 30.0 / h;
    double panel = 2.0 * std::acos(-1.0) / std::max(std::abs(gamma), 1.0);
    auto integrand = [&](double t) {
        return std::cos(gamma * t) * (T / t) * std::exp(-h * (t - T)) * (h * t + 1.0) / (t * t);
    };
    auto q = integrate(integrand, T, umax, abs_tol, panel);
    FhatResult r;
    r.value = first + second - 4.0 * q.value / g2;
    double fu = (T / umax) * std::exp(-h * (umax - T));
    r.slack = 4.0 * (fu / umax + q.error_estimate) / g2;
    return r;
}

// sum over p^m of (log p / p^{m/2}) F(m log p), p < prime_cutoff
inline double weil_prime_sum(const TestFunction& tf, double prime_cutoff) {
    KahanSum tot;
    double h = tf.h, T = tf.T;
    for_each_prime_below(prime_cutoff, [&](std::uint64_t p) {
        double lp = std::log(static_cast<double>(p));
        for (unsigned m = 1; m <= 64; ++m) {
            double u = m * lp;
            double term = u <= T ? lp * std::exp(-u / 2)
                                 : (T / m) * std::exp(-u / 2 - h * (u - T));
            if (term < 1e-22) break;
            tot.add(term);
        }
    });
    return tot.value();
}

struct WeilReport {
    double lhs = 0;
    double rhs = 0;
    double residual = 0;
    double tail_estimate = 0;
    std::size_t zero_count = 0;
    double prime_cutoff = 0;
};

// Both sides of the explicit formula for zeta, truncated to the dataset and
// to primes below prime_cutoff, with a rigorous budget for everything cut:
//   zero tail:   |fhat| <= (3h + 6/T)/g^2 against the zero-counting density,
//                doubled for the +-g pairing and doubled again for safety;
//   prime tail:  every discarded term <= (T e^{hT}/m)(p^m)^{-s}; the m=1 part
//                via the Rosser pi(x) bound, m>=2 via p > sqrt(P);
//   quadrature:  accumulated fhat slack plus the cut archimedean integrals.
inline WeilReport weil_residual(const ZeroDataset& zeros, double s, double X,
                                double prime_cutoff = 1e7, std::size_t use_zeros = 0) {
    TestFunction tf(s, X);
    double h = tf.h, T = tf.T;
    std::size_t count = use_zeros == 0 ? zeros.gammas.size() : std::min(use_zeros, zeros.gammas.size());
    if (count == 0) throw std::invalid_argument("weil_residual: empty zero dataset");

    KahanSum lhs_sum;
    KahanSum fhat_slack;
    for (std::size_t i = 0; i < count; ++i) {
        auto fr = fhat(zeros.gammas[i], tf);
        lhs_sum.add(2.0 * fr.value);
        fhat_slack.add(2.0 * fr.slack);
    }
    double lhs = lhs_sum.value();

    double ps = weil_prime_sum(tf, prime_cutoff);
    double arch_main = 8.0 * std::sinh(T / 2);
    double arch_cut = T + 30.0 / (h - 0.5);
    auto arch_f = [&](double t) { return (T / t) * std::exp(-h * (t - T)) * std::cosh(t / 2); };
    auto arch_q = integrate(arch_f, T, arch_cut, 1e-12, 5.0);
    double pi_v = std::acos(-1.0);
    double const_term = -euler_gamma - std::log(8.0 * pi_v) - pi_v / 2.0;
    auto one_minus_f = [&](double t) { return 1.0 - (T / t) * std::exp(-h * (t - T)); };
    auto q_sinh = integrate([&](double t) { return one_minus_f(t) / (2.0 * std::sinh(t / 2)); }, T,
                            T + 90.0, 1e-12, 5.0);
    auto q_cosh = integrate([&](double t) { return one_minus_f(t) / (2.0 * std::cosh(t / 2)); }, T,
                            T + 90.0, 1e-12, 5.0);
    double rhs = -2.0 * ps + arch_main + 4.0 * arch_q.value + const_term + q_sinh.value + q_cosh.value;

    double G = zeros.gammas[count - 1];
    double dens = (std::log(G / (2 * pi_v)) + 1.0) / (2 * pi_v * G);
    double zero_tail = 4.0 * (3.0 * h + 6.0 / T) * dens;

    double P = prime_cutoff;
    double pref = T * std::exp(h * T);
    double t1 = std::pow(P, 1.0 - s) * (1.26 * s / (s - 1.0) - 1.0) / std::log(P);
    double rp = std::sqrt(P);
    double t2 = 0.5 * (std::pow(rp, 1.0 - 2.0 * s) / (2.0 * s - 1.0) + std::pow(rp, -2.0 * s));
    double prime_tail = 2.0 * pref * (t1 + t2);

    double arch_rem = 4.0 * (T / arch_cut) * std::exp(h * T) *
                      std::exp(-(h - 0.5) * arch_cut) / (h - 0.5);
    double quad_slack = fhat_slack.value() +
                        10.0 * (arch_q.error_estimate + q_sinh.error_estimate + q_cosh.error_estimate) +
                        4.0 * arch_rem + 1e-18;

    WeilReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::abs(lhs - rhs);
    r.tail_estimate = zero_tail + prime_tail + quad_slack;
    r.zero_count = count;
    r.prime_cutoff = prime_cutoff;
    return r;
}

struct StarkReport {
    double lhs = 0;
    double rhs = 0;
    double residual = 0;
    double tail_budget = 0;
};

// The zero-sum identity at real sigma in (1, 3]:
//   sum_rho 1/(sigma - rho) = sum_gamma 2h/(h^2 + gamma^2),  h = sigma - 1/2,
// against its closed evaluation 1/(sigma-1) + 1/sigma - d'(sigma)/2 where
//   d' = -2 zeta'/zeta(sigma) + (log 2pi - psi(sigma))
//        + (psi((sigma+1)/2) - psi(sigma/2))/2.
inline StarkReport stark_sum_check(const ZeroDataset& zeros, double sigma,
                                   double prime_cutoff = 1e7) {
    if (!(sigma > 1.0) || !(sigma <= 3.0))
        throw std::invalid_argument("stark check: sigma must lie in (1, 3]");
    double h = sigma - 0.5;
    KahanSum lhs_sum;
    for (double g : zeros.gammas) lhs_sum.add(2.0 * h / (h * h + g * g));
    double lhs = lhs_sum.value();

    KahanSum s_sum; // -zeta'/zeta(sigma) truncated: sum_p log p/(p^sigma - 1)
    for_each_prime_below(prime_cutoff, [&](std::uint64_t p) {
        double lp = std::log(static_cast<double>(p));
        s_sum.add(lp / std::expm1(sigma * lp));
    });
    double two_pi = 2.0 * std::acos(-1.0);
    double dprime = 2.0 * s_sum.value() + (std::log(two_pi) - digamma(sigma)) +
                    (digamma((sigma + 1.0) / 2.0) - digamma(sigma / 2.0)) / 2.0;
    double rhs = 1.0 / (sigma - 1.0) + 1.0 / sigma - dprime / 2.0;

    double G = zeros.max_gamma();
    double dens = (std::log(G / two_pi) + 1.0) / (two_pi * G);
    double zero_tail = 4.0 * h * dens;
    double P = prime_cutoff, lP = std::log(P);
    double prime_tail =
        1.01 * (std::pow(P, 1.0 - sigma) * (lP / (sigma - 1.0) + 1.0 / ((sigma - 1.0) * (sigma - 1.0))) +
                lP * std::pow(P, -sigma));

    StarkReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::abs(lhs - rhs);
    r.tail_budget = zero_tail + prime_tail;
    return r;
}

struct ZeroSumReport {
    double partial = 0;
    double tail_bound = 0;
    double target = 0;
};

// Partial sum of 1/(1/4 + gamma^2) over the dataset, with a density tail
// bound; the full sum is gamma/2 + 1 - log(4 pi)/2.
inline ZeroSumReport zeta_zero_sum_constant(const ZeroDataset& zeros) {
    KahanSum s;
    for (double g : zeros.gammas) s.add(1.0 / (0.25 + g * g));
    double two_pi = 2.0 * std::acos(-1.0);
    double G = zeros.max_gamma();
    ZeroSumReport r;
    r.partial = s.value();
    r.tail_bound = 2.0 * (std::log(G / two_pi) + 1.0) / (two_pi * G);
    r.target = zeta_zero_sum_target();
    return r;
}

} // namespace logkappa
