#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bounds.hpp"
#include "estimators.hpp"
#include "kahan.hpp"
#include "number_field.hpp"
#include "numeric_utils.hpp"

namespace logkappa {

using big_float = boost::multiprecision::cpp_bin_float_50;

// Class number of the imaginary quadratic field of fundamental discriminant
// d < 0, by exhaustive enumeration of reduced forms (a,b,c):
//   b^2 - 4ac = d, |b| <= a <= c, b >= 0 when |b| = a or a = c.
inline long class_number_imaginary(std::int64_t d) {
    if (d >= 0 || d < -1000000) throw std::invalid_argument("requires -1e6 < d < 0");
    if (!is_fundamental_discriminant(cpp_int(d))) throw std::invalid_argument("d not fundamental");
    long h = 0;
    std::int64_t ad = -d;
    for (std::int64_t b = (ad % 2); 3 * b * b <= ad; b += 2) {
        std::int64_t quarter = (b * b + ad) / 4; // = a*c
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= quarter; ++a) {
            if (quarter % a != 0) continue;
            std::int64_t c = quarter / a;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            // (a, b, c) reduced; (a, -b, c) distinct unless b = 0, b = a, a = c
            h += (b == 0 || b == a || a == c) ? 1 : 2;
        }
    }
    return h;
}

inline int unit_count(std::int64_t d) { return d == -4 ? 4 : (d == -3 ? 6 : 2); }

struct RegulatorResult {
    double value = 0;        // log of the fundamental unit
    cpp_int a, b;            // unit = (a + b sqrt(d))/2 for d odd, a + b sqrt(d/4) else
    std::int64_t norm4 = 0;  // the exact integer Pell value hit (+-4 or +-1)
};

// Fundamental unit of the real quadratic order of fundamental discriminant d,
// by the continued fraction of (1+sqrt d)/2 (d odd) or sqrt(d/4), testing each
// big-integer convergent exactly against the Pell condition.
inline RegulatorResult regulator_real(std::int64_t d) {
    if (d <= 0 || d > 1000000) throw std::invalid_argument("requires 0 < d <= 1e6");
    if (!is_fundamental_discriminant(cpp_int(d))) throw std::invalid_argument("d not fundamental");
    bool odd = (d % 4 == 1);
    cpp_int P = odd ? 1 : 0;
    cpp_int Q = odd ? 2 : 1;
    cpp_int D = odd ? d : d / 4;
    cpp_int r = boost::multiprecision::sqrt(D);
    cpp_int x1 = 1, x0 = 0, y1 = 0, y0 = 1;
    for (int step = 0; step < 200000; ++step) {
        if (Q <= 0) throw std::logic_error("regulator: continued fraction left canonical form");
        cpp_int a = (P + r) / Q;
        cpp_int x = a * x1 + x0, y = a * y1 + y0;
        x0 = x1; x1 = x; y0 = y1; y1 = y;
        RegulatorResult res;
        if (odd) {
            cpp_int t = (2 * x - y) * (2 * x - y) - d * y * y;
            if (t == 4 || t == -4) {
                res.a = 2 * x - y;
                res.b = y;
                res.norm4 = t.convert_to<std::int64_t>();
                big_float u = (big_float(res.a) + big_float(res.b) * sqrt(big_float(d))) / 2;
                res.value = static_cast<double>(log(abs(u)));
                return res;
            }
        } else {
            cpp_int t = x * x - D * y * y;
            if (t == 1 || t == -1) {
                res.a = x;
                res.b = y;
                res.norm4 = t.convert_to<std::int64_t>();
                big_float u = big_float(res.a) + big_float(res.b) * sqrt(big_float(D));
                res.value = static_cast<double>(log(abs(u)));
                return res;
            }
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw std::logic_error("regulator: no unit found within step budget");
}

// L(1, chi_d) by an N-term character sum; the partial sums oscillate with
// period |d|, so the final full period of them is averaged (Cesaro window).
inline double dirichlet_L1_char_sum(std::int64_t d, std::uint64_t N = 10000000) {
    std::uint64_t period = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (period < 2 || N < 2 * period) throw std::invalid_argument("L1: need N >> |d| >= 2");
    std::vector<signed char> tab(period);
    for (std::uint64_t n = 0; n < period; ++n)
        tab[n] = static_cast<signed char>(kronecker(cpp_int(d), n));
    KahanSum s;
    KahanSum window;
    for (std::uint64_t n = 1; n <= N; ++n) {
        int chi = tab[n % period];
        if (chi != 0) s.add(chi / static_cast<double>(n));
        if (n > N - period) window.add(s.value());
    }
    return window.value() / static_cast<double>(period);
}

struct QuadraticInvariants {
    std::int64_t d = 0;
    long h = 0;
    int w = 2;
    double regulator = 0; // 0 for imaginary d
    double L1 = 0;
    double kappa = 0;
    double log_kappa = 0;
};

// Ground truth for log kappa via the class number formula:
//   d < 0: kappa = 2 pi h / (w sqrt|d|)
//   d > 0: kappa = 2 h R / sqrt(d),  h = round(sqrt(d) L(1,chi) / (2R))
// assembled in 50-digit arithmetic.
inline QuadraticInvariants true_log_kappa(std::int64_t d) {
    QuadraticInvariants out;
    out.d = d;
    big_float pi_b = 4 * atan(big_float(1));
    if (d < 0) {
        out.h = class_number_imaginary(d);
        out.w = unit_count(d);
        big_float kappa = 2 * pi_b * out.h / (out.w * sqrt(big_float(-d)));
        out.L1 = static_cast<double>(kappa); // L(1,chi) = kappa for imaginary d
        out.kappa = static_cast<double>(kappa);
        out.log_kappa = static_cast<double>(log(kappa));
        return out;
    }
    auto reg = regulator_real(d);
    out.w = 2;
    out.L1 = dirichlet_L1_char_sum(d);
    double h_raw = std::sqrt(static_cast<double>(d)) * out.L1 / (2.0 * reg.value);
    long h = std::lround(h_raw);
    if (std::abs(h_raw - h) >= 0.1 || h < 1)
        throw std::logic_error("real class number did not resolve to an integer");
    out.h = h;
    out.regulator = reg.value;
    big_float ub = d % 4 == 1
                       ? (big_float(reg.a) + big_float(reg.b) * sqrt(big_float(d))) / 2
                       : big_float(reg.a) + big_float(reg.b) * sqrt(big_float(d / 4));
    big_float R = log(abs(ub));
    big_float kappa = 2 * h * R / sqrt(big_float(d));
    out.kappa = static_cast<double>(kappa);
    out.log_kappa = static_cast<double>(log(kappa));
    return out;
}

struct ValidationReport {
    double estimate = 0;
    double truth = 0;
    double error = 0;
    double certified_bound = std::numeric_limits<double>::quiet_NaN();
    std::optional<bool> pass; // empty: no certified bound for this method
};

// Compares an estimator run against the class-number-formula truth. Only the
// sharpened estimator (method 'f') carries a certified bound.
inline ValidationReport validate(const NumberFieldProfile& K, double X, char method,
                                 int threads = 1, const OverrideTable* overrides = nullptr) {
    if (K.n != 2 || !K.fundamental_disc) throw std::invalid_argument("validate: quadratic field with known fundamental discriminant required");
    std::int64_t d = K.fundamental_disc->convert_to<std::int64_t>();
    ValidationReport rep;
    rep.truth = true_log_kappa(d).log_kappa;
    if (method == 'f') {
        rep.estimate = f_estimator(K, X, threads, overrides).value;
        rep.certified_bound = thm1_bound(K.log_delta_upper, K.n, X, true);
    } else if (method == 'a') {
        rep.estimate = euler_comparison_sum(K, X, threads, overrides);
    } else if (method == 'g') {
        rep.estimate = averaged_comparison_sum(K, static_cast<std::uint64_t>(X), threads, overrides);
    } else {
        throw std::invalid_argument("validate: unknown method");
    }
    rep.error = std::abs(rep.estimate - rep.truth);
    if (method == 'f') rep.pass = rep.error <= rep.certified_bound;
    return rep;
}

} // namespace logkappa
