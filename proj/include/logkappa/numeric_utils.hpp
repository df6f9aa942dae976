#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace logkappa {

using boost::multiprecision::cpp_int;

inline constexpr double euler_gamma = 0.5772156649015329;

// gamma/2 + 1 - log(4*pi)/2, the value the zero-sum over zeta's nontrivial
// zeros converges to.
inline double zeta_zero_sum_target() {
    return euler_gamma / 2 + 1 - std::log(4 * std::acos(-1.0)) / 2;
}

// log|v| for big integers, accurate to ~1 ulp of the mantissa path: take the
// top 63 bits exactly, log the rest as a power of two.
inline double log_abs(const cpp_int& v) {
    if (v == 0) throw std::domain_error("log_abs: zero argument");
    cpp_int a = v < 0 ? cpp_int(-v) : v;
    unsigned bits = boost::multiprecision::msb(a) + 1;
    if (bits <= 63) return std::log(static_cast<double>(a.convert_to<std::uint64_t>()));
    cpp_int top = a >> (bits - 63);
    double m = static_cast<double>(top.convert_to<std::uint64_t>());
    return std::log(m) + static_cast<double>(bits - 63) * std::log(2.0);
}

// Digamma for x > 0: shift into the asymptotic region, then the standard
// Bernoulli tail. Max error well under 1e-14 for the sigma range used here.
inline double digamma(double x) {
    if (!(x > 0)) throw std::domain_error("digamma: requires x > 0");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double series = -1.0 / 12 + inv2 * (1.0 / 120 + inv2 * (-1.0 / 252 + inv2 * (1.0 / 240 + inv2 * (-1.0 / 132 + inv2 * (691.0 / 32760 - inv2 / 12)))));
    return acc + std::log(x) - 0.5 * inv + inv2 * series;
}

// Kronecker symbol (d | n) for n >= 0.
inline int kronecker(cpp_int d, std::uint64_t n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int r = 1;
    std::uint64_t m = n;
    int two_count = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++two_count;
    }
    if (two_count > 0) {
        if (d % 2 == 0) return 0;
        cpp_int d8 = d % 8;
        if (d8 < 0) d8 += 8;
        if ((two_count & 1) && (d8 == 3 || d8 == 5)) r = -r;
    }
    // now Jacobi (d | m) with m odd positive
    cpp_int num = d % m;
    if (num < 0) num += m;
    std::uint64_t den = m;
    std::uint64_t a = num.convert_to<std::uint64_t>();
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::uint64_t d8 = den % 8;
            if (d8 == 3 || d8 == 5) r = -r;
        }
        if (a % 4 == 3 && den % 4 == 3) r = -r;
        std::uint64_t t = den % a;
        den = a;
        a = t;
    }
    return den == 1 ? r : 0;
}

inline std::uint64_t ipow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

// Is p^k < X, exact for every representable X. Fast path compares in long
// double (64-bit mantissa holds any p^k below 2^63 exactly); beyond that the
// value is reconstructed as a big integer against floor(X).
inline bool prime_power_below(std::uint64_t p, unsigned k, double X) {
    double bits = static_cast<double>(k) * std::log2(static_cast<double>(p));
    if (bits < 62.9) {
        std::uint64_t v = ipow_u64(p, k);
        return static_cast<long double>(v) < static_cast<long double>(X);
    }
    if (X <= 9.2e18) return false;
    if (bits > 1100.0) return false;
    cpp_int v = boost::multiprecision::pow(cpp_int(p), k);
    cpp_int xf(X); // X >= 2^63 is an exact integer as a double
    return v < xf;
}

} // namespace logkappa
