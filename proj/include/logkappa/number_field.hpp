#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fp_poly.hpp"
#include "int_polynomial.hpp"
#include "numeric_utils.hpp"
#include "primes.hpp"

namespace logkappa {

namespace detail {

inline bool miller_rabin(const cpp_int& n) {
    using boost::multiprecision::powm;
    if (n < 2) return false;
    for (int sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == sp) return true;
        if (n % sp == 0) return false;
    }
    cpp_int d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        cpp_int x = powm(cpp_int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < r; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline cpp_int pollard_rho(const cpp_int& n) {
    using boost::multiprecision::gcd;
    for (int c = 1;; ++c) {
        cpp_int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            cpp_int diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_into(cpp_int n, std::vector<std::pair<cpp_int, unsigned>>& out) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        for (auto& [p, e] : out)
            if (p == n) {
                ++e;
                return;
            }
        out.emplace_back(n, 1);
        return;
    }
    cpp_int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

// Full factorization of |n|, trial division first.
inline std::vector<std::pair<cpp_int, unsigned>> factorize(cpp_int n) {
    std::vector<std::pair<cpp_int, unsigned>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(cpp_int(p), e);
    }
    for (std::uint64_t p = 11; p <= 1000000 && cpp_int(p) * p <= n; p += 2) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(cpp_int(p), e);
    }
    if (n > 1) factor_into(n, out);
    return out;
}

} // namespace detail

inline bool is_perfect_square(const cpp_int& n) {
    if (n < 0) return false;
    cpp_int r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

// The fundamental discriminant underlying a quadratic discriminant D
// (D = fund * square, fund = 0 or 1 mod 4 with squarefree odd part rules).
inline cpp_int fundamental_discriminant_of(const cpp_int& D) {
    cpp_int m4 = D % 4;
    if (m4 < 0) m4 += 4;
    if (m4 == 2 || m4 == 3) throw std::invalid_argument("not a quadratic discriminant (must be 0 or 1 mod 4)");
    auto fac = detail::factorize(D);
    cpp_int s = D < 0 ? -1 : 1;
    for (auto& [p, e] : fac)
        if (e % 2 == 1) s *= p;
    cpp_int s4 = s % 4;
    if (s4 < 0) s4 += 4;
    return s4 == 1 ? s : 4 * s;
}

inline bool is_fundamental_discriminant(const cpp_int& d) {
    if (d == 0 || d == 1) return false;
    cpp_int m4 = d % 4;
    if (m4 < 0) m4 += 4;
    if (m4 == 2 || m4 == 3) return false;
    return fundamental_discriminant_of(d) == d && !is_perfect_square(d);
}

struct NumberFieldProfile {
    IntPolynomial poly;
    int n;
    int r1;
    int r2;
    cpp_int disc_poly;
    std::optional<cpp_int> fundamental_disc;
    double log_delta_upper;
    bool irreducibility_certified;
};

inline FpPoly reduce_mod_p(const IntPolynomial& f, std::uint64_t p) {
    FpPoly r{p, {}};
    for (const cpp_int& c : f.coeffs()) {
        cpp_int m = c % p;
        if (m < 0) m += p;
        r.c.push_back(m.convert_to<std::uint64_t>());
    }
    r.trim();
    return r;
}

inline NumberFieldProfile make_field(IntPolynomial poly,
                                     std::optional<cpp_int> user_fundamental = std::nullopt) {
    int n = poly.degree();
    cpp_int disc = poly.discriminant();
    int r1 = poly.real_root_count();
    if ((n - r1) % 2 != 0) throw std::logic_error("real root count parity violation");
    int r2 = (n - r1) / 2;

    std::optional<cpp_int> fund;
    if (user_fundamental) {
        if (*user_fundamental == 0) throw std::invalid_argument("fundamental_disc: zero");
        if (disc % *user_fundamental != 0)
            throw std::invalid_argument("fundamental_disc must divide the polynomial discriminant");
        cpp_int q = disc / *user_fundamental;
        if (q <= 0 || !is_perfect_square(q))
            throw std::invalid_argument("disc_poly / fundamental_disc must be a positive perfect square");
        fund = user_fundamental;
    } else if (n == 1) {
        fund =1;
    } else if (n == 2 && !is_perfect_square(disc)) {
        fund = fundamental_discriminant_of(disc);
    }

    bool certified = (n == 1);
    if (!certified) {
        auto small = primes_upto(541); // first 100 primes
        for (std::uint64_t p : small) {
            if (irreducible_mod_p(reduce_mod_p(poly, p))) {
                certified = true;
                break;
            }
        }
    }

    double log_delta = fund ? (*fund == 1 || *fund == -1 ? 0.0 : log_abs(*fund))
                            : log_abs(disc);
    if (n == 1) log_delta = 0.0;

    return NumberFieldProfile{std::move(poly), n,    r1,        r2,
                              std::move(disc), fund, log_delta, certified};
}

// The canonical quadratic field with a given fundamental discriminant:
// x^2 - d/4 when d = 0 mod 4, x^2 - x + (1-d)/4 when d = 1 mod 4.
inline NumberFieldProfile quadratic_field(const cpp_int& d) {
    if (!is_fundamental_discriminant(d)) throw std::invalid_argument("not a fundamental discriminant");
    cpp_int m4 = d % 4;
    if (m4 < 0) m4 += 4;
    std::vector<cpp_int> c;
    if (m4 == 0)
        c = {-d / 4, 0, 1};
    else
        c = {(1 - d) / 4, -1, 1};
    return make_field(IntPolynomial(std::move(c)), d);
}

} // namespace logkappa
