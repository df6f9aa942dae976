#include <catch2/catch_amalgamated.hpp>

#include <logkappa/kahan.hpp>
#include <logkappa/numeric_utils.hpp>
#include <logkappa/primes.hpp>
#include <logkappa/quadrature.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

using namespace logkappa;

TEST_CASE("compensated summation recovers what naive addition drops") {
    KahanSum s;
    s.add(1.0);
    for (int i = 0; i < 100; ++i) s.add(1e-16);
    // naive double addition would leave the total at exactly 1.0
    REQUIRE(s.value() > 1.0);
    REQUIRE(std::abs(s.value() - (1.0 + 1e-14)) < 1e-16);

    KahanSum a, b, whole;
    for (int i = 0; i < 1000; ++i) {
        double v = std::sin(0.1 * i) * 1e-3;
        whole.add(v);
        (i % 2 == 0 ? a : b).add(v);
    }
    a.add(b);
    REQUIRE(std::abs(a.value() - whole.value()) < 1e-18);
}

TEST_CASE("zero-sum constant gamma/2 + 1 - log(4 pi)/2") {
    REQUIRE(zeta_zero_sum_target() == Catch::Approx(0.0230957089661210338).epsilon(0).margin(1e-15));
}

TEST_CASE("log_abs on big integers") {
    REQUIRE(log_abs(cpp_int(1)) == 0.0);
    REQUIRE(log_abs(cpp_int(-8)) == Catch::Approx(std::log(8.0)).epsilon(0).margin(1e-15));
    cpp_int big = boost::multiprecision::pow(cpp_int(10), 50);
    REQUIRE(log_abs(big) == Catch::Approx(50.0 * std::log(10.0)).epsilon(1e-14));
    cpp_int big2 = (cpp_int(1) << 200) + 1;
    REQUIRE(log_abs(big2) == Catch::Approx(200.0 * std::log(2.0)).epsilon(1e-14));
    REQUIRE_THROWS_AS(log_abs(cpp_int(0)), std::domain_error);
}

TEST_CASE("digamma against known values and the duplication identity") {
    REQUIRE(digamma(1.0) == Catch::Approx(-euler_gamma).epsilon(0).margin(1e-15));
    REQUIRE(digamma(2.0) == Catch::Approx(1.0 - euler_gamma).epsilon(0).margin(1e-15));
    // 2 log 2pi - 2 psi(4)
    double two_pi = 2.0 * std::acos(-1.0);
    REQUIRE(2.0 * std::log(two_pi) - 2.0 * digamma(4.0) ==
            Catch::Approx(1.163518795955090021667676).epsilon(0).margin(1e-14));
    // psi(s) = log 2 + (psi(s/2) + psi((s+1)/2)) / 2
    for (double s : {1.3, 2.0, 2.7}) {
        double lhs = digamma(s);
        double rhs = std::log(2.0) + (digamma(s / 2) + digamma((s + 1) / 2)) / 2;
        REQUIRE(lhs == Catch::Approx(rhs).epsilon(0).margin(1e-12));
    }
    REQUIRE_THROWS_AS(digamma(0.0), std::domain_error);
    REQUIRE_THROWS_AS(digamma(-1.5), std::domain_error);
}

namespace {
// Euler criterion reference: (d|p) for an odd prime p as d^((p-1)/2) mod p.
int legendre_ref(const cpp_int& d, std::uint64_t p) {
    cpp_int r = d % p;
    if (r < 0) r += p;
    std::uint64_t a = r.convert_to<std::uint64_t>() % p;
    if (a == 0) return 0;
    std::uint64_t acc = 1, base = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}
} // namespace

TEST_CASE("kronecker symbol") {
    SECTION("character mod 4 pattern") {
        for (std::uint64_t n = 1; n < 40; ++n) {
            int expect = n % 2 == 0 ? 0 : (n % 4 == 1 ? 1 : -1);
            REQUIRE(kronecker(cpp_int(-4), n) == expect);
        }
    }
    SECTION("value at 2 reads d mod 8") {
        REQUIRE(kronecker(cpp_int(5), 2) == -1);
        REQUIRE(kronecker(cpp_int(17), 2) == 1);
        REQUIRE(kronecker(cpp_int(-7), 2) == 1);
        REQUIRE(kronecker(cpp_int(-3), 2) == -1);
        REQUIRE(kronecker(cpp_int(12), 2) == 0);
        REQUIRE(kronecker(cpp_int(8), 2) == 0);
    }
    SECTION("agrees with the Euler criterion at odd primes") {
        auto ps = primes_upto(500);
        for (long dv : {-3L, -4L, 5L, 8L, 12L, -7L, -8L, -11L, -15L, 21L, 2021L, -163L, -9995L, 9949L}) {
            cpp_int d(dv);
            for (std::uint64_t p : ps) {
                if (p == 2) continue;
                REQUIRE(kronecker(d, p) == legendre_ref(d, p));
            }
        }
    }
    SECTION("complete multiplicativity in the argument") {
        for (long dv : {-4L, 5L, -23L, 2021L}) {
            cpp_int d(dv);
            for (std::uint64_t m = 1; m < 60; ++m)
                for (std::uint64_t n = 1; n < 60; ++n)
                    REQUIRE(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
        }
    }
    SECTION("periodicity modulo |d| for d = 0, 1 mod 4") {
        for (long dv : {-4L, 5L, -8L, 13L}) {
            cpp_int d(dv);
            std::uint64_t period = static_cast<std::uint64_t>(dv < 0 ? -dv : dv);
            for (std::uint64_t n = 1; n < 3 * period; ++n)
                REQUIRE(kronecker(d, n) == kronecker(d, n + period));
        }
    }
    SECTION("edge arguments") {
        REQUIRE(kronecker(cpp_int(1), 7) == 1);
        REQUIRE(kronecker(cpp_int(5), 0) == 0);
        REQUIRE(kronecker(cpp_int(1), 0) == 1);
        REQUIRE(kronecker(cpp_int(-1), 0) == 1);
        REQUIRE(kronecker(cpp_int(5), 5) == 0);
        REQUIRE(kronecker(cpp_int(-15), 3) == 0);
        REQUIRE(kronecker(cpp_int(-15), 5) == 0);
    }
}

TEST_CASE("prime_power_below is exact at representable boundaries") {
    REQUIRE(prime_power_below(2, 10, 1025.0));
    REQUIRE_FALSE(prime_power_below(2, 10, 1024.0));
    double b62 = 4611686018427387904.0; // 2^62, exact as a double
    REQUIRE_FALSE(prime_power_below(2, 62, b62));
    REQUIRE(prime_power_below(2, 62, std::nextafter(b62, 1e300)));
    // 3^40 = 12157665459056928801 sits just above 1.2e19
    REQUIRE(prime_power_below(3, 40, 1.3e19));
    REQUIRE_FALSE(prime_power_below(3, 40, 1.2e19));
    REQUIRE_FALSE(prime_power_below(2, 4000, 1e300));
    REQUIRE(prime_power_below(2, 64, 1.9e19));
}

TEST_CASE("prime enumeration") {
    auto ps = primes_upto(100);
    REQUIRE(ps.size() == 25);
    REQUIRE(ps.front() == 2);
    REQUIRE(ps.back() == 97);

    // strict cutoff: p < X
    auto below7 = primes_below(7.0);
    REQUIRE(below7 == std::vector<std::uint32_t>{2, 3, 5});
    auto below7eps = primes_below(std::nextafter(7.0, 8.0));
    REQUIRE(below7eps == std::vector<std::uint32_t>{2, 3, 5, 7});
    REQUIRE(primes_below(2.0).empty());
    REQUIRE(primes_below(100000.0).size() == 9592);

    bool ascending = true;
    std::uint64_t last = 0;
    std::size_t idx = 0;
    for_each_prime_below(100000.0, [&](std::uint64_t p) {
        if (p <= last) ascending = false;
        last = p;
        ++idx;
    });
    REQUIRE(ascending);
    REQUIRE(idx == 9592);
}

TEST_CASE("adaptive Gauss-Kronrod quadrature") {
    auto r1 = integrate([](double t) { return std::sin(t); }, 0.0, std::acos(-1.0), 1e-13);
    REQUIRE(r1.value == Catch::Approx(2.0).epsilon(0).margin(1e-12));
    REQUIRE(r1.error_estimate < 1e-12);

    auto r2 = integrate([](double t) { return std::exp(t); }, 0.0, 1.0, 1e-13);
    REQUIRE(r2.value == Catch::Approx(std::exp(1.0) - 1.0).epsilon(0).margin(1e-12));

    // oscillatory integrand handled through the panel-width cap
    double w = 100.0;
    auto r3 = integrate([&](double t) { return std::cos(w * t); }, 0.0, 10.0, 1e-12,
                        2.0 * std::acos(-1.0) / w);
    REQUIRE(r3.value == Catch::Approx(std::sin(w * 10.0) / w).epsilon(0).margin(1e-11));
    REQUIRE(r3.panels >= 100);

    // sqrt singularity at the left end still converges by bisection
    auto r4 = integrate([](double t) { return 1.0 / std::sqrt(t); }, 1e-12, 1.0, 1e-10);
    REQUIRE(r4.value == Catch::Approx(2.0 * (1.0 - 1e-6)).epsilon(0).margin(1e-7));
}
