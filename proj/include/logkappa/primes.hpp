#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace logkappa {

// Primes p <= n, classic odd-only sieve. Fine up to ~1e8.
inline std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n >= 2) out.push_back(2);
    if (n < 3) return out;
    std::uint32_t half = (n - 1) / 2; // odd numbers 3,5,...,2*half+1
    std::vector<bool> comp(half + 1, false);
    for (std::uint32_t i = 1; (2ull * i + 1) * (2ull * i + 1) <= n; ++i) {
        if (comp[i]) continue;
        std::uint64_t p = 2ull * i + 1;
        for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p)
            comp[static_cast<std::uint32_t>(j)] = true;
    }
    for (std::uint32_t i = 1; i <= half; ++i)
        if (!comp[i]) out.push_back(2 * i + 1);
    return out;
}

// Primes strictly below the real bound X.
inline std::vector<std::uint32_t> primes_below(double X) {
    if (X <= 2) return {};
    double cap = std::nextafter(X, 0.0); // strict: largest double < X
    if (cap > 4.2e9) cap = 4.2e9;
    auto v = primes_upto(static_cast<std::uint32_t>(cap));
    while (!v.empty() && static_cast<double>(v.back()) >= X) v.pop_back();
    return v;
}

// Segmented traversal for bounds too large to hold the prime list: calls
// fn(p) for every prime p < X in ascending order.
template <typename Fn>
void for_each_prime_below(double X, Fn&& fn) {
    if (X <= 2) return;
    std::uint64_t limit = static_cast<std::uint64_t>(std::nextafter(X, 0.0));
    if (static_cast<double>(limit) >= X) --limit; // p <= limit  <=>  p < X
    std::uint32_t root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 2;
    auto base = primes_upto(root);
    const std::uint64_t seg = 1u << 20;
    std::vector<bool> mark;
    for (std::uint64_t lo = 2; lo <= limit; lo += seg) {
        std::uint64_t hi = std::min(limit, lo + seg - 1);
        mark.assign(static_cast<std::size_t>(hi - lo + 1), true);
        for (std::uint32_t p : base) {
            std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
            if (pp > hi) break;
            std::uint64_t start = std::max(pp, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= hi; j += p)
                mark[static_cast<std::size_t>(j - lo)] = false;
        }
        for (std::uint64_t v = lo; v <= hi; ++v)
            if (mark[static_cast<std::size_t>(v - lo)]) fn(v);
    }
}

} // namespace logkappa
