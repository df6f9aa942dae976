#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "number_field.hpp"
#include "numeric_utils.hpp"
#include "primes.hpp"

namespace logkappa {

struct UnsupportedIndexDivisor : std::runtime_error {
    std::uint64_t p;
    explicit UnsupportedIndexDivisor(std::uint64_t p_)
        : std::runtime_error("prime " + std::to_string(p_) +
                             " divides the index [O_K : Z[theta]]; supply an override entry"),
          p(p_) {}
};

// Residue-degree / ramification-index pairs for one rational prime. Each
// entry is one prime ideal above p.
struct LocalSplitting {
    std::uint64_t p = 0;
    std::vector<std::pair<int, int>> factors; // (f, e), sorted by f then e
    bool index_divisor = false;
};

using OverrideTable = std::map<std::uint64_t, std::vector<std::pair<int, int>>>;

inline OverrideTable parse_override_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open override file: " + path);
    OverrideTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("override line " + std::to_string(lineno) + ": missing ':'");
        auto all_digits = [](const std::string& s) {
            return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
        };
        std::string head = line.substr(0, colon);
        auto hb = head.find_first_not_of(" \t");
        std::string ptxt =
            hb == std::string::npos ? "" : head.substr(hb, head.find_last_not_of(" \t") - hb + 1);
        std::uint64_t p = 0;
        try {
            if (!all_digits(ptxt)) throw std::invalid_argument("");
            p = std::stoull(ptxt);
        } catch (...) {
            throw std::runtime_error("override line " + std::to_string(lineno) + ": bad prime");
        }
        std::istringstream rest(line.substr(colon + 1));
        std::vector<std::pair<int, int>> factors;
        std::string tok;
        while (rest >> tok) {
            auto caret = tok.find('^');
            std::string ftxt = tok.substr(0, caret);
            std::string etxt = caret == std::string::npos ? "1" : tok.substr(caret + 1);
            int f = 0, e = 1;
            try {
                if (!all_digits(ftxt) || !all_digits(etxt)) throw std::invalid_argument("");
                f = std::stoi(ftxt);
                e = std::stoi(etxt);
            } catch (...) {
                throw std::runtime_error("override line " + std::to_string(lineno) + ": bad factor '" + tok + "'");
            }
            if (f < 1 || e < 1)
                throw std::runtime_error("override line " + std::to_string(lineno) + ": factor exponents must be >= 1");
            factors.emplace_back(f, e);
        }
        if (factors.empty())
            throw std::runtime_error("override line " + std::to_string(lineno) + ": no factors");
        std::sort(factors.begin(), factors.end());
        table[p] = std::move(factors);
    }
    return table;
}

namespace detail {

inline std::vector<cpp_int> lift_monic(const FpPoly& g) {
    std::vector<cpp_int> out(g.c.size());
    for (std::size_t i = 0; i < g.c.size(); ++i) out[i] = g.c[i];
    return out;
}

inline std::vector<cpp_int> mul_z(const std::vector<cpp_int>& a, const std::vector<cpp_int>& b) {
    std::vector<cpp_int> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

} // namespace detail

// Dedekind's criterion: does p divide the index of Z[theta] in O_K?
inline bool dedekind_index_divisor(const IntPolynomial& f, std::uint64_t p) {
    FpPoly fbar = reduce_mod_p(f, p);
    auto sfd = squarefree_decomposition(fbar);
    FpPoly gbar{p, {1}};
    for (auto& [comp, mult] : sfd) gbar = mul(gbar, comp);
    FpPoly hbar = divide_exact(fbar.monic(), gbar);
    auto g = detail::lift_monic(gbar);
    auto h = detail::lift_monic(hbar);
    auto gh = detail::mul_z(g, h);
    const auto& fc = f.coeffs();
    std::vector<cpp_int> F(gh.size());
    for (std::size_t i = 0; i < gh.size(); ++i) {
        cpp_int diff = gh[i] - (i < fc.size() ? fc[i] : cpp_int(0));
        if (diff % p != 0) throw std::logic_error("dedekind: lift product mismatch");
        F[i] = diff / p;
    }
    FpPoly Fbar{p, {}};
    for (auto& c : F) {
        cpp_int m = c % p;
        if (m < 0) m += p;
        Fbar.c.push_back(m.convert_to<std::uint64_t>());
    }
    Fbar.trim();
    FpPoly d = gcd(Fbar, gcd(gbar, hbar));
    return d.degree() > 0;
}

// Splitting of p in the field, by Kronecker symbol for quadratic fields with
// a known fundamental discriminant, else by factoring the defining polynomial
// mod p. Overrides, when present for p, take effect before any computation.
inline LocalSplitting split_prime(const NumberFieldProfile& K, std::uint64_t p,
                                  const OverrideTable* overrides = nullptr) {
    if (overrides) {
        auto it = overrides->find(p);
        if (it != overrides->end()) {
            int total = 0;
            for (auto& [f, e] : it->second) total += f * e;
            if (total != K.n)
                throw std::invalid_argument("override for p=" + std::to_string(p) +
                                            ": sum of e*f != degree");
            bool idx = (K.disc_poly % p == 0) && dedekind_index_divisor(K.poly, p);
            return LocalSplitting{p, it->second, idx};
        }
    }
    if (K.n == 1) return LocalSplitting{p, {{1, 1}}, false};

    if (K.n == 2 && K.fundamental_disc) {
        bool idx = false;
        if (K.disc_poly % p == 0) {
            cpp_int q = K.disc_poly / *K.fundamental_disc;
            cpp_int index = boost::multiprecision::sqrt(q);
            idx = (index % p == 0);
        }
        int k = kronecker(*K.fundamental_disc, p);
        if (k == 1) return LocalSplitting{p, {{1, 1}, {1, 1}}, idx};
        if (k == -1) return LocalSplitting{p, {{2, 1}}, idx};
        return LocalSplitting{p, {{1, 2}}, idx};
    }

    LocalSplitting out;
    out.p = p;
    FpPoly fbar = reduce_mod_p(K.poly, p);
    if (K.disc_poly % p != 0) {
        auto counts = ddf_degree_counts(fbar);
        for (auto& [deg, cnt] : counts)
            for (int i = 0; i < cnt; ++i) out.factors.emplace_back(deg, 1);
    } else {
        if (dedekind_index_divisor(K.poly, p)) throw UnsupportedIndexDivisor(p);
        out.index_divisor = false;
        auto sfd = squarefree_decomposition(fbar);
        for (auto& [comp, mult] : sfd) {
            auto counts = ddf_degree_counts(comp);
            for (auto& [deg, cnt] : counts)
                for (int i = 0; i < cnt; ++i)
                    out.factors.emplace_back(deg, static_cast<int>(mult));
        }
        std::sort(out.factors.begin(), out.factors.end());
    }
    int total = 0;
    for (auto& [f, e] : out.factors) total += f * e;
    if (total != K.n) throw std::logic_error("splitting degrees do not sum to n");
    return out;
}

// Deterministic traversal: fn(LocalSplitting) for every prime p < X in
// ascending order. Work is sharded into fixed 4096-prime blocks regardless of
// thread count, so the delivered stream is identical for any `threads`.
template <typename Fn>
void for_each_prime_splitting(const NumberFieldProfile& K, double X, int threads,
                              const OverrideTable* overrides, Fn&& fn) {
    auto primes = primes_below(X);
    const std::size_t block = 4096;
    if (threads < 1) threads = 1;
    if (threads == 1) {
        for (std::uint32_t p : primes) fn(split_prime(K, p, overrides));
        return;
    }
    std::size_t nblocks = (primes.size() + block - 1) / block;
    std::size_t next = 0;
    std::vector<std::future<std::vector<LocalSplitting>>> inflight;
    auto launch = [&](std::size_t b) {
        return std::async(std::launch::async, [&, b] {
            std::vector<LocalSplitting> out;
            std::size_t lo = b * block, hi = std::min(primes.size(), lo + block);
            out.reserve(hi - lo);
            for (std::size_t i = lo; i < hi; ++i)
                out.push_back(split_prime(K, primes[i], overrides));
            return out;
        });
    };
    std::size_t window = static_cast<std::size_t>(threads);
    for (; next < std::min(nblocks, window); ++next) inflight.push_back(launch(next));
    for (std::size_t b = 0; b < nblocks; ++b) {
        auto results = inflight[b].get();
        if (next < nblocks) {
            inflight.push_back(launch(next));
            ++next;
        }
        for (auto& ls : results) fn(ls);
    }
}

} // namespace logkappa
