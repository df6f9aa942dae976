#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace logkappa {

// Dense univariate arithmetic over F_p, p < 2^31. Coefficients ascending.
// Degrees here stay tiny (the defining polynomial's), so schoolbook products
// are the right tool.
struct FpPoly {
    std::uint64_t p;
    std::vector<std::uint64_t> c;

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    static FpPoly zero(std::uint64_t p) { return {p, {}}; }
    static FpPoly xpoly(std::uint64_t p) { return {p, {0, 1}}; }

    FpPoly monic() const {
        if (is_zero()) return *this;
        std::uint64_t inv = inv_mod(c.back(), p);
        FpPoly r{p, c};
        for (auto& v : r.c) v = v * inv % p;
        return r;
    }

    static std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
        // Fermat: p prime
        std::uint64_t r = 1, b = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }

    FpPoly derivative() const {
        FpPoly r{p, {}};
        for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * (i % p) % p);
        r.trim();
        return r;
    }
};

inline FpPoly mul(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p);
    FpPoly r{a.p, std::vector<std::uint64_t>(a.c.size() + b.c.size() - 1, 0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.p;
    }
    r.trim();
    return r;
}

inline FpPoly rem(FpPoly a, const FpPoly& b) {
    std::uint64_t p = a.p;
    std::uint64_t lead_inv = FpPoly::inv_mod(b.c.back(), p);
    while (!a.is_zero() && a.c.size() >= b.c.size()) {
        std::uint64_t q = a.c.back() * lead_inv % p;
        std::size_t off = a.c.size() - b.c.size();
        for (std::size_t i = 0; i < b.c.size(); ++i) {
            std::uint64_t sub = q * b.c[i] % p;
            a.c[off + i] = (a.c[off + i] + p - sub) % p;
        }
        a.trim();
    }
    return a;
}

// Exact quotient, for divisions known to be exact.
inline FpPoly divide_exact(FpPoly a, const FpPoly& b) {
    std::uint64_t p = a.p;
    std::uint64_t lead_inv = FpPoly::inv_mod(b.c.back(), p);
    FpPoly q{p, std::vector<std::uint64_t>(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, 0)};
    while (!a.is_zero() && a.c.size() >= b.c.size()) {
        std::uint64_t qc = a.c.back() * lead_inv % p;
        std::size_t off = a.c.size() - b.c.size();
        q.c[off] = qc;
        for (std::size_t i = 0; i < b.c.size(); ++i) {
            std::uint64_t sub = qc * b.c[i] % p;
            a.c[off + i] = (a.c[off + i] + p - sub) % p;
        }
        a.trim();
    }
    if (!a.is_zero()) throw std::logic_error("divide_exact: nonzero remainder");
    q.trim();
    return q;
}

inline FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = rem(a, b);
        a = b;
        b = r;
    }
    return a.monic();
}

// x^(p^1) is the workhorse: h -> h^p mod f by binary exponentiation.
inline FpPoly pow_mod(const FpPoly& base, std::uint64_t e, const FpPoly& f) {
    FpPoly r{f.p, {1}};
    FpPoly b = rem(base, f);
    while (e) {
        if (e & 1) r = rem(mul(r, b), f);
        b = rem(mul(b, b), f);
        e >>= 1;
    }
    return r;
}

// p-th root of a polynomial with zero derivative: all exponents are
// multiples of p, and over F_p the coefficient map is the identity.
inline FpPoly pth_root(const FpPoly& f) {
    FpPoly r{f.p, {}};
    for (std::size_t i = 0; i < f.c.size(); i += static_cast<std::size_t>(f.p))
        r.c.push_back(f.c[i]);
    r.trim();
    return r;
}

// Squarefree decomposition in characteristic p: list of (factor, multiplicity),
// factors monic, pairwise coprime, product with multiplicity = input.
inline std::vector<std::pair<FpPoly, unsigned>> squarefree_decomposition(const FpPoly& f0) {
    std::vector<std::pair<FpPoly, unsigned>> out;
    FpPoly f = f0.monic();
    if (f.degree() < 1) return out;
    FpPoly d = f.derivative();
    if (d.is_zero()) {
        for (auto& [g, m] : squarefree_decomposition(pth_root(f)))
            out.emplace_back(g, m * static_cast<unsigned>(f.p));
        return out;
    }
    FpPoly c = gcd(f, d);
    FpPoly w = divide_exact(f, c);
    unsigned i = 1;
    while (w.degree() >= 1) {
        FpPoly y = gcd(w, c);
        FpPoly z = divide_exact(w, y);
        if (z.degree() >= 1) out.emplace_back(z.monic(), i);
        ++i;
        w = y;
        c = divide_exact(c, y);
    }
    if (c.degree() >= 1) {
        for (auto& [g, m] : squarefree_decomposition(pth_root(c)))
            out.emplace_back(g, m * static_cast<unsigned>(f.p));
    }
    return out;
}

// Degree -> number of monic irreducible factors of that degree, for
// squarefree monic input. Distinct-degree factorization.
inline std::map<int, int> ddf_degree_counts(FpPoly u) {
    std::map<int, int> counts;
    if (u.degree() < 1) return counts;
    FpPoly h = rem(FpPoly::xpoly(u.p), u);
    int d = 0;
    while (u.degree() >= 1) {
        ++d;
        if (2 * d > u.degree()) {
            counts[u.degree()] += 1;
            break;
        }
        h = pow_mod(h, u.p, u);
        FpPoly hx = h;
        // h - x
        if (hx.c.size() < 2) hx.c.resize(2, 0);
        hx.c[1] = (hx.c[1] + u.p - 1) % u.p;
        hx.trim();
        FpPoly g = gcd(hx, u);
        if (g.degree() >= 1) {
            counts[d] += g.degree() / d;
            u = divide_exact(u, g);
            if (u.degree() < 1) break;
            h = rem(h, u);
        }
    }
    return counts;
}

inline bool irreducible_mod_p(const FpPoly& f) {
    FpPoly u = f.monic();
    if (u.degree() < 1) return false;
    if (u.degree() == 1) return true;
    FpPoly d = u.derivative();
    if (d.is_zero()) return false; // p-th power
    if (gcd(u, d).degree() > 0) return false;
    auto counts = ddf_degree_counts(u);
    return counts.size() == 1 && counts.begin()->first == u.degree();
}

} // namespace logkappa
