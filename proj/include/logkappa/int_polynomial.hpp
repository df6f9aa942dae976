#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <vector>

namespace logkappa {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace detail {

// Exact determinant by Bareiss fraction-free elimination.
inline cpp_int bareiss_det(std::vector<std::vector<cpp_int>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    cpp_int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace detail

// Resultant of a (degree da) and b (degree db) via the Sylvester matrix.
// Coefficients ascending; leading entries must be nonzero.
inline cpp_int resultant(const std::vector<cpp_int>& a, const std::vector<cpp_int>& b) {
    std::size_t da = a.size() - 1, db = b.size() - 1;
    if (db == 0) return boost::multiprecision::pow(b[0], static_cast<unsigned>(da));
    if (da == 0) return boost::multiprecision::pow(a[0], static_cast<unsigned>(db));
    std::size_t n = da + db;
    std::vector<std::vector<cpp_int>> m(n, std::vector<cpp_int>(n, 0));
    for (std::size_t r = 0; r < db; ++r)
        for (std::size_t j = 0; j <= da; ++j)
            m[r][r + j] = a[da - j];
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t j = 0; j <= db; ++j)
            m[db + r][r + j] = b[db - j];
    return detail::bareiss_det(std::move(m));
}

// Monic integer polynomial of degree >= 1, squarefree over Q. Squarefreeness
// (equivalently: nonzero discriminant) is enforced at construction, and the
// discriminant is cached for reuse.
class IntPolynomial {
public:
    explicit IntPolynomial(std::vector<cpp_int> coeffs) : c_(std::move(coeffs)) {
        while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
        if (c_.size() < 2) throw std::invalid_argument("polynomial: degree must be >= 1");
        if (c_.back() != 1) throw std::invalid_argument("polynomial: must be monic");
        if (degree() == 1) {
            disc_ = 1;
            return;
        }
        std::vector<cpp_int> d(degree());
        for (int i = 1; i <= degree(); ++i) d[i - 1] = c_[i] * i;
        cpp_int res = resultant(c_, d);
        int n = degree();
        disc_ = ((n * (n - 1) / 2) % 2 == 0) ? res : -res;
        if (disc_ == 0) throw std::invalid_argument("polynomial: not squarefree (zero discriminant)");
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<cpp_int>& coeffs() const { return c_; }
    const cpp_int& discriminant() const { return disc_; }

    // Number of real roots by Sturm's theorem (exact rational arithmetic).
    int real_root_count() const {
        if (degree() == 1) return 1;
        using Poly = std::vector<cpp_rational>;
        auto trim = [](Poly& p) { while (!p.empty() && p.back() == 0) p.pop_back(); };
        auto rem = [&](Poly num, const Poly& den) {
            while (num.size() >= den.size() && !num.empty()) {
                cpp_rational q = num.back() / den.back();
                std::size_t off = num.size() - den.size();
                for (std::size_t i = 0; i < den.size(); ++i) num[off + i] -= q * den[i];
                num.pop_back();
                trim(num);
            }
            return num;
        };
        Poly p0(c_.begin(), c_.end());
        Poly p1(degree());
        for (int i = 1; i <= degree(); ++i) p1[i - 1] = cpp_rational(c_[i]) * i;
        std::vector<Poly> seq{p0, p1};
        while (seq.back().size() > 1) {
            Poly r = rem(seq[seq.size() - 2], seq.back());
            if (r.empty()) break; // cannot happen for squarefree input
            for (auto& x : r) x = -x;
            seq.push_back(std::move(r));
        }
        auto changes = [&](int at_inf) {
            int count = 0, last = 0;
            for (const auto& p : seq) {
                int s = p.back() > 0 ? 1 : -1;
                if (at_inf < 0 && (p.size() - 1) % 2 == 1) s = -s;
                if (last != 0 && s != last) ++count;
                last = s;
            }
            return count;
        };
        return changes(-1) - changes(+1);
    }

private:
    std::vector<cpp_int> c_;
    cpp_int disc_;
};

} // namespace logkappa
