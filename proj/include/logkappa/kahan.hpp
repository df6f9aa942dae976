#pragma once

#include <cmath>

namespace logkappa {

// Neumaier-compensated accumulator: keeps the running error of each add in a
// separate low-order word so long alternating-sign sums stay near 1 ulp.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    void add(const KahanSum& other) {
        add(other.sum_);
        add(other.comp_);
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace logkappa
