#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace summa {

/// Neumaier (Kahan-Babuska) compensated accumulator. The running error term
/// is kept separate and folded in on read, so long sums of doubles stay
/// within one rounding of the exact result.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

    void reset() {
        sum_ = 0.0;
        comp_ = 0.0;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

/// Residual of an identity lhs == rhs, normalized by the magnitude of the
/// quantities that entered the computation (`scale` should be the sum of
/// absolute intermediate terms, so cancellation does not inflate the ratio).
inline double relative_residual(double lhs, double rhs, double scale = 0.0) {
    double denom = 1.0;
    if (std::abs(lhs) > denom) denom = std::abs(lhs);
    if (std::abs(rhs) > denom) denom = std::abs(rhs);
    if (scale > denom) denom = scale;
    return std::abs(lhs - rhs) / denom;
}

}  // namespace summa
