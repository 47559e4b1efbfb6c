#pragma once

#include <cmath>

namespace erk {

// Neumaier-compensated running sum; cheap insurance for the long series
// (up to ~1e4 terms at small q) and for MC trial averages.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + carry; }
};

}  // namespace erk
