#include "enthash/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace enthash::stats {

Interval wilson(std::uint64_t successes, std::uint64_t trials, double z) {
    if (successes > trials) throw std::invalid_argument("successes exceed trials");
    if (trials == 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double logsumexp2(double a, double b) {
    double m = std::max(a, b);
    if (m == -std::numeric_limits<double>::infinity()) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double logsumexp3(double a, double b, double c) {
    double m = std::max({a, b, c});
    if (m == -std::numeric_limits<double>::infinity()) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

double h2(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("h2 argument not in [0, 1]");
    double s = 0;
    if (x > 0.0) s -= x * std::log2(x);
    if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
    return s;
}

double h2_inverse(double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("h2 value not in [0, 1]");
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2.0;
        if (mid == lo || mid == hi) break;
        (h2(mid) < y ? lo : hi) = mid;
    }
    return (lo + hi) / 2.0;
}

}  // namespace enthash::stats
