#pragma once

#include <cstdint>

namespace enthash::stats {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

// Wilson score interval for a binomial proportion.
Interval wilson(std::uint64_t successes, std::uint64_t trials, double z);

// log(exp(a) + exp(b)) without overflow; handles -inf operands.
double logsumexp2(double a, double b);
double logsumexp3(double a, double b, double c);

// Binary entropy in bits and its inverse on [0, 1/2].
double h2(double x);
double h2_inverse(double y);

}  // namespace enthash::stats
