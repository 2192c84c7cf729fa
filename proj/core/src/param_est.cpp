#include "enthash/param_est.hpp"

#include <stdexcept>

namespace enthash::pe {

double statistic_mean(double f) {
    double marginal = (2.0 * f + 1.0) / 3.0;
    return marginal * marginal;
}

int sample(BellLabel pair1, BellLabel pair2) {
    return (pair1.phase == 0 && pair2.amplitude == 0) ? 1 : 0;
}

double estimate(std::span<const BellLabel> block) {
    std::size_t pairs = block.size() / 2;
    if (pairs == 0) return 0.0;
    std::size_t passes = 0;
    for (std::size_t t = 0; t < pairs; ++t)
        passes += static_cast<std::size_t>(sample(block[2 * t], block[2 * t + 1]));
    return static_cast<double>(passes) / static_cast<double>(pairs);
}

Window Window::promise(double f_min, double f_max) {
    if (!(f_min >= 0.25 && f_max <= 1.0 && f_min <= f_max))
        throw std::invalid_argument("promised interval not inside [1/4, 1]");
    Window w;
    w.f_min = f_min;
    w.f_max = f_max;
    double quarter = (f_max - f_min) / 4.0;
    w.accept_lo = w.center() - quarter;
    w.accept_hi = w.center() + quarter;
    return w;
}

bool Window::accepts(double sample_mean, Mode mode) const {
    double lo = accept_lo, hi = accept_hi;
    if (mode == Mode::calibrated) {
        lo = statistic_mean(accept_lo);
        hi = statistic_mean(accept_hi);
    }
    return sample_mean >= lo && sample_mean <= hi;
}

}  // namespace enthash::pe
