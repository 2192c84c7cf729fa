#pragma once

#include <span>

#include "enthash/bell.hpp"

namespace enthash::pe {

enum class Mode { raw, calibrated };

// Expected value of the two-pair parity test on werner(f) pairs:
// phi(f) = ((2f + 1) / 3)^2. Monotone on [1/4, 1], so acceptance windows
// transport through it unchanged in meaning.
double statistic_mean(double f);

// One 0/1 test sample from two sacrificed pairs: passes when the first
// pair's phase and the second pair's amplitude are both clean. Both checks
// are local parity measurements, so the sample costs no communication
// beyond announcing outcomes.
int sample(BellLabel pair1, BellLabel pair2);

// Sample mean over consecutive pairs (0,1), (2,3), ... of a sacrificed
// block; floor(size / 2) samples. Empty block yields 0.
double estimate(std::span<const BellLabel> block);

// Acceptance window for a promised interval [f_min, f_max]: the middle
// half [center - width/4, center + width/4]. A state at either promise
// edge then sits width/4 outside the window, which is what the Hoeffding
// exponent width^2 kn / 16 prices in.
struct Window {
    double f_min = 0;
    double f_max = 0;
    double accept_lo = 0;
    double accept_hi = 0;

    static Window promise(double f_min, double f_max);

    double center() const { return (f_min + f_max) / 2; }
    double width() const { return f_max - f_min; }

    // Raw mode compares the sample mean against the window in fidelity
    // units; calibrated (the default elsewhere) transports the window
    // through statistic_mean first, matching what the samples estimate.
    bool accepts(double sample_mean, Mode mode) const;
};

}  // namespace enthash::pe
