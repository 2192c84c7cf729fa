#pragma once

#include <iosfwd>
#include <vector>

namespace enthash::regimes {

// Hashing threshold: Werner fidelity above which one-way hashing yields
// positive rate, and the matching retention on the q axis.
inline constexpr double kFidelityCritical = 0.8107;
double q_critical();

enum class Protocol {
    none,     // effective fidelity below threshold, nothing distillable
    privacy,  // distillation works and beats using the links as plain channels
    both,     // additionally the untrusted-source placement is the better one
};

// Retention of the composite channel seen end-to-end: source emits
// werner_from_q(q), each side adds depolarizing retention alpha, and the
// retentions compose multiplicatively to alpha^2 q.
double relocate_noise(double alpha, double q);

// Classify the (alpha, q) operating point.
//   none:    alpha^2 q <= q_critical
//   privacy: alpha^2 q >  q_critical and alpha^2 <= q
//   both:    alpha^2 q >  q_critical and alpha^2 >  q
Protocol classify(double alpha, double q);

const char* protocol_name(Protocol p);

struct GridPoint {
    double alpha = 0;
    double q = 0;
    Protocol protocol = Protocol::none;
};

struct GridSpec {
    double lo = 0;
    double hi = 0;
    double step = 0;
};

// Dense classification over the alpha x q rectangle, row-major in alpha.
std::vector<GridPoint> classify_grid(const GridSpec& alpha_axis,
                                     const GridSpec& q_axis);

// CSV with header alpha,q,class and '.' decimal separator.
void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& grid);

struct SourceInterval {
    double lo = 0;
    double hi = 0;
    bool clamped = false;    // upper endpoint exceeded 1 and was clamped
    bool infeasible = false; // lower endpoint above 1: no source fits
};

// Map a retention window [q_lo, q_hi] estimated on the end-to-end state to
// the source's own fidelity window, dividing out the calibrated links:
//   f_src = (3 q_eff + alpha^2) / (4 alpha^2).
// At alpha = 1 this reduces to q_to_fidelity on both endpoints, with the
// same floating-point operations, so the identity is exact.
SourceInterval modified_pe_interval(double q_lo, double q_hi, double alpha);

// True when purifying past the relocated source still pays off:
// alpha^2 q_out > q_in.
bool purification_feasible(double alpha, double q_in, double q_out);

}  // namespace enthash::regimes
