#include "enthash/regimes.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace enthash::regimes {

double q_critical() { return (4.0 * kFidelityCritical - 1.0) / 3.0; }

double relocate_noise(double alpha, double q) { return alpha * alpha * q; }

Protocol classify(double alpha, double q) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha not in [0, 1]");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q not in [0, 1]");
    double composite = relocate_noise(alpha, q);
    if (composite <= q_critical()) return Protocol::none;
    return alpha * alpha > q ? Protocol::both : Protocol::privacy;
}

const char* protocol_name(Protocol p) {
    switch (p) {
        case Protocol::none: return "none";
        case Protocol::privacy: return "privacy";
        case Protocol::both: return "both";
    }
    return "?";
}

namespace {

std::size_t axis_count(const GridSpec& axis) {
    if (!(axis.step > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (!(axis.hi >= axis.lo)) throw std::invalid_argument("grid range empty");
    return static_cast<std::size_t>(std::floor((axis.hi - axis.lo) / axis.step + 1e-9)) + 1;
}

}  // namespace

std::vector<GridPoint> classify_grid(const GridSpec& alpha_axis, const GridSpec& q_axis) {
    std::size_t na = axis_count(alpha_axis);
    std::size_t nq = axis_count(q_axis);
    std::vector<GridPoint> grid;
    grid.reserve(na * nq);
    for (std::size_t i = 0; i < na; ++i) {
        double alpha = alpha_axis.lo + static_cast<double>(i) * alpha_axis.step;
        for (std::size_t j = 0; j < nq; ++j) {
            double q = q_axis.lo + static_cast<double>(j) * q_axis.step;
            grid.push_back({alpha, q, classify(alpha, q)});
        }
    }
    return grid;
}

void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& grid) {
    os << "alpha,q,class\n";
    char buf[128];
    for (const GridPoint& p : grid) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", p.alpha, p.q,
                      protocol_name(p.protocol));
        os << buf;
    }
}

SourceInterval modified_pe_interval(double q_lo, double q_hi, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha not in (0, 1]");
    if (!(q_lo <= q_hi)) throw std::invalid_argument("empty retention window");
    double a2 = alpha * alpha;
    SourceInterval out;
    out.lo = (3.0 * q_lo + a2) / (4.0 * a2);
    out.hi = (3.0 * q_hi + a2) / (4.0 * a2);
    if (out.lo > 1.0) out.infeasible = true;
    if (out.hi > 1.0) {
        out.hi = 1.0;
        out.clamped = true;
    }
    return out;
}

bool purification_feasible(double alpha, double q_in, double q_out) {
    return relocate_noise(alpha, q_out) > q_in;
}

}  // namespace enthash::regimes
