#include "enthash/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "enthash/bell.hpp"
#include "enthash/stats.hpp"

namespace enthash::bounds {

namespace {

void check_fidelity_domain(double f) {
    if (!(f > 0.8107 && f < 1.0))
        throw std::domain_error("fidelity outside the hashing regime (0.8107, 1)");
}

double resolved_delta(const BoundInputs& in) {
    double d = in.delta ? *in.delta : default_delta(in.n);
    if (!(d > 0.0)) throw std::invalid_argument("delta must be positive");
    return d;
}

}  // namespace

double default_delta(double n) { return std::pow(n, -0.2); }

double default_delta_multiparty(double n) { return std::pow(n, -0.25); }

double entropy(double f) {
    check_fidelity_domain(f);
    return werner_entropy(f);
}

double variance(double f) {
    check_fidelity_domain(f);
    double lf = std::log2(f);
    double lr = std::log2((1.0 - f) / 3.0);
    double s = werner_entropy(f);
    return f * lf * lf + (1.0 - f) * lr * lr - s * s;
}

double a_of(double f) {
    check_fidelity_domain(f);
    return std::abs(std::log2((1.0 - f) / 3.0)) + werner_entropy(f);
}

double g_of(double f) { return variance(f) / a_of(f); }

double x1_exponent(double delta, double f_min, double f_max) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(f_min <= f_max)) throw std::invalid_argument("empty fidelity interval");
    double a_max = a_of(f_max);
    double g_max = g_of(f_min);
    return ((g_max + delta) * std::log1p(delta / g_max) - delta) / a_max;
}

double log_p1(double n, double delta, double f_min, double f_max) {
    return std::numbers::ln2 - n * x1_exponent(delta, f_min, f_max);
}

double log_p2(double n, double delta) { return -(n * delta) * std::numbers::ln2; }

double log_p3(double n, double k, double f_min, double f_max) {
    double width = f_max - f_min;
    return std::numbers::ln2 - width * width * k * n / 16.0;
}

double iid_bound_log(const BoundInputs& in) {
    double d = resolved_delta(in);
    return std::numbers::ln2 +
           stats::logsumexp3(log_p1(in.n, d, in.f_min, in.f_max), log_p2(in.n, d),
                             log_p3(in.n, in.k, in.f_min, in.f_max));
}

double postselect_factor_log(double n, double k, int d, PostselectMode mode) {
    if (d < 2) throw std::invalid_argument("output dimension below 2");
    double total = n + k * n;
    double dim2 = static_cast<double>(d) * d;
    if (mode == PostselectMode::power) return (dim2 - 1.0) * std::log(total + 1.0);
    return std::lgamma(total + dim2) - std::lgamma(total + 1.0) - std::lgamma(dim2);
}

double diamond_from_iid_log(double n, double k, int d, double log_eps_total,
                            PostselectMode mode) {
    return std::log(4.0) + postselect_factor_log(n, k, d, mode) + 0.5 * log_eps_total;
}

double diamond_bound_log(const BoundInputs& in, PostselectMode mode) {
    return diamond_from_iid_log(in.n, in.k, in.d, iid_bound_log(in), mode);
}

BoundReport evaluate(const BoundInputs& in, PostselectMode mode) {
    BoundReport r;
    r.n = in.n;
    r.k = in.k;
    r.f_min = in.f_min;
    r.f_max = in.f_max;
    r.delta = resolved_delta(in);
    r.d = in.d;
    r.log_p1 = log_p1(in.n, r.delta, in.f_min, in.f_max);
    r.log_p2 = log_p2(in.n, r.delta);
    r.log_p3 = log_p3(in.n, in.k, in.f_min, in.f_max);
    r.log_iid = std::numbers::ln2 + stats::logsumexp3(r.log_p1, r.log_p2, r.log_p3);
    r.postselect_factor_log = postselect_factor_log(in.n, in.k, in.d, mode);
    r.diamond_bound_log = diamond_from_iid_log(in.n, in.k, in.d, r.log_iid, mode);
    r.yield = yield(in.n, in.f_min, r.delta);
    return r;
}

long long yield(double n, double f_min, double delta) {
    double m = n * (1.0 - werner_entropy(f_min) - 2.0 * delta);
    if (!(m > 0.0)) return 0;
    return static_cast<long long>(std::floor(m));
}

double slow_growth_y(double n, double f_min) {
    return std::pow(n, 0.6) / (2.0 * g_of(f_min) + 1.0);
}

double local_to_global_log(double log_eps) {
    return std::log(4.0) + 0.5 * log_eps;
}

double leakage_bound_log(double log_eps) {
    return std::numbers::ln2 + 0.5 * log_eps;
}

}  // namespace enthash::bounds
