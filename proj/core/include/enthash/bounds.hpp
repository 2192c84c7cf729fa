#pragma once

#include <optional>

namespace enthash::bounds {

// Tolerated entropy-estimation slack for block size n: n^(-1/5) for the
// two-party protocol, n^(-1/4) for the multiparty one.
double default_delta(double n);
double default_delta_multiparty(double n);

// Werner single-pair quantities entering the failure exponents, all in bits:
//   entropy(f)  = S(f)
//   variance(f) = V(f) = f log2^2 f + (1-f) log2^2((1-f)/3) - S(f)^2
//   a_of(f)     = |log2((1-f)/3)| + S(f)   (max per-symbol surprisal)
//   g_of(f)     = V(f) / a_of(f)
// Domain: f in (0.8107, 1) strictly; outside it the exponents below lose
// validity, so these throw std::domain_error rather than extrapolate.
double entropy(double f);
double variance(double f);
double a_of(double f);
double g_of(double f);

// Bennett-style exponent for the atypicality of the sampled surprisal,
//   x1 = [ (g_max + delta) ln(1 + delta / g_max) - delta ] / a_max
// with a_max = a_of(f_max), g_max = g_of(f_min). Natural-log units.
double x1_exponent(double delta, double f_min, double f_max);

struct BoundInputs {
    double n = 0;                 // hashing block size
    double k = 0;                 // parameter-estimation overhead factor
    double f_min = 0;             // promised fidelity interval
    double f_max = 0;
    std::optional<double> delta;  // slack; default_delta(n) when unset
    int d = 4;                    // output dimension per held system
};

// Per-term and combined failure bounds, natural-log scale throughout.
struct BoundReport {
    double n = 0;
    double k = 0;
    double f_min = 0;
    double f_max = 0;
    double delta = 0;
    int d = 4;

    double log_p1 = 0;  // likely-set misses the truth
    double log_p2 = 0;  // likely set too large for the parity budget
    double log_p3 = 0;  // parameter estimation accepts a bad interval
    double log_iid = 0; // ln 2 + logsumexp of the three

    // Post-selection dimension factor and the composed diamond-norm bound,
    // sqrt-amplified from the iid bound.
    double postselect_factor_log = 0;
    double diamond_bound_log = 0;

    long long yield = 0;  // m = floor(n (1 - S(f_min) - 2 delta))
};

enum class PostselectMode {
    power,  // (d^2 - 1) ln(n + kn + 1): the closed-form factor
    exact,  // ln C(n + kn + d^2 - 1, n) via lgamma
};

double log_p1(double n, double delta, double f_min, double f_max);
double log_p2(double n, double delta);
double log_p3(double n, double k, double f_min, double f_max);
double iid_bound_log(const BoundInputs& in);

double postselect_factor_log(double n, double k, int d, PostselectMode mode);

// Diamond-norm bound on the real-vs-ideal channel distance:
//   ln 4 + postselect_factor_log + (ln 2 + logsumexp(p1, p2, p3)) / 2.
double diamond_bound_log(const BoundInputs& in,
                         PostselectMode mode = PostselectMode::power);

// Same composition from an externally supplied iid failure log (used by the
// multiparty bound, whose term structure differs).
double diamond_from_iid_log(double n, double k, int d, double log_eps_total,
                            PostselectMode mode = PostselectMode::power);

// Full report with every intermediate pinned.
BoundReport evaluate(const BoundInputs& in,
                     PostselectMode mode = PostselectMode::power);

long long yield(double n, double f_min, double delta);

// Slow-growth choice y(n) = n^(3/5) / (2 g_max + 1) and the floor inequality
// log_p1 <= ln 2 - y / a_max it guarantees once delta = default_delta(n).
double slow_growth_y(double n, double f_min);

// Composition lemmas, natural-log in and out.
double local_to_global_log(double log_eps);  // ln(4 sqrt(eps))
double leakage_bound_log(double log_eps);    // ln(2 sqrt(eps))

}  // namespace enthash::bounds
