#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "enthash/graph.hpp"
#include "enthash/hashing.hpp"
#include "enthash/rng.hpp"

namespace enthash::multi {

// Entropy ceilings of the per-vertex label processes, in bits.
double max_entropy_a(const graph::Marginals& m);
double max_entropy_b(const graph::Marginals& m);

// m = floor(n (1 - max_i S(a_i) - max_j S(b_j) - 2 delta)).
long long yield(double n, const graph::Marginals& m, double delta);

// Surprisal range constant: C' = max over vertices of
// max_b |log2 p_vertex(b)| + S(p_vertex). Infinite marginals (a
// deterministic bit) contribute infinity, which disables the Hoeffding
// term below, so callers mix toward identity first.
double c_prime(const graph::Marginals& m);

// Total failure probability of the multiparty run, natural log:
//   ln 2 + ln[ 2 (N_A + N_B) exp(-2 n delta^2 / C'^2)
//              + (N_A + N_B) 2^(-n delta)
//              + 2^(N_A + N_B + 1) exp(-2 eta^2 k n) ].
// The three terms price surprisal atypicality, likely-set collisions per
// vertex process, and the frequency test accepting a shifted lambda.
double iid_bound_log(double n, double k, std::size_t n_a, std::size_t n_b,
                     double c_prime, double delta, double eta);

struct Config {
    std::size_t n = 0;  // hashing copies
    double k = 0;       // PE overhead: round(k n) sacrificed copies
    std::optional<double> delta;  // default n^(-1/4)
    // Round quotas; by default n - m rounds split proportionally to the
    // entropy ceilings max S(a) : max S(b), evenly when both vanish.
    std::optional<std::size_t> rounds_p1, rounds_p2;
    double eps_mix = 1e-3;  // identity admixture; 0 disables mixing
    double pe_eta = 0.1;    // frequency-test window half-width
    bool pe_enabled = true;
    int decode_budget_log2 = 20;

    double resolved_delta() const;
    std::size_t pe_copies() const;  // round(k * n)
};

struct RoundQuotas {
    std::size_t p1 = 0;
    std::size_t p2 = 0;
};

// The default proportional split for a given mixed distribution.
RoundQuotas default_quotas(const Config& cfg, const graph::Marginals& m);

struct Outcome {
    hashing::Branch branch = hashing::Branch::ok;
    hashing::Cause cause = hashing::Cause::none;
    bool ambiguity_unresolved = false;
    double pe_max_deviation = 0;  // sup-norm distance of lambda-hat
    long long yield = 0;
    // Vertex whose label process failed to decode, -1 when none; A-class
    // positions come first, then B-class.
    int failed_component = -1;
};

// One full multiparty execution against a source distribution lambda over
// the 2^N labels (indexed per label_index). The working distribution is
// mix_identity(lambda, eps_mix); copies are drawn from it, the frequency
// test compares against it, quotas and yield derive from its marginals.
// Rounds alternate P1, P2 until each quota is spent. A round folds a
// random half of the survivors (each included with probability 1/2, no-op
// when the subset is empty) onto its lowest member, which is measured out;
// P1 rounds reveal mu parities, P2 rounds nu parities. Each vertex's label
// process is then decoded separately against its parity rows.
Outcome run_protocol(const Config& cfg, const graph::TwoColorable& g,
                     std::span<const double> lambda, Rng& rng);

// Trial-seeded Monte Carlo, merged in trial order; same determinism
// contract as hashing::monte_carlo. mean_pe_statistic aggregates
// pe_max_deviation.
hashing::MonteCarloResult monte_carlo(const Config& cfg,
                                      const graph::TwoColorable& g,
                                      std::span<const double> lambda,
                                      std::uint64_t trials, std::uint64_t seed,
                                      unsigned threads,
                                      std::vector<Outcome>* transcript = nullptr);

}  // namespace enthash::multi
