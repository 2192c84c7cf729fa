#include "enthash/multiparty.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "enthash/bounds.hpp"
#include "enthash/stats.hpp"

namespace enthash::multi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bit_cost(double p) { return p > 0.0 ? -std::log2(p) : kInf; }

}  // namespace

double max_entropy_a(const graph::Marginals& m) {
    double s = 0;
    for (const auto& d : m.a) s = std::max(s, stats::h2(d[0]));
    return s;
}

double max_entropy_b(const graph::Marginals& m) {
    double s = 0;
    for (const auto& d : m.b) s = std::max(s, stats::h2(d[0]));
    return s;
}

long long yield(double n, const graph::Marginals& m, double delta) {
    double v = n * (1.0 - max_entropy_a(m) - max_entropy_b(m) - 2.0 * delta);
    if (!(v > 0.0)) return 0;
    return static_cast<long long>(std::floor(v));
}

double c_prime(const graph::Marginals& m) {
    double worst = 0;
    auto component = [](const std::array<double, 2>& d) {
        double range = 0;
        for (double p : d) {
            if (p <= 0.0) return kInf;
            range = std::max(range, std::abs(std::log2(p)));
        }
        return range + stats::h2(d[0]);
    };
    for (const auto& d : m.a) worst = std::max(worst, component(d));
    for (const auto& d : m.b) worst = std::max(worst, component(d));
    return worst;
}

double iid_bound_log(double n, double k, std::size_t n_a, std::size_t n_b,
                     double c_prime, double delta, double eta) {
    double vertices = static_cast<double>(n_a + n_b);
    double surprisal_term = std::log(2.0 * vertices) - 2.0 * n * delta * delta /
                                                           (c_prime * c_prime);
    double collision_term = std::log(vertices) - n * delta * std::numbers::ln2;
    double pe_term = (vertices + 1.0) * std::numbers::ln2 - 2.0 * eta * eta * k * n;
    return std::numbers::ln2 +
           stats::logsumexp3(surprisal_term, collision_term, pe_term);
}

double Config::resolved_delta() const {
    if (delta) {
        if (!(*delta > 0.0)) throw std::invalid_argument("delta must be positive");
        return *delta;
    }
    return bounds::default_delta_multiparty(static_cast<double>(n));
}

std::size_t Config::pe_copies() const {
    return static_cast<std::size_t>(std::llround(k * static_cast<double>(n)));
}

RoundQuotas default_quotas(const Config& cfg, const graph::Marginals& m) {
    double delta = cfg.resolved_delta();
    long long my = std::min<long long>(yield(static_cast<double>(cfg.n), m, delta),
                                       static_cast<long long>(cfg.n));
    std::size_t total = cfg.n - static_cast<std::size_t>(my);
    double sa = max_entropy_a(m);
    double sb = max_entropy_b(m);
    double share = sa + sb > 0.0 ? sa / (sa + sb) : 0.5;
    std::size_t p1 = static_cast<std::size_t>(
        std::llround(static_cast<double>(total) * share));
    RoundQuotas q{p1, total - p1};
    if (cfg.rounds_p1) q.p1 = *cfg.rounds_p1;
    if (cfg.rounds_p2) q.p2 = *cfg.rounds_p2;
    return q;
}

namespace {

enum class PartyResult { clean, outside, ambiguous, unresolved };

struct PartyFailure {
    PartyResult result = PartyResult::clean;
    int component = -1;
};

// Decode every bit process of one color class against the party's parity
// functionals. All components share the coset structure (the nullspace of
// the functional matrix); only the surprisal table differs.
PartyFailure decode_party(std::size_t n, const std::vector<gf2::Row>& funcs,
                          const std::vector<std::array<double, 2>>& margs,
                          const std::vector<std::vector<std::uint8_t>>& truth_bits,
                          double delta, int budget_log2) {
    PartyFailure fail;
    if (margs.empty()) return fail;  // color class is empty, nothing to decode
    std::vector<double> lo(margs.size()), hi(margs.size());
    std::vector<std::array<double, 2>> cost(margs.size());
    for (std::size_t comp = 0; comp < margs.size(); ++comp) {
        double h = stats::h2(margs[comp][0]);
        lo[comp] = static_cast<double>(n) * (h - delta);
        hi[comp] = static_cast<double>(n) * (h + delta);
        cost[comp] = {bit_cost(margs[comp][0]), bit_cost(margs[comp][1])};

        double c = 0;
        bool infinite = false;
        for (std::uint8_t b : truth_bits[comp]) {
            double add = cost[comp][b];
            if (add == kInf) infinite = true;
            c += add == kInf ? 0.0 : add;
        }
        if (infinite || !(c > lo[comp] && c < hi[comp])) {
            fail.result = PartyResult::outside;
            fail.component = static_cast<int>(comp);
            return fail;
        }
    }

    if (static_cast<double>(n) - static_cast<double>(funcs.size()) >
        static_cast<double>(budget_log2)) {
        fail.result = PartyResult::unresolved;
        return fail;
    }
    gf2::Matrix m(0, n);
    for (const gf2::Row& f : funcs)
        if (f.any()) m.append_row(f);
    std::vector<gf2::Row> basis = m.nullspace_basis();
    if (basis.size() > static_cast<std::size_t>(budget_log2)) {
        fail.result = PartyResult::unresolved;
        return fail;
    }
    std::vector<std::vector<std::size_t>> affected(basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t t = 0; t < n; ++t)
            if (basis[b].get(t)) affected[b].push_back(t);

    for (std::size_t comp = 0; comp < margs.size(); ++comp) {
        std::vector<std::uint8_t> bits = truth_bits[comp];
        double finite = 0;
        int infinite = 0;
        for (std::uint8_t b : bits) finite += cost[comp][b];
        const std::uint64_t total = std::uint64_t{1} << basis.size();
        for (std::uint64_t g = 1; g < total; ++g) {
            std::size_t b = static_cast<std::size_t>(std::countr_zero(g));
            for (std::size_t t : affected[b]) {
                double old_c = cost[comp][bits[t]];
                if (old_c == kInf)
                    --infinite;
                else
                    finite -= old_c;
                bits[t] ^= 1;
                double new_c = cost[comp][bits[t]];
                if (new_c == kInf)
                    ++infinite;
                else
                    finite += new_c;
            }
            if (infinite == 0 && finite > lo[comp] && finite < hi[comp]) {
                fail.result = PartyResult::ambiguous;
                fail.component = static_cast<int>(comp);
                return fail;
            }
        }
    }
    return fail;
}

}  // namespace

Outcome run_protocol(const Config& cfg, const graph::TwoColorable& g,
                     std::span<const double> lambda, Rng& rng) {
    const std::size_t n_a = g.n_a(), n_b = g.n_b();
    if (lambda.size() != std::size_t{1} << g.vertices())
        throw std::invalid_argument("label distribution has wrong length");
    double sum = 0;
    for (double v : lambda) {
        if (!(v >= 0.0)) throw std::invalid_argument("label probability negative or NaN");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("label distribution does not sum to 1");

    const std::vector<double> lam = graph::mix_identity(lambda, cfg.eps_mix);
    const graph::Marginals marg = graph::marginals(lam, n_a, n_b);
    const double delta = cfg.resolved_delta();

    Outcome out;
    out.yield = yield(static_cast<double>(cfg.n), marg, delta);

    std::size_t pe_n = cfg.pe_copies();
    if (cfg.pe_enabled && pe_n > 0) {
        std::vector<double> freq(lam.size(), 0.0);
        for (std::size_t i = 0; i < pe_n; ++i) {
            graph::GraphLabel l = graph::sample_label(lam, n_a, n_b, rng);
            freq[graph::label_index(l, n_a, n_b)] += 1.0;
        }
        double dev = 0;
        for (std::size_t x = 0; x < lam.size(); ++x)
            dev = std::max(dev, std::abs(freq[x] / static_cast<double>(pe_n) - lam[x]));
        out.pe_max_deviation = dev;
        if (dev > cfg.pe_eta) {
            out.branch = hashing::Branch::aborted;
            out.cause = hashing::Cause::pe_reject;
            return out;
        }
    }

    std::vector<graph::GraphLabel> copies(cfg.n);
    for (graph::GraphLabel& c : copies) c = graph::sample_label(lam, n_a, n_b, rng);
    const std::vector<graph::GraphLabel> truth = copies;

    std::vector<gf2::Row> mu_row, nu_row;
    mu_row.reserve(cfg.n);
    nu_row.reserve(cfg.n);
    for (std::size_t c = 0; c < cfg.n; ++c) {
        gf2::Row r(cfg.n);
        r.set(c, true);
        mu_row.push_back(r);
        nu_row.push_back(std::move(r));
    }

    RoundQuotas quotas = default_quotas(cfg, marg);
    std::vector<gf2::Row> p1_funcs, p2_funcs;
    std::size_t done1 = 0, done2 = 0;
    std::vector<std::size_t> members;
    const std::size_t total_rounds = quotas.p1 + quotas.p2;
    for (std::size_t r = 0; r < total_rounds && !copies.empty(); ++r) {
        bool run_p1 = (r % 2 == 0) ? done1 < quotas.p1 : done2 >= quotas.p2;
        (run_p1 ? done1 : done2) += 1;

        members.clear();
        for (std::size_t c = 0; c < copies.size(); ++c)
            if (rng.below(2) == 1) members.push_back(c);
        if (members.empty()) continue;  // empty subset, the round is spent

        std::size_t tgt = members[0];
        for (std::size_t idx = 1; idx < members.size(); ++idx) {
            std::size_t mc = members[idx];
            if (run_p1) {
                graph::u1_apply(copies[mc], copies[tgt]);
                nu_row[mc] ^= nu_row[tgt];
                mu_row[tgt] ^= mu_row[mc];
            } else {
                graph::u2_apply(copies[mc], copies[tgt]);
                mu_row[mc] ^= mu_row[tgt];
                nu_row[tgt] ^= nu_row[mc];
            }
        }
        if (run_p1) {
            graph::ReadoutOutcome ro = graph::m1_readout(g, copies[tgt], rng);
            (void)graph::mu_from_m1(g, ro);
            p1_funcs.push_back(mu_row[tgt]);
        } else {
            graph::ReadoutOutcome ro = graph::m2_readout(g, copies[tgt], rng);
            (void)graph::nu_from_m2(g, ro);
            p2_funcs.push_back(nu_row[tgt]);
        }
        auto at = static_cast<std::ptrdiff_t>(tgt);
        copies.erase(copies.begin() + at);
        mu_row.erase(mu_row.begin() + at);
        nu_row.erase(nu_row.begin() + at);
    }

    auto extract_bits = [&](bool use_mu, std::size_t comp) {
        std::vector<std::uint8_t> bits(cfg.n);
        for (std::size_t t = 0; t < cfg.n; ++t)
            bits[t] = static_cast<std::uint8_t>(
                ((use_mu ? truth[t].mu : truth[t].nu) >> comp) & 1u);
        return bits;
    };
    std::vector<std::vector<std::uint8_t>> truth_a(n_a), truth_b(n_b);
    for (std::size_t i = 0; i < n_a; ++i) truth_a[i] = extract_bits(true, i);
    for (std::size_t j = 0; j < n_b; ++j) truth_b[j] = extract_bits(false, j);

    PartyFailure f1 = decode_party(cfg.n, p1_funcs, marg.a, truth_a, delta,
                                   cfg.decode_budget_log2);
    PartyFailure f2 = f1.result == PartyResult::outside ||
                              f1.result == PartyResult::ambiguous
                          ? PartyFailure{}
                          : decode_party(cfg.n, p2_funcs, marg.b, truth_b, delta,
                                         cfg.decode_budget_log2);

    auto classify = [&](const PartyFailure& f, int offset) {
        switch (f.result) {
            case PartyResult::clean:
                break;
            case PartyResult::unresolved:
                out.ambiguity_unresolved = true;
                break;
            case PartyResult::outside:
                out.branch = hashing::Branch::error;
                out.cause = hashing::Cause::outside_likely;
                out.failed_component = offset + f.component;
                break;
            case PartyResult::ambiguous:
                out.branch = hashing::Branch::error;
                out.cause = hashing::Cause::ambiguous;
                out.failed_component = offset + f.component;
                break;
        }
    };
    classify(f1, 0);
    if (out.branch != hashing::Branch::error) classify(f2, static_cast<int>(n_a));
    return out;
}

hashing::MonteCarloResult monte_carlo(const Config& cfg, const graph::TwoColorable& g,
                                      std::span<const double> lambda,
                                      std::uint64_t trials, std::uint64_t seed,
                                      unsigned threads,
                                      std::vector<Outcome>* transcript) {
    cfg.resolved_delta();
    if (threads == 0) threads = hashing::default_thread_count();
    threads = static_cast<unsigned>(std::min<std::uint64_t>(
        std::max(1u, threads), std::max<std::uint64_t>(trials, 1)));

    if (transcript) transcript->assign(trials, Outcome{});
    std::vector<double> deviations(trials, 0.0);

    struct Counts {
        std::uint64_t aborted = 0, ok = 0, errors = 0;
        std::uint64_t outside = 0, ambiguous = 0, unresolved = 0;
    };
    std::vector<Counts> partial(threads);

    auto work = [&](unsigned w) {
        Counts& c = partial[w];
        for (std::uint64_t t = w; t < trials; t += threads) {
            Rng rng(derive_seed(seed, t));
            Outcome o = run_protocol(cfg, g, lambda, rng);
            deviations[t] = o.pe_max_deviation;
            switch (o.branch) {
                case hashing::Branch::aborted:
                    ++c.aborted;
                    break;
                case hashing::Branch::ok:
                    ++c.ok;
                    if (o.ambiguity_unresolved) ++c.unresolved;
                    break;
                case hashing::Branch::error:
                    ++c.errors;
                    if (o.cause == hashing::Cause::outside_likely) ++c.outside;
                    if (o.cause == hashing::Cause::ambiguous) ++c.ambiguous;
                    break;
            }
            if (transcript) (*transcript)[t] = o;
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }

    hashing::MonteCarloResult r;
    r.trials = trials;
    for (const Counts& c : partial) {
        r.aborted += c.aborted;
        r.ok += c.ok;
        r.errors += c.errors;
        r.outside_likely += c.outside;
        r.ambiguous += c.ambiguous;
        r.unresolved += c.unresolved;
    }
    double sum = 0;
    for (double v : deviations) sum += v;
    r.mean_pe_statistic = trials ? sum / static_cast<double>(trials) : 0.0;
    return r;
}

}  // namespace enthash::multi
