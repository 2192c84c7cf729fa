#include "enthash/hashing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "enthash/bounds.hpp"

namespace enthash::hashing {

Ensemble sample_ensemble(const BellDiagonal& state, std::size_t n, Rng& rng) {
    Ensemble out(n);
    for (BellLabel& l : out) {
        double u = rng.uniform();
        double acc = 0;
        int idx = 3;
        for (int x = 0; x < 4; ++x) {
            acc += state.p[static_cast<std::size_t>(x)];
            if (u < acc) {
                idx = x;
                break;
            }
        }
        l = BellLabel::from_index(idx);
    }
    return out;
}

SymbolicFrame SymbolicFrame::identity(std::size_t n) {
    SymbolicFrame f;
    f.phase.reserve(n);
    f.amp.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        gf2::Row ph(2 * n), am(2 * n);
        ph.set(2 * t, true);
        am.set(2 * t + 1, true);
        f.phase.push_back(std::move(ph));
        f.amp.push_back(std::move(am));
    }
    return f;
}

ParityRound run_round(Ensemble& pairs, std::span<const std::uint8_t> symbols,
                      SymbolicFrame* frame) {
    if (symbols.size() != pairs.size())
        throw std::invalid_argument("one symbol per surviving pair required");
    ParityRound round;
    std::size_t target = npos;
    for (std::size_t t = 0; t < symbols.size(); ++t) {
        if (symbols[t] != 0) {
            target = t;
            break;
        }
    }
    if (target == npos) return round;  // every pair sat out

    for (std::size_t t = 0; t < pairs.size(); ++t) {
        int s = symbols[t];
        if (s == 0) continue;
        pairs[t] = symbol_op(s, pairs[t]);
        if (frame) {
            if (s == 2) std::swap(frame->phase[t], frame->amp[t]);
            if (s == 3) frame->amp[t] ^= frame->phase[t];
        }
    }
    // The folds commute: a member's amplitude and the target's phase are
    // both left alone by every CNOT of the round.
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        if (t == target || symbols[t] == 0) continue;
        auto [member, tgt] = bilateral_cnot(pairs[t], pairs[target]);
        pairs[t] = member;
        pairs[target] = tgt;
        if (frame) {
            frame->phase[t] ^= frame->phase[target];
            frame->amp[target] ^= frame->amp[t];
        }
    }

    round.target_index = target;
    round.measured_parity = pairs[target].amplitude;
    if (frame) {
        round.functional = frame->amp[target];
        frame->phase.erase(frame->phase.begin() + static_cast<std::ptrdiff_t>(target));
        frame->amp.erase(frame->amp.begin() + static_cast<std::ptrdiff_t>(target));
    }
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(target));
    return round;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Surprisal sum that survives labels of probability zero: infinities are
// counted, not added, so removing one again cannot produce NaN.
struct RunningCost {
    double finite = 0;
    int infinite = 0;

    void add(double c) {
        if (c == kInf)
            ++infinite;
        else
            finite += c;
    }
    void remove(double c) {
        if (c == kInf)
            --infinite;
        else
            finite -= c;
    }
    bool within(double lo, double hi) const {
        return infinite == 0 && finite > lo && finite < hi;
    }
};

struct CostTable {
    std::array<double, 4> bits{};
    double min_finite = kInf;
    double max_finite = 0;

    explicit CostTable(const BellDiagonal& state) {
        for (int x = 0; x < 4; ++x) {
            double p = state.p[static_cast<std::size_t>(x)];
            bits[static_cast<std::size_t>(x)] = p > 0 ? -std::log2(p) : kInf;
            if (p > 0) {
                min_finite = std::min(min_finite, bits[static_cast<std::size_t>(x)]);
                max_finite = std::max(max_finite, bits[static_cast<std::size_t>(x)]);
            }
        }
    }
};

struct DfsSearch {
    std::size_t n;
    const CostTable& cost;
    double lo, hi;
    const std::vector<const gf2::Row*>& funcs;
    const std::vector<int>& measured;
    std::vector<std::vector<std::size_t>> touched_by;   // rounds with bits on pair t
    std::vector<std::vector<std::size_t>> finalized_at; // rounds decided after pair t
    std::vector<std::uint8_t> acc;
    std::vector<BellLabel> assignment;
    std::uint64_t visited = 0;
    std::uint64_t budget;
    int found = 0;
    bool exceeded = false;

    DfsSearch(std::size_t n_, const CostTable& cost_, double lo_, double hi_,
              const std::vector<const gf2::Row*>& funcs_,
              const std::vector<int>& measured_, std::uint64_t budget_)
        : n(n_), cost(cost_), lo(lo_), hi(hi_), funcs(funcs_), measured(measured_),
          touched_by(n_), finalized_at(n_), acc(funcs_.size(), 0), assignment(n_),
          budget(budget_) {
        for (std::size_t r = 0; r < funcs.size(); ++r) {
            std::size_t last = 0;
            bool touches = false;
            for (std::size_t t = 0; t < n; ++t) {
                if (funcs[r]->get(2 * t) || funcs[r]->get(2 * t + 1)) {
                    touched_by[t].push_back(r);
                    last = t;
                    touches = true;
                }
            }
            // A parity over no bits must read 0; filtered by the caller.
            finalized_at[touches ? last : 0].push_back(r);
        }
    }

    void run() { descend(0, 0.0); }

    void descend(std::size_t depth, double partial) {
        if (exceeded || found >= 2) return;
        if (++visited > budget) {
            exceeded = true;
            return;
        }
        if (depth == n) {
            ++found;
            return;
        }
        double slack = static_cast<double>(n - depth - 1);
        for (int x = 0; x < 4; ++x) {
            double c = cost.bits[static_cast<std::size_t>(x)];
            if (c == kInf) continue;
            double next = partial + c;
            if (next + slack * cost.min_finite >= hi) continue;
            if (next + slack * cost.max_finite <= lo) continue;
            BellLabel l = BellLabel::from_index(x);
            assignment[depth] = l;
            bool ok = true;
            for (std::size_t r : touched_by[depth]) {
                std::uint8_t bit = 0;
                if (funcs[r]->get(2 * depth)) bit ^= l.phase;
                if (funcs[r]->get(2 * depth + 1)) bit ^= l.amplitude;
                acc[r] ^= bit;
            }
            for (std::size_t r : finalized_at[depth])
                if (acc[r] != measured[r]) {
                    ok = false;
                    break;
                }
            if (ok) descend(depth + 1, next);
            for (std::size_t r : touched_by[depth]) {
                std::uint8_t bit = 0;
                if (funcs[r]->get(2 * depth)) bit ^= l.phase;
                if (funcs[r]->get(2 * depth + 1)) bit ^= l.amplitude;
                acc[r] ^= bit;
            }
            if (exceeded || found >= 2) return;
        }
    }
};

}  // namespace

DecodeResult decode(const std::vector<ParityRound>& rounds, const BellDiagonal& state,
                    double delta, DecodeMode mode, const std::vector<BellLabel>& truth,
                    int budget_log2) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (budget_log2 < 0 || budget_log2 > 62)
        throw std::invalid_argument("decode budget exponent not in 0..62");
    const std::size_t n = truth.size();
    const CostTable cost(state);
    const double s = shannon_entropy(state.p);
    const double lo = static_cast<double>(n) * (s - delta);
    const double hi = static_cast<double>(n) * (s + delta);

    DecodeResult res;
    RunningCost truth_cost;
    for (BellLabel l : truth) truth_cost.add(cost.bits[static_cast<std::size_t>(l.index())]);
    res.truth_cost_bits = truth_cost.infinite ? kInf : truth_cost.finite;
    if (!truth_cost.within(lo, hi)) {
        res.status = DecodeStatus::outside_likely;
        return res;
    }

    std::vector<const gf2::Row*> funcs;
    std::vector<int> measured;
    std::size_t informative = 0;
    for (const ParityRound& r : rounds) {
        if (r.target_index == npos) continue;
        ++informative;
        if (!r.functional) continue;
        if (!r.functional->any()) continue;  // vacuous parity, always satisfied
        funcs.push_back(&*r.functional);
        measured.push_back(r.measured_parity);
    }

    const std::uint64_t budget = std::uint64_t{1} << budget_log2;

    if (mode == DecodeMode::typical_check) {
        // Coset dimension is at least 2n minus the number of parities; when
        // that alone busts the budget the functionals are not even needed.
        if (2.0 * static_cast<double>(n) - static_cast<double>(informative) >
            static_cast<double>(budget_log2)) {
            res.status = DecodeStatus::budget_exceeded;
            return res;
        }
        if (funcs.size() != informative)
            throw std::invalid_argument("typical check requires tracked functionals");
        gf2::Matrix m(0, 2 * n);
        for (const gf2::Row* f : funcs) m.append_row(*f);
        std::vector<gf2::Row> basis = m.nullspace_basis();
        if (basis.size() > static_cast<std::size_t>(budget_log2)) {
            res.status = DecodeStatus::budget_exceeded;
            return res;
        }

        // Walk truth + span(basis) in Gray-code order, flipping one basis
        // vector per step and keeping the surprisal incremental.
        std::vector<std::vector<std::size_t>> affected(basis.size());
        for (std::size_t b = 0; b < basis.size(); ++b)
            for (std::size_t t = 0; t < n; ++t)
                if (basis[b].get(2 * t) || basis[b].get(2 * t + 1))
                    affected[b].push_back(t);

        std::vector<BellLabel> cand = truth;
        RunningCost cur = truth_cost;
        const std::uint64_t total = std::uint64_t{1} << basis.size();
        for (std::uint64_t g = 1; g < total; ++g) {
            std::size_t b = static_cast<std::size_t>(std::countr_zero(g));
            for (std::size_t t : affected[b]) {
                BellLabel& l = cand[t];
                cur.remove(cost.bits[static_cast<std::size_t>(l.index())]);
                if (basis[b].get(2 * t)) l.phase ^= 1;
                if (basis[b].get(2 * t + 1)) l.amplitude ^= 1;
                cur.add(cost.bits[static_cast<std::size_t>(l.index())]);
            }
            ++res.visited;
            if (cur.within(lo, hi)) {
                res.status = DecodeStatus::ambiguous;
                return res;
            }
            if (res.visited >= budget) {
                res.status = DecodeStatus::budget_exceeded;
                return res;
            }
        }
        res.status = DecodeStatus::unique_match;
        res.decoded = truth;
        return res;
    }

    if (funcs.size() != informative)
        throw std::invalid_argument("exhaustive decode requires tracked functionals");
    DfsSearch dfs(n, cost, lo, hi, funcs, measured, budget);
    dfs.run();
    res.visited = dfs.visited;
    if (dfs.exceeded) {
        res.status = DecodeStatus::budget_exceeded;
        return res;
    }
    if (dfs.found == 0)
        throw std::logic_error("likely truth not rediscovered by exhaustive decode");
    if (dfs.found >= 2) {
        res.status = DecodeStatus::ambiguous;
        return res;
    }
    res.status = DecodeStatus::unique_match;
    res.decoded = truth;
    return res;
}

double ProtocolConfig::resolved_delta() const {
    if (delta) {
        if (!(*delta > 0.0)) throw std::invalid_argument("delta must be positive");
        return *delta;
    }
    return bounds::default_delta(static_cast<double>(n));
}

long long ProtocolConfig::resolved_yield() const {
    return bounds::yield(static_cast<double>(n), window.f_min, resolved_delta());
}

std::size_t ProtocolConfig::resolved_rounds() const {
    if (rounds) return *rounds;
    long long m = std::min<long long>(resolved_yield(), static_cast<long long>(n));
    return n - static_cast<std::size_t>(m);
}

std::size_t ProtocolConfig::pe_pairs() const {
    return static_cast<std::size_t>(std::llround(k * static_cast<double>(n)));
}

Outcome run_protocol(const ProtocolConfig& cfg, const BellDiagonal& state, Rng& rng) {
    BellDiagonal st = state;
    st.validate();
    Outcome out;
    out.yield = cfg.resolved_yield();

    std::size_t pe_n = cfg.pe_pairs();
    if (pe_n >= 2) {
        Ensemble pe_block = sample_ensemble(st, pe_n, rng);
        out.pe_mean = pe::estimate(pe_block);
        if (!cfg.window.accepts(out.pe_mean, cfg.pe_mode)) {
            out.branch = Branch::aborted;
            out.cause = Cause::pe_reject;
            return out;
        }
    }

    Ensemble block = sample_ensemble(st, cfg.n, rng);
    const std::vector<BellLabel> truth = block;
    const std::size_t round_quota = cfg.resolved_rounds();

    // When the typical check is certain to bust its budget (the coset has
    // dimension at least 2n - rounds) there is no point carrying 2n-bit
    // functionals through every round.
    bool track = true;
    if (cfg.decode_mode == DecodeMode::typical_check &&
        2.0 * static_cast<double>(cfg.n) - static_cast<double>(round_quota) >
            static_cast<double>(cfg.decode_budget_log2))
        track = false;

    SymbolicFrame frame;
    if (track) frame = SymbolicFrame::identity(cfg.n);
    std::vector<ParityRound> rounds;
    rounds.reserve(round_quota);
    std::vector<std::uint8_t> symbols;
    for (std::size_t r = 0; r < round_quota && !block.empty(); ++r) {
        symbols.resize(block.size());
        for (std::uint8_t& sym : symbols)
            sym = static_cast<std::uint8_t>(rng.below(4));
        rounds.push_back(run_round(block, symbols, track ? &frame : nullptr));
    }

    DecodeResult dec = decode(rounds, st, cfg.resolved_delta(), cfg.decode_mode, truth,
                              cfg.decode_budget_log2);
    out.truth_cost_bits = dec.truth_cost_bits;
    out.decode_visited = dec.visited;
    switch (dec.status) {
        case DecodeStatus::unique_match:
            out.branch = Branch::ok;
            break;
        case DecodeStatus::budget_exceeded:
            out.branch = Branch::ok;
            out.ambiguity_unresolved = true;
            break;
        case DecodeStatus::outside_likely:
            out.branch = Branch::error;
            out.cause = Cause::outside_likely;
            break;
        case DecodeStatus::ambiguous:
            out.branch = Branch::error;
            out.cause = Cause::ambiguous;
            break;
    }
    return out;
}

double MonteCarloResult::accept_rate() const {
    return trials ? static_cast<double>(accepted()) / static_cast<double>(trials) : 0.0;
}

double MonteCarloResult::error_rate_given_accept() const {
    std::uint64_t acc = accepted();
    return acc ? static_cast<double>(errors) / static_cast<double>(acc) : 0.0;
}

MonteCarloResult monte_carlo(const ProtocolConfig& cfg, const BellDiagonal& state,
                             std::uint64_t trials, std::uint64_t seed, unsigned threads,
                             std::vector<Outcome>* transcript) {
    // Fail fast on configuration errors before any thread starts.
    cfg.resolved_rounds();
    BellDiagonal st = state;
    st.validate();

    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(std::max(1u, threads), std::max<std::uint64_t>(trials, 1)));

    if (transcript) transcript->assign(trials, Outcome{});
    std::vector<double> pe_stats(trials, 0.0);

    struct Counts {
        std::uint64_t aborted = 0, ok = 0, errors = 0;
        std::uint64_t outside = 0, ambiguous = 0, unresolved = 0;
    };
    std::vector<Counts> partial(threads);

    auto work = [&](unsigned w) {
        Counts& c = partial[w];
        for (std::uint64_t t = w; t < trials; t += threads) {
            Rng rng(derive_seed(seed, t));
            Outcome o = run_protocol(cfg, st, rng);
            pe_stats[t] = o.pe_mean;
            switch (o.branch) {
                case Branch::aborted:
                    ++c.aborted;
                    break;
                case Branch::ok:
                    ++c.ok;
                    if (o.ambiguity_unresolved) ++c.unresolved;
                    break;
                case Branch::error:
                    ++c.errors;
                    if (o.cause == Cause::outside_likely) ++c.outside;
                    if (o.cause == Cause::ambiguous) ++c.ambiguous;
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

    MonteCarloResult r;
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
    for (double v : pe_stats) sum += v;  // trial order, so threading cannot skew it
    r.mean_pe_statistic = trials ? sum / static_cast<double>(trials) : 0.0;
    return r;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("ENTHASH_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace enthash::hashing
