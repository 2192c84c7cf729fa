#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "enthash/bell.hpp"
#include "enthash/gf2.hpp"
#include "enthash/param_est.hpp"
#include "enthash/rng.hpp"

namespace enthash::hashing {

using Ensemble = std::vector<BellLabel>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Draw n iid labels from a Bell-diagonal distribution.
Ensemble sample_ensemble(const BellDiagonal& state, std::size_t n, Rng& rng);

// Linear view of the current pairs' labels over the initial label bits
// (bit 2t = phase of initial pair t, bit 2t + 1 = its amplitude). Rounds
// act GF(2)-linearly, so each current bit stays an XOR of initial bits;
// the rows here are those functionals.
struct SymbolicFrame {
    std::vector<gf2::Row> phase;
    std::vector<gf2::Row> amp;

    static SymbolicFrame identity(std::size_t n);
};

// Record of one parity-collection round.
struct ParityRound {
    std::size_t target_index = npos;     // pre-round position; npos when all
                                         // symbols were zero (no-op round)
    int measured_parity = -1;            // -1 on a no-op round
    std::optional<gf2::Row> functional;  // parity as XOR of initial bits,
                                         // present when a frame was tracked
};

// Execute one round on the surviving pairs. symbols has one entry in
// {0,1,2,3} per pair; pairs with symbol 0 sit out. The first participating
// pair becomes the target: every participant is rotated by symbol_op, the
// others are folded onto the target with bilateral CNOTs, and the target's
// Z(x)Z parity is measured and the pair discarded. The outcome equals the
// XOR of select_bit(symbol, label-at-round-start) over participants.
// When frame is non-null it is updated in lockstep and the round's parity
// functional is recorded.
ParityRound run_round(Ensemble& pairs, std::span<const std::uint8_t> symbols,
                      SymbolicFrame* frame);

enum class DecodeMode { exhaustive, typical_check };

enum class DecodeStatus {
    unique_match,    // truth is likely and no other likely string fits
    outside_likely,  // the realized labels fall outside the likely set
    ambiguous,       // a second likely string matches every parity
    budget_exceeded, // truth is likely; uniqueness too costly to certify
};

struct DecodeResult {
    DecodeStatus status = DecodeStatus::unique_match;
    // Present exactly when status is unique_match; always equals the truth
    // then, since the truth is itself likely and parity-consistent.
    std::optional<std::vector<BellLabel>> decoded;
    double truth_cost_bits = 0;   // surprisal of the realized labels
    std::uint64_t visited = 0;    // search nodes or coset points examined
};

// Identify the realized label string from the collected parities. The
// likely set is every string whose total surprisal lies strictly within
// n * delta bits of n * S; p = 0 labels carry infinite surprisal and are
// excluded outright.
//   exhaustive:    depth-first search of the likely set under incremental
//                  parity and surprisal pruning, stopping at the second
//                  consistent string.
//   typical_check: membership test for the realized string, then a walk of
//                  the parity-consistent coset (truth + nullspace of the
//                  functional matrix) looking for a second likely string.
// Both stop with budget_exceeded once 2^budget_log2 points are examined or
// the coset dimension alone exceeds budget_log2. No-op rounds are skipped.
DecodeResult decode(const std::vector<ParityRound>& rounds,
                    const BellDiagonal& state, double delta, DecodeMode mode,
                    const std::vector<BellLabel>& truth, int budget_log2);

struct ProtocolConfig {
    std::size_t n = 0;  // hashing block size
    double k = 0;       // PE overhead: round(k * n) extra pairs sacrificed
    pe::Window window;  // promised interval and acceptance window
    pe::Mode pe_mode = pe::Mode::calibrated;
    std::optional<double> delta;         // default n^(-1/5)
    std::optional<std::size_t> rounds;   // default n - yield, all of n when
                                         // the yield is nonpositive
    DecodeMode decode_mode = DecodeMode::typical_check;
    int decode_budget_log2 = 20;

    double resolved_delta() const;
    long long resolved_yield() const;    // never negative
    std::size_t resolved_rounds() const;
    std::size_t pe_pairs() const;        // round(k * n)
};

enum class Branch { aborted, ok, error };
enum class Cause { none, pe_reject, outside_likely, ambiguous };

struct Outcome {
    Branch branch = Branch::ok;
    Cause cause = Cause::none;
    // Set on ok branches whose uniqueness check hit the decode budget: the
    // round count already prices ambiguity at 2^(-n delta), but this trial
    // did not verify it by search.
    bool ambiguity_unresolved = false;
    double pe_mean = 0;        // measured PE statistic (0 when k = 0)
    long long yield = 0;       // configured m
    double truth_cost_bits = 0;
    std::uint64_t decode_visited = 0;
};

// One full protocol execution: sample round(k n) + n pairs, run parameter
// estimation on the sacrificed block (skipped when it has no complete
// sample pair), collect parities over the hashing block, decode against
// the ground truth. Functional tracking is skipped when typical_check is
// guaranteed to exceed its budget, which the round count alone decides.
Outcome run_protocol(const ProtocolConfig& cfg, const BellDiagonal& state,
                     Rng& rng);

struct MonteCarloResult {
    std::uint64_t trials = 0;
    std::uint64_t aborted = 0;
    std::uint64_t ok = 0;
    std::uint64_t errors = 0;
    std::uint64_t outside_likely = 0;
    std::uint64_t ambiguous = 0;
    std::uint64_t unresolved = 0;  // ok trials with ambiguity_unresolved
    double mean_pe_statistic = 0;  // over all trials, abort or not

    std::uint64_t accepted() const { return trials - aborted; }
    double accept_rate() const;
    double error_rate_given_accept() const;
};

// Run trials independent executions. Each trial seeds its own generator
// from (seed, trial index), so results are byte-identical for any thread
// count. transcript, when non-null, receives one Outcome per trial in
// trial order.
MonteCarloResult monte_carlo(const ProtocolConfig& cfg,
                             const BellDiagonal& state, std::uint64_t trials,
                             std::uint64_t seed, unsigned threads,
                             std::vector<Outcome>* transcript = nullptr);

// ENTHASH_THREADS when set and positive, hardware concurrency otherwise.
unsigned default_thread_count();

}  // namespace enthash::hashing
