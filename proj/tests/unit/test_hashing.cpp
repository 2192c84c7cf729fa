#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "enthash/hashing.hpp"

using namespace enthash;
using hashing::Ensemble;

namespace {

// Parity of a round functional against the initial labels.
int apply_functional(const gf2::Row& f, const Ensemble& initial) {
    int acc = 0;
    for (std::size_t t = 0; t < initial.size(); ++t) {
        if (f.get(2 * t)) acc ^= initial[t].phase;
        if (f.get(2 * t + 1)) acc ^= initial[t].amplitude;
    }
    return acc;
}

}  // namespace

TEST_CASE("sample ensemble frequencies") {
    BellDiagonal state{{0.55, 0.25, 0.15, 0.05}};
    Rng rng(11);
    Ensemble e = hashing::sample_ensemble(state, 200000, rng);
    REQUIRE(e.size() == 200000);
    std::array<double, 4> freq{};
    for (BellLabel l : e) freq[static_cast<std::size_t>(l.index())] += 1.0;
    for (int i = 0; i < 4; ++i) {
        double p = state.p[static_cast<std::size_t>(i)];
        double sigma = std::sqrt(p * (1.0 - p) / 200000.0);
        CHECK(std::fabs(freq[static_cast<std::size_t>(i)] / 200000.0 - p) <= 5.0 * sigma);
    }
}

TEST_CASE("one round by hand") {
    Ensemble pairs{{0, 0}, {1, 1}, {0, 1}};
    std::vector<std::uint8_t> symbols{0, 2, 3};
    hashing::SymbolicFrame frame = hashing::SymbolicFrame::identity(3);
    hashing::ParityRound r = hashing::run_round(pairs, symbols, &frame);

    CHECK(r.target_index == 1);
    // select_bit: symbol 2 on (1,1) reads phase 1; symbol 3 on (0,1) reads 1
    CHECK(r.measured_parity == 0);
    REQUIRE(r.functional.has_value());
    // the functional names the same bits: phase of pair 1, phase+amp of pair 2
    gf2::Row want(6);
    want.set(2, true);
    want.set(4, true);
    want.set(5, true);
    CHECK(*r.functional == want);

    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == BellLabel{0, 0});  // sat out
    // participant (0,1): symbol 3 keeps it at (0,1); fold onto the rotated
    // target flips its phase by the target's phase bit
    CHECK(pairs[1] == BellLabel{1, 1});
}

TEST_CASE("all-zero symbols are a no-op") {
    Ensemble pairs{{1, 0}, {0, 1}};
    std::vector<std::uint8_t> symbols{0, 0};
    hashing::ParityRound r = hashing::run_round(pairs, symbols, nullptr);
    CHECK(r.target_index == hashing::npos);
    CHECK(r.measured_parity == -1);
    CHECK(!r.functional.has_value());
    CHECK(pairs.size() == 2);
}

TEST_CASE("round parity equals the selected-bit XOR") {
    Rng rng(77);
    for (int iter = 0; iter < 500; ++iter) {
        std::size_t n = 2 + rng.below(7);
        Ensemble pairs;
        for (std::size_t t = 0; t < n; ++t)
            pairs.push_back(BellLabel::from_index(static_cast<int>(rng.below(4))));
        Ensemble initial = pairs;
        std::vector<std::uint8_t> symbols;
        for (std::size_t t = 0; t < n; ++t)
            symbols.push_back(static_cast<std::uint8_t>(rng.below(4)));

        hashing::SymbolicFrame frame = hashing::SymbolicFrame::identity(n);
        hashing::ParityRound r = hashing::run_round(pairs, symbols, &frame);

        int want = 0;
        bool any = false;
        for (std::size_t t = 0; t < n; ++t)
            if (auto bit = select_bit(symbols[t], initial[t])) {
                want ^= *bit;
                any = true;
            }
        if (!any) {
            CHECK(r.target_index == hashing::npos);
            continue;
        }
        CHECK(r.measured_parity == want);
        REQUIRE(r.functional.has_value());
        CHECK(apply_functional(*r.functional, initial) == r.measured_parity);
    }
}

TEST_CASE("rounds act linearly on initial labels") {
    // run the same symbol schedule on e1, e2, and their label-wise XOR;
    // every measured parity XORs accordingly
    Rng rng(31);
    const std::size_t n = 12;
    for (int iter = 0; iter < 50; ++iter) {
        Ensemble e1, e2, e3;
        for (std::size_t t = 0; t < n; ++t) {
            BellLabel a = BellLabel::from_index(static_cast<int>(rng.below(4)));
            BellLabel b = BellLabel::from_index(static_cast<int>(rng.below(4)));
            e1.push_back(a);
            e2.push_back(b);
            e3.push_back(BellLabel{static_cast<std::uint8_t>(a.phase ^ b.phase),
                                   static_cast<std::uint8_t>(a.amplitude ^ b.amplitude)});
        }
        for (int round = 0; round < 6; ++round) {
            std::size_t sz = e1.size();
            if (sz == 0) break;
            std::vector<std::uint8_t> symbols;
            for (std::size_t t = 0; t < sz; ++t)
                symbols.push_back(static_cast<std::uint8_t>(rng.below(4)));
            hashing::ParityRound r1 = hashing::run_round(e1, symbols, nullptr);
            hashing::ParityRound r2 = hashing::run_round(e2, symbols, nullptr);
            hashing::ParityRound r3 = hashing::run_round(e3, symbols, nullptr);
            CHECK(r1.target_index == r2.target_index);
            CHECK(r1.target_index == r3.target_index);
            if (r1.target_index == hashing::npos) continue;
            CHECK((r1.measured_parity ^ r2.measured_parity) == r3.measured_parity);
        }
    }
}

TEST_CASE("decode on a pure ensemble") {
    BellDiagonal pure{{1.0, 0.0, 0.0, 0.0}};
    std::vector<BellLabel> truth(12, BellLabel{0, 0});
    std::vector<hashing::ParityRound> rounds;  // nothing measured
    hashing::DecodeResult r = hashing::decode(rounds, pure, 0.3,
                                              hashing::DecodeMode::exhaustive,
                                              truth, 20);
    // p = 0 labels carry infinite surprisal, so the likely set is a single point
    CHECK(r.status == hashing::DecodeStatus::unique_match);
    REQUIRE(r.decoded.has_value());
    CHECK(*r.decoded == truth);
    CHECK(r.truth_cost_bits == doctest::Approx(0.0));
}

TEST_CASE("decode flags an atypical truth") {
    // all-clean labels under werner(0.5) cost 12 bits, far below n S = 21.5
    BellDiagonal state = werner(0.5);
    std::vector<BellLabel> truth(12, BellLabel{0, 0});
    std::vector<hashing::ParityRound> rounds;
    for (auto mode : {hashing::DecodeMode::exhaustive, hashing::DecodeMode::typical_check}) {
        hashing::DecodeResult r = hashing::decode(rounds, state, 0.1, mode, truth, 20);
        CHECK(r.status == hashing::DecodeStatus::outside_likely);
    }
}

TEST_CASE("decode budget") {
    BellDiagonal state = werner(0.95);
    Rng rng(5);
    std::vector<BellLabel> truth = hashing::sample_ensemble(state, 12, rng);
    std::vector<hashing::ParityRound> rounds;
    // 2n unknown bits against no parities exceeds a budget of 2^3
    hashing::DecodeResult r = hashing::decode(rounds, state, 3.0,
                                              hashing::DecodeMode::typical_check,
                                              truth, 3);
    // either the truth is atypical or the coset is too large to walk
    bool budget_or_outside = r.status == hashing::DecodeStatus::budget_exceeded ||
                             r.status == hashing::DecodeStatus::outside_likely;
    CHECK(budget_or_outside);
    CHECK_THROWS_AS((void)hashing::decode(rounds, state, 0.5,
                                          hashing::DecodeMode::typical_check,
                                          truth, 70),
                    std::invalid_argument);
}

TEST_CASE("decode modes agree end to end") {
    // run the full parity collection, then decode the same transcript both
    // ways; statuses must match and unique decodes must equal the truth
    BellDiagonal state = werner(0.95);
    const std::size_t n = 12;
    const double delta = 0.25;
    int uniques = 0, outsides = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        Rng rng(derive_seed(909, trial));
        Ensemble pairs = hashing::sample_ensemble(state, n, rng);
        Ensemble initial = pairs;
        hashing::SymbolicFrame frame = hashing::SymbolicFrame::identity(n);
        std::vector<hashing::ParityRound> rounds;
        for (std::size_t round = 0; round < n - 1 && !pairs.empty(); ++round) {
            std::vector<std::uint8_t> symbols;
            for (std::size_t t = 0; t < pairs.size(); ++t)
                symbols.push_back(static_cast<std::uint8_t>(rng.below(4)));
            rounds.push_back(hashing::run_round(pairs, symbols, &frame));
        }
        hashing::DecodeResult ex = hashing::decode(
            rounds, state, delta, hashing::DecodeMode::exhaustive, initial, 22);
        hashing::DecodeResult ty = hashing::decode(
            rounds, state, delta, hashing::DecodeMode::typical_check, initial, 22);
        CHECK(ex.status == ty.status);
        CHECK(ex.truth_cost_bits == doctest::Approx(ty.truth_cost_bits).epsilon(1e-12));
        if (ex.status == hashing::DecodeStatus::unique_match) {
            ++uniques;
            REQUIRE(ex.decoded.has_value());
            REQUIRE(ty.decoded.has_value());
            CHECK(*ex.decoded == initial);
            CHECK(*ty.decoded == initial);
        }
        if (ex.status == hashing::DecodeStatus::outside_likely) ++outsides;
    }
    // both classes occur at these settings
    CHECK(uniques > 0);
    CHECK(outsides > 0);
}

TEST_CASE("protocol aborts on a bad block") {
    hashing::ProtocolConfig cfg;
    cfg.n = 20;
    cfg.k = 5.0;
    cfg.window = pe::Window::promise(0.925, 0.975);
    Rng rng(4);
    hashing::Outcome out = hashing::run_protocol(cfg, werner(0.5), rng);
    CHECK(out.branch == hashing::Branch::aborted);
    CHECK(out.cause == hashing::Cause::pe_reject);
}

TEST_CASE("config resolution") {
    hashing::ProtocolConfig cfg;
    cfg.n = 4096;
    cfg.k = 1.0;
    cfg.window = pe::Window::promise(0.95, 0.99);
    CHECK(cfg.resolved_delta() == doctest::Approx(std::pow(4096.0, -0.2)).epsilon(1e-15));
    // yield prices entropy at the promise edge f_min = 0.95
    CHECK(cfg.resolved_yield() == 1046);
    CHECK(cfg.resolved_rounds() == 3050);
    CHECK(cfg.pe_pairs() == 4096);

    cfg.delta = 0.45;  // drives the yield negative; rounds fall back to n
    CHECK(cfg.resolved_yield() == 0);
    CHECK(cfg.resolved_rounds() == 4096);

    cfg.delta.reset();
    cfg.rounds = 7;
    CHECK(cfg.resolved_rounds() == 7);
}

TEST_CASE("monte carlo is thread-count invariant") {
    hashing::ProtocolConfig cfg;
    cfg.n = 16;
    // 16 PE samples: the acceptance band must contain reachable sample means
    cfg.k = 2.0;
    cfg.window = pe::Window::promise(0.85, 1.0);
    cfg.delta = 0.25;
    cfg.decode_mode = hashing::DecodeMode::exhaustive;
    BellDiagonal state = werner(0.95);

    std::vector<hashing::Outcome> t1, t4;
    hashing::MonteCarloResult r1 = hashing::monte_carlo(cfg, state, 64, 123, 1, &t1);
    hashing::MonteCarloResult r4 = hashing::monte_carlo(cfg, state, 64, 123, 4, &t4);

    CHECK(r1.trials == 64);
    CHECK(r1.aborted == r4.aborted);
    CHECK(r1.ok == r4.ok);
    CHECK(r1.errors == r4.errors);
    CHECK(r1.unresolved == r4.unresolved);
    CHECK(r1.mean_pe_statistic == r4.mean_pe_statistic);  // bitwise: same sum order
    REQUIRE(t1.size() == 64);
    REQUIRE(t4.size() == 64);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(t1[i].branch == t4[i].branch);
        CHECK(t1[i].cause == t4[i].cause);
        CHECK(t1[i].pe_mean == t4[i].pe_mean);
        CHECK(t1[i].truth_cost_bits == t4[i].truth_cost_bits);
    }
    CHECK(r1.trials == r1.aborted + r1.ok + r1.errors);
}

TEST_CASE("monte carlo rates") {
    hashing::MonteCarloResult r;
    r.trials = 100;
    r.aborted = 20;
    r.ok = 78;
    r.errors = 2;
    CHECK(r.accepted() == 80);
    CHECK(r.accept_rate() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(r.error_rate_given_accept() == doctest::Approx(0.025).epsilon(1e-15));
}
