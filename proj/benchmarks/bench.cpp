#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "enthash/bell.hpp"
#include "enthash/bounds.hpp"
#include "enthash/gf2.hpp"
#include "enthash/graph.hpp"
#include "enthash/hashing.hpp"
#include "enthash/multiparty.hpp"
#include "enthash/oracle.hpp"
#include "enthash/regimes.hpp"
#include "enthash/rng.hpp"
#include "enthash/verify.hpp"

using namespace enthash;

static void BM_SampleEnsemble(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    BellDiagonal w = werner(0.95);
    Rng rng(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(hashing::sample_ensemble(w, n, rng));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SampleEnsemble)->Arg(1024)->Arg(16384);

// family: full execution with the typical-set decoder, PE block included
static void BM_Protocol(benchmark::State& state) {
    hashing::ProtocolConfig cfg;
    cfg.n = static_cast<std::size_t>(state.range(0));
    cfg.k = 0.1;
    cfg.window = pe::Window::promise(0.95, 0.99);
    cfg.decode_mode = hashing::DecodeMode::typical_check;
    BellDiagonal w = werner(0.97);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        Rng rng(derive_seed(7, trial++));
        benchmark::DoNotOptimize(hashing::run_protocol(cfg, w, rng));
    }
}
BENCHMARK(BM_Protocol)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

// desk scale, where the search decoder does real work
static void BM_ProtocolExhaustive(benchmark::State& state) {
    hashing::ProtocolConfig cfg;
    cfg.n = 20;
    cfg.k = 0;
    cfg.window = pe::Window::promise(0.925, 0.975);
    cfg.delta = 0.3;
    cfg.decode_mode = hashing::DecodeMode::exhaustive;
    BellDiagonal w = werner(0.95);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        Rng rng(derive_seed(11, trial++));
        benchmark::DoNotOptimize(hashing::run_protocol(cfg, w, rng));
    }
}
BENCHMARK(BM_ProtocolExhaustive);

static void BM_Nullspace(benchmark::State& state) {
    const std::size_t cols = static_cast<std::size_t>(state.range(0));
    const std::size_t rows = cols * 3 / 4;
    Rng rng(3);
    gf2::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rng.uniform() < 0.5) m.row(r).flip(c);
    for (auto _ : state) benchmark::DoNotOptimize(m.nullspace_basis());
}
BENCHMARK(BM_Nullspace)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

static void BM_BoundsEvaluate(benchmark::State& state) {
    bounds::BoundInputs in;
    in.n = 1e5;
    in.k = 1.0;
    in.f_min = 0.90;
    in.f_max = 0.95;
    auto mode = state.range(0) ? bounds::PostselectMode::exact
                               : bounds::PostselectMode::power;
    for (auto _ : state) benchmark::DoNotOptimize(bounds::evaluate(in, mode));
}
BENCHMARK(BM_BoundsEvaluate)->Arg(0)->Arg(1);

static void BM_RegimeGrid(benchmark::State& state) {
    regimes::GridSpec axis{0.0, 1.0, 1.0 / 199};
    for (auto _ : state)
        benchmark::DoNotOptimize(regimes::classify_grid(axis, axis));
    state.SetItemsProcessed(state.iterations() * 200 * 200);
}
BENCHMARK(BM_RegimeGrid);

static void BM_MultipartyProtocol(benchmark::State& state) {
    graph::TwoColorable star = graph::TwoColorable::from_edges(3, {{0, 1}, {0, 2}});
    std::vector<double> lam(8, 0.0);
    const double p = 0.01;
    for (std::uint32_t idx = 0; idx < 8; ++idx) {
        graph::GraphLabel l = graph::label_from_index(idx, 1, 2);
        double w = (l.mu & 1u) ? p : 1.0 - p;
        for (int b = 0; b < 2; ++b) w *= ((l.nu >> b) & 1u) ? p : 1.0 - p;
        lam[idx] = w;
    }
    multi::Config cfg;
    cfg.n = 64;
    cfg.k = 0.25;
    std::uint64_t trial = 0;
    for (auto _ : state) {
        Rng rng(derive_seed(13, trial++));
        benchmark::DoNotOptimize(multi::run_protocol(cfg, star, lam, rng));
    }
}
BENCHMARK(BM_MultipartyProtocol)->Unit(benchmark::kMicrosecond);

static void BM_OracleSweep(benchmark::State& state) {
    const std::size_t max_vertices = static_cast<std::size_t>(state.range(0));
    oracle::VerifyHooks hooks = oracle::VerifyHooks::production();
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::run_verification(hooks, max_vertices));
}
BENCHMARK(BM_OracleSweep)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
