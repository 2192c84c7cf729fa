#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "enthash/multiparty.hpp"
#include "enthash/stats.hpp"

using namespace enthash;
using graph::GraphLabel;
using graph::TwoColorable;

namespace {

// Product distribution with independent per-vertex flip probabilities.
std::vector<double> product_lambda(const TwoColorable& g, double flip) {
    std::size_t dim = std::size_t{1} << g.vertices();
    std::vector<double> lam(dim, 0.0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        GraphLabel l = graph::label_from_index(idx, g.n_a(), g.n_b());
        double p = 1.0;
        for (std::size_t k = 0; k < g.n_a(); ++k)
            p *= ((l.mu >> k) & 1u) ? flip : 1.0 - flip;
        for (std::size_t k = 0; k < g.n_b(); ++k)
            p *= ((l.nu >> k) & 1u) ? flip : 1.0 - flip;
        lam[idx] = p;
    }
    return lam;
}

}  // namespace

TEST_CASE("entropy ceilings and yield") {
    TwoColorable edge = TwoColorable::from_edges(2, {{0, 1}});
    double pa = stats::h2_inverse(0.3);
    double pb = stats::h2_inverse(0.2);
    std::vector<double> lam(4);
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu)
            lam[graph::label_index(
                GraphLabel{static_cast<std::uint32_t>(mu),
                           static_cast<std::uint32_t>(nu)},
                1, 1)] = (mu ? pa : 1 - pa) * (nu ? pb : 1 - pb);

    graph::Marginals m = graph::marginals(lam, 1, 1);
    CHECK(multi::max_entropy_a(m) == doctest::Approx(0.3).epsilon(1e-11));
    CHECK(multi::max_entropy_b(m) == doctest::Approx(0.2).epsilon(1e-11));

    long long yield = multi::yield(1e4, m, 0.05);
    CHECK(std::llabs(yield - 4000) <= 1);  // floor lands on an exact boundary

    // entropy-dominated distributions give nothing
    TwoColorable star = TwoColorable::from_edges(3, {{0, 1}, {0, 2}});
    std::vector<double> flat(8, 0.125);
    CHECK(multi::yield(100, graph::marginals(flat, 1, 2), 0.1) == 0);
}

TEST_CASE("surprisal range constant") {
    TwoColorable star = TwoColorable::from_edges(3, {{0, 1}, {0, 2}});
    std::vector<double> lam = product_lambda(star, 0.005);
    graph::Marginals m = graph::marginals(lam, star.n_a(), star.n_b());
    CHECK(multi::c_prime(m) == doctest::Approx(7.6892708821085188).epsilon(1e-12));

    // a deterministic bit makes the constant infinite
    std::vector<double> point(8, 0.0);
    point[0] = 1.0;
    CHECK(std::isinf(multi::c_prime(graph::marginals(point, 1, 2))));

    // mixing toward identity restores finiteness
    std::vector<double> mixed = graph::mix_identity(point, 1e-3);
    CHECK(std::isfinite(multi::c_prime(graph::marginals(mixed, 1, 2))));
}

TEST_CASE("iid failure bound") {
    CHECK(multi::iid_bound_log(4096, 1, 1, 2, 7.6892708821085188, 0.5, 0.1) ==
          doctest::Approx(-32.153637529510523).epsilon(1e-12));
    // monotone improvement with block size
    double prev = 1e300;
    for (double n : {256.0, 1024.0, 4096.0, 16384.0}) {
        double cur = multi::iid_bound_log(n, 1, 1, 2, 7.689, 0.5, 0.1);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("round quotas split proportionally to the ceilings") {
    TwoColorable edge = TwoColorable::from_edges(2, {{0, 1}});
    double pa = stats::h2_inverse(0.3);
    double pb = stats::h2_inverse(0.2);
    std::vector<double> lam(4);
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu)
            lam[graph::label_index(
                GraphLabel{static_cast<std::uint32_t>(mu),
                           static_cast<std::uint32_t>(nu)},
                1, 1)] = (mu ? pa : 1 - pa) * (nu ? pb : 1 - pb);
    graph::Marginals m = graph::marginals(lam, 1, 1);

    multi::Config cfg;
    cfg.n = 10000;
    cfg.delta = 0.05;
    multi::RoundQuotas q = multi::default_quotas(cfg, m);
    std::size_t total = cfg.n - static_cast<std::size_t>(multi::yield(1e4, m, 0.05));
    CHECK(q.p1 + q.p2 == total);
    CHECK(std::llabs(static_cast<long long>(q.p1) -
                     std::llround(0.6 * static_cast<double>(total))) <= 1);

    // overrides are independent
    cfg.rounds_p1 = 5;
    multi::RoundQuotas q2 = multi::default_quotas(cfg, m);
    CHECK(q2.p1 == 5);
    CHECK(q2.p2 == q.p2);

    // both ceilings zero: even split
    std::vector<double> point{1.0, 0.0, 0.0, 0.0};
    multi::Config cfg2;
    cfg2.n = 10;
    cfg2.delta = 0.05;
    multi::RoundQuotas qz = multi::default_quotas(cfg2, graph::marginals(point, 1, 1));
    CHECK(qz.p1 + qz.p2 == 1);  // m = floor(10 * 0.9) = 9
}

TEST_CASE("pure source runs clean") {
    TwoColorable star = TwoColorable::from_edges(3, {{0, 1}, {0, 2}});
    std::vector<double> lam(8, 0.0);
    lam[0] = 1.0;

    multi::Config cfg;
    cfg.n = 16;
    cfg.k = 1.0;
    cfg.delta = 0.1;
    cfg.eps_mix = 0.0;

    Rng rng(3);
    multi::Outcome out = multi::run_protocol(cfg, star, lam, rng);
    CHECK(out.branch == hashing::Branch::ok);
    CHECK(out.cause == hashing::Cause::none);
    CHECK(out.failed_component == -1);
    CHECK(out.pe_max_deviation == 0.0);
    CHECK(out.yield == 12);  // floor(16 * (1 - 0.2))

    hashing::MonteCarloResult mc =
        multi::monte_carlo(cfg, star, lam, 50, 99, 2);
    CHECK(mc.errors == 0);
    CHECK(mc.aborted == 0);
    CHECK(mc.ok == 50);
}

TEST_CASE("near-pure source decodes with few failures") {
    TwoColorable edge = TwoColorable::from_edges(2, {{0, 1}});
    std::vector<double> lam = product_lambda(edge, 0.01);

    multi::Config cfg;
    cfg.n = 16;
    cfg.k = 1.0;
    cfg.delta = 0.4;
    cfg.eps_mix = 0.0;
    cfg.rounds_p1 = 8;
    cfg.rounds_p2 = 8;

    std::vector<multi::Outcome> t1, t3;
    hashing::MonteCarloResult r1 = multi::monte_carlo(cfg, edge, lam, 200, 17, 1, &t1);
    hashing::MonteCarloResult r3 = multi::monte_carlo(cfg, edge, lam, 200, 17, 3, &t3);

    // thread-count invariance, transcript and counters alike
    CHECK(r1.aborted == r3.aborted);
    CHECK(r1.ok == r3.ok);
    CHECK(r1.errors == r3.errors);
    CHECK(r1.mean_pe_statistic == r3.mean_pe_statistic);
    REQUIRE(t1.size() == 200);
    for (std::size_t i = 0; i < 200; ++i) {
        CHECK(t1[i].branch == t3[i].branch);
        CHECK(t1[i].cause == t3[i].cause);
        CHECK(t1[i].pe_max_deviation == t3[i].pe_max_deviation);
        CHECK(t1[i].failed_component == t3[i].failed_component);
    }

    // at this toy size the coset is dense relative to 8 rounds per party, so
    // ambiguity lands in the tens of percent; far more means a regression
    CHECK(r1.errors <= 55);
    CHECK(r1.aborted <= 30);
    CHECK(r1.ok >= 120);

    // an error names the failing component
    for (const multi::Outcome& o : t1)
        if (o.branch == hashing::Branch::error) CHECK(o.failed_component >= 0);
}

TEST_CASE("lambda validation") {
    TwoColorable edge = TwoColorable::from_edges(2, {{0, 1}});
    multi::Config cfg;
    cfg.n = 8;
    Rng rng(1);

    std::vector<double> short_lam{0.5, 0.5};
    CHECK_THROWS_AS((void)multi::run_protocol(cfg, edge, short_lam, rng),
                    std::invalid_argument);
    std::vector<double> neg{1.2, -0.2, 0.0, 0.0};
    CHECK_THROWS_AS((void)multi::run_protocol(cfg, edge, neg, rng),
                    std::invalid_argument);
    std::vector<double> off{0.5, 0.2, 0.2, 0.2};
    CHECK_THROWS_AS((void)multi::run_protocol(cfg, edge, off, rng),
                    std::invalid_argument);
}
