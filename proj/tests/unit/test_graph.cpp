#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "enthash/graph.hpp"
#include "enthash/rng.hpp"

using namespace enthash;
using graph::GraphLabel;
using graph::TwoColorable;

TEST_CASE("coloring") {
    TwoColorable path = TwoColorable::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(path.n_a() == 2);
    CHECK(path.n_b() == 1);
    CHECK(path.is_a(0));
    CHECK(!path.is_a(1));
    CHECK(path.is_a(2));
    CHECK(path.class_a() == std::vector<int>{0, 2});
    CHECK(path.class_b() == std::vector<int>{1});
    CHECK(path.class_position(2) == 1);
    CHECK(path.b_neighbors_of_a(0) == 1u);  // A vertex 0 touches the only B vertex
    CHECK(path.a_neighbors_of_b(0) == 3u);  // B vertex 1 touches both A vertices

    // lowest vertex of each component lands in A
    TwoColorable two = TwoColorable::from_edges(4, {{0, 1}, {2, 3}});
    CHECK(two.is_a(0));
    CHECK(two.is_a(2));
    CHECK(!two.is_a(1));
    CHECK(!two.is_a(3));

    // isolated vertices are their own components, hence class A
    TwoColorable iso = TwoColorable::from_edges(3, {{1, 2}});
    CHECK(iso.is_a(0));
    CHECK(iso.is_a(1));
    CHECK(!iso.is_a(2));

    CHECK_THROWS_AS((void)TwoColorable::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)TwoColorable::from_edges(2, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS((void)TwoColorable::from_edges(0, {}), std::invalid_argument);
    CHECK_THROWS_AS((void)TwoColorable::from_edges(33, {}), std::invalid_argument);

    // duplicate edges collapse
    TwoColorable dup = TwoColorable::from_edges(2, {{0, 1}, {1, 0}, {0, 1}});
    CHECK(dup.edges().size() == 1);
    CHECK(dup.neighbors(0).size() == 1);
}

TEST_CASE("parse") {
    std::istringstream in("3\n0 1\n1 2\n");
    TwoColorable g = TwoColorable::parse(in);
    CHECK(g.vertices() == 3);
    CHECK(g.n_a() == 2);

    std::istringstream empty("");
    CHECK_THROWS_AS((void)TwoColorable::parse(empty), std::invalid_argument);
    std::istringstream halfedge("2\n0\n");
    CHECK_THROWS_AS((void)TwoColorable::parse(halfedge), std::invalid_argument);
}

TEST_CASE("label indexing") {
    // mu bit 0 owns the most significant position
    CHECK(graph::label_index(GraphLabel{1, 0}, 2, 1) == 4);
    CHECK(graph::label_index(GraphLabel{2, 0}, 2, 1) == 2);
    CHECK(graph::label_index(GraphLabel{0, 1}, 2, 1) == 1);
    for (std::size_t idx = 0; idx < 16; ++idx) {
        GraphLabel l = graph::label_from_index(idx, 2, 2);
        CHECK(graph::label_index(l, 2, 2) == idx);
    }
}

TEST_CASE("subround label maps") {
    Rng rng(17);
    for (int iter = 0; iter < 200; ++iter) {
        GraphLabel m{static_cast<std::uint32_t>(rng.below(16)),
                     static_cast<std::uint32_t>(rng.below(16))};
        GraphLabel t{static_cast<std::uint32_t>(rng.below(16)),
                     static_cast<std::uint32_t>(rng.below(16))};
        GraphLabel m0 = m, t0 = t;

        graph::u1_apply(m, t);
        // u1 folds mu into the target and leaves survivor mu, target nu alone
        CHECK(m.mu == m0.mu);
        CHECK(t.nu == t0.nu);
        CHECK(t.mu == (t0.mu ^ m0.mu));
        CHECK(m.nu == (m0.nu ^ t0.nu));
        // involution
        graph::u1_apply(m, t);
        CHECK(m == m0);
        CHECK(t == t0);

        graph::u2_apply(m, t);
        CHECK(m.nu == m0.nu);
        CHECK(t.mu == t0.mu);
        CHECK(t.nu == (t0.nu ^ m0.nu));
        CHECK(m.mu == (m0.mu ^ t0.mu));
        graph::u2_apply(m, t);
        CHECK(m == m0);
        CHECK(t == t0);
    }
}

TEST_CASE("readouts invert to the label bits") {
    TwoColorable g = TwoColorable::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    Rng rng(23);
    for (int iter = 0; iter < 300; ++iter) {
        GraphLabel l{static_cast<std::uint32_t>(rng.below(1u << g.n_a())),
                     static_cast<std::uint32_t>(rng.below(1u << g.n_b()))};
        graph::ReadoutOutcome o1 = graph::m1_readout(g, l, rng);
        CHECK(graph::mu_from_m1(g, o1) == l.mu);
        graph::ReadoutOutcome o2 = graph::m2_readout(g, l, rng);
        CHECK(graph::nu_from_m2(g, o2) == l.nu);
    }
    // the deterministic half alone obeys the announced rule
    GraphLabel l{2, 1};
    for (std::uint32_t zeta = 0; zeta < (1u << g.n_b()); ++zeta) {
        std::uint32_t xi = graph::m1_xi(g, l, zeta);
        for (std::size_t i = 0; i < g.n_a(); ++i) {
            std::uint32_t nb = g.b_neighbors_of_a(static_cast<int>(i));
            int parity = __builtin_popcount(zeta & nb) & 1;
            CHECK(((xi >> i) & 1u) ==
                  (((l.mu >> i) & 1u) ^ static_cast<std::uint32_t>(parity)));
        }
    }
}

TEST_CASE("marginals") {
    // single edge: indices run (mu, nu) = (0,0), (0,1), (1,0), (1,1)
    std::vector<double> lam{0.4, 0.3, 0.2, 0.1};
    graph::Marginals m = graph::marginals(lam, 1, 1);
    REQUIRE(m.a.size() == 1);
    REQUIRE(m.b.size() == 1);
    CHECK(m.a[0][0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(m.a[0][1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(m.b[0][0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(m.b[0][1] == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS_AS((void)graph::marginals(lam, 2, 1), std::invalid_argument);
}

TEST_CASE("identity mixing") {
    std::vector<double> lam{0.4, 0.3, 0.2, 0.1};
    std::vector<double> same = graph::mix_identity(lam, 0.0);
    CHECK(same == lam);  // bitwise: eps = 0 must not perturb

    std::vector<double> flat = graph::mix_identity(lam, 1.0);
    for (double v : flat) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));

    std::vector<double> mixed = graph::mix_identity(lam, 0.2);
    CHECK(mixed[0] == doctest::Approx(0.8 * 0.4 + 0.05).epsilon(1e-15));
    double sum = 0;
    for (double v : mixed) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS((void)graph::mix_identity(lam, 1.5), std::invalid_argument);
}

TEST_CASE("label sampling matches the distribution") {
    std::vector<double> lam{0.5, 0.25, 0.125, 0.125};
    Rng rng(41);
    std::array<double, 4> freq{};
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        GraphLabel l = graph::sample_label(lam, 1, 1, rng);
        freq[graph::label_index(l, 1, 1)] += 1.0;
    }
    for (std::size_t i = 0; i < 4; ++i) {
        double sigma = std::sqrt(lam[i] * (1.0 - lam[i]) / draws);
        CHECK(std::fabs(freq[i] / draws - lam[i]) <= 5.0 * sigma);
    }
}
