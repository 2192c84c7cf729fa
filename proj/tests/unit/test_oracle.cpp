#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "doctest.h"
#include "enthash/oracle.hpp"
#include "enthash/verify.hpp"

using namespace enthash;
using oracle::StateVector;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

const oracle::VerifyCheck* find_check(const oracle::VerifyReport& r,
                                      const char* name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

// Tensor product of two copies, first copy on the high qubits.
StateVector two_copies(const StateVector& a, const StateVector& b) {
    StateVector out(a.qubits() + b.qubits());
    for (std::size_t i = 0; i < out.dim(); ++i)
        out[i] = a[i / b.dim()] * b[i % b.dim()];
    return out;
}

}  // namespace

TEST_CASE("statevector gates") {
    StateVector s(1);
    s.apply_h(0);
    CHECK(std::abs(s[0] - oracle::Amplitude(kInvSqrt2, 0)) < 1e-12);
    s.apply_h(0);
    CHECK(std::abs(s[0] - oracle::Amplitude(1, 0)) < 1e-12);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // qubit 0 owns the most significant bit
    StateVector t(2);
    t.apply_x(0);
    CHECK(std::abs(t[2] - oracle::Amplitude(1, 0)) < 1e-12);
    t.apply_cnot(0, 1);
    CHECK(std::abs(t[3] - oracle::Amplitude(1, 0)) < 1e-12);

    StateVector u(2);
    u.apply_h(0);
    u.apply_cz(0, 1);  // |0>|0> and |1>|0>: CZ acts trivially
    CHECK(std::abs(u[0] - oracle::Amplitude(kInvSqrt2, 0)) < 1e-12);
    CHECK(std::abs(u[2] - oracle::Amplitude(kInvSqrt2, 0)) < 1e-12);
}

TEST_CASE("bell basis is orthonormal") {
    for (int a = 0; a < 4; ++a) {
        StateVector sa = oracle::bell_state(BellLabel::from_index(a));
        CHECK(sa.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (int b = 0; b < 4; ++b) {
            StateVector sb = oracle::bell_state(BellLabel::from_index(b));
            double want = (a == b) ? 1.0 : 0.0;
            CHECK(std::abs(sa.overlap(sb)) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("correlators carry the label signs") {
    for (int idx = 0; idx < 4; ++idx) {
        BellLabel l = BellLabel::from_index(idx);
        StateVector s = oracle::bell_state(l);
        CHECK(oracle::pauli_expectation(s, "XX") ==
              doctest::Approx(l.phase ? -1.0 : 1.0).epsilon(1e-12));
        CHECK(oracle::pauli_expectation(s, "ZZ") ==
              doctest::Approx(l.amplitude ? -1.0 : 1.0).epsilon(1e-12));
    }
    StateVector b00 = oracle::bell_state({0, 0});
    CHECK(oracle::pauli_expectation(b00, "YY") == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(oracle::pauli_expectation(b00, "IZ") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("two-pair expansion round trip") {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            BellLabel la = BellLabel::from_index(a);
            BellLabel lb = BellLabel::from_index(b);
            auto [ra, rb] = oracle::expand_two_pairs(oracle::two_pairs(la, lb));
            CHECK(ra == la);
            CHECK(rb == lb);
        }
}

TEST_CASE("graph basis stabilizers and kappa round trip") {
    auto g = graph::TwoColorable::from_edges(3, {{0, 1}, {1, 2}});
    for (std::uint32_t kappa = 0; kappa < 8; ++kappa) {
        StateVector s = oracle::graph_basis(g, kappa);
        CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    // kappa_of inverts the label packing: expand a product of two copies
    for (std::uint32_t mu = 0; mu < 4; ++mu)
        for (std::uint32_t nu = 0; nu < 2; ++nu) {
            graph::GraphLabel l{mu, nu};
            graph::GraphLabel other{1, 1};
            StateVector prod =
                two_copies(oracle::graph_basis(g, oracle::kappa_of(g, l)),
                           oracle::graph_basis(g, oracle::kappa_of(g, other)));
            auto [r1, r2] = oracle::expand_two_copies(g, prod);
            CHECK(r1 == l);
            CHECK(r2 == other);
        }
}

TEST_CASE("full verification passes") {
    oracle::VerifyReport r =
        oracle::run_verification(oracle::VerifyHooks::production(), 4);
    for (const auto& c : r.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
        CHECK(c.cases > 0);
    }
    CHECK(r.all_passed());
    CHECK(find_check(r, "bilateral-cnot") != nullptr);
    CHECK(find_check(r, "bilateral-cnot")->cases == 16);
    CHECK(find_check(r, "symbol-op")->cases == 16);
}

TEST_CASE("verification rejects a transposed fold rule") {
    // the label rule that forgets to XOR the source amplitude into the
    // target looks plausible on paper and fails on half the inputs
    oracle::VerifyHooks h = oracle::VerifyHooks::production();
    h.bilateral_cnot = [](BellLabel a, BellLabel b) {
        return std::pair<BellLabel, BellLabel>(
            BellLabel{static_cast<std::uint8_t>(a.phase ^ b.phase), a.amplitude},
            BellLabel{a.phase, static_cast<std::uint8_t>(a.amplitude ^ b.amplitude)});
    };
    oracle::VerifyReport r = oracle::run_verification(h, 2);
    const oracle::VerifyCheck* c = find_check(r, "bilateral-cnot");
    REQUIRE(c != nullptr);
    CHECK(!c->passed);
    CHECK(!c->detail.empty());
    CHECK(!r.all_passed());
}

TEST_CASE("verification rejects a wrong symbol rotation") {
    oracle::VerifyHooks h = oracle::VerifyHooks::production();
    h.symbol_op = [](int s, BellLabel l) {
        if (s == 3)
            return BellLabel{static_cast<std::uint8_t>(l.phase ^ l.amplitude),
                             l.amplitude};
        return symbol_op(s, l);
    };
    oracle::VerifyReport r = oracle::run_verification(h, 2);
    CHECK(!find_check(r, "symbol-op")->passed);
}

TEST_CASE("verification rejects swapped subround gates") {
    oracle::VerifyHooks h = oracle::VerifyHooks::production();
    h.u1 = [](graph::GraphLabel& m, graph::GraphLabel& t) { graph::u2_apply(m, t); };
    oracle::VerifyReport r = oracle::run_verification(h, 3);
    CHECK(!find_check(r, "u1")->passed);
    CHECK(find_check(r, "u2")->passed);
}

TEST_CASE("verification rejects a readout without the neighbor parity") {
    oracle::VerifyHooks h = oracle::VerifyHooks::production();
    h.m1_xi = [](const graph::TwoColorable&, graph::GraphLabel l, std::uint32_t) {
        return l.mu;
    };
    oracle::VerifyReport r = oracle::run_verification(h, 3);
    CHECK(!find_check(r, "m1-distribution")->passed);
}

TEST_CASE("graph enumeration counts") {
    CHECK(oracle::all_two_colorable_graphs(1).size() == 1);
    CHECK(oracle::all_two_colorable_graphs(2).size() == 2);
    CHECK(oracle::all_two_colorable_graphs(3).size() == 7);
    CHECK(oracle::all_two_colorable_graphs(4).size() == 41);
}
