#include "enthash/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "enthash/oracle.hpp"

namespace enthash::oracle {

namespace {

constexpr double kTol = 1e-9;

std::string format(const char* fmt, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

void record(VerifyReport& report, VerifyCheck check) {
    report.checks.push_back(std::move(check));
}

VerifyCheck check_bell_correlators() {
    VerifyCheck c{"bell-correlators"};
    for (int idx = 0; idx < 4; ++idx) {
        BellLabel l = BellLabel::from_index(idx);
        StateVector s = bell_state(l);
        double xx = pauli_expectation(s, "XX");
        double zz = pauli_expectation(s, "ZZ");
        double want_xx = l.phase ? -1.0 : 1.0;
        double want_zz = l.amplitude ? -1.0 : 1.0;
        ++c.cases;
        if (std::abs(xx - want_xx) > kTol || std::abs(zz - want_zz) > kTol) {
            c.passed = false;
            if (c.detail.empty())
                c.detail = format("B%d%d: <XX>=%.3f <ZZ>=%.3f", l.phase, l.amplitude,
                                  xx, zz);
        }
    }
    return c;
}

VerifyCheck check_bilateral_cnot(const VerifyHooks& hooks) {
    VerifyCheck c{"bilateral-cnot"};
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            BellLabel src = BellLabel::from_index(a), tgt = BellLabel::from_index(b);
            auto want = bilateral_cnot_circuit(src, tgt);
            auto got = hooks.bilateral_cnot(src, tgt);
            ++c.cases;
            if (got != want) {
                c.passed = false;
                if (c.detail.empty())
                    c.detail = format(
                        "in=(%d%d,%d%d) circuit=(%d%d,%d%d) rule=(%d%d,%d%d)",
                        src.phase, src.amplitude, tgt.phase, tgt.amplitude,
                        want.first.phase, want.first.amplitude, want.second.phase,
                        want.second.amplitude, got.first.phase, got.first.amplitude,
                        got.second.phase, got.second.amplitude);
            }
        }
    }
    return c;
}

VerifyCheck check_symbol_op(const VerifyHooks& hooks) {
    VerifyCheck c{"symbol-op"};
    for (int s = 0; s < 4; ++s) {
        for (int x = 0; x < 4; ++x) {
            BellLabel l = BellLabel::from_index(x);
            BellLabel want = symbol_op_circuit(s, l);
            BellLabel got = hooks.symbol_op(s, l);
            ++c.cases;
            if (got != want) {
                c.passed = false;
                if (c.detail.empty())
                    c.detail = format("s=%d in=%d%d circuit=%d%d rule=%d%d", s, l.phase,
                                      l.amplitude, want.phase, want.amplitude,
                                      got.phase, got.amplitude);
            }
        }
    }
    return c;
}

// One round on m pairs straight on the statevector: local rotations, folds
// onto the first participant, then the Z(x)Z parity of the target. Must
// equal the XOR of the selected bits of the starting labels.
VerifyCheck check_round_parity() {
    VerifyCheck c{"round-parity"};
    for (int m = 2; m <= 3; ++m) {
        std::size_t n_sym = 1;
        for (int i = 0; i < m; ++i) n_sym *= 4;
        for (std::size_t sym = 1; sym < n_sym; ++sym) {
            std::vector<int> s(static_cast<std::size_t>(m));
            std::size_t rest = sym;
            for (int i = 0; i < m; ++i) {
                s[static_cast<std::size_t>(i)] = static_cast<int>(rest % 4);
                rest /= 4;
            }
            int target = -1;
            for (int i = 0; i < m; ++i)
                if (s[static_cast<std::size_t>(i)] != 0) {
                    target = i;
                    break;
                }
            for (std::size_t labels = 0; labels < n_sym; ++labels) {
                std::vector<BellLabel> l(static_cast<std::size_t>(m));
                rest = labels;
                for (int i = 0; i < m; ++i) {
                    l[static_cast<std::size_t>(i)] =
                        BellLabel::from_index(static_cast<int>(rest % 4));
                    rest /= 4;
                }
                StateVector state(2 * m);
                {  // product of the m pairs; pair i on qubits (2i, 2i+1)
                    StateVector acc = bell_state(l[0]);
                    for (int i = 1; i < m; ++i) {
                        StateVector next = bell_state(l[static_cast<std::size_t>(i)]);
                        StateVector merged(2 * (i + 1));
                        std::size_t lo_dim = 4;
                        for (std::size_t x = 0; x < merged.dim(); ++x)
                            merged[x] = acc[x / lo_dim] * next[x % lo_dim];
                        acc = merged;
                    }
                    state = acc;
                }
                int expect = 0;
                for (int i = 0; i < m; ++i) {
                    int si = s[static_cast<std::size_t>(i)];
                    if (si == 0) continue;
                    if (si == 2) {
                        state.apply_h(2 * i);
                        state.apply_h(2 * i + 1);
                    } else if (si == 3) {
                        state.apply_rx(2 * i, std::numbers::pi / 2.0);
                        state.apply_rx(2 * i + 1, -std::numbers::pi / 2.0);
                    }
                    expect ^= *select_bit(si, l[static_cast<std::size_t>(i)]);
                }
                for (int i = 0; i < m; ++i) {
                    if (i == target || s[static_cast<std::size_t>(i)] == 0) continue;
                    state.apply_cnot(2 * i, 2 * target);
                    state.apply_cnot(2 * i + 1, 2 * target + 1);
                }
                std::string paulis(static_cast<std::size_t>(2 * m), 'I');
                paulis[static_cast<std::size_t>(2 * target)] = 'Z';
                paulis[static_cast<std::size_t>(2 * target + 1)] = 'Z';
                double zz = pauli_expectation(state, paulis.c_str());
                double want = expect ? -1.0 : 1.0;
                ++c.cases;
                if (std::abs(zz - want) > kTol) {
                    c.passed = false;
                    if (c.detail.empty())
                        c.detail = format("m=%d symbols=%zu labels=%zu <ZZ>=%.3f", m,
                                          sym, labels, zz);
                }
            }
        }
    }
    return c;
}

VerifyCheck check_graph_stabilizers(const std::vector<graph::TwoColorable>& graphs) {
    VerifyCheck c{"graph-stabilizers"};
    for (const auto& g : graphs) {
        int n = static_cast<int>(g.vertices());
        for (std::uint32_t kappa = 0; kappa < (1u << n); ++kappa) {
            StateVector s = graph_basis(g, kappa);
            for (int j = 0; j < n; ++j) {
                std::string paulis(static_cast<std::size_t>(n), 'I');
                paulis[static_cast<std::size_t>(j)] = 'X';
                for (int w : g.neighbors(j)) paulis[static_cast<std::size_t>(w)] = 'Z';
                double ev = pauli_expectation(s, paulis.c_str());
                double want = ((kappa >> (n - 1 - j)) & 1u) ? -1.0 : 1.0;
                ++c.cases;
                if (std::abs(ev - want) > kTol) {
                    c.passed = false;
                    if (c.detail.empty())
                        c.detail = format("N=%d kappa=%u K_%d=%.3f", n, kappa, j, ev);
                }
            }
        }
    }
    return c;
}

VerifyCheck check_subround(const std::vector<graph::TwoColorable>& graphs,
                           const VerifyHooks& hooks, bool first_subround) {
    VerifyCheck c{first_subround ? "u1" : "u2"};
    for (const auto& g : graphs) {
        std::size_t labels = std::size_t{1} << g.vertices();
        for (std::size_t x = 0; x < labels; ++x) {
            for (std::size_t y = 0; y < labels; ++y) {
                graph::GraphLabel member = graph::label_from_index(x, g.n_a(), g.n_b());
                graph::GraphLabel target = graph::label_from_index(y, g.n_a(), g.n_b());
                auto want = first_subround ? u1_circuit(g, member, target)
                                           : u2_circuit(g, member, target);
                graph::GraphLabel gm = member, gt = target;
                (first_subround ? hooks.u1 : hooks.u2)(gm, gt);
                ++c.cases;
                if (!(gm == want.first && gt == want.second)) {
                    c.passed = false;
                    if (c.detail.empty())
                        c.detail = format(
                            "N=%zu in=(%u|%u,%u|%u) circuit=(%u|%u,%u|%u) "
                            "rule=(%u|%u,%u|%u)",
                            g.vertices(), member.mu, member.nu, target.mu, target.nu,
                            want.first.mu, want.first.nu, want.second.mu,
                            want.second.nu, gm.mu, gm.nu, gt.mu, gt.nu);
                }
            }
        }
    }
    return c;
}

VerifyCheck check_readout(const std::vector<graph::TwoColorable>& graphs,
                          const VerifyHooks& hooks, bool m1) {
    VerifyCheck c{m1 ? "m1-distribution" : "m2-distribution"};
    for (const auto& g : graphs) {
        int n = static_cast<int>(g.vertices());
        std::size_t labels = std::size_t{1} << n;
        std::size_t random_bits = m1 ? g.n_b() : g.n_a();
        double mass = 1.0 / static_cast<double>(std::size_t{1} << random_bits);
        for (std::size_t x = 0; x < labels; ++x) {
            graph::GraphLabel l = graph::label_from_index(x, g.n_a(), g.n_b());
            std::vector<double> want(labels, 0.0);
            for (std::uint32_t zeta = 0; zeta < (1u << random_bits); ++zeta) {
                std::uint32_t xi = m1 ? hooks.m1_xi(g, l, zeta) : hooks.m2_xi(g, l, zeta);
                std::size_t idx = 0;
                for (int v = 0; v < n; ++v) {
                    unsigned bit;
                    if (g.is_a(v))
                        bit = m1 ? (xi >> g.class_position(v)) & 1u
                                 : (zeta >> g.class_position(v)) & 1u;
                    else
                        bit = m1 ? (zeta >> g.class_position(v)) & 1u
                                 : (xi >> g.class_position(v)) & 1u;
                    idx |= std::size_t{bit} << (n - 1 - v);
                }
                want[idx] += mass;
            }
            std::vector<double> got =
                m1 ? m1_distribution(g, l) : m2_distribution(g, l);
            ++c.cases;
            for (std::size_t i = 0; i < labels; ++i) {
                if (std::abs(got[i] - want[i]) > kTol) {
                    c.passed = false;
                    if (c.detail.empty())
                        c.detail = format("N=%d label=%zu outcome=%zu p=%.6f rule=%.6f",
                                          n, x, i, got[i], want[i]);
                    break;
                }
            }
        }
    }
    return c;
}

}  // namespace

VerifyHooks VerifyHooks::production() {
    VerifyHooks h;
    h.bilateral_cnot = [](BellLabel a, BellLabel b) { return enthash::bilateral_cnot(a, b); };
    h.symbol_op = [](int s, BellLabel l) { return enthash::symbol_op(s, l); };
    h.u1 = [](graph::GraphLabel& m, graph::GraphLabel& t) { graph::u1_apply(m, t); };
    h.u2 = [](graph::GraphLabel& m, graph::GraphLabel& t) { graph::u2_apply(m, t); };
    h.m1_xi = [](const graph::TwoColorable& g, graph::GraphLabel l, std::uint32_t z) {
        return graph::m1_xi(g, l, z);
    };
    h.m2_xi = [](const graph::TwoColorable& g, graph::GraphLabel l, std::uint32_t z) {
        return graph::m2_xi(g, l, z);
    };
    return h;
}

bool VerifyReport::all_passed() const {
    for (const VerifyCheck& c : checks)
        if (!c.passed) return false;
    return true;
}

VerifyReport run_verification(const VerifyHooks& hooks, int max_graph_vertices) {
    VerifyReport report;
    record(report, check_bell_correlators());
    record(report, check_bilateral_cnot(hooks));
    record(report, check_symbol_op(hooks));
    record(report, check_round_parity());

    std::vector<graph::TwoColorable> graphs;
    for (int n = 1; n <= max_graph_vertices; ++n) {
        auto batch = all_two_colorable_graphs(n);
        graphs.insert(graphs.end(), batch.begin(), batch.end());
    }
    record(report, check_graph_stabilizers(graphs));
    record(report, check_subround(graphs, hooks, true));
    record(report, check_subround(graphs, hooks, false));
    record(report, check_readout(graphs, hooks, true));
    record(report, check_readout(graphs, hooks, false));
    return report;
}

}  // namespace enthash::oracle
