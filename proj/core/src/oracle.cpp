#include "enthash/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace enthash::oracle {

namespace {

constexpr double kTol = 1e-9;

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
    if (qubits < 0 || qubits > 12)
        throw std::invalid_argument("statevector limited to 12 qubits");
    amps_.assign(std::size_t{1} << qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

// Qubit q owns bit (qubits - 1 - q) of the basis index.
#define ENTHASH_QBIT(q) (std::size_t{1} << (qubits_ - 1 - (q)))

void StateVector::apply_x(int q) {
    std::size_t b = ENTHASH_QBIT(q);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (!(i & b)) std::swap(amps_[i], amps_[i | b]);
}

void StateVector::apply_z(int q) {
    std::size_t b = ENTHASH_QBIT(q);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & b) amps_[i] = -amps_[i];
}

void StateVector::apply_h(int q) {
    std::size_t b = ENTHASH_QBIT(q);
    const double inv = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & b) continue;
        Amplitude lo = amps_[i], hi = amps_[i | b];
        amps_[i] = (lo + hi) * inv;
        amps_[i | b] = (lo - hi) * inv;
    }
}

void StateVector::apply_rx(int q, double angle) {
    std::size_t b = ENTHASH_QBIT(q);
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    const Amplitude off{0.0, -s};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & b) continue;
        Amplitude lo = amps_[i], hi = amps_[i | b];
        amps_[i] = c * lo + off * hi;
        amps_[i | b] = off * lo + c * hi;
    }
}

void StateVector::apply_cnot(int control, int target) {
    std::size_t cb = ENTHASH_QBIT(control), tb = ENTHASH_QBIT(target);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cb) && !(i & tb)) std::swap(amps_[i], amps_[i | tb]);
}

void StateVector::apply_cz(int a, int b) {
    std::size_t ab = ENTHASH_QBIT(a), bb = ENTHASH_QBIT(b);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & ab) && (i & bb)) amps_[i] = -amps_[i];
}

#undef ENTHASH_QBIT

Amplitude StateVector::overlap(const StateVector& other) const {
    if (qubits_ != other.qubits_) throw std::invalid_argument("qubit count mismatch");
    Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i)
        acc += std::conj(amps_[i]) * other.amps_[i];
    return acc;
}

double StateVector::norm() const {
    double acc = 0;
    for (const Amplitude& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

StateVector bell_state(BellLabel l) {
    StateVector s(2);
    s.apply_h(0);
    s.apply_cnot(0, 1);
    if (l.phase) s.apply_z(1);
    if (l.amplitude) s.apply_x(1);
    return s;
}

StateVector two_pairs(BellLabel first, BellLabel second) {
    StateVector a = bell_state(first), b = bell_state(second);
    StateVector out(4);
    for (std::size_t i = 0; i < 16; ++i) out[i] = a[i >> 2] * b[i & 3];
    return out;
}

double pauli_expectation(const StateVector& s, const char* paulis) {
    StateVector acted = s;
    Amplitude prefactor{1.0, 0.0};
    for (int q = 0; q < s.qubits(); ++q) {
        switch (paulis[q]) {
            case 'I': break;
            case 'X': acted.apply_x(q); break;
            case 'Z': acted.apply_z(q); break;
            case 'Y':  // Y = i X Z
                acted.apply_z(q);
                acted.apply_x(q);
                prefactor *= Amplitude{0.0, 1.0};
                break;
            case '\0': throw std::invalid_argument("Pauli string too short");
            default: throw std::invalid_argument("Pauli letter not in IXYZ");
        }
    }
    return (prefactor * s.overlap(acted)).real();
}

std::pair<BellLabel, BellLabel> expand_two_pairs(const StateVector& s) {
    if (s.qubits() != 4) throw std::invalid_argument("expected a 4-qubit state");
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            StateVector cand =
                two_pairs(BellLabel::from_index(a), BellLabel::from_index(b));
            if (std::abs(std::abs(cand.overlap(s)) - 1.0) < kTol)
                return {BellLabel::from_index(a), BellLabel::from_index(b)};
        }
    }
    throw std::runtime_error("state is not a product of Bell states");
}

std::pair<BellLabel, BellLabel> bilateral_cnot_circuit(BellLabel source,
                                                       BellLabel target) {
    StateVector s = two_pairs(source, target);
    s.apply_cnot(0, 2);  // Alice's halves
    s.apply_cnot(1, 3);  // Bob's halves
    return expand_two_pairs(s);
}

BellLabel symbol_op_circuit(int symbol, BellLabel l) {
    StateVector s = bell_state(l);
    switch (symbol) {
        case 0:
        case 1: break;
        case 2:
            s.apply_h(0);
            s.apply_h(1);
            break;
        case 3:
            s.apply_rx(0, std::numbers::pi / 2.0);
            s.apply_rx(1, -std::numbers::pi / 2.0);
            break;
        default: throw std::invalid_argument("round symbol not in 0..3");
    }
    for (int x = 0; x < 4; ++x) {
        StateVector cand = bell_state(BellLabel::from_index(x));
        if (std::abs(std::abs(cand.overlap(s)) - 1.0) < kTol)
            return BellLabel::from_index(x);
    }
    throw std::runtime_error("state left the Bell basis");
}

StateVector graph_basis(const graph::TwoColorable& g, std::uint32_t kappa) {
    int n = static_cast<int>(g.vertices());
    if (n > 12) throw std::invalid_argument("statevector limited to 12 qubits");
    StateVector s(n);
    for (int v = 0; v < n; ++v) s.apply_h(v);
    for (auto [u, v] : g.edges()) s.apply_cz(u, v);
    for (int v = 0; v < n; ++v)
        if ((kappa >> (n - 1 - v)) & 1u) s.apply_z(v);
    return s;
}

std::uint32_t kappa_of(const graph::TwoColorable& g, graph::GraphLabel l) {
    int n = static_cast<int>(g.vertices());
    std::uint32_t kappa = 0;
    for (int v = 0; v < n; ++v) {
        unsigned bit = g.is_a(v) ? (l.mu >> g.class_position(v)) & 1u
                                 : (l.nu >> g.class_position(v)) & 1u;
        kappa |= bit << (n - 1 - v);
    }
    return kappa;
}

namespace {

graph::GraphLabel label_of_kappa(const graph::TwoColorable& g, std::uint32_t kappa) {
    int n = static_cast<int>(g.vertices());
    graph::GraphLabel l;
    for (int v = 0; v < n; ++v) {
        unsigned bit = (kappa >> (n - 1 - v)) & 1u;
        if (g.is_a(v))
            l.mu |= bit << g.class_position(v);
        else
            l.nu |= bit << g.class_position(v);
    }
    return l;
}

StateVector two_copies(const graph::TwoColorable& g, graph::GraphLabel first,
                       graph::GraphLabel second) {
    int n = static_cast<int>(g.vertices());
    if (2 * n > 12) throw std::invalid_argument("two copies exceed 12 qubits");
    StateVector a = graph_basis(g, kappa_of(g, first));
    StateVector b = graph_basis(g, kappa_of(g, second));
    StateVector out(2 * n);
    std::size_t dim = std::size_t{1} << n;
    for (std::size_t i = 0; i < dim * dim; ++i) out[i] = a[i >> n] * b[i & (dim - 1)];
    return out;
}

}  // namespace

std::pair<graph::GraphLabel, graph::GraphLabel> expand_two_copies(
    const graph::TwoColorable& g, const StateVector& s) {
    // Uncompute the graph-state preparation: CZ layers cancel and the H
    // layer maps Z^kappa |G> to the computational state |kappa>, so the
    // surviving basis index spells out both copies' labels.
    int n = static_cast<int>(g.vertices());
    if (s.qubits() != 2 * n) throw std::invalid_argument("qubit count mismatch");
    StateVector work = s;
    for (auto [u, v] : g.edges()) {
        work.apply_cz(u, v);
        work.apply_cz(n + u, n + v);
    }
    for (int q = 0; q < 2 * n; ++q) work.apply_h(q);
    std::size_t hit = work.dim();
    for (std::size_t i = 0; i < work.dim(); ++i) {
        if (std::abs(work[i]) > 0.5) {
            if (hit != work.dim())
                throw std::runtime_error("state is not a graph basis product");
            hit = i;
        }
    }
    if (hit == work.dim() || std::abs(std::abs(work[hit]) - 1.0) > kTol)
        throw std::runtime_error("state is not a graph basis product");
    std::uint32_t k1 = static_cast<std::uint32_t>(hit >> n);
    std::uint32_t k2 = static_cast<std::uint32_t>(hit & ((std::size_t{1} << n) - 1));
    return {label_of_kappa(g, k1), label_of_kappa(g, k2)};
}

std::pair<graph::GraphLabel, graph::GraphLabel> u1_circuit(
    const graph::TwoColorable& g, graph::GraphLabel first, graph::GraphLabel second) {
    int n = static_cast<int>(g.vertices());
    StateVector s = two_copies(g, first, second);
    for (int v : g.class_a()) s.apply_cnot(n + v, v);
    for (int v : g.class_b()) s.apply_cnot(v, n + v);
    return expand_two_copies(g, s);
}

std::pair<graph::GraphLabel, graph::GraphLabel> u2_circuit(
    const graph::TwoColorable& g, graph::GraphLabel first, graph::GraphLabel second) {
    int n = static_cast<int>(g.vertices());
    StateVector s = two_copies(g, first, second);
    for (int v : g.class_a()) s.apply_cnot(v, n + v);
    for (int v : g.class_b()) s.apply_cnot(n + v, v);
    return expand_two_copies(g, s);
}

namespace {

std::vector<double> readout_distribution(const graph::TwoColorable& g,
                                         graph::GraphLabel l, bool x_on_class_a) {
    int n = static_cast<int>(g.vertices());
    StateVector s = graph_basis(g, kappa_of(g, l));
    for (int v = 0; v < n; ++v)
        if (g.is_a(v) == x_on_class_a) s.apply_h(v);
    std::vector<double> dist(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) dist[i] = std::norm(s[i]);
    return dist;
}

}  // namespace

std::vector<double> m1_distribution(const graph::TwoColorable& g, graph::GraphLabel l) {
    return readout_distribution(g, l, true);
}

std::vector<double> m2_distribution(const graph::TwoColorable& g, graph::GraphLabel l) {
    return readout_distribution(g, l, false);
}

std::vector<graph::TwoColorable> all_two_colorable_graphs(int n_vertices) {
    if (n_vertices < 1 || n_vertices > 8)
        throw std::invalid_argument("enumeration limited to 1..8 vertices");
    std::vector<std::pair<int, int>> all_edges;
    for (int u = 0; u < n_vertices; ++u)
        for (int v = u + 1; v < n_vertices; ++v) all_edges.push_back({u, v});
    std::vector<graph::TwoColorable> out;
    for (std::uint32_t mask = 0; mask < (1u << all_edges.size()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t e = 0; e < all_edges.size(); ++e)
            if ((mask >> e) & 1u) edges.push_back(all_edges[e]);
        try {
            out.push_back(graph::TwoColorable::from_edges(
                static_cast<std::size_t>(n_vertices), edges));
        } catch (const std::invalid_argument&) {
            // odd cycle, skip
        }
    }
    return out;
}

}  // namespace enthash::oracle
