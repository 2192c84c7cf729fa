#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "enthash/bell.hpp"
#include "enthash/graph.hpp"

namespace enthash::oracle {

using Amplitude = std::complex<double>;

// Dense statevector on up to 12 qubits. Qubit 0 owns the most significant
// bit of the basis index. Deliberately naive: this is the independent
// reference the label algebra is checked against, so it shares no code
// with the fast path.
class StateVector {
  public:
    explicit StateVector(int qubits);

    int qubits() const { return qubits_; }
    std::size_t dim() const { return amps_.size(); }
    Amplitude& operator[](std::size_t i) { return amps_[i]; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    void apply_x(int q);
    void apply_z(int q);
    void apply_h(int q);
    void apply_rx(int q, double angle);
    void apply_cnot(int control, int target);
    void apply_cz(int a, int b);

    Amplitude overlap(const StateVector& other) const;
    double norm() const;

  private:
    int qubits_;
    std::vector<Amplitude> amps_;
};

// |B_ij> on qubits (0, 1) = (Alice, Bob): (id (x) X^j Z^i) |B_00>.
StateVector bell_state(BellLabel l);
// Two pairs on four qubits; pair t sits on qubits (2t, 2t+1).
StateVector two_pairs(BellLabel first, BellLabel second);

// Expectation of a Pauli string, one character per qubit from "IXYZ".
double pauli_expectation(const StateVector& s, const char* paulis);

// Re-express a 4-qubit state as a pair of Bell labels; requires unit
// overlap with exactly one product of Bell states (tolerance 1e-9).
std::pair<BellLabel, BellLabel> expand_two_pairs(const StateVector& s);

// Label maps computed by explicit circuits on statevectors.
std::pair<BellLabel, BellLabel> bilateral_cnot_circuit(BellLabel source,
                                                       BellLabel target);
BellLabel symbol_op_circuit(int symbol, BellLabel l);

// |psi_kappa> for a graph: CZ over the edges of |+...+>, then Z^kappa.
// Vertex v is qubit v; kappa packs bit v at position (N - 1 - v).
StateVector graph_basis(const graph::TwoColorable& g, std::uint32_t kappa);
std::uint32_t kappa_of(const graph::TwoColorable& g, graph::GraphLabel l);

// Re-express a 2N-qubit two-copy state in the graph basis.
std::pair<graph::GraphLabel, graph::GraphLabel> expand_two_copies(
    const graph::TwoColorable& g, const StateVector& s);

// Subround gate circuits on two copies (copy c of vertex v = qubit
// c * N + v): u1 transversally CNOTs class A from copy 1 to copy 2 and
// class B the other way; u2 swaps the roles.
std::pair<graph::GraphLabel, graph::GraphLabel> u1_circuit(
    const graph::TwoColorable& g, graph::GraphLabel first,
    graph::GraphLabel second);
std::pair<graph::GraphLabel, graph::GraphLabel> u2_circuit(
    const graph::TwoColorable& g, graph::GraphLabel first,
    graph::GraphLabel second);

// Outcome distribution of measuring class A in X and class B in Z on one
// copy (M1), or the mirror (M2). Index packs the per-vertex outcome bit at
// position (N - 1 - v).
std::vector<double> m1_distribution(const graph::TwoColorable& g,
                                    graph::GraphLabel l);
std::vector<double> m2_distribution(const graph::TwoColorable& g,
                                    graph::GraphLabel l);

// Every graph on exactly n labeled vertices without an odd cycle.
std::vector<graph::TwoColorable> all_two_colorable_graphs(int n_vertices);

}  // namespace enthash::oracle
