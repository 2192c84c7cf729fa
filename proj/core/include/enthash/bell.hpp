#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace enthash {

// Bell pair label (i, j): |B_ij> = (id (x) X^j Z^i) |B_00>.
// i is the phase bit (sign of the X(x)X correlation), j the amplitude bit
// (sign of Z(x)Z). One-sided Pauli errors act by XOR on the label.
struct BellLabel {
    std::uint8_t phase = 0;
    std::uint8_t amplitude = 0;

    int index() const { return phase * 2 + amplitude; }
    static BellLabel from_index(int idx);

    friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

// Bell-diagonal state as a probability vector over the four labels,
// indexed phase * 2 + amplitude.
struct BellDiagonal {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

    double fidelity() const { return p[0]; }
    // Entries must be nonnegative and sum to 1; drift below 1e-12 is
    // renormalized silently, anything larger is an error.
    void validate();
};

// Channel parameters of the noisy wiring: each side of a shared pair passes
// through a depolarizing channel with retention alpha, and the source itself
// emits werner_from_q(q).
struct NoiseParams {
    double alpha = 1.0;
    double q = 1.0;
    void validate() const;
};

// Bilateral CNOT (both parties, source pair controls target pair):
//   (i_s, j_s), (i_t, j_t)  ->  (i_s ^ i_t, j_s), (i_t, j_s ^ j_t)
// The amplitude accumulates into the target, the target's phase back-acts
// onto the source, and the target keeps its own phase.
std::pair<BellLabel, BellLabel> bilateral_cnot(BellLabel source, BellLabel target);

// Bit selected by a round symbol: 0 -> none, 1 -> j, 2 -> i, 3 -> i ^ j.
// Any other symbol is an error.
std::optional<int> select_bit(int symbol, BellLabel l);

// Label action of the bilateral local rotation that moves the selected bit
// into the amplitude slot before a round's CNOTs:
//   s = 0, 1: identity      s = 2: (i, j) -> (j, i)   [H (x) H]
//   s = 3:    (i, j) -> (i, i ^ j)                    [Rx(pi/2) (x) Rx(-pi/2)]
BellLabel symbol_op(int symbol, BellLabel l);

// One-sided depolarizing noise with retention alpha on a Bell-diagonal
// state: p_x -> alpha * p_x + (1 - alpha) / 4.
BellDiagonal depolarize(const BellDiagonal& state, double alpha);

// Werner state with fidelity f: (f, (1-f)/3, (1-f)/3, (1-f)/3). f in [1/4, 1].
BellDiagonal werner(double f);
// Werner state parametrized by retention q: depolarize(|B_00>, q).
BellDiagonal werner_from_q(double q);

// Conversions between the fidelity and retention parametrizations:
// q = (4f - 1) / 3, f = (3q + 1) / 4.
double fidelity_to_q(double f);
double q_to_fidelity(double q);

// Project onto the Werner family: keep p_00, average the rest.
BellDiagonal twirl_to_werner(const BellDiagonal& state);

// Shannon entropy in bits; 0 log 0 = 0. Entries must be a distribution.
double shannon_entropy(std::span<const double> p);

// S(f) = -f log2 f - (1-f) log2((1-f)/3), the entropy of werner(f).
double werner_entropy(double f);

}  // namespace enthash
