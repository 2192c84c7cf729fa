#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "enthash/bell.hpp"
#include "enthash/graph.hpp"

namespace enthash::oracle {

// Implementations under test. Defaults to the shipped label algebra; tests
// swap individual entries for deliberately wrong rules to prove the
// statevector checks can actually fail.
struct VerifyHooks {
    std::function<std::pair<BellLabel, BellLabel>(BellLabel, BellLabel)>
        bilateral_cnot;
    std::function<BellLabel(int, BellLabel)> symbol_op;
    std::function<void(graph::GraphLabel&, graph::GraphLabel&)> u1;
    std::function<void(graph::GraphLabel&, graph::GraphLabel&)> u2;
    std::function<std::uint32_t(const graph::TwoColorable&, graph::GraphLabel,
                                std::uint32_t)>
        m1_xi;
    std::function<std::uint32_t(const graph::TwoColorable&, graph::GraphLabel,
                                std::uint32_t)>
        m2_xi;

    static VerifyHooks production();
};

struct VerifyCheck {
    std::string name;
    bool passed = true;
    std::uint64_t cases = 0;
    std::string detail;  // first mismatch, empty when passed
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const;
};

// Exhaustive statevector cross-checks of the label algebra:
//   - Bell correlators and the four-state basis expansion
//   - bilateral CNOT on all 16 label pairs
//   - symbol_op on all symbols and labels
//   - parity identity of select_bit under the round circuit
//   - stabilizer eigenvalues of every graph basis state
//   - u1/u2 on all label pairs, every two-colorable graph up to
//     max_graph_vertices (copies cost 2N qubits)
//   - M1/M2 outcome distributions against the announced-xi rule
VerifyReport run_verification(const VerifyHooks& hooks,
                              int max_graph_vertices = 4);

}  // namespace enthash::oracle
