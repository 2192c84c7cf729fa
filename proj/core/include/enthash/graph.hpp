#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "enthash/rng.hpp"

namespace enthash::graph {

// Two-colorable (bipartite) graph with a canonical coloring: color classes
// come from BFS, and the lowest-numbered vertex of each connected component
// lands in class A. Vertex count is capped at 32 so class masks fit a word.
class TwoColorable {
  public:
    static TwoColorable from_edges(std::size_t n_vertices,
                                   const std::vector<std::pair<int, int>>& edges);
    // Text form: first line N, then one "u v" edge per line.
    static TwoColorable parse(std::istream& in);

    std::size_t vertices() const { return adjacency_.size(); }
    std::size_t n_a() const { return class_a_.size(); }
    std::size_t n_b() const { return class_b_.size(); }
    bool is_a(int v) const { return is_a_[static_cast<std::size_t>(v)]; }
    // Position of v inside its own color class (classes keep vertex order).
    int class_position(int v) const { return position_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& class_a() const { return class_a_; }
    const std::vector<int>& class_b() const { return class_b_; }
    const std::vector<int>& neighbors(int v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }
    // Neighborhood of the a_pos-th A vertex as a mask over B positions.
    std::uint32_t b_neighbors_of_a(int a_pos) const {
        return a_to_b_[static_cast<std::size_t>(a_pos)];
    }
    std::uint32_t a_neighbors_of_b(int b_pos) const {
        return b_to_a_[static_cast<std::size_t>(b_pos)];
    }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  private:
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<bool> is_a_;
    std::vector<int> position_;
    std::vector<int> class_a_, class_b_;
    std::vector<std::uint32_t> a_to_b_, b_to_a_;
};

// Label of one noisy graph-state copy |psi_kappa> = prod_v Z_v^kappa_v |G>.
// mu holds the kappa bits of class-A vertices (bit k = k-th A vertex), nu
// those of class B.
struct GraphLabel {
    std::uint32_t mu = 0;
    std::uint32_t nu = 0;

    friend bool operator==(const GraphLabel&, const GraphLabel&) = default;
};

// Index of a label in a distribution vector: big-endian with mu's bit 0
// most significant, nu's bits below. Labels with mu bit 0 clear occupy the
// first half of the vector.
std::size_t label_index(GraphLabel l, std::size_t n_a, std::size_t n_b);
GraphLabel label_from_index(std::size_t idx, std::size_t n_a, std::size_t n_b);

// Label action of the two entangling subround gates on (member, target):
//   u1: member nu ^= target nu,  target mu ^= member mu
//   u2: member mu ^= target mu,  target nu ^= member nu
// u1 folds mu parities into the target and leaves every survivor's mu
// intact; u2 mirrors this for nu.
void u1_apply(GraphLabel& member, GraphLabel& target);
void u2_apply(GraphLabel& member, GraphLabel& target);

// Local-measurement transcript of a consumed copy: xi holds the X-basis
// outcomes of one color class, zeta the Z-basis outcomes of the other.
struct ReadoutOutcome {
    std::uint32_t xi = 0;
    std::uint32_t zeta = 0;
};

// M1 measures class A in X and class B in Z. zeta is uniformly random;
// xi_i = mu_i ^ parity(zeta over the B neighbors of i), so the announced
// pair determines mu and nothing else. M2 mirrors this for nu.
ReadoutOutcome m1_readout(const TwoColorable& g, GraphLabel label, Rng& rng);
std::uint32_t mu_from_m1(const TwoColorable& g, const ReadoutOutcome& o);
ReadoutOutcome m2_readout(const TwoColorable& g, GraphLabel label, Rng& rng);
std::uint32_t nu_from_m2(const TwoColorable& g, const ReadoutOutcome& o);

// Deterministic halves of the readouts, split out for cross-checking.
std::uint32_t m1_xi(const TwoColorable& g, GraphLabel label, std::uint32_t zeta);
std::uint32_t m2_xi(const TwoColorable& g, GraphLabel label, std::uint32_t zeta);

// Per-vertex marginals of a label distribution: a[i][b] is the probability
// that mu bit i equals b, b[j][b] likewise for nu.
struct Marginals {
    std::vector<std::array<double, 2>> a;
    std::vector<std::array<double, 2>> b;
};

Marginals marginals(std::span<const double> lambda, std::size_t n_a,
                    std::size_t n_b);

// lambda' = (1 - eps) lambda + eps / 2^N. eps = 0 returns lambda unchanged.
std::vector<double> mix_identity(std::span<const double> lambda, double eps);

// Inverse-CDF draw from a label distribution.
GraphLabel sample_label(std::span<const double> lambda, std::size_t n_a,
                        std::size_t n_b, Rng& rng);

}  // namespace enthash::graph
