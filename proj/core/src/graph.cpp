#include "enthash/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <istream>
#include <set>
#include <stdexcept>

namespace enthash::graph {

TwoColorable TwoColorable::from_edges(std::size_t n_vertices,
                                      const std::vector<std::pair<int, int>>& edges) {
    if (n_vertices == 0 || n_vertices > 32)
        throw std::invalid_argument("vertex count not in 1..32");
    TwoColorable g;
    g.adjacency_.assign(n_vertices, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_vertices ||
            static_cast<std::size_t>(v) >= n_vertices)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop is an odd cycle");
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second) continue;
        g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
        g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
        g.edges_.push_back({key.first, key.second});
    }
    for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
    std::sort(g.edges_.begin(), g.edges_.end());

    // BFS 2-coloring; the lowest vertex of each component gets color A.
    std::vector<int> color(n_vertices, -1);
    for (std::size_t start = 0; start < n_vertices; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::deque<int> queue{static_cast<int>(start)};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.adjacency_[static_cast<std::size_t>(v)]) {
                if (color[static_cast<std::size_t>(w)] == -1) {
                    color[static_cast<std::size_t>(w)] =
                        1 - color[static_cast<std::size_t>(v)];
                    queue.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] ==
                           color[static_cast<std::size_t>(v)]) {
                    throw std::invalid_argument("graph has an odd cycle");
                }
            }
        }
    }

    g.is_a_.resize(n_vertices);
    g.position_.resize(n_vertices);
    for (std::size_t v = 0; v < n_vertices; ++v) {
        g.is_a_[v] = color[v] == 0;
        if (g.is_a_[v]) {
            g.position_[v] = static_cast<int>(g.class_a_.size());
            g.class_a_.push_back(static_cast<int>(v));
        } else {
            g.position_[v] = static_cast<int>(g.class_b_.size());
            g.class_b_.push_back(static_cast<int>(v));
        }
    }
    g.a_to_b_.assign(g.class_a_.size(), 0);
    g.b_to_a_.assign(g.class_b_.size(), 0);
    for (auto [u, v] : g.edges_) {
        int a = g.is_a_[static_cast<std::size_t>(u)] ? u : v;
        int b = g.is_a_[static_cast<std::size_t>(u)] ? v : u;
        g.a_to_b_[static_cast<std::size_t>(g.position_[static_cast<std::size_t>(a)])] |=
            1u << g.position_[static_cast<std::size_t>(b)];
        g.b_to_a_[static_cast<std::size_t>(g.position_[static_cast<std::size_t>(b)])] |=
            1u << g.position_[static_cast<std::size_t>(a)];
    }
    return g;
}

TwoColorable TwoColorable::parse(std::istream& in) {
    std::size_t n = 0;
    if (!(in >> n)) throw std::invalid_argument("graph file: missing vertex count");
    std::vector<std::pair<int, int>> edges;
    int u = 0, v = 0;
    while (true) {
        if (!(in >> u)) {
            if (in.eof()) break;
            throw std::invalid_argument("graph file: bad edge line");
        }
        if (!(in >> v))
            throw std::invalid_argument("graph file: dangling edge endpoint");
        edges.push_back({u, v});
    }
    return from_edges(n, edges);
}

std::size_t label_index(GraphLabel l, std::size_t n_a, std::size_t n_b) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n_a; ++k)
        if ((l.mu >> k) & 1u) idx |= std::size_t{1} << (n_a + n_b - 1 - k);
    for (std::size_t k = 0; k < n_b; ++k)
        if ((l.nu >> k) & 1u) idx |= std::size_t{1} << (n_b - 1 - k);
    return idx;
}

GraphLabel label_from_index(std::size_t idx, std::size_t n_a, std::size_t n_b) {
    GraphLabel l;
    for (std::size_t k = 0; k < n_a; ++k)
        if ((idx >> (n_a + n_b - 1 - k)) & 1u) l.mu |= 1u << k;
    for (std::size_t k = 0; k < n_b; ++k)
        if ((idx >> (n_b - 1 - k)) & 1u) l.nu |= 1u << k;
    return l;
}

void u1_apply(GraphLabel& member, GraphLabel& target) {
    member.nu ^= target.nu;
    target.mu ^= member.mu;
}

void u2_apply(GraphLabel& member, GraphLabel& target) {
    member.mu ^= target.mu;
    target.nu ^= member.nu;
}

std::uint32_t m1_xi(const TwoColorable& g, GraphLabel label, std::uint32_t zeta) {
    std::uint32_t xi = 0;
    for (std::size_t i = 0; i < g.n_a(); ++i) {
        unsigned bit = (label.mu >> i) & 1u;
        bit ^= static_cast<unsigned>(
                   std::popcount(zeta & g.b_neighbors_of_a(static_cast<int>(i)))) &
               1u;
        xi |= bit << i;
    }
    return xi;
}

std::uint32_t m2_xi(const TwoColorable& g, GraphLabel label, std::uint32_t zeta) {
    std::uint32_t xi = 0;
    for (std::size_t j = 0; j < g.n_b(); ++j) {
        unsigned bit = (label.nu >> j) & 1u;
        bit ^= static_cast<unsigned>(
                   std::popcount(zeta & g.a_neighbors_of_b(static_cast<int>(j)))) &
               1u;
        xi |= bit << j;
    }
    return xi;
}

ReadoutOutcome m1_readout(const TwoColorable& g, GraphLabel label, Rng& rng) {
    ReadoutOutcome o;
    o.zeta = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << g.n_b()));
    o.xi = m1_xi(g, label, o.zeta);
    return o;
}

std::uint32_t mu_from_m1(const TwoColorable& g, const ReadoutOutcome& o) {
    std::uint32_t mu = 0;
    for (std::size_t i = 0; i < g.n_a(); ++i) {
        unsigned bit = (o.xi >> i) & 1u;
        bit ^= static_cast<unsigned>(
                   std::popcount(o.zeta & g.b_neighbors_of_a(static_cast<int>(i)))) &
               1u;
        mu |= bit << i;
    }
    return mu;
}

ReadoutOutcome m2_readout(const TwoColorable& g, GraphLabel label, Rng& rng) {
    ReadoutOutcome o;
    o.zeta = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << g.n_a()));
    o.xi = m2_xi(g, label, o.zeta);
    return o;
}

std::uint32_t nu_from_m2(const TwoColorable& g, const ReadoutOutcome& o) {
    std::uint32_t nu = 0;
    for (std::size_t j = 0; j < g.n_b(); ++j) {
        unsigned bit = (o.xi >> j) & 1u;
        bit ^= static_cast<unsigned>(
                   std::popcount(o.zeta & g.a_neighbors_of_b(static_cast<int>(j)))) &
               1u;
        nu |= bit << j;
    }
    return nu;
}

namespace {

void check_size(std::span<const double> lambda, std::size_t n_a, std::size_t n_b) {
    if (lambda.size() != std::size_t{1} << (n_a + n_b))
        throw std::invalid_argument("label distribution has wrong length");
}

}  // namespace

Marginals marginals(std::span<const double> lambda, std::size_t n_a, std::size_t n_b) {
    check_size(lambda, n_a, n_b);
    Marginals m;
    m.a.assign(n_a, {0.0, 0.0});
    m.b.assign(n_b, {0.0, 0.0});
    for (std::size_t idx = 0; idx < lambda.size(); ++idx) {
        GraphLabel l = label_from_index(idx, n_a, n_b);
        for (std::size_t i = 0; i < n_a; ++i)
            m.a[i][(l.mu >> i) & 1u] += lambda[idx];
        for (std::size_t j = 0; j < n_b; ++j)
            m.b[j][(l.nu >> j) & 1u] += lambda[idx];
    }
    return m;
}

std::vector<double> mix_identity(std::span<const double> lambda, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps not in [0, 1]");
    std::vector<double> out(lambda.begin(), lambda.end());
    if (eps == 0.0) return out;
    double uniform = eps / static_cast<double>(lambda.size());
    for (double& v : out) v = (1.0 - eps) * v + uniform;
    return out;
}

GraphLabel sample_label(std::span<const double> lambda, std::size_t n_a,
                        std::size_t n_b, Rng& rng) {
    check_size(lambda, n_a, n_b);
    double u = rng.uniform();
    double acc = 0;
    std::size_t idx = lambda.size() - 1;
    for (std::size_t x = 0; x < lambda.size(); ++x) {
        acc += lambda[x];
        if (u < acc) {
            idx = x;
            break;
        }
    }
    return label_from_index(idx, n_a, n_b);
}

}  // namespace enthash::graph
