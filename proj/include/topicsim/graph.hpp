#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace topicsim {

enum class EdgeTag : std::uint8_t { lattice, rewired };

struct Edge {
    std::uint32_t u;
    std::uint32_t v;
    EdgeTag tag;
};

struct WsParams {
    std::uint32_t n = 1000;      // node count
    std::uint32_t k = 10;        // even ring degree, k/2 neighbors per side
    double p_rewire = 0.1;       // per-edge rewiring probability
    std::uint64_t seed = 42;
};

// Distance along the ring 0..n-1.
inline std::uint32_t ring_distance(std::uint32_t n, std::uint32_t u, std::uint32_t v) {
    const std::uint32_t d = u > v ? u - v : v - u;
    return d < n - d ? d : n - d;
}

// Compressed adjacency, neighbors sorted ascending per node.
class Adjacency {
public:
    Adjacency() = default;
    Adjacency(std::uint32_t n, std::span<const Edge> edges, bool lattice_only);

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(offsets_.size()) - 1; }
    std::uint32_t degree(std::uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }
    std::span<const std::uint32_t> neighbors(std::uint32_t u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
    std::uint64_t arc_count() const { return targets_.size(); }

private:
    std::vector<std::uint32_t> offsets_{0};
    std::vector<std::uint32_t> targets_;
};

// Undirected graph with per-edge lattice/rewired provenance. Immutable after
// construction and safe to share across threads.
class Network {
public:
    Network(WsParams params, std::vector<Edge> edges);

    const WsParams& params() const { return params_; }
    std::uint32_t node_count() const { return params_.n; }
    std::span<const Edge> edges() const { return edges_; }
    const Adjacency& adjacency() const { return adj_; }
    const Adjacency& lattice_adjacency() const { return lattice_adj_; }

    std::uint64_t edge_count() const { return edges_.size(); }
    std::uint64_t rewired_count() const { return rewired_count_; }

private:
    WsParams params_;
    std::vector<Edge> edges_;
    Adjacency adj_;
    Adjacency lattice_adj_;
    std::uint64_t rewired_count_ = 0;
};

// Watts-Strogatz construction. Starts from the ring lattice where every node
// connects to its k/2 nearest neighbors per side, then visits each edge
// (u, u+offset) in ascending (u, offset) order and, with probability p_rewire,
// replaces it by (u, w) with w drawn uniformly outside {u} and u's current
// neighborhood. Edges that cannot be rewired (no candidate target left) stay
// in place. Deterministic for a fixed seed.
//
// Throws validation_error unless n > k >= 2, k even, 0 <= p_rewire <= 1.
Network build_ws(std::uint32_t n, std::uint32_t k, double p_rewire, std::uint64_t seed);
Network build_ws(const WsParams& params);

// Subgraph keeping only lattice-tagged edges; all nodes retained.
Network lattice_view(const Network& net);

// Edge-list text format. First line:
//   # ws n=<n> k=<k> p=<p> seed=<seed>
// then optional further '#' lines, then one edge per line: "u v L" or "u v R".
void save_network(const Network& net, std::ostream& out,
                  std::span<const std::string> extra_header = {});
Network load_network(std::istream& in);

} // namespace topicsim
