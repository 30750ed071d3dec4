#pragma once

#include "nex/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nex {

/// Undirected edge, stored with u < v.
struct Edge {
    int u = -1;
    int v = -1;

    Edge() = default;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

/// Simple undirected graph with positive exact-rational edge weights.
/// Vertices are dense ids 0..n-1. Instance files restrict weights to integers >= 1;
/// perturbed graphs (bp module) carry non-integer weights.
/// Immutable after construction; neighbor lists iterate in ascending vertex id.
class WeightedGraph {
public:
    WeightedGraph() = default;

    /// Validates: ids in range, no self-loops, no duplicate edges, weights > 0.
    /// Edge order is preserved as given (it defines e_index for perturbation).
    WeightedGraph(int n, std::vector<std::pair<Edge, Rat>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int index) const { return edges_[static_cast<size_t>(index)]; }
    const Rat& weight(int index) const { return weights_[static_cast<size_t>(index)]; }
    const Rat& weight(int u, int v) const;

    bool has_vertex(int u) const { return u >= 0 && u < n_; }
    std::optional<int> edge_index(int u, int v) const;
    bool has_edge(int u, int v) const { return edge_index(u, v).has_value(); }

    /// Neighbors of u as (neighbor id, edge index), ascending by neighbor id.
    const std::vector<std::pair<int, int>>& neighbors(int u) const;

    /// W = max edge weight (0 for edgeless graphs).
    Rat max_weight() const;

    bool integer_weights() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Rat> weights_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

/// Convenience builder for integer-weighted graphs in tests and generators.
WeightedGraph make_graph(int n, const std::vector<std::tuple<int, int, long>>& edges);

} // namespace nex
