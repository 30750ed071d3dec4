#pragma once

#include "nex/graph.hpp"
#include "nex/rational.hpp"

#include <string>
#include <vector>

namespace nex {

/// A matching, validated against a graph at construction: a set of existing
/// edges no two of which share a vertex. partner() is the symmetric closure.
class Matching {
public:
    Matching() = default;
    Matching(const WeightedGraph& graph, const std::vector<Edge>& edges);

    /// Matched partner of u, or -1.
    int partner(int u) const;
    bool covers(int u) const { return partner(u) >= 0; }
    bool contains(int u, int v) const { return u >= 0 && partner(u) == v; }

    /// Matched edges, ascending (u, v) order.
    const std::vector<Edge>& edges() const { return edges_; }
    int size() const { return static_cast<int>(edges_.size()); }

    Rat weight(const WeightedGraph& graph) const;

private:
    std::vector<int> partner_;
    std::vector<Edge> edges_;
};

/// Vertex allocation x. Valid with respect to (graph, matching) when x >= 0,
/// x_u + x_v = w_uv exactly on matched edges, and x_u = 0 off the matching.
struct Allocation {
    std::vector<Rat> x;

    Allocation() = default;
    explicit Allocation(int n) : x(static_cast<size_t>(n), Rat(0)) {}

    const Rat& operator[](int u) const { return x[static_cast<size_t>(u)]; }
    Rat& operator[](int u) { return x[static_cast<size_t>(u)]; }
    int size() const { return static_cast<int>(x.size()); }
};

/// The dynamic state: a graph, a matching on it, and a valid allocation.
struct Outcome {
    WeightedGraph graph;
    Matching matching;
    Allocation allocation;

    /// All violated invariants, empty when valid.
    std::vector<std::string> validate() const;
    bool valid() const { return validate().empty(); }
};

/// Throwing variant: returns the outcome or raises InvariantError listing every violation.
Outcome make_outcome(WeightedGraph graph, Matching matching, Allocation allocation);

} // namespace nex
