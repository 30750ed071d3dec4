#include "nex/graph.hpp"

#include "nex/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace nex {

WeightedGraph::WeightedGraph(int n, std::vector<std::pair<Edge, Rat>> edges) : n_(n) {
    if (n < 0) throw InvariantError("vertex count must be nonnegative");
    adjacency_.assign(static_cast<size_t>(n), {});
    std::set<Edge> seen;
    edges_.reserve(edges.size());
    weights_.reserve(edges.size());
    for (auto& [e, w] : edges) {
        if (e.u == e.v) throw InvariantError("self-loop at vertex " + std::to_string(e.u));
        if (!has_vertex(e.u) || !has_vertex(e.v))
            throw InvariantError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") references unknown vertex");
        if (!seen.insert(e).second)
            throw InvariantError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        if (w <= 0)
            throw InvariantError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") has non-positive weight");
        int idx = static_cast<int>(edges_.size());
        adjacency_[static_cast<size_t>(e.u)].emplace_back(e.v, idx);
        adjacency_[static_cast<size_t>(e.v)].emplace_back(e.u, idx);
        edges_.push_back(e);
        weights_.push_back(std::move(w));
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

const Rat& WeightedGraph::weight(int u, int v) const {
    auto idx = edge_index(u, v);
    if (!idx)
        throw InputError("no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    return weights_[static_cast<size_t>(*idx)];
}

std::optional<int> WeightedGraph::edge_index(int u, int v) const {
    if (!has_vertex(u) || !has_vertex(v)) return std::nullopt;
    const auto& nbrs = adjacency_[static_cast<size_t>(u)];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), std::make_pair(v, 0));
    if (it != nbrs.end() && it->first == v) return it->second;
    return std::nullopt;
}

const std::vector<std::pair<int, int>>& WeightedGraph::neighbors(int u) const {
    if (!has_vertex(u)) throw InputError("unknown vertex " + std::to_string(u));
    return adjacency_[static_cast<size_t>(u)];
}

Rat WeightedGraph::max_weight() const {
    Rat w(0);
    for (const Rat& x : weights_)
        if (x > w) w = x;
    return w;
}

bool WeightedGraph::integer_weights() const {
    for (const Rat& x : weights_)
        if (x.get_den() != 1) return false;
    return true;
}

WeightedGraph make_graph(int n, const std::vector<std::tuple<int, int, long>>& edges) {
    std::vector<std::pair<Edge, Rat>> list;
    list.reserve(edges.size());
    for (const auto& [u, v, w] : edges) list.emplace_back(Edge(u, v), Rat(w));
    return WeightedGraph(n, std::move(list));
}

} // namespace nex
