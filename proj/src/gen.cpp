#include "nex/gen.hpp"

#include "nex/witness.hpp"

#include <algorithm>
#include <numeric>

namespace nex {

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

} // namespace

WeightedGraph random_graph(std::mt19937_64& rng, const GenOptions& options) {
    int n = options.min_n + static_cast<int>(draw(rng, static_cast<std::uint64_t>(options.max_n - options.min_n + 1)));
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    for (size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[draw(rng, i)]);

    int max_m = std::min<int>(options.max_m, static_cast<int>(pairs.size()));
    int m = max_m == 0 ? 0 : 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(max_m)));
    std::vector<std::pair<Edge, Rat>> edges;
    for (int i = 0; i < m; ++i)
        edges.emplace_back(pairs[static_cast<size_t>(i)],
                           Rat(1 + static_cast<long>(draw(rng, static_cast<std::uint64_t>(options.max_weight)))));
    std::sort(edges.begin(), edges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return WeightedGraph(n, std::move(edges));
}

Matching random_matching(std::mt19937_64& rng, const WeightedGraph& graph) {
    std::vector<int> order(static_cast<size_t>(graph.edge_count()));
    std::iota(order.begin(), order.end(), 0);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw(rng, i)]);

    std::vector<char> used(static_cast<size_t>(graph.vertex_count()), 0);
    std::vector<Edge> chosen;
    for (int idx : order) {
        const Edge& e = graph.edge(idx);
        if (used[static_cast<size_t>(e.u)] || used[static_cast<size_t>(e.v)]) continue;
        if (draw(rng, 4) == 0) continue; // leave some augmenting room
        used[static_cast<size_t>(e.u)] = used[static_cast<size_t>(e.v)] = 1;
        chosen.push_back(e);
    }
    return Matching(graph, chosen);
}

Allocation random_allocation(std::mt19937_64& rng, const WeightedGraph& graph, const Matching& matching) {
    Allocation x(graph.vertex_count());
    for (const Edge& e : matching.edges()) {
        const Rat& w = graph.weight(e.u, e.v);
        Rat frac = make_rat(static_cast<long>(rng() & ((1UL << 20) - 1)), 1L << 20);
        x[e.u] = w * frac;
        x[e.v] = w - x[e.u];
    }
    return x;
}

std::optional<std::pair<WeightedGraph, Matching>> balanced_instance(std::uint64_t seed,
                                                                    const GenOptions& options) {
    std::mt19937_64 rng(seed);
    WeightedGraph graph = random_graph(rng, options);
    if (graph.edge_count() == 0) return std::nullopt;
    auto frac = max_fractional_weight(graph);
    auto [int_weight, int_edges] = max_integral_matching(graph);
    if (int_weight != frac.weight || int_edges.empty()) return std::nullopt;
    return std::make_pair(graph, Matching(graph, int_edges));
}

std::optional<std::pair<WeightedGraph, Matching>> unbalanced_instance(std::uint64_t seed,
                                                                      const GenOptions& options) {
    std::mt19937_64 rng(seed);
    WeightedGraph graph = random_graph(rng, options);
    if (graph.edge_count() == 0) return std::nullopt;
    Matching matching = random_matching(rng, graph);
    if (matching.size() == 0) return std::nullopt;
    if (matching.weight(graph) >= max_fractional_weight(graph).weight) return std::nullopt;
    return std::make_pair(graph, matching);
}

} // namespace nex
