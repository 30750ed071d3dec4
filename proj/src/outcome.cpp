#include "nex/outcome.hpp"

#include "nex/errors.hpp"

#include <algorithm>

namespace nex {

Matching::Matching(const WeightedGraph& graph, const std::vector<Edge>& edges)
    : partner_(static_cast<size_t>(graph.vertex_count()), -1) {
    edges_ = edges;
    std::sort(edges_.begin(), edges_.end());
    for (const Edge& e : edges_) {
        if (!graph.has_edge(e.u, e.v))
            throw InvariantError("matching edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") is not a graph edge");
        if (partner_[static_cast<size_t>(e.u)] >= 0 || partner_[static_cast<size_t>(e.v)] >= 0)
            throw InvariantError("matching edges share vertex " +
                                 std::to_string(partner_[static_cast<size_t>(e.u)] >= 0 ? e.u : e.v));
        partner_[static_cast<size_t>(e.u)] = e.v;
        partner_[static_cast<size_t>(e.v)] = e.u;
    }
}

int Matching::partner(int u) const {
    if (u < 0 || u >= static_cast<int>(partner_.size())) return -1;
    return partner_[static_cast<size_t>(u)];
}

Rat Matching::weight(const WeightedGraph& graph) const {
    Rat total(0);
    for (const Edge& e : edges_) total += graph.weight(e.u, e.v);
    return total;
}

std::vector<std::string> Outcome::validate() const {
    std::vector<std::string> violations;
    int n = graph.vertex_count();
    if (allocation.size() != n) {
        violations.push_back("allocation has " + std::to_string(allocation.size()) +
                             " entries for " + std::to_string(n) + " vertices");
        return violations;
    }
    for (int u = 0; u < n; ++u) {
        if (allocation[u] < 0)
            violations.push_back("x_" + std::to_string(u) + " = " + rat_str(allocation[u]) + " < 0");
        if (!matching.covers(u) && allocation[u] != 0)
            violations.push_back("unmatched vertex " + std::to_string(u) + " has x = " +
                                 rat_str(allocation[u]) + " != 0");
    }
    for (const Edge& e : matching.edges()) {
        Rat sum = allocation[e.u] + allocation[e.v];
        const Rat& w = graph.weight(e.u, e.v);
        if (sum != w)
            violations.push_back("matched edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") has x_u + x_v = " + rat_str(sum) + " != w = " + rat_str(w));
    }
    return violations;
}

Outcome make_outcome(WeightedGraph graph, Matching matching, Allocation allocation) {
    Outcome outcome{std::move(graph), std::move(matching), std::move(allocation)};
    auto violations = outcome.validate();
    if (!violations.empty()) {
        std::string msg = "invalid outcome:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw InvariantError(msg);
    }
    return outcome;
}

} // namespace nex
