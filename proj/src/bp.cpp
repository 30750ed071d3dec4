#include "nex/bp.hpp"

#include "nex/errors.hpp"

#include <ostream>
#include <string>

namespace nex {

MessageState bp_init(const WeightedGraph& graph) {
    MessageState state;
    state.fwd.assign(static_cast<size_t>(graph.edge_count()), Rat(0));
    state.rev.assign(static_cast<size_t>(graph.edge_count()), Rat(0));
    state.t = 0;
    return state;
}

const Rat& message(const MessageState& state, const WeightedGraph& graph, int u, int v) {
    auto idx = graph.edge_index(u, v);
    if (!idx) throw InputError("no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    const Edge& e = graph.edge(*idx);
    return e.u == u ? state.fwd[static_cast<size_t>(*idx)] : state.rev[static_cast<size_t>(*idx)];
}

MessageState bp_step(const MessageState& state, const WeightedGraph& graph) {
    MessageState next = state;
    next.t = state.t + 1;
    const Rat w_max = graph.max_weight();
    auto incoming = [&](int q, int eidx) -> const Rat& { // a_{q->.} along edge eidx
        const Edge& e = graph.edge(eidx);
        return e.u == q ? state.fwd[static_cast<size_t>(eidx)] : state.rev[static_cast<size_t>(eidx)];
    };
    auto update = [&](int u, int v) {
        Rat best(0);
        for (const auto& [q, eidx] : graph.neighbors(u)) {
            if (q == v) continue;
            Rat offer = graph.weight(eidx) - incoming(q, eidx);
            if (offer > best) best = offer;
        }
        if (best > w_max)
            throw InvariantError("bp message exceeds the maximum weight bound");
        return best;
    };
    for (int eidx = 0; eidx < graph.edge_count(); ++eidx) {
        const Edge& e = graph.edge(eidx);
        next.fwd[static_cast<size_t>(eidx)] = update(e.u, e.v);
        next.rev[static_cast<size_t>(eidx)] = update(e.v, e.u);
    }
    return next;
}

BpResult bp_run(const WeightedGraph& graph, long max_iters) {
    if (graph.vertex_count() == 0) throw InputError("bp_run requires a nonempty graph");
    if (max_iters <= 0) throw InputError("max_iters must be positive");

    BpResult result;
    MessageState current = bp_init(graph);
    for (long t = 1; t <= max_iters; ++t) {
        MessageState next = bp_step(current, graph);
        if (next.same_messages(current)) {
            result.status = BpResult::Status::Converged;
            result.iterations = t;
            result.messages = std::move(next);
            break;
        }
        current = std::move(next);
    }
    if (result.status == BpResult::Status::Diverged) {
        result.iterations = max_iters;
        result.messages = std::move(current);
        return result;
    }

    std::vector<Edge> selected;
    for (int eidx = 0; eidx < graph.edge_count(); ++eidx) {
        const Edge& e = graph.edge(eidx);
        Rat sum = result.messages.fwd[static_cast<size_t>(eidx)] +
                  result.messages.rev[static_cast<size_t>(eidx)];
        if (sum <= graph.weight(eidx)) selected.push_back(e);
    }
    try {
        result.matching = Matching(graph, selected);
    } catch (const InvariantError&) {
        throw AmbiguousOptimumError(
            "bp extraction selected edges sharing a vertex (non-unique optimum); "
            "perturb the weights and retry");
    }
    return result;
}

WeightedGraph perturb_weights(const WeightedGraph& graph, const Rat& eta) {
    if (eta <= 0) throw InputError("perturbation eta must be positive");
    std::vector<std::pair<Edge, Rat>> edges;
    edges.reserve(static_cast<size_t>(graph.edge_count()));
    for (int eidx = 0; eidx < graph.edge_count(); ++eidx)
        edges.emplace_back(graph.edge(eidx), graph.weight(eidx) + Rat(eidx) * eta);
    return WeightedGraph(graph.vertex_count(), std::move(edges));
}

void write_bp_messages(std::ostream& out, const WeightedGraph& graph, const BpResult& result) {
    for (int eidx = 0; eidx < graph.edge_count(); ++eidx) {
        const Edge& e = graph.edge(eidx);
        out << "msg " << e.u << ' ' << e.v << ' '
            << rat_str(result.messages.fwd[static_cast<size_t>(eidx)]) << "\n";
        out << "msg " << e.v << ' ' << e.u << ' '
            << rat_str(result.messages.rev[static_cast<size_t>(eidx)]) << "\n";
    }
    if (result.matching)
        for (const Edge& e : result.matching->edges()) out << "match " << e.u << ' ' << e.v << "\n";
}

} // namespace nex
