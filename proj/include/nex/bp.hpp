#pragma once

#include "nex/outcome.hpp"

#include <iosfwd>
#include <optional>

namespace nex {

/// Max-product offer messages a_{u->v}, one per ordered adjacent pair, all 0 at t = 0.
struct MessageState {
    // per edge index: fwd = message u->v, rev = v->u (u < v as stored in the graph)
    std::vector<Rat> fwd, rev;
    long t = 0;

    bool same_messages(const MessageState& other) const { return fwd == other.fwd && rev == other.rev; }
};

MessageState bp_init(const WeightedGraph& graph);

/// Message sent by u toward v, by storage convention.
const Rat& message(const MessageState& state, const WeightedGraph& graph, int u, int v);

/// One synchronous update: a_{u->v} = max{ max_{q~u, q!=v} (w_qu - a_{q->u}), 0 }.
/// An empty inner max yields 0. Messages stay within [0, W].
MessageState bp_step(const MessageState& state, const WeightedGraph& graph);

struct BpResult {
    enum class Status { Converged, Diverged };
    Status status = Status::Diverged;
    MessageState messages; // fixed messages when converged, else the last state
    std::optional<Matching> matching;
    long iterations = 0;   // first t with state(t) == state(t-1), or max_iters when diverged
};

/// Iterate until two consecutive states are exactly equal or max_iters is hit.
/// On convergence, extracts {u,v} in M iff a*_{u->v} + a*_{v->u} <= w_uv and
/// validates the result; throws AmbiguousOptimumError if the rule selects
/// edges sharing a vertex (advising weight perturbation).
BpResult bp_run(const WeightedGraph& graph, long max_iters);

/// Deterministic tie-breaking perturbation w_e <- w_e + e_index * eta
/// (0-based edge index, caller-supplied tiny positive eta).
WeightedGraph perturb_weights(const WeightedGraph& graph, const Rat& eta);

/// Converged message dump: one "msg u v value" line per ordered pair, then the
/// extracted matching as "match u v" lines.
void write_bp_messages(std::ostream& out, const WeightedGraph& graph, const BpResult& result);

} // namespace nex
