#pragma once

#include "nex/outcome.hpp"

#include <optional>

namespace nex {

/// Exhaustive per-edge classification. The transient kinds (UnhappyUnsaturated,
/// Other) never appear at fixed points but are named so trajectory audits can
/// observe every intermediate state.
enum class EdgeStatusKind {
    MatchedBalanced,
    MatchedQuasiBalancedNegativeSurplus,
    MatchedUnhappySaturated,
    MatchedUnhappyUnsaturated,
    MatchedOther,
    UnmatchedStable,
    UnmatchedUnstable,
};

const char* to_string(EdgeStatusKind kind);

struct EdgeStatus {
    EdgeStatusKind kind;
    Rat surplus;    // matched edges only
    Rat imbalance;  // matched edges only: |(x_u - a_u) - (x_v - a_v)|
    Rat slack;      // unmatched edges only: x_u + x_v - w
};

/// Best alternative of u: max{0, max over unmatched-edge neighbors v of (w_uv - x_v)}.
Rat alternative(const Outcome& outcome, int u);

/// Neighbor attaining alternative(u), lowest id; nullopt when the alternative is 0.
std::optional<int> alternative_argmax(const Outcome& outcome, int u);

/// Surplus s_uv = w_uv - alternative(u) - alternative(v); uv must be matched.
Rat surplus(const Outcome& outcome, int u, int v);

EdgeStatus classify_matched_edge(const Outcome& outcome, int u, int v);
EdgeStatus classify_unmatched_edge(const Outcome& outcome, int u, int v);

struct CheckReport {
    bool stable = false;
    bool quasi_balanced = false;
    bool balanced = false;  // = stable && quasi_balanced
    bool eps_quasi_balanced = false;
    bool delta_stable = false;

    Rat eps_actual;   // max matched-edge imbalance (0 when no matched edges)
    Rat min_slack;    // min unmatched-edge slack (0 when none)
    Rat n_eps_actual; // n * eps_actual, the Prop-6 bound for this outcome

    std::optional<Edge> worst_imbalance_edge;
    std::optional<Edge> worst_slack_edge;
};

/// Full outcome report at tolerances eps (imbalance) and delta (instability).
/// Throws InvariantError listing every violation when the outcome is invalid.
CheckReport check_outcome(const Outcome& outcome, const Rat& eps, const Rat& delta);

} // namespace nex
