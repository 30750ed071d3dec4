#include "nex/analysis.hpp"

#include "nex/errors.hpp"

#include <string>

namespace nex {

const char* to_string(EdgeStatusKind kind) {
    switch (kind) {
        case EdgeStatusKind::MatchedBalanced: return "MatchedBalanced";
        case EdgeStatusKind::MatchedQuasiBalancedNegativeSurplus: return "MatchedQuasiBalancedNegativeSurplus";
        case EdgeStatusKind::MatchedUnhappySaturated: return "MatchedUnhappySaturated";
        case EdgeStatusKind::MatchedUnhappyUnsaturated: return "MatchedUnhappyUnsaturated";
        case EdgeStatusKind::MatchedOther: return "MatchedOther";
        case EdgeStatusKind::UnmatchedStable: return "UnmatchedStable";
        case EdgeStatusKind::UnmatchedUnstable: return "UnmatchedUnstable";
    }
    return "?";
}

Rat alternative(const Outcome& outcome, int u) {
    if (!outcome.graph.has_vertex(u)) throw InputError("unknown vertex " + std::to_string(u));
    Rat best(0);
    for (const auto& [v, eidx] : outcome.graph.neighbors(u)) {
        if (outcome.matching.contains(u, v)) continue;
        Rat offer = outcome.graph.weight(eidx) - outcome.allocation[v];
        if (offer > best) best = offer;
    }
    return best;
}

std::optional<int> alternative_argmax(const Outcome& outcome, int u) {
    Rat best = alternative(outcome, u);
    if (best == 0) return std::nullopt;
    for (const auto& [v, eidx] : outcome.graph.neighbors(u)) {
        if (outcome.matching.contains(u, v)) continue;
        if (outcome.graph.weight(eidx) - outcome.allocation[v] == best) return v;
    }
    return std::nullopt; // unreachable: the max is attained by some neighbor
}

namespace {

void require_matched(const Outcome& outcome, int u, int v, bool expect_matched) {
    if (!outcome.graph.has_edge(u, v))
        throw InputError("no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    bool matched = outcome.matching.contains(u, v);
    if (matched != expect_matched)
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is " +
                         (matched ? "matched" : "not matched"));
}

} // namespace

Rat surplus(const Outcome& outcome, int u, int v) {
    require_matched(outcome, u, v, true);
    return outcome.graph.weight(u, v) - alternative(outcome, u) - alternative(outcome, v);
}

EdgeStatus classify_matched_edge(const Outcome& outcome, int u, int v) {
    require_matched(outcome, u, v, true);
    const Rat& w = outcome.graph.weight(u, v);
    Rat au = alternative(outcome, u);
    Rat av = alternative(outcome, v);
    Rat s = w - au - av;
    Rat share_u = au + s / 2;
    Rat share_v = av + s / 2;
    Rat imbalance = rat_abs((outcome.allocation[u] - au) - (outcome.allocation[v] - av));

    EdgeStatus status{EdgeStatusKind::MatchedOther, s, imbalance, Rat(0)};
    if (share_u < 0 || share_v < 0) {
        // Unhappy. At most one share is negative (they sum to w >= 0); the edge is
        // saturated when the negative-share endpoint sits at 0 and the other at w.
        int zero_end = share_u < 0 ? u : v;
        int full_end = share_u < 0 ? v : u;
        bool saturated = outcome.allocation[zero_end] == 0 && outcome.allocation[full_end] == w;
        status.kind = saturated ? EdgeStatusKind::MatchedUnhappySaturated
                                : EdgeStatusKind::MatchedUnhappyUnsaturated;
    } else if (imbalance == 0) {
        status.kind = s >= 0 ? EdgeStatusKind::MatchedBalanced
                             : EdgeStatusKind::MatchedQuasiBalancedNegativeSurplus;
    }
    return status;
}

EdgeStatus classify_unmatched_edge(const Outcome& outcome, int u, int v) {
    require_matched(outcome, u, v, false);
    Rat slack = outcome.allocation[u] + outcome.allocation[v] - outcome.graph.weight(u, v);
    return EdgeStatus{slack >= 0 ? EdgeStatusKind::UnmatchedStable : EdgeStatusKind::UnmatchedUnstable,
                      Rat(0), Rat(0), slack};
}

CheckReport check_outcome(const Outcome& outcome, const Rat& eps, const Rat& delta) {
    auto violations = outcome.validate();
    if (!violations.empty()) {
        std::string msg = "invalid outcome:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw InvariantError(msg);
    }

    CheckReport report;
    report.stable = true;
    report.quasi_balanced = true;
    report.eps_quasi_balanced = true;
    report.delta_stable = true;
    report.eps_actual = Rat(0);
    report.min_slack = Rat(0);

    bool have_unmatched = false;
    for (int eidx = 0; eidx < outcome.graph.edge_count(); ++eidx) {
        const Edge& e = outcome.graph.edge(eidx);
        if (outcome.matching.contains(e.u, e.v)) {
            EdgeStatus st = classify_matched_edge(outcome, e.u, e.v);
            if (st.imbalance > 0) report.quasi_balanced = false;
            if (st.imbalance > eps) report.eps_quasi_balanced = false;
            if (!report.worst_imbalance_edge || st.imbalance > report.eps_actual) {
                report.eps_actual = st.imbalance;
                report.worst_imbalance_edge = e;
            }
        } else {
            EdgeStatus st = classify_unmatched_edge(outcome, e.u, e.v);
            if (st.slack < 0) report.stable = false;
            if (st.slack < -delta) report.delta_stable = false;
            if (!have_unmatched || st.slack < report.min_slack) {
                report.min_slack = st.slack;
                report.worst_slack_edge = e;
                have_unmatched = true;
            }
        }
    }
    report.balanced = report.stable && report.quasi_balanced;
    report.n_eps_actual = Rat(outcome.graph.vertex_count()) * report.eps_actual;
    return report;
}

} // namespace nex
