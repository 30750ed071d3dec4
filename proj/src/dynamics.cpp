#include "nex/dynamics.hpp"

#include "nex/analysis.hpp"
#include "nex/errors.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <string>

namespace nex {

SlackVector slack_vector(const Outcome& outcome) {
    SlackVector sv;
    sv.s.reserve(static_cast<size_t>(outcome.graph.vertex_count() + outcome.graph.edge_count()));
    for (int u = 0; u < outcome.graph.vertex_count(); ++u) sv.s.push_back(outcome.allocation[u]);
    for (int eidx = 0; eidx < outcome.graph.edge_count(); ++eidx) {
        const Edge& e = outcome.graph.edge(eidx);
        sv.s.push_back(outcome.allocation[e.u] + outcome.allocation[e.v] - outcome.graph.weight(eidx));
    }
    std::sort(sv.s.begin(), sv.s.end());
    return sv;
}

Rat potential_phi(const SlackVector& sv) {
    Rat phi(0);
    Rat coeff(1, 2);
    for (const Rat& si : sv.s) {
        phi += coeff * si;
        coeff /= 2;
    }
    return phi;
}

std::pair<Rat, Rat> proposed_balance(const Outcome& outcome, int u, int v) {
    if (!outcome.matching.contains(u, v))
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is not matched");
    const Rat& w = outcome.graph.weight(u, v);
    Rat au = alternative(outcome, u);
    Rat av = alternative(outcome, v);
    Rat s = w - au - av;
    Rat xu = au + s / 2;
    Rat xv = av + s / 2;
    if (xu < 0) return {Rat(0), w};
    if (xv < 0) return {w, Rat(0)};
    return {xu, xv};
}

Outcome balance_edge(const Outcome& outcome, int u, int v) {
    auto [xu, xv] = proposed_balance(outcome, u, v);
    Outcome next = outcome;
    next.allocation[u] = xu;
    next.allocation[v] = xv;
    return next;
}

bool exact_fixed_point(const Outcome& outcome) {
    for (const Edge& e : outcome.matching.edges()) {
        auto [xu, xv] = proposed_balance(outcome, e.u, e.v);
        if (xu != outcome.allocation[e.u] || xv != outcome.allocation[e.v]) return false;
    }
    return true;
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::EpsFixedPoint: return "eps-fixed point";
        case StopReason::MaxSteps: return "max steps";
        case StopReason::TraceExhausted: return "trace exhausted";
        case StopReason::NoMatchedEdges: return "no matched edges";
    }
    return "?";
}

RunResult run(const Outcome& start, const Scheduler& scheduler, const RunOptions& options) {
    if (options.stop_eps <= 0) throw InputError("stop_eps must be positive");
    if (options.max_steps <= 0) throw InputError("max_steps must be positive");

    RunResult result;
    result.outcome = start;
    result.trajectory.seed = scheduler.seed;
    result.trajectory.record_every = std::max(1, options.record_every);

    const auto& matched = start.matching.edges();
    int k = static_cast<int>(matched.size());
    if (k == 0) {
        result.reason = StopReason::NoMatchedEdges;
        return result;
    }
    if (scheduler.policy == Scheduler::Policy::Trace) {
        for (const Edge& e : scheduler.trace)
            if (!start.matching.contains(e.u, e.v))
                throw InputError("trace entry (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") is not a matched edge");
    }

    const long nm = start.graph.vertex_count() + start.graph.edge_count();
    const Rat phi_scale = pow2(-nm);
    const Rat two_w = 2 * start.graph.max_weight();
    const Rat skip_threshold = options.stop_eps / 2;

    std::mt19937_64 engine(scheduler.seed);
    std::vector<bool> skipped_since_change(static_cast<size_t>(k), false);
    int skipped_count = 0;
    int rr_pos = 0;
    size_t trace_pos = 0;

    Rat phi_current;
    if (options.audit_phi) phi_current = potential_phi(slack_vector(result.outcome));

    result.reason = StopReason::MaxSteps;
    for (long step = 1; step <= options.max_steps; ++step) {
        int pick;
        if (scheduler.policy == Scheduler::Policy::Trace) {
            if (trace_pos >= scheduler.trace.size()) {
                result.reason = StopReason::TraceExhausted;
                break;
            }
            const Edge& e = scheduler.trace[trace_pos++];
            pick = static_cast<int>(std::lower_bound(matched.begin(), matched.end(), e) - matched.begin());
        } else if (scheduler.policy == Scheduler::Policy::SeededRandom) {
            pick = static_cast<int>(engine() % static_cast<std::uint64_t>(k));
        } else {
            pick = rr_pos;
            rr_pos = (rr_pos + 1) % k;
        }

        const Edge& e = matched[static_cast<size_t>(pick)];
        TrajectoryStep rec;
        rec.step = step;
        rec.edge = e;
        rec.pre_u = result.outcome.allocation[e.u];
        rec.pre_v = result.outcome.allocation[e.v];

        auto [xu, xv] = proposed_balance(result.outcome, e.u, e.v);
        Rat disp = std::max(rat_abs(xu - rec.pre_u), rat_abs(xv - rec.pre_v));

        bool skip = disp <= skip_threshold;
        if (skip) {
            rec.skipped = true;
            rec.eps_step = Rat(0);
            rec.post_u = rec.pre_u;
            rec.post_v = rec.pre_v;
            if (options.audit_phi) {
                rec.phi_before = phi_current;
                rec.phi_after = phi_current;
            }
            if (!skipped_since_change[static_cast<size_t>(pick)]) {
                skipped_since_change[static_cast<size_t>(pick)] = true;
                ++skipped_count;
            }
        } else {
            rec.skipped = false;
            rec.eps_step = disp;
            rec.post_u = xu;
            rec.post_v = xv;
            result.outcome.allocation[e.u] = xu;
            result.outcome.allocation[e.v] = xv;
            ++result.trajectory.applied_steps;
            std::fill(skipped_since_change.begin(), skipped_since_change.end(), false);
            skipped_count = 0;
            if (options.audit_phi) {
                Rat phi_next = potential_phi(slack_vector(result.outcome));
                rec.phi_before = phi_current;
                rec.phi_after = phi_next;
                if (phi_next - phi_current < disp * phi_scale)
                    throw InvariantError("potential increase below eps*2^-(n+m) at step " +
                                         std::to_string(step));
                if (phi_next > two_w)
                    throw InvariantError("potential exceeds 2W at step " + std::to_string(step));
                phi_current = phi_next;
                ++result.trajectory.audited_steps;
            }
        }

        ++result.trajectory.total_steps;
        if (step % result.trajectory.record_every == 0 || skipped_count == k)
            result.trajectory.steps.push_back(std::move(rec));

        if (skipped_count == k) {
            result.reason = StopReason::EpsFixedPoint;
            break;
        }
    }
    return result;
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
    out << "step\tedge_u\tedge_v\tskipped\teps_step\tphi_before\tphi_after\n";
    for (const TrajectoryStep& st : trajectory.steps) {
        out << st.step << '\t' << st.edge.u << '\t' << st.edge.v << '\t' << (st.skipped ? 1 : 0) << '\t'
            << rat_str(st.eps_step) << '\t' << (st.phi_before ? rat_str(*st.phi_before) : "-") << '\t'
            << (st.phi_after ? rat_str(*st.phi_after) : "-") << '\n';
    }
}

} // namespace nex
