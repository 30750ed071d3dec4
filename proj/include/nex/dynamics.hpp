#pragma once

#include "nex/outcome.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace nex {

/// Edge-selection policy. RoundRobin and SeededRandom never starve a matched
/// edge; Trace is a finite, possibly starving schedule for adversarial runs.
struct Scheduler {
    enum class Policy { RoundRobin, SeededRandom, Trace };

    Policy policy = Policy::RoundRobin;
    std::uint64_t seed = 0;            // SeededRandom (std::mt19937_64, index = engine() % |M|)
    std::vector<Edge> trace;           // Trace: every entry must be a matched edge

    static Scheduler round_robin() { return {}; }
    static Scheduler seeded_random(std::uint64_t seed) {
        return {Policy::SeededRandom, seed, {}};
    }
    static Scheduler from_trace(std::vector<Edge> trace) {
        return {Policy::Trace, 0, std::move(trace)};
    }
};

/// Sorted multiset {x_v : v} u {x_u + x_v - w_uv : uv in E}, length n + m,
/// entries in [-W, 2W].
struct SlackVector {
    std::vector<Rat> s;
};

SlackVector slack_vector(const Outcome& outcome);

/// Phi(s) = sum_{i=1..n+m} 2^-i s_i; always <= 2W.
Rat potential_phi(const SlackVector& sv);

/// The proposed post-update values (x_u, x_v) of one balancing step, clamping
/// per the dynamics when the Nash split would go negative.
std::pair<Rat, Rat> proposed_balance(const Outcome& outcome, int u, int v);

/// One balancing step on matched edge uv; all other vertices unchanged.
/// Idempotent: the alternatives of u and v do not depend on x_u, x_v.
Outcome balance_edge(const Outcome& outcome, int u, int v);

/// True when no matched edge would move under balance_edge.
bool exact_fixed_point(const Outcome& outcome);

struct TrajectoryStep {
    long step = 0;        // 1-based
    Edge edge;
    bool skipped = false;
    Rat eps_step;         // infinity-norm displacement applied (0 when skipped)
    Rat pre_u, pre_v, post_u, post_v;
    std::optional<Rat> phi_before, phi_after; // present when the run audits Phi
};

struct Trajectory {
    std::vector<TrajectoryStep> steps; // sampled every record_every steps (plus the last)
    long total_steps = 0;              // every scheduler selection, skipped or applied
    long applied_steps = 0;
    long audited_steps = 0;            // applied steps whose exact Phi inequality was checked
    std::uint64_t seed = 0;            // scheduler seed (SeededRandom)
    int record_every = 1;
};

enum class StopReason { EpsFixedPoint, MaxSteps, TraceExhausted, NoMatchedEdges };

const char* to_string(StopReason reason);

struct RunOptions {
    Rat stop_eps = Rat(1, 1000000); // skip updates displacing <= stop_eps/2
    long max_steps = 1000000;
    int record_every = 1;
    bool audit_phi = true; // compute Phi per step and check exact monotonicity
};

struct RunResult {
    Outcome outcome;
    Trajectory trajectory;
    StopReason reason = StopReason::NoMatchedEdges;
};

/// Run the edge-balancing dynamics until a full skip-only pass over the
/// matched edges (eps-fixed point), max_steps, or trace exhaustion.
RunResult run(const Outcome& start, const Scheduler& scheduler, const RunOptions& options);

/// Delimited-text export: step edge_u edge_v skipped eps_step phi_before phi_after.
void write_trajectory(std::ostream& out, const Trajectory& trajectory);

} // namespace nex
