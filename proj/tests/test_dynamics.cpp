#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "nex/dynamics.hpp"
#include "nex/errors.hpp"
#include "nex/gen.hpp"

#include <random>
#include <sstream>

using namespace nex;
using namespace nex::testfix;

namespace {

Rat inf_norm_to(const Outcome& o, std::initializer_list<std::string> target) {
    Rat worst(0);
    int i = 0;
    for (const auto& t : target) {
        Rat d = rat_abs(o.allocation[i++] - parse_rational(t));
        if (d > worst) worst = d;
    }
    return worst;
}

} // namespace

TEST_CASE("balance_edge worked examples") {
    WeightedGraph single = make_graph(2, {{0, 1, 2}});
    Outcome o = outcome_of(single, {{0, 1}}, {"0", "2"});
    Outcome b = balance_edge(o, 0, 1);
    CHECK(b.allocation[0] == 1);
    CHECK(b.allocation[1] == 1);

    Outcome uvz = balance_edge(uvz_outcome({"1/2", "1/2", "0"}), 0, 1);
    CHECK(uvz.allocation[0] == 0); // clamped: the Nash split would be negative
    CHECK(uvz.allocation[1] == 1);

    Outcome p4 = balance_edge(p4_outcome({"0", "1", "1", "0"}), 0, 1);
    CHECK(p4.allocation[0] == Rat(1, 2));
    CHECK(p4.allocation[1] == Rat(1, 2));
    CHECK(p4.allocation[2] == 1); // untouched

    CHECK_THROWS_AS(balance_edge(p4, 1, 2), InputError);
}

TEST_CASE("balance_edge is idempotent and validity-preserving") {
    std::mt19937_64 rng(3);
    GenOptions opts;
    for (int trial = 0; trial < 60; ++trial) {
        WeightedGraph g = random_graph(rng, opts);
        Matching m = random_matching(rng, g);
        Outcome o{g, m, random_allocation(rng, g, m)};
        for (const Edge& e : m.edges()) {
            Outcome once = balance_edge(o, e.u, e.v);
            CHECK(once.valid());
            Outcome twice = balance_edge(once, e.u, e.v);
            CHECK(twice.allocation[e.u] == once.allocation[e.u]);
            CHECK(twice.allocation[e.v] == once.allocation[e.v]);
        }
    }
}

TEST_CASE("slack vector worked examples") {
    WeightedGraph single = make_graph(2, {{0, 1, 2}});
    SlackVector s1 = slack_vector(outcome_of(single, {{0, 1}}, {"0", "2"}));
    CHECK(s1.s == std::vector<Rat>{Rat(0), Rat(0), Rat(2)});

    SlackVector s2 = slack_vector(outcome_of(single, {{0, 1}}, {"1", "1"}));
    CHECK(s2.s == std::vector<Rat>{Rat(0), Rat(1), Rat(1)});

    SlackVector s3 = slack_vector(p4_balanced());
    std::vector<Rat> expected{Rat(0), Rat(0), Rat(1, 3), Rat(1, 3), Rat(1, 3), Rat(2, 3), Rat(2, 3)};
    CHECK(s3.s == expected);
}

TEST_CASE("potential worked examples and the equality-case step") {
    CHECK(potential_phi(SlackVector{{Rat(0), Rat(0), Rat(2)}}) == Rat(1, 4));
    CHECK(potential_phi(SlackVector{{Rat(0), Rat(1), Rat(1)}}) == Rat(3, 8));

    // balancing the w=2 edge from (0,2) raises Phi by exactly eps*2^-(n+m)
    WeightedGraph single = make_graph(2, {{0, 1, 2}});
    Outcome o = outcome_of(single, {{0, 1}}, {"0", "2"});
    RunOptions opts;
    opts.stop_eps = Rat(1, 1000000);
    RunResult r = run(o, Scheduler::round_robin(), opts);
    REQUIRE(r.trajectory.steps.size() >= 2);
    const TrajectoryStep& st = r.trajectory.steps[0];
    CHECK_FALSE(st.skipped);
    CHECK(st.eps_step == 1);
    CHECK(*st.phi_after - *st.phi_before == Rat(1, 8));
}

TEST_CASE("slack vector bounds and potential cap") {
    std::mt19937_64 rng(5);
    GenOptions opts;
    for (int trial = 0; trial < 40; ++trial) {
        WeightedGraph g = random_graph(rng, opts);
        Matching m = random_matching(rng, g);
        Outcome o{g, m, random_allocation(rng, g, m)};
        SlackVector sv = slack_vector(o);
        REQUIRE(static_cast<int>(sv.s.size()) == g.vertex_count() + g.edge_count());
        Rat w = g.max_weight();
        for (size_t i = 0; i + 1 < sv.s.size(); ++i) CHECK(sv.s[i] <= sv.s[i + 1]);
        CHECK(sv.s.front() >= -w);
        CHECK(sv.s.back() <= 2 * w);
        CHECK(potential_phi(sv) <= 2 * w);
    }
}

TEST_CASE("run converges on P4 to the one-third/two-thirds point") {
    RunOptions opts;
    opts.stop_eps = Rat(1, 1000000);
    for (auto scheduler : {Scheduler::round_robin(), Scheduler::seeded_random(42)}) {
        RunResult r = run(p4_outcome({"0", "1", "1", "0"}), scheduler, opts);
        CHECK(r.reason == StopReason::EpsFixedPoint);
        CHECK(inf_norm_to(r.outcome, {"1/3", "2/3", "2/3", "1/3"}) <= opts.stop_eps);
        CHECK(r.outcome.valid());
    }
}

TEST_CASE("run reaches the saturated fixed point on the u-v-z path") {
    RunOptions opts;
    opts.stop_eps = Rat(1, 1000000);
    for (auto start : {std::initializer_list<std::string>{"1/2", "1/2", "0"},
                       std::initializer_list<std::string>{"1", "0", "0"},
                       std::initializer_list<std::string>{"0", "1", "0"}}) {
        RunResult r = run(uvz_outcome(start), Scheduler::round_robin(), opts);
        CHECK(r.reason == StopReason::EpsFixedPoint);
        CHECK(r.outcome.allocation[0] == 0);
        CHECK(r.outcome.allocation[1] == 1);
        CHECK(exact_fixed_point(r.outcome));
        EdgeStatus st = classify_matched_edge(r.outcome, 0, 1);
        CHECK(st.kind == EdgeStatusKind::MatchedUnhappySaturated);
    }
}

TEST_CASE("run on an already-balanced edge applies zero steps") {
    WeightedGraph single = make_graph(2, {{0, 1, 2}});
    RunResult r = run(outcome_of(single, {{0, 1}}, {"1", "1"}), Scheduler::round_robin(), {});
    CHECK(r.reason == StopReason::EpsFixedPoint);
    CHECK(r.trajectory.applied_steps == 0);
    CHECK(r.trajectory.total_steps == 1);
}

TEST_CASE("run stop reasons and input validation") {
    WeightedGraph g = p4_graph();
    RunResult none = run(Outcome{g, Matching(g, {}), Allocation(4)}, Scheduler::round_robin(), {});
    CHECK(none.reason == StopReason::NoMatchedEdges);

    RunOptions tiny;
    tiny.stop_eps = Rat(1, 1000000000);
    tiny.max_steps = 3;
    RunResult capped = run(p4_outcome({"0", "1", "1", "0"}), Scheduler::round_robin(), tiny);
    CHECK(capped.reason == StopReason::MaxSteps);
    CHECK(capped.trajectory.total_steps == 3);

    Scheduler trace = Scheduler::from_trace({{0, 1}, {0, 1}});
    RunResult traced = run(p4_outcome({"0", "1", "1", "0"}), trace, {});
    CHECK(traced.reason == StopReason::TraceExhausted);
    CHECK(traced.outcome.allocation[2] == 1); // cd starved, never balanced

    Scheduler bad = Scheduler::from_trace({{1, 2}});
    CHECK_THROWS_AS(run(p4_outcome({"0", "1", "1", "0"}), bad, {}), InputError);

    RunOptions zero_eps;
    zero_eps.stop_eps = Rat(0);
    CHECK_THROWS_AS(run(p4_outcome({"0", "1", "1", "0"}), Scheduler::round_robin(), zero_eps),
                    InputError);
}

TEST_CASE("non-starving schedulers select every matched edge") {
    std::mt19937_64 rng(17);
    GenOptions opts;
    WeightedGraph g = random_graph(rng, opts);
    Matching m = random_matching(rng, g);
    if (m.size() == 0) return;
    Outcome o{g, m, random_allocation(rng, g, m)};
    RunOptions ropts;
    ropts.stop_eps = Rat(1, mpz_class("1000000000000000000000000"));
    ropts.max_steps = 64 * m.size();
    ropts.audit_phi = false;
    for (auto sched : {Scheduler::round_robin(), Scheduler::seeded_random(9)}) {
        RunResult r = run(o, sched, ropts);
        std::set<std::pair<int, int>> seen;
        for (const auto& st : r.trajectory.steps) seen.insert({st.edge.u, st.edge.v});
        CHECK(static_cast<int>(seen.size()) == m.size());
    }
}

TEST_CASE("moving endpoint has the strictly smaller slack before a real step") {
    std::mt19937_64 rng(23);
    GenOptions opts;
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        WeightedGraph g = random_graph(rng, opts);
        Matching m = random_matching(rng, g);
        Outcome o{g, m, random_allocation(rng, g, m)};
        for (const Edge& e : m.edges()) {
            auto [xu, xv] = proposed_balance(o, e.u, e.v);
            if (xu == o.allocation[e.u]) continue;
            int up = xu > o.allocation[e.u] ? e.u : e.v;
            int down = up == e.u ? e.v : e.u;
            CHECK(o.allocation[up] - alternative(o, up) < o.allocation[down] - alternative(o, down));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("every recorded non-skipped step satisfies the exact potential inequality") {
    GenOptions opts;
    long applied = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        std::mt19937_64 grng(seed * 7919 + 1);
        WeightedGraph g = random_graph(grng, opts);
        Matching m = random_matching(grng, g);
        if (m.size() == 0) continue;
        Rat scale = pow2(-(g.vertex_count() + g.edge_count()));
        for (int init = 0; init < 6; ++init) { // fresh starts: most runs pin exactly within a few sweeps
            Outcome o{g, m, random_allocation(grng, g, m)};
            RunOptions ropts;
            ropts.stop_eps = Rat(1, 100000000);
            ropts.max_steps = 400;
            RunResult r = run(o, Scheduler::seeded_random(seed ^ static_cast<std::uint64_t>(init)), ropts);
            Rat last_phi;
            bool have_last = false;
            for (const auto& st : r.trajectory.steps) {
                REQUIRE(st.phi_before.has_value());
                if (!st.skipped) CHECK(*st.phi_after - *st.phi_before >= st.eps_step * scale);
                if (have_last) CHECK(*st.phi_before >= last_phi); // non-decreasing across the run
                last_phi = *st.phi_after;
                have_last = true;
                if (!st.skipped) ++applied;
            }
            CHECK(r.trajectory.audited_steps == r.trajectory.applied_steps);
        }
    }
    CHECK(applied > 400);
}

TEST_CASE("eps-fixed stop leaves every matched edge within a half-eps update") {
    std::mt19937_64 rng(31);
    GenOptions opts;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        std::mt19937_64 grng(seed);
        WeightedGraph g = random_graph(grng, opts);
        Matching m = random_matching(grng, g);
        if (m.size() == 0) continue;
        Outcome o{g, m, random_allocation(grng, g, m)};
        RunOptions ropts;
        ropts.stop_eps = Rat(1, 10000);
        ropts.max_steps = 200000;
        ropts.audit_phi = false;
        RunResult r = run(o, Scheduler::seeded_random(seed), ropts);
        REQUIRE(r.reason == StopReason::EpsFixedPoint);
        for (const Edge& e : m.edges()) {
            auto [xu, xv] = proposed_balance(r.outcome, e.u, e.v);
            Rat disp = std::max(rat_abs(xu - r.outcome.allocation[e.u]),
                                rat_abs(xv - r.outcome.allocation[e.v]));
            CHECK(disp <= ropts.stop_eps / 2);
        }
    }
}

TEST_CASE("trajectory export format") {
    RunOptions opts;
    opts.stop_eps = Rat(1, 100);
    RunResult r = run(p4_outcome({"0", "1", "1", "0"}), Scheduler::round_robin(), opts);
    std::ostringstream out;
    write_trajectory(out, r.trajectory);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "step\tedge_u\tedge_v\tskipped\teps_step\tphi_before\tphi_after");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), '\t') == 6);
    }
    CHECK(rows == r.trajectory.total_steps);
}
