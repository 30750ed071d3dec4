#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "nex/analysis.hpp"
#include "nex/errors.hpp"
#include "nex/gen.hpp"

#include <random>

using namespace nex;
using namespace nex::testfix;

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("1/3") == Rat(1, 3));
    CHECK(parse_rational("-2/4") == Rat(-1, 2));
    CHECK(parse_rational("7") == Rat(7));
    CHECK(parse_rational("0.25") == Rat(1, 4));
    CHECK(parse_rational("1e-6") == Rat(1, 1000000));
    CHECK(parse_rational("-3.5e2") == Rat(-350));
    CHECK(rat_str(Rat(3)) == "3");
    CHECK(rat_str(Rat(-1, 3)) == "-1/3");
    CHECK(pow2(-3) == Rat(1, 8));
    CHECK(pow2(4) == Rat(16));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("graph invariants are enforced") {
    CHECK_THROWS_AS(make_graph(2, {{0, 0, 1}}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, 1}, {1, 0, 2}}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 2, 1}}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, 0}}), InvariantError);

    WeightedGraph g = p4_graph();
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.max_weight() == 1);
    CHECK(g.weight(1, 0) == 1);
    CHECK(g.edge_index(2, 1).has_value());
    CHECK_FALSE(g.edge_index(0, 3).has_value());
}

TEST_CASE("matching and allocation invariants") {
    WeightedGraph g = p4_graph();
    CHECK_THROWS_AS(Matching(g, {{0, 1}, {1, 2}}), InvariantError);
    CHECK_THROWS_AS(Matching(g, {{0, 3}}), InvariantError);

    Matching m(g, {{0, 1}});
    CHECK(m.partner(0) == 1);
    CHECK(m.partner(2) == -1);
    CHECK(m.weight(g) == 1);

    Allocation x(4);
    x[0] = Rat(1, 2);
    x[1] = Rat(1, 2);
    CHECK(Outcome{g, m, x}.valid());
    x[2] = Rat(1); // unmatched vertex must have 0
    auto violations = Outcome{g, m, x}.validate();
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("unmatched vertex 2") != std::string::npos);

    // empty matching forces the all-zero allocation and is legal
    CHECK(Outcome{g, Matching(g, {}), Allocation(4)}.valid());
}

TEST_CASE("alternative") {
    Outcome p4 = p4_balanced();
    CHECK(alternative(p4, 1) == Rat(1, 3)); // 1 - 2/3

    WeightedGraph single = make_graph(2, {{0, 1, 2}});
    Outcome o = outcome_of(single, {{0, 1}}, {"0", "2"});
    CHECK(alternative(o, 0) == 0); // no unmatched neighbors

    Outcome uvz = uvz_outcome({"1/2", "1/2", "0"});
    CHECK(alternative(uvz, 1) == 5);
    CHECK(alternative_argmax(uvz, 1) == 2);
    CHECK_FALSE(alternative_argmax(o, 0).has_value());
    CHECK_THROWS_AS(alternative(p4, 9), InputError);
}

TEST_CASE("surplus") {
    WeightedGraph single = make_graph(2, {{0, 1, 2}});
    CHECK(surplus(outcome_of(single, {{0, 1}}, {"1", "1"}), 0, 1) == 2);

    CHECK(surplus(uvz_outcome({"1/2", "1/2", "0"}), 0, 1) == -4);
    CHECK(surplus(p4_balanced(), 0, 1) == Rat(2, 3));
    CHECK_THROWS_AS(surplus(p4_balanced(), 1, 2), InputError); // unmatched edge
}

TEST_CASE("classify_matched_edge") {
    EdgeStatus ab = classify_matched_edge(p4_balanced(), 0, 1);
    CHECK(ab.kind == EdgeStatusKind::MatchedBalanced);
    CHECK(ab.surplus == Rat(2, 3));
    CHECK(ab.imbalance == 0);

    EdgeStatus sat = classify_matched_edge(uvz_outcome({"0", "1", "0"}), 0, 1);
    CHECK(sat.kind == EdgeStatusKind::MatchedUnhappySaturated);

    EdgeStatus unsat = classify_matched_edge(uvz_outcome({"1/2", "1/2", "0"}), 0, 1);
    CHECK(unsat.kind == EdgeStatusKind::MatchedUnhappyUnsaturated);

    EdgeStatus quasi = classify_matched_edge(fig1b_p4(), 1, 2);
    CHECK(quasi.kind == EdgeStatusKind::MatchedQuasiBalancedNegativeSurplus);
    CHECK(quasi.surplus == -1);

    EdgeStatus other = classify_matched_edge(p4_outcome({"0", "1", "1", "0"}), 0, 1);
    CHECK(other.kind == EdgeStatusKind::MatchedOther);

    CHECK_THROWS_AS(classify_matched_edge(p4_balanced(), 1, 2), InputError);
}

TEST_CASE("classify_unmatched_edge") {
    EdgeStatus bc = classify_unmatched_edge(p4_balanced(), 1, 2);
    CHECK(bc.kind == EdgeStatusKind::UnmatchedStable);
    CHECK(bc.slack == Rat(1, 3));

    EdgeStatus vz = classify_unmatched_edge(uvz_outcome({"0", "1", "0"}), 1, 2);
    CHECK(vz.kind == EdgeStatusKind::UnmatchedUnstable);
    CHECK(vz.slack == -4);

    // boundary: slack exactly 0 is stable
    Outcome tri = outcome_of(triangle_graph(), {{0, 1}}, {"1", "0", "0"});
    EdgeStatus oz = classify_unmatched_edge(tri, 0, 2);
    CHECK(oz.slack == 0);
    CHECK(oz.kind == EdgeStatusKind::UnmatchedStable);

    CHECK_THROWS_AS(classify_unmatched_edge(p4_balanced(), 0, 1), InputError);
}

TEST_CASE("check_outcome on the balanced P4") {
    CheckReport r = check_outcome(p4_balanced(), Rat(0), Rat(0));
    CHECK(r.stable);
    CHECK(r.quasi_balanced);
    CHECK(r.balanced);
    CHECK(r.eps_quasi_balanced);
    CHECK(r.delta_stable);
    CHECK(r.eps_actual == 0);
    CHECK(r.min_slack == Rat(1, 3));
}

TEST_CASE("check_outcome rejects invalid outcomes with a violation list") {
    WeightedGraph g = p4_graph();
    Matching m(g, {{0, 1}});
    Allocation x(4);
    x[0] = Rat(-1);
    x[1] = Rat(2);
    CHECK_THROWS_AS(check_outcome(Outcome{g, m, x}, Rat(0), Rat(0)), InvariantError);
}

TEST_CASE("saturation is one-sided: balanced shares sum to the weight") {
    std::mt19937_64 rng(7);
    GenOptions opts;
    for (int trial = 0; trial < 50; ++trial) {
        WeightedGraph g = random_graph(rng, opts);
        Matching m = random_matching(rng, g);
        Allocation x = random_allocation(rng, g, m);
        Outcome o{g, m, x};
        REQUIRE(o.valid());
        for (const Edge& e : m.edges()) {
            Rat au = alternative(o, e.u), av = alternative(o, e.v);
            Rat s = surplus(o, e.u, e.v);
            CHECK((au + s / 2) + (av + s / 2) == g.weight(e.u, e.v));
        }
    }
}

TEST_CASE("matched classification is exhaustive and flags are consistent") {
    std::mt19937_64 rng(11);
    GenOptions opts;
    for (int trial = 0; trial < 80; ++trial) {
        WeightedGraph g = random_graph(rng, opts);
        Matching m = random_matching(rng, g);
        Outcome o{g, m, random_allocation(rng, g, m)};
        for (const Edge& e : m.edges()) {
            EdgeStatus st = classify_matched_edge(o, e.u, e.v);
            bool matched_kind = st.kind == EdgeStatusKind::MatchedBalanced ||
                                st.kind == EdgeStatusKind::MatchedQuasiBalancedNegativeSurplus ||
                                st.kind == EdgeStatusKind::MatchedUnhappySaturated ||
                                st.kind == EdgeStatusKind::MatchedUnhappyUnsaturated ||
                                st.kind == EdgeStatusKind::MatchedOther;
            CHECK(matched_kind);
        }
        CheckReport r = check_outcome(o, Rat(0), Rat(0));
        CHECK(r.balanced == (r.stable && r.quasi_balanced));
        CHECK(r.eps_quasi_balanced == r.quasi_balanced); // eps = 0
        CHECK(r.delta_stable == r.stable);
    }
}

TEST_CASE("eps_quasi_balanced and delta_stable are monotone in their tolerances") {
    std::mt19937_64 rng(13);
    GenOptions opts;
    for (int trial = 0; trial < 40; ++trial) {
        WeightedGraph g = random_graph(rng, opts);
        Matching m = random_matching(rng, g);
        Outcome o{g, m, random_allocation(rng, g, m)};
        CheckReport tight = check_outcome(o, Rat(0), Rat(0));
        CheckReport at_actual = check_outcome(o, tight.eps_actual, -tight.min_slack);
        CHECK(at_actual.eps_quasi_balanced);
        if (tight.min_slack < 0) CHECK(at_actual.delta_stable);
        CheckReport looser = check_outcome(o, tight.eps_actual + 1, -tight.min_slack + 1);
        CHECK(looser.eps_quasi_balanced);
        CHECK(looser.delta_stable);
    }
}
