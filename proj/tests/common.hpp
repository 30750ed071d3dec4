#pragma once

#include "nex/analysis.hpp"
#include "nex/outcome.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace nex::testfix {

inline Outcome outcome_of(const WeightedGraph& graph, const std::vector<Edge>& matched,
                          std::initializer_list<std::string> xs) {
    Matching m(graph, matched);
    Allocation x(graph.vertex_count());
    int i = 0;
    for (const auto& s : xs) x[i++] = parse_rational(s);
    return make_outcome(graph, m, x);
}

/// P4 a-b-c-d (0-1-2-3), unit weights, M = {ab, cd}.
inline WeightedGraph p4_graph() {
    return make_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
}

inline Outcome p4_outcome(std::initializer_list<std::string> xs) {
    return outcome_of(p4_graph(), {{0, 1}, {2, 3}}, xs);
}

/// The balanced P4 state from the four-node footnote: x = (1/3, 2/3, 2/3, 1/3).
inline Outcome p4_balanced() { return p4_outcome({"1/3", "2/3", "2/3", "1/3"}); }

/// Path u-v-z (0-1-2) with w_uv = 1 matched and w_vz = 5.
inline WeightedGraph uvz_graph() {
    return make_graph(3, {{0, 1, 1}, {1, 2, 5}});
}

inline Outcome uvz_outcome(std::initializer_list<std::string> xs) {
    return outcome_of(uvz_graph(), {{0, 1}}, xs);
}

/// Path a-b-c (0-1-2) with w_ab = 1 matched, w_bc = 2; the saturated fixed
/// point x = (0, 1, 0) has no balanced outcome (max fractional weight 2 > 1).
inline Outcome abc_saturated() {
    return outcome_of(make_graph(3, {{0, 1, 1}, {1, 2, 2}}), {{0, 1}}, {"0", "1", "0"});
}

/// Unit triangle with M = {01}.
inline WeightedGraph triangle_graph() {
    return make_graph(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
}

/// Quasi-balanced unstable fixed point on the unit triangle: x = (1/2, 1/2, 0).
inline Outcome triangle_fixed() {
    return outcome_of(triangle_graph(), {{0, 1}}, {"1/2", "1/2", "0"});
}

/// Quasi-balanced but unstable exact fixed point on unit P4 with the middle
/// edge matched: x = (0, 1/2, 1/2, 0); explores to an augmenting path.
inline Outcome fig1b_p4() {
    return outcome_of(p4_graph(), {{1, 2}}, {"0", "1/2", "1/2", "0"});
}

/// Stem a-b plus triangle c-d-e hanging off c (vertices 0..4, unit weights);
/// M = {bc, de}; x = (0, 3/4, 1/4, 1/2, 1/2) is a quasi-balanced unstable
/// fixed point whose exploration yields a flower (gap 1/2).
inline Outcome flower_fixed() {
    return outcome_of(make_graph(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {2, 4, 1}, {3, 4, 1}}),
                      {{1, 2}, {3, 4}}, {"0", "3/4", "1/4", "1/2", "1/2"});
}

/// Two triangles {0,1,2} and {3,4,5} (edge weight 2) joined by the matched
/// bridge 0-3 (weight 1); M = {03, 12, 45}; x symmetric (1/2 on the bridge,
/// 1 in the triangles) is a quasi-balanced unstable fixed point whose
/// exploration yields a bicycle (gap 1).
inline Outcome bicycle_fixed() {
    return outcome_of(make_graph(6, {{0, 1, 2}, {0, 2, 2}, {0, 3, 1}, {1, 2, 2},
                                     {3, 4, 2}, {3, 5, 2}, {4, 5, 2}}),
                      {{0, 3}, {1, 2}, {4, 5}},
                      {"1/2", "1", "1", "1/2", "1", "1"});
}

/// Pendant 0-1 (weight 1, matched) into triangle {1,2,3} with weights 5;
/// M = {01, 23}; x = (0, 1, 5/2, 5/2) is a fixed point with the unhappy
/// saturated edge 01; forward exploration closes a blossom on a matched stem.
inline Outcome blossom_matched_stem_fixed() {
    return outcome_of(make_graph(4, {{0, 1, 1}, {1, 2, 5}, {1, 3, 5}, {2, 3, 5}}),
                      {{0, 1}, {2, 3}}, {"0", "1", "5/2", "5/2"});
}

} // namespace nex::testfix
