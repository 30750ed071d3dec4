#pragma once

#include "nex/outcome.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace nex {

/// Parsed instance document: a graph, optionally a matching, optionally an
/// allocation. See docs/formats.md for the grammar. Instance files carry
/// integer weights >= 1; allocations are "p/q" rationals (integer shorthand ok).
struct Instance {
    WeightedGraph graph;
    std::optional<Matching> matching;
    std::optional<Allocation> allocation;

    /// Requires matching and allocation to be present and valid together.
    Outcome to_outcome() const;
};

Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::string& path);

void emit_instance(std::ostream& out, const Instance& instance);

/// Appendix-B tight family: an unweighted lollipop on 2k+1 vertices
/// v_0, u_1, v_1, ..., u_k, v_k with the cycle u_1, v_1, ..., u_k, v_k,
/// pendant v_0 on u_1, M = {u_j v_j}, eps = 4/(k+2)^2, and the allocation
/// x_{u_j} = 1 - j(k+2-j) eps, x_{v_j} = j(k+2-j) eps. Vertex ids:
/// v_0 = 0, u_j = 2j-1, v_j = 2j. Checked on construction: the allocation is
/// exactly (2 eps)-quasi-balanced and the v_0-u_1 instability gap is exactly
/// (k+1) eps. Requires k >= 2 (k = 1 would need a 2-cycle, not a simple graph).
Instance gen_tight_lollipop(int k);

/// The family's eps parameter 4/(k^2 + 4k + 4).
Rat tight_lollipop_eps(int k);

enum class InitPreset {
    Zeros,  // lower-id endpoint of each matched edge gets 0, the other w
    Equal,  // w/2 each
    Random, // seeded dyadic split per matched edge
};

Allocation initial_allocation(const WeightedGraph& graph, const Matching& matching, InitPreset preset,
                              std::uint64_t seed = 0);

} // namespace nex
