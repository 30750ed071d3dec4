#pragma once

#include "nex/analysis.hpp"
#include "nex/outcome.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace nex {

/// Why one direction of the exploration stopped.
enum class TrailEnd {
    RevisitedVertex,  // stepped onto an already-explored vertex (closes a cycle)
    UnmatchedVertex,  // a matched-step index holds an unmatched vertex
    ZeroAlternative,  // an alternative-step index has alternative 0
    NotExplored,      // forward-only exploration: the backward loop was not run
};

const char* to_string(TrailEnd end);

/// The walk discovered by the exploration algorithm. Vertices carry "paper
/// indices" lo()..hi() with u_0 at origin; trail edge i joins u_i and u_{i+1}
/// and is matched exactly when i is even. When an end revisits, the final
/// vertex duplicates the one at the recorded closure index (its first
/// occurrence); no other vertex repeats.
struct ExplorationTrail {
    std::vector<int> verts;
    int origin = 0; // array offset of u_0

    TrailEnd forward_end = TrailEnd::NotExplored;
    TrailEnd backward_end = TrailEnd::NotExplored;
    int forward_closure = 0;  // paper index s when forward_end == RevisitedVertex
    int backward_closure = 0; // paper index t when backward_end == RevisitedVertex

    int lo() const { return -origin; }
    int hi() const { return static_cast<int>(verts.size()) - 1 - origin; }
    int vertex(int paper_index) const { return verts[static_cast<size_t>(paper_index + origin)]; }
};

struct ExploreOptions {
    bool forward_only = false;    // run only the first loop (the Prop-4 certification view)
    bool random_ties = false;     // pick a random alternative-attaining neighbor instead of lowest id
    std::uint64_t tie_seed = 0;
};

/// Run the exploration pseudocode from u0: forward even steps follow the
/// matching, odd steps follow an edge attaining the alternative (lowest id on
/// ties); backward with parities swapped; either direction breaks on a
/// revisit, an unmatched vertex at a matched step, or a zero alternative.
ExplorationTrail explore(const Outcome& outcome, int u0, const ExploreOptions& options = {});

enum class StructureKind {
    Capped,
    Lollipop,
    AugmentingPath,
    Flower,
    Bicycle,
    Pretzel,
    BlossomWithMatchedStem,
};

const char* to_string(StructureKind kind);

/// Figure-2 class plus landmark trail segments (paper-index ranges):
///   Lollipop:               a = the even alternating cycle
///   AugmentingPath:         a = the alternating path
///   Flower:                 a = stem (open end first), b = blossom
///   BlossomWithMatchedStem: a = stem [0..s], b = blossom [s..r]
///   Bicycle:                a = first blossom, b = second blossom (stem between)
///   Pretzel:                even alternating cycle = edges of a plus edges of b
struct StructureClass {
    StructureKind kind = StructureKind::Capped;
    int a_lo = 0, a_hi = 0;
    int b_lo = 0, b_hi = 0;
};

StructureClass classify_structure(const ExplorationTrail& trail, const Matching& matching);

/// Half-integral fractional matching: y_e in {0, 1/2, 1} per graph edge.
struct FractionalMatching {
    std::vector<Rat> y;

    FractionalMatching() = default;
    explicit FractionalMatching(int m) : y(static_cast<size_t>(m), Rat(0)) {}
};

/// Build y per the construction matching the class: symmetric difference for
/// paths and even cycles, the flower pattern (1 on unmatched stem edges, 1/2 on
/// the blossom), the bicycle pattern (1/2 on both blossoms), and the
/// blossom-with-matched-stem pattern. Throws InconclusiveError for Capped.
FractionalMatching build_fractional_witness(const ExplorationTrail& trail, const StructureClass& cls,
                                            const Outcome& outcome);

/// Checks sum_{e at v} y_e <= 1 for every vertex (InvariantError naming the
/// first offender) and returns sum y_e w_e.
Rat verify_fractional_matching(const WeightedGraph& graph, const FractionalMatching& y);

struct MaxFracOptions {
    int edge_cap = 24;        // refuse larger instances (CapacityError)
    bool count_optima = false; // exact maximizer count (disables the equal-value prune)
};

struct MaxFracResult {
    Rat weight;
    FractionalMatching best;
    unsigned long long optima = 0; // exact count when requested, else a lower bound of 1
};

/// Exhaustive maximizer of sum y_e w_e over half-integral y with vertex degree
/// sums <= 1, by branch-and-prune over edges.
MaxFracResult max_fractional_weight(const WeightedGraph& graph, const MaxFracOptions& options = {});

/// Same search restricted to integral y: a maximum-weight matching.
std::pair<Rat, std::vector<Edge>> max_integral_matching(const WeightedGraph& graph,
                                                        const MaxFracOptions& options = {});

/// Fact-3 decision: a balanced outcome exists on M iff M attains the maximum
/// fractional weight.
bool has_balanced_outcome(const WeightedGraph& graph, const Matching& matching,
                          const MaxFracOptions& options = {});

struct StructureWitness {
    ExplorationTrail trail;
    StructureClass cls;
    std::optional<FractionalMatching> fractional_witness;
    std::optional<Rat> weight_gap; // > 0 when fractional_witness is present
    Rat weight_matching;
    Rat weight_witness;
};

struct CertifyResult {
    enum class Status { WitnessFound, BalancedNoDefect, Inconclusive };
    Status status = Status::Inconclusive;
    std::optional<StructureWitness> witness;
    std::string detail;      // human-readable margins / reason
    Rat eps_quasi;           // max matched-edge imbalance (excluding unhappy edges)
    Rat delta;               // max unmatched instability violation
    Rat gamma;               // unhappiness magnitude of the chosen edge (Prop-4 path)
    int start_vertex = -1;
};

/// Automatic certification: Prop-4 start (non-saturated endpoint of the most
/// unhappy matched edge, forward-only) when an unhappy edge exists, else
/// Prop-5 start (matched endpoint of the most unstable unmatched edge),
/// with margin gates before trusting the structure and an exact weight-gap
/// check before reporting a witness.
CertifyResult certify_no_balanced_outcome(const Outcome& outcome);

/// Witness report: class, trail, y per edge, and the weights of M and y.
void write_witness_report(std::ostream& out, const Outcome& outcome, const StructureWitness& witness);

} // namespace nex
