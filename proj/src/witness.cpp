#include "nex/witness.hpp"

#include "nex/errors.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <set>
#include <string>

namespace nex {

const char* to_string(TrailEnd end) {
    switch (end) {
        case TrailEnd::RevisitedVertex: return "revisited-vertex";
        case TrailEnd::UnmatchedVertex: return "unmatched-vertex";
        case TrailEnd::ZeroAlternative: return "zero-alternative";
        case TrailEnd::NotExplored: return "not-explored";
    }
    return "?";
}

const char* to_string(StructureKind kind) {
    switch (kind) {
        case StructureKind::Capped: return "Capped";
        case StructureKind::Lollipop: return "Lollipop";
        case StructureKind::AugmentingPath: return "AugmentingPath";
        case StructureKind::Flower: return "Flower";
        case StructureKind::Bicycle: return "Bicycle";
        case StructureKind::Pretzel: return "Pretzel";
        case StructureKind::BlossomWithMatchedStem: return "BlossomWithMatchedStem";
    }
    return "?";
}

namespace {

int pick_attaining(const Outcome& outcome, int u, const Rat& alpha, const ExploreOptions& options,
                   std::mt19937_64& rng) {
    std::vector<int> attaining;
    for (const auto& [v, eidx] : outcome.graph.neighbors(u)) {
        if (outcome.matching.contains(u, v)) continue;
        if (outcome.graph.weight(eidx) - outcome.allocation[v] == alpha) attaining.push_back(v);
    }
    if (attaining.empty())
        throw InvariantError("no neighbor attains the alternative of vertex " + std::to_string(u));
    if (options.random_ties && attaining.size() > 1)
        return attaining[static_cast<size_t>(rng() % attaining.size())];
    return attaining.front();
}

} // namespace

ExplorationTrail explore(const Outcome& outcome, int u0, const ExploreOptions& options) {
    if (!outcome.graph.has_vertex(u0)) throw InputError("unknown vertex " + std::to_string(u0));

    const int n = outcome.graph.vertex_count();
    std::vector<char> explored(static_cast<size_t>(n), 0);
    std::vector<int> first_index(static_cast<size_t>(n), 0);
    std::mt19937_64 rng(options.tie_seed);

    std::vector<int> forward;  // u_0 .. u_r
    TrailEnd forward_end = TrailEnd::NotExplored;
    int forward_closure = 0;
    {
        int cur = u0;
        for (int i = 0;; ++i) {
            if (explored[static_cast<size_t>(cur)]) {
                forward_end = TrailEnd::RevisitedVertex;
                forward_closure = first_index[static_cast<size_t>(cur)];
                forward.push_back(cur);
                break;
            }
            explored[static_cast<size_t>(cur)] = 1;
            first_index[static_cast<size_t>(cur)] = i;
            forward.push_back(cur);
            if (i % 2 == 0) {
                int p = outcome.matching.partner(cur);
                if (p < 0) {
                    forward_end = TrailEnd::UnmatchedVertex;
                    break;
                }
                cur = p;
            } else {
                Rat alpha = alternative(outcome, cur);
                if (alpha == 0) {
                    forward_end = TrailEnd::ZeroAlternative;
                    break;
                }
                cur = pick_attaining(outcome, cur, alpha, options, rng);
            }
        }
    }

    std::vector<int> backward; // u_{-1} .. u_l
    TrailEnd backward_end = TrailEnd::NotExplored;
    int backward_closure = 0;
    if (!options.forward_only) {
        int cur = u0;
        for (int i = 0;; --i) {
            if (i < 0) {
                if (explored[static_cast<size_t>(cur)]) {
                    backward_end = TrailEnd::RevisitedVertex;
                    backward_closure = first_index[static_cast<size_t>(cur)];
                    backward.push_back(cur);
                    break;
                }
                explored[static_cast<size_t>(cur)] = 1;
                first_index[static_cast<size_t>(cur)] = i;
                backward.push_back(cur);
            }
            if (i % 2 != 0) {
                int p = outcome.matching.partner(cur);
                if (p < 0) {
                    backward_end = TrailEnd::UnmatchedVertex;
                    break;
                }
                cur = p;
            } else {
                Rat alpha = alternative(outcome, cur);
                if (alpha == 0) {
                    backward_end = TrailEnd::ZeroAlternative;
                    break;
                }
                cur = pick_attaining(outcome, cur, alpha, options, rng);
            }
        }
    }

    ExplorationTrail trail;
    trail.origin = static_cast<int>(backward.size());
    trail.verts.reserve(backward.size() + forward.size());
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) trail.verts.push_back(*it);
    trail.verts.insert(trail.verts.end(), forward.begin(), forward.end());
    trail.forward_end = forward_end;
    trail.backward_end = backward_end;
    trail.forward_closure = forward_closure;
    trail.backward_closure = backward_closure;
    return trail;
}

namespace {

enum class EndKind { Cap, Open, EvenCycle, Blossom, Anchor };

} // namespace

StructureClass classify_structure(const ExplorationTrail& trail, const Matching& matching) {
    const int lo = trail.lo();
    const int hi = trail.hi();
    const int s = trail.forward_closure;
    const int t = trail.backward_closure;

    EndKind fwd;
    switch (trail.forward_end) {
        case TrailEnd::ZeroAlternative: fwd = EndKind::Cap; break;
        case TrailEnd::UnmatchedVertex: fwd = EndKind::Open; break;
        case TrailEnd::RevisitedVertex: fwd = (s % 2 == 0) ? EndKind::EvenCycle : EndKind::Blossom; break;
        default: throw InvariantError("trail has no forward exploration");
    }
    EndKind bwd = EndKind::Cap;
    switch (trail.backward_end) {
        case TrailEnd::ZeroAlternative: bwd = EndKind::Cap; break;
        case TrailEnd::UnmatchedVertex: bwd = EndKind::Open; break;
        case TrailEnd::RevisitedVertex: bwd = ((t % 2 + 2) % 2 == 1) ? EndKind::EvenCycle : EndKind::Blossom; break;
        case TrailEnd::NotExplored:
            bwd = matching.covers(trail.vertex(0)) ? EndKind::Anchor : EndKind::Cap;
            break;
    }

    StructureClass cls;
    // Even alternating cycles dominate: the cycle alone carries the witness
    // whatever the other end looks like.
    if (fwd == EndKind::EvenCycle) {
        cls.kind = StructureKind::Lollipop;
        cls.a_lo = s;
        cls.a_hi = hi;
        return cls;
    }
    if (bwd == EndKind::EvenCycle) {
        cls.kind = StructureKind::Lollipop;
        cls.a_lo = lo;
        cls.a_hi = t;
        return cls;
    }
    if (fwd == EndKind::Cap || bwd == EndKind::Cap) {
        cls.kind = StructureKind::Capped;
        return cls;
    }
    if (fwd == EndKind::Blossom && bwd == EndKind::Blossom) {
        if (t == s) throw InvariantError("two blossoms sharing their base have incompatible parity");
        if (t < s) {
            cls.kind = StructureKind::Bicycle;
            cls.a_lo = lo;
            cls.a_hi = t;
            cls.b_lo = s;
            cls.b_hi = hi;
        } else {
            cls.kind = StructureKind::Pretzel;
            cls.a_lo = lo;
            cls.a_hi = s;
            cls.b_lo = t;
            cls.b_hi = hi;
            if (((cls.a_hi - cls.a_lo) + (cls.b_hi - cls.b_lo)) % 2 != 0)
                throw InvariantError("pretzel segments do not form an even cycle");
        }
        return cls;
    }
    if (fwd == EndKind::Blossom) { // bwd is Open or Anchor
        if (bwd == EndKind::Anchor) {
            cls.kind = StructureKind::BlossomWithMatchedStem;
            cls.a_lo = 0;
        } else {
            cls.kind = StructureKind::Flower;
            cls.a_lo = lo;
        }
        cls.a_hi = s;
        cls.b_lo = s;
        cls.b_hi = hi;
        return cls;
    }
    if (bwd == EndKind::Blossom) { // fwd is Open
        cls.kind = StructureKind::Flower;
        cls.a_lo = t;
        cls.a_hi = hi;
        cls.b_lo = lo;
        cls.b_hi = t;
        return cls;
    }
    // both ends Open (or Open + Anchor): alternating path
    cls.kind = StructureKind::AugmentingPath;
    cls.a_lo = (bwd == EndKind::Anchor) ? 0 : lo;
    cls.a_hi = hi;
    return cls;
}

namespace {

// Trail edge i joins u_i and u_{i+1}; matched exactly when i is even.
bool trail_edge_matched(int i) { return ((i % 2) + 2) % 2 == 0; }

int trail_graph_edge(const ExplorationTrail& trail, const Outcome& outcome, int i) {
    auto idx = outcome.graph.edge_index(trail.vertex(i), trail.vertex(i + 1));
    if (!idx) throw InvariantError("trail edge " + std::to_string(i) + " is not a graph edge");
    return *idx;
}

} // namespace

FractionalMatching build_fractional_witness(const ExplorationTrail& trail, const StructureClass& cls,
                                            const Outcome& outcome) {
    if (cls.kind == StructureKind::Capped)
        throw InconclusiveError("no witness exists for capped trails");

    const WeightedGraph& graph = outcome.graph;
    FractionalMatching y(graph.edge_count());

    auto set_edge = [&](int paper_index, const Rat& value) {
        y.y[static_cast<size_t>(trail_graph_edge(trail, outcome, paper_index))] = value;
    };
    auto symmetric_difference = [&](int elo, int ehi) { // trail edge indices [elo, ehi)
        for (int i = elo; i < ehi; ++i) set_edge(i, trail_edge_matched(i) ? Rat(0) : Rat(1));
    };

    // Matched edges outside the structure's segments keep weight 1; the
    // segment-specific rules below override only structure edges. This
    // realizes "1 if e in M but e not in explored structure".
    auto matched_outside = [&](std::initializer_list<std::pair<int, int>> segments) {
        std::set<int> structure_edges;
        for (auto [elo, ehi] : segments)
            for (int i = elo; i < ehi; ++i)
                structure_edges.insert(trail_graph_edge(trail, outcome, i));
        for (const Edge& e : outcome.matching.edges()) {
            int idx = *graph.edge_index(e.u, e.v);
            if (!structure_edges.count(idx)) y.y[static_cast<size_t>(idx)] = Rat(1);
        }
    };

    switch (cls.kind) {
        case StructureKind::AugmentingPath:
        case StructureKind::Lollipop: {
            matched_outside({{cls.a_lo, cls.a_hi}});
            symmetric_difference(cls.a_lo, cls.a_hi);
            if (cls.kind == StructureKind::AugmentingPath) {
                // endpoints must not be matched outside the path
                for (int end : {cls.a_lo, cls.a_hi}) {
                    int v = trail.vertex(end);
                    int p = outcome.matching.partner(v);
                    if (p >= 0 && p != trail.vertex(end == cls.a_lo ? end + 1 : end - 1))
                        throw InvariantError("path endpoint " + std::to_string(v) +
                                             " is matched outside the trail");
                }
            }
            break;
        }
        case StructureKind::Pretzel: {
            // the structure is the even alternating cycle formed by the two
            // non-shared trail segments; shared-segment matched edges stay at 1
            matched_outside({{cls.a_lo, cls.a_hi}, {cls.b_lo, cls.b_hi}});
            symmetric_difference(cls.a_lo, cls.a_hi);
            symmetric_difference(cls.b_lo, cls.b_hi);
            break;
        }
        case StructureKind::Flower:
        case StructureKind::BlossomWithMatchedStem: {
            int stem_lo = std::min(cls.a_lo, cls.a_hi), stem_hi = std::max(cls.a_lo, cls.a_hi);
            matched_outside({{stem_lo, stem_hi}, {cls.b_lo, cls.b_hi}});
            symmetric_difference(stem_lo, stem_hi); // 1 on unmatched stem edges, 0 on matched
            for (int i = cls.b_lo; i < cls.b_hi; ++i) set_edge(i, Rat(1, 2));
            break;
        }
        case StructureKind::Bicycle: {
            matched_outside({{trail.lo(), trail.hi()}});
            for (int i = cls.a_lo; i < cls.a_hi; ++i) set_edge(i, Rat(1, 2));
            for (int i = cls.b_lo; i < cls.b_hi; ++i) set_edge(i, Rat(1, 2));
            symmetric_difference(cls.a_hi, cls.b_lo); // stem between the blossoms
            break;
        }
        case StructureKind::Capped:
            break; // handled above
    }
    return y;
}

Rat verify_fractional_matching(const WeightedGraph& graph, const FractionalMatching& y) {
    if (static_cast<int>(y.y.size()) != graph.edge_count())
        throw InvariantError("fractional matching defined on wrong edge count");
    std::vector<Rat> degree(static_cast<size_t>(graph.vertex_count()), Rat(0));
    Rat weight(0);
    for (int eidx = 0; eidx < graph.edge_count(); ++eidx) {
        const Rat& ye = y.y[static_cast<size_t>(eidx)];
        if (ye != 0 && ye != Rat(1, 2) && ye != 1)
            throw InvariantError("y value on edge " + std::to_string(eidx) + " not in {0, 1/2, 1}");
        const Edge& e = graph.edge(eidx);
        degree[static_cast<size_t>(e.u)] += ye;
        degree[static_cast<size_t>(e.v)] += ye;
        weight += ye * graph.weight(eidx);
    }
    for (int u = 0; u < graph.vertex_count(); ++u)
        if (degree[static_cast<size_t>(u)] > 1)
            throw InvariantError("fractional degree exceeds 1 at vertex " + std::to_string(u));
    return weight;
}

namespace {

// Branch-and-prune over edges in half-units (y_e = h/2, h in allowed set).
struct HalfIntegralSearch {
    const WeightedGraph& graph;
    bool integral_only;
    bool count_optima;

    std::vector<int> load;       // half-units per vertex, max 2
    std::vector<int> current;    // half-units per edge
    std::vector<Rat> suffix_max; // upper bound on weight addable from edge i on

    Rat best = Rat(-1);
    std::vector<int> best_choice;
    unsigned long long optima = 0;

    explicit HalfIntegralSearch(const WeightedGraph& g, bool integral, bool count)
        : graph(g), integral_only(integral), count_optima(count),
          load(static_cast<size_t>(g.vertex_count()), 0),
          current(static_cast<size_t>(g.edge_count()), 0),
          suffix_max(static_cast<size_t>(g.edge_count()) + 1, Rat(0)) {
        for (int i = g.edge_count() - 1; i >= 0; --i)
            suffix_max[static_cast<size_t>(i)] = suffix_max[static_cast<size_t>(i) + 1] + g.weight(i);
    }

    void dfs(int i, const Rat& acc) {
        if (acc + suffix_max[static_cast<size_t>(i)] < best) return;
        if (!count_optima && best >= 0 && acc + suffix_max[static_cast<size_t>(i)] <= best && i < graph.edge_count())
            return; // cannot strictly improve
        if (i == graph.edge_count()) {
            if (acc > best) {
                best = acc;
                best_choice = current;
                optima = 1;
            } else if (acc == best) {
                ++optima;
            }
            return;
        }
        const Edge& e = graph.edge(i);
        int& lu = load[static_cast<size_t>(e.u)];
        int& lv = load[static_cast<size_t>(e.v)];
        const Rat& w = graph.weight(i);
        for (int h : integral_only ? std::initializer_list<int>{2, 0} : std::initializer_list<int>{2, 1, 0}) {
            if (lu + h > 2 || lv + h > 2) continue;
            lu += h;
            lv += h;
            current[static_cast<size_t>(i)] = h;
            dfs(i + 1, h == 0 ? acc : Rat(acc + w * h / 2));
            lu -= h;
            lv -= h;
            current[static_cast<size_t>(i)] = 0;
        }
    }
};

} // namespace

MaxFracResult max_fractional_weight(const WeightedGraph& graph, const MaxFracOptions& options) {
    if (graph.edge_count() > options.edge_cap)
        throw CapacityError("graph has " + std::to_string(graph.edge_count()) +
                            " edges; enumeration cap is " + std::to_string(options.edge_cap) +
                            " (use a smaller instance)");
    HalfIntegralSearch search(graph, false, options.count_optima);
    search.dfs(0, Rat(0));
    MaxFracResult result;
    result.weight = search.best;
    result.best = FractionalMatching(graph.edge_count());
    for (int i = 0; i < graph.edge_count(); ++i)
        result.best.y[static_cast<size_t>(i)] = make_rat(search.best_choice[static_cast<size_t>(i)], 2);
    result.optima = search.optima;
    return result;
}

std::pair<Rat, std::vector<Edge>> max_integral_matching(const WeightedGraph& graph,
                                                        const MaxFracOptions& options) {
    if (graph.edge_count() > options.edge_cap)
        throw CapacityError("graph has " + std::to_string(graph.edge_count()) +
                            " edges; enumeration cap is " + std::to_string(options.edge_cap) +
                            " (use a smaller instance)");
    HalfIntegralSearch search(graph, true, false);
    search.dfs(0, Rat(0));
    std::vector<Edge> edges;
    for (int i = 0; i < graph.edge_count(); ++i)
        if (search.best_choice[static_cast<size_t>(i)] == 2) edges.push_back(graph.edge(i));
    return {search.best, std::move(edges)};
}

bool has_balanced_outcome(const WeightedGraph& graph, const Matching& matching,
                          const MaxFracOptions& options) {
    return matching.weight(graph) == max_fractional_weight(graph, options).weight;
}

namespace {

StructureWitness finish_witness(const Outcome& outcome, ExplorationTrail trail, StructureClass cls) {
    StructureWitness w;
    w.trail = std::move(trail);
    w.cls = cls;
    w.weight_matching = outcome.matching.weight(outcome.graph);
    FractionalMatching y = build_fractional_witness(w.trail, cls, outcome);
    w.weight_witness = verify_fractional_matching(outcome.graph, y);
    Rat gap = w.weight_witness - w.weight_matching;
    if (gap > 0) {
        w.fractional_witness = std::move(y);
        w.weight_gap = gap;
    }
    return w;
}

} // namespace

CertifyResult certify_no_balanced_outcome(const Outcome& outcome) {
    auto violations = outcome.validate();
    if (!violations.empty()) throw InvariantError("invalid outcome: " + violations.front());

    CertifyResult result;
    result.eps_quasi = Rat(0);
    result.delta = Rat(0);
    result.gamma = Rat(0);

    // Scan: per-matched-edge classification, worst unhappiness, worst instability.
    struct UnhappyPick {
        Edge edge;
        Rat share;   // the negative balanced share
        int zero_end = -1;
    };
    std::optional<UnhappyPick> unhappy;
    Rat resid(0); // max distance of a would-pin endpoint from 0, over unhappy edges
    for (const Edge& e : outcome.matching.edges()) {
        const Rat& w = outcome.graph.weight(e.u, e.v);
        Rat au = alternative(outcome, e.u);
        Rat av = alternative(outcome, e.v);
        Rat s = w - au - av;
        Rat share_u = au + s / 2;
        Rat share_v = av + s / 2;
        if (share_u < 0 || share_v < 0) {
            int zero_end = share_u < 0 ? e.u : e.v;
            Rat share = share_u < 0 ? share_u : share_v;
            if (outcome.allocation[zero_end] > resid) resid = outcome.allocation[zero_end];
            if (!unhappy || share < unhappy->share) unhappy = UnhappyPick{e, share, zero_end};
        } else {
            Rat imbalance = rat_abs((outcome.allocation[e.u] - au) - (outcome.allocation[e.v] - av));
            if (imbalance > result.eps_quasi) result.eps_quasi = imbalance;
        }
    }
    std::optional<Edge> worst_unstable;
    for (int eidx = 0; eidx < outcome.graph.edge_count(); ++eidx) {
        const Edge& e = outcome.graph.edge(eidx);
        if (outcome.matching.contains(e.u, e.v)) continue;
        Rat violation = outcome.graph.weight(eidx) - outcome.allocation[e.u] - outcome.allocation[e.v];
        if (violation > result.delta) {
            result.delta = violation;
            worst_unstable = e;
        }
    }

    const Rat n(outcome.graph.vertex_count());

    if (unhappy) {
        result.gamma = -unhappy->share;
        Rat margin_floor = n * std::max(result.eps_quasi, Rat(2 * resid));
        if (result.gamma <= margin_floor) {
            result.status = CertifyResult::Status::Inconclusive;
            result.detail = "unhappiness gamma = " + rat_str(result.gamma) +
                            " does not clear the margin n*max(eps_q, 2*resid) = " + rat_str(margin_floor);
            return result;
        }
        result.start_vertex = unhappy->zero_end;
        ExploreOptions opts;
        opts.forward_only = true; // Prop-4 view: only the first loop is proof-supported
        ExplorationTrail trail = explore(outcome, unhappy->zero_end, opts);
        StructureClass cls = classify_structure(trail, outcome.matching);
        if (cls.kind == StructureKind::Capped) {
            result.status = CertifyResult::Status::Inconclusive;
            result.detail = "exploration capped from the unhappy edge";
            return result;
        }
        StructureWitness w = finish_witness(outcome, std::move(trail), cls);
        if (!w.weight_gap) {
            result.status = CertifyResult::Status::Inconclusive;
            result.detail = "constructed witness has non-positive weight gap";
            result.witness = std::move(w);
            return result;
        }
        result.status = CertifyResult::Status::WitnessFound;
        result.witness = std::move(w);
        return result;
    }

    if (worst_unstable) {
        Rat margin_floor = n * result.eps_quasi;
        if (result.delta <= margin_floor) {
            result.status = CertifyResult::Status::Inconclusive;
            result.detail = "instability delta = " + rat_str(result.delta) +
                            " does not clear the margin n*eps_q = " + rat_str(margin_floor);
            return result;
        }
        const Edge& e = *worst_unstable;
        int u0 = outcome.matching.covers(e.u) ? e.u : (outcome.matching.covers(e.v) ? e.v : e.u);
        result.start_vertex = u0;
        ExplorationTrail trail = explore(outcome, u0, {});
        StructureClass cls = classify_structure(trail, outcome.matching);
        if (cls.kind == StructureKind::Capped) {
            result.status = CertifyResult::Status::Inconclusive;
            result.detail = "exploration capped from the unstable edge";
            return result;
        }
        StructureWitness w = finish_witness(outcome, std::move(trail), cls);
        if (!w.weight_gap) {
            result.status = CertifyResult::Status::Inconclusive;
            result.detail = "constructed witness has non-positive weight gap";
            result.witness = std::move(w);
            return result;
        }
        result.status = CertifyResult::Status::WitnessFound;
        result.witness = std::move(w);
        return result;
    }

    result.status = CertifyResult::Status::BalancedNoDefect;
    result.detail = "no unhappy or unstable edge";
    return result;
}

void write_witness_report(std::ostream& out, const Outcome& outcome, const StructureWitness& witness) {
    out << "class " << to_string(witness.cls.kind) << "\n";
    out << "trail";
    for (int i = witness.trail.lo(); i <= witness.trail.hi(); ++i)
        out << ' ' << i << ':' << witness.trail.vertex(i);
    out << "\n";
    out << "forward_end " << to_string(witness.trail.forward_end) << "\n";
    out << "backward_end " << to_string(witness.trail.backward_end) << "\n";
    if (witness.fractional_witness) {
        for (int eidx = 0; eidx < outcome.graph.edge_count(); ++eidx) {
            const Edge& e = outcome.graph.edge(eidx);
            out << "y " << e.u << ' ' << e.v << ' '
                << rat_str(witness.fractional_witness->y[static_cast<size_t>(eidx)]) << "\n";
        }
    }
    out << "weight_matching " << rat_str(witness.weight_matching) << "\n";
    out << "weight_witness " << rat_str(witness.weight_witness) << "\n";
    if (witness.weight_gap) out << "weight_gap " << rat_str(*witness.weight_gap) << "\n";
}

} // namespace nex
