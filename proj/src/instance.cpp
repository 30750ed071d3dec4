#include "nex/instance.hpp"

#include "nex/analysis.hpp"
#include "nex/errors.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace nex {

Outcome Instance::to_outcome() const {
    if (!matching) throw InputError("instance has no matching");
    if (!allocation) throw InputError("instance has no allocation");
    return make_outcome(graph, *matching, *allocation);
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

long to_long(const std::string& tok, int line, const char* what) {
    try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        parse_fail(line, std::string("bad ") + what + " '" + tok + "'");
    }
}

} // namespace

Instance parse_instance(std::istream& in) {
    std::optional<int> n;
    std::vector<std::pair<Edge, Rat>> edges;
    std::vector<Edge> match_edges;
    std::vector<std::pair<int, Rat>> allocs;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string keyword;
        if (!(ls >> keyword)) continue;

        if (keyword == "vertices") {
            long count;
            std::string tok;
            if (!(ls >> tok)) parse_fail(lineno, "vertices needs a count");
            count = to_long(tok, lineno, "vertex count");
            if (count < 0) parse_fail(lineno, "vertex count must be nonnegative");
            if (n) parse_fail(lineno, "duplicate vertices line");
            n = static_cast<int>(count);
        } else if (keyword == "edge") {
            std::string su, sv, sw;
            if (!(ls >> su >> sv >> sw)) parse_fail(lineno, "edge needs: u v w");
            long u = to_long(su, lineno, "vertex id");
            long v = to_long(sv, lineno, "vertex id");
            long w = to_long(sw, lineno, "weight");
            if (w < 1) parse_fail(lineno, "edge weight must be an integer >= 1");
            edges.emplace_back(Edge(static_cast<int>(u), static_cast<int>(v)), Rat(w));
        } else if (keyword == "match") {
            std::string su, sv;
            if (!(ls >> su >> sv)) parse_fail(lineno, "match needs: u v");
            match_edges.emplace_back(static_cast<int>(to_long(su, lineno, "vertex id")),
                    static_cast<int>(to_long(sv, lineno, "vertex id")));
        } else if (keyword == "alloc") {
            std::string sv, sx;
            if (!(ls >> sv >> sx)) parse_fail(lineno, "alloc needs: v value");
            long v = to_long(sv, lineno, "vertex id");
            Rat x;
            try {
                x = parse_rational(sx);
            } catch (const ParseError& e) {
                parse_fail(lineno, e.what());
            }
            allocs.emplace_back(static_cast<int>(v), std::move(x));
        } else {
            parse_fail(lineno, "unknown keyword '" + keyword + "'");
        }
        std::string extra;
        if (ls >> extra) parse_fail(lineno, "trailing token '" + extra + "'");
    }
    if (!n) throw ParseError("missing 'vertices' line");

    Instance instance;
    instance.graph = WeightedGraph(*n, std::move(edges));
    if (!match_edges.empty() || !allocs.empty())
        instance.matching = Matching(instance.graph, match_edges);
    if (!allocs.empty()) {
        Allocation x(*n);
        for (auto& [v, value] : allocs) {
            if (v < 0 || v >= *n) throw ParseError("alloc references unknown vertex " + std::to_string(v));
            x[v] = std::move(value);
        }
        auto violations = Outcome{instance.graph, *instance.matching, x}.validate();
        if (!violations.empty()) {
            std::string msg = "instance allocation invalid:";
            for (const auto& viol : violations) msg += "\n  - " + viol;
            throw InvariantError(msg);
        }
        instance.allocation = std::move(x);
    }
    return instance;
}

Instance parse_instance_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

void emit_instance(std::ostream& out, const Instance& instance) {
    out << "vertices " << instance.graph.vertex_count() << "\n";
    for (int eidx = 0; eidx < instance.graph.edge_count(); ++eidx) {
        const Edge& e = instance.graph.edge(eidx);
        out << "edge " << e.u << ' ' << e.v << ' ' << rat_str(instance.graph.weight(eidx)) << "\n";
    }
    if (instance.matching)
        for (const Edge& e : instance.matching->edges()) out << "match " << e.u << ' ' << e.v << "\n";
    if (instance.allocation)
        for (int v = 0; v < instance.allocation->size(); ++v)
            out << "alloc " << v << ' ' << rat_str((*instance.allocation)[v]) << "\n";
}

Rat tight_lollipop_eps(int k) {
    return Rat(4) / Rat(static_cast<long>(k) * k + 4L * k + 4);
}

Instance gen_tight_lollipop(int k) {
    if (k < 2)
        throw InputError("tight lollipop needs k >= 2 (k = 1 would degenerate to a 2-cycle)");

    const int n = 2 * k + 1;
    auto u_id = [](int j) { return 2 * j - 1; };
    auto v_id = [](int j) { return 2 * j; }; // v_0 = 0

    std::vector<std::pair<Edge, Rat>> edges;
    edges.emplace_back(Edge(0, u_id(1)), Rat(1)); // pendant v_0 - u_1
    for (int j = 1; j <= k; ++j) {
        edges.emplace_back(Edge(u_id(j), v_id(j)), Rat(1));
        int next_u = (j == k) ? u_id(1) : u_id(j + 1);
        edges.emplace_back(Edge(v_id(j), next_u), Rat(1));
    }

    Instance instance;
    instance.graph = WeightedGraph(n, std::move(edges));
    std::vector<Edge> match_edges;
    for (int j = 1; j <= k; ++j) match_edges.emplace_back(u_id(j), v_id(j));
    instance.matching = Matching(instance.graph, match_edges);

    const Rat eps = tight_lollipop_eps(k);
    Allocation x(n);
    for (int j = 1; j <= k; ++j) {
        Rat vj = Rat(j) * Rat(k + 2 - j) * eps;
        x[u_id(j)] = 1 - vj;
        x[v_id(j)] = vj;
    }
    instance.allocation = x;

    // Paper-stated properties, checked exactly on every construction.
    Outcome outcome = instance.to_outcome();
    CheckReport report = check_outcome(outcome, 2 * eps, Rat(0));
    if (!report.eps_quasi_balanced || report.eps_actual != 2 * eps)
        throw InvariantError("tight lollipop is not exactly (2 eps)-quasi-balanced");
    Rat gap = Rat(1) - (x[0] + x[u_id(1)]);
    if (gap != Rat(k + 1) * eps)
        throw InvariantError("tight lollipop v0-u1 gap is not (k+1) eps");
    return instance;
}

Allocation initial_allocation(const WeightedGraph& graph, const Matching& matching, InitPreset preset,
                              std::uint64_t seed) {
    Allocation x(graph.vertex_count());
    std::mt19937_64 rng(seed);
    for (const Edge& e : matching.edges()) {
        const Rat& w = graph.weight(e.u, e.v);
        switch (preset) {
            case InitPreset::Zeros:
                x[e.u] = Rat(0);
                x[e.v] = w;
                break;
            case InitPreset::Equal:
                x[e.u] = w / 2;
                x[e.v] = w - x[e.u];
                break;
            case InitPreset::Random: {
                // dyadic fraction in [0, 1] with 30 random bits
                Rat frac = make_rat(static_cast<long>(rng() & ((1UL << 30) - 1)), 1L << 30);
                x[e.u] = w * frac;
                x[e.v] = w - x[e.u];
                break;
            }
        }
    }
    return x;
}

} // namespace nex
