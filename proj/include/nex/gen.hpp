#pragma once

#include "nex/outcome.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace nex {

/// Bounds for seeded random instances. Defaults stay inside the enumeration
/// oracle cap so every generated instance can be cross-checked exactly.
struct GenOptions {
    int min_n = 2;
    int max_n = 10;
    int max_m = 20;
    long max_weight = 9;
};

/// All draws use std::mt19937_64 with index = engine() % k, so instances are
/// bit-reproducible from the seed.
WeightedGraph random_graph(std::mt19937_64& rng, const GenOptions& options);

/// Random greedy matching over a shuffled edge order; may be empty or non-maximal.
Matching random_matching(std::mt19937_64& rng, const WeightedGraph& graph);

/// Valid allocation with a random dyadic split per matched edge, zero elsewhere.
Allocation random_allocation(std::mt19937_64& rng, const WeightedGraph& graph, const Matching& matching);

/// Seeded instance whose matching is oracle-verified maximum fractional
/// (a balanced outcome exists); nullopt when this seed's graph has no
/// integral maximum-fractional matching or it is empty.
std::optional<std::pair<WeightedGraph, Matching>> balanced_instance(std::uint64_t seed,
                                                                    const GenOptions& options);

/// Seeded instance with a nonempty matching that is oracle-verified NOT
/// maximum fractional; nullopt when the seed does not yield one.
std::optional<std::pair<WeightedGraph, Matching>> unbalanced_instance(std::uint64_t seed,
                                                                      const GenOptions& options);

} // namespace nex
