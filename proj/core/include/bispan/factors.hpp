#pragma once

#include <variant>
#include <vector>

#include "bispan/graph.hpp"

namespace bispan {

/// A pair (S, T) with its Ore value delta(S,T) = e(S, Y-T) + b|T| - a|S|.
/// Nonnegativity over all pairs characterizes (a,b)-biregular factors;
/// a witness with delta <= -1 certifies that no factor exists.
struct OreWitness {
    VertexSet s = 0;
    VertexSet t = 0;
    long long delta = 0;
};

/// Edge set in which every X-vertex has degree exactly a and every
/// Y-vertex exactly b.
struct BiregularFactor {
    std::vector<Edge> edges;
};

using FactorResult = std::variant<BiregularFactor, OreWitness>;

long long ore_delta(const BipartiteGraph& g, VertexSet s, VertexSet t, int a, int b);

/// Exhaustive minimum of delta(S,T) over all 2^m * 2^n pairs; the
/// brute-force oracle behind the flow construction. Caps at m,n <= 20.
OreWitness min_ore_delta(const BipartiteGraph& g, int a, int b);

/// Max-flow construction of an (a,b)-biregular factor: source->X with
/// capacity a, graph edges with capacity 1, Y->sink with capacity b.
/// A saturating flow yields the factor; otherwise the returned witness
/// (source-side X-vertices, source-side Y-vertices of the min cut) has
/// delta = maxflow - a*m <= -1, asserted rather than trusted.
FactorResult find_biregular_factor(const BipartiteGraph& g, int a, int b);

/// Maximum matching size via augmenting paths.
int matching_number(const BipartiteGraph& g);

}  // namespace bispan
