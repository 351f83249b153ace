#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "bispan/graph.hpp"

namespace bispan {

/// Per-X-vertex degree lower bounds, each >= 2.
struct DegreeDemand {
    std::vector<int> f;  // indexed by X-vertex

    static DegreeDemand constant(int m, int k);
    void validate(int m) const;
    long long total() const;
};

/// A qualifying spanning tree, or the X-subset violating the neighborhood
/// condition |N(S)| >= sum_S f - |S| + 1.
struct DegreeTree {
    std::vector<Edge> edges;
};

struct TreeViolation {
    VertexSet s = 0;
    long long deficiency = 0;  // sum_S f - |S| + 1 - |N(S)|, >= 1
};

using TreeWitness = std::variant<DegreeTree, TreeViolation>;

struct FgDeficiency {
    long long max_deficiency = 0;  // condition holds iff <= 0
    VertexSet worst_s = 0;
};

/// Maximum of sum_S f - |S| + 1 - |N(S)| over nonempty S, by subset
/// enumeration (capped at m <= 22).
FgDeficiency fg_deficiency(const BipartiteGraph& g, const DegreeDemand& f);

/// Sink for diagnostics the construction refuses to swallow (local-search
/// stalls with the existence condition satisfied). Defaults to stderr.
using StallLogger = std::function<void(const std::string&)>;
void set_tree_search_logger(StallLogger logger);

/// Build a spanning tree with d_T(u) >= f(u) on X, or return the violating
/// subset. Cycle-exchange local search from a BFS tree; on a stall the
/// exhaustive backtracking search takes over (m+n <= 12), and the stall is
/// logged, never silently accepted.
TreeWitness find_degree_tree(const BipartiteGraph& g, const DegreeDemand& f);

/// The f == 2 specialization: a spanning tree whose leaves all lie in Y.
TreeWitness leaves_in_y(const BipartiteGraph& g);

/// Exhaustive (pruned but exact) search for a spanning tree meeting the
/// demands. Doubles as the independent oracle for the existence condition.
std::optional<DegreeTree> find_demand_tree_exhaustive(const BipartiteGraph& g,
                                                      const DegreeDemand& f);

bool is_spanning_tree(const BipartiteGraph& g, const std::vector<Edge>& edges);

}  // namespace bispan
