#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bispan {

/// Subset of one part (X or Y), bit i = vertex i. Parts are capped at 64
/// vertices so every set operation is a couple of word instructions.
using VertexSet = std::uint64_t;

inline constexpr int kMaxPartSize = 64;

constexpr VertexSet full_set(int k) {
    return k >= 64 ? ~VertexSet{0} : (VertexSet{1} << k) - 1;
}

struct Edge {
    int x;  // 0-indexed X endpoint
    int y;  // 0-indexed Y endpoint
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple bipartite graph with ordered parts X (size m) and Y (size n).
/// Adjacency is one Y-bitset per X-vertex plus the transposed column
/// bitsets; instances are immutable after construction and safe to share
/// across threads.
class BipartiteGraph {
public:
    BipartiteGraph(int m, int n);  // edgeless
    static BipartiteGraph from_rows(int m, int n, std::vector<std::uint64_t> rows);
    static BipartiteGraph from_edges(int m, int n, const std::vector<Edge>& edges);
    /// Decode a graph from an mn-bit code, bit x*n + y = edge (x,y).
    /// Requires m*n <= 64; the enumeration harness lives on this.
    static BipartiteGraph from_bits(int m, int n, std::uint64_t code);

    int m() const { return m_; }
    int n() const { return n_; }
    long long edge_count() const { return edge_count_; }
    bool has_edge(int x, int y) const { return (rows_[x] >> y) & 1; }
    VertexSet row(int x) const { return rows_[x]; }
    VertexSet col(int y) const { return cols_[y]; }
    int degree_x(int x) const;
    int degree_y(int y) const;
    VertexSet all_x() const { return full_set(m_); }
    VertexSet all_y() const { return full_set(n_); }
    std::vector<Edge> edges() const;  // sorted by (x, y)

    /// Copy with edge (x,y) present/absent flipped.
    BipartiteGraph toggled(int x, int y) const;

    friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

private:
    int m_, n_;
    long long edge_count_;
    std::vector<std::uint64_t> rows_;  // rows_[x] = Y-neighbors of x
    std::vector<std::uint64_t> cols_;  // cols_[y] = X-neighbors of y
};

/// Parameters (m, n, p, q) of the family K_{m,n} minus all edges between
/// the first p X-vertices and the first q Y-vertices. The "first p x first q"
/// embedding is canonical so certificates are byte-reproducible.
struct ExtremalSpec {
    int m, n, p, q;
    void validate() const;  // throws std::invalid_argument
};

BipartiteGraph make_complete(int m, int n);
BipartiteGraph make_extremal(const ExtremalSpec& spec);

/// Union of adjacencies over the X-subset `s`.
VertexSet neighborhood(const BipartiteGraph& g, VertexSet s);

/// Number of edges with one endpoint in `s` (subset of X) and the other in
/// `t` (subset of Y).
long long edges_between(const BipartiteGraph& g, VertexSet s, VertexSet t);

bool is_connected(const BipartiteGraph& g);
int min_degree(const BipartiteGraph& g);

BipartiteGraph transposed(const BipartiteGraph& g);

enum class IsoMapping { part_preserving, part_swapped };

/// Backtracking isomorphism search with degree and partial-signature
/// pruning. A part-swapped map is tried only when m == n. Intended for
/// extremal-exception checks, |V| <= ~24.
std::optional<IsoMapping> find_isomorphism(const BipartiteGraph& g, const BipartiteGraph& h);
bool is_isomorphic(const BipartiteGraph& g, const BipartiteGraph& h);

/// Edge-list file format: header `bip <m> <n>`, then `e <i> <j>` with
/// 1-indexed i in X and j in Y. `#`-prefixed comment lines and blank lines
/// are ignored; duplicate edges are an error.
BipartiteGraph parse_graph(std::string_view text);
std::string serialize_graph(const BipartiteGraph& g);

std::vector<int> set_to_vertices(VertexSet s);

}  // namespace bispan
