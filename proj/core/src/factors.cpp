#include "bispan/factors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <stdexcept>

namespace bispan {

long long ore_delta(const BipartiteGraph& g, VertexSet s, VertexSet t, int a, int b) {
    s &= g.all_x();
    t &= g.all_y();
    return edges_between(g, s, g.all_y() & ~t) +
           static_cast<long long>(b) * std::popcount(t) -
           static_cast<long long>(a) * std::popcount(s);
}

OreWitness min_ore_delta(const BipartiteGraph& g, int a, int b) {
    if (g.m() > 20 || g.n() > 20)
        throw std::runtime_error("min_ore_delta enumerates 2^m * 2^n pairs; capped at m,n <= 20");
    if (a < 1 || b < 1) throw std::invalid_argument("factor degrees must be positive");

    const int m = g.m(), n = g.n();
    OreWitness best{0, 0, 0};  // (empty, empty) has delta 0
    std::vector<int> col_in_s(n);
    for (VertexSet s = 0; s < (VertexSet{1} << m); ++s) {
        long long base = -static_cast<long long>(a) * std::popcount(s);
        for (int y = 0; y < n; ++y) {
            col_in_s[y] = std::popcount(g.col(y) & s);
            base += col_in_s[y];
        }
        for (VertexSet t = 0; t < (VertexSet{1} << n); ++t) {
            long long delta = base;
            VertexSet rest = t;
            while (rest) {
                int y = std::countr_zero(rest);
                rest &= rest - 1;
                delta += b - col_in_s[y];
            }
            if (delta < best.delta) best = OreWitness{s, t, delta};
        }
    }
    return best;
}

namespace {

struct FlowNetwork {
    struct Arc {
        int to;
        int cap;  // residual capacity
    };
    std::vector<Arc> arcs;               // paired: arc 2i and its reverse 2i+1
    std::vector<std::vector<int>> adj;   // node -> arc indices, insertion order

    explicit FlowNetwork(int nodes) : adj(nodes) {}

    int add(int from, int to, int cap) {
        int id = static_cast<int>(arcs.size());
        arcs.push_back(Arc{to, cap});
        arcs.push_back(Arc{from, 0});
        adj[from].push_back(id);
        adj[to].push_back(id + 1);
        return id;
    }

    // Shortest augmenting paths (BFS), deterministic arc order.
    long long max_flow(int s, int t) {
        long long total = 0;
        std::vector<int> prev_arc(adj.size());
        for (;;) {
            std::fill(prev_arc.begin(), prev_arc.end(), -1);
            prev_arc[s] = -2;
            std::queue<int> q;
            q.push(s);
            while (!q.empty() && prev_arc[t] == -1) {
                int u = q.front();
                q.pop();
                for (int id : adj[u]) {
                    const Arc& arc = arcs[id];
                    if (arc.cap > 0 && prev_arc[arc.to] == -1) {
                        prev_arc[arc.to] = id;
                        q.push(arc.to);
                    }
                }
            }
            if (prev_arc[t] == -1) return total;
            int push = std::numeric_limits<int>::max();
            for (int v = t; v != s;) {
                int id = prev_arc[v];
                push = std::min(push, arcs[id].cap);
                v = arcs[id ^ 1].to;
            }
            for (int v = t; v != s;) {
                int id = prev_arc[v];
                arcs[id].cap -= push;
                arcs[id ^ 1].cap += push;
                v = arcs[id ^ 1].to;
            }
            total += push;
        }
    }

    std::vector<bool> residual_reachable(int s) const {
        std::vector<bool> seen(adj.size(), false);
        seen[s] = true;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int id : adj[u]) {
                const Arc& arc = arcs[id];
                if (arc.cap > 0 && !seen[arc.to]) {
                    seen[arc.to] = true;
                    q.push(arc.to);
                }
            }
        }
        return seen;
    }
};

}  // namespace

FactorResult find_biregular_factor(const BipartiteGraph& g, int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("factor degrees must be positive");
    const int m = g.m(), n = g.n();
    const long long want = static_cast<long long>(a) * m;
    if (want != static_cast<long long>(b) * n)
        throw std::invalid_argument("degree sums differ: a*m != b*n");

    const int source = 0, sink = m + n + 1;
    FlowNetwork net(m + n + 2);
    for (int x = 0; x < m; ++x) net.add(source, 1 + x, a);
    std::vector<std::pair<Edge, int>> middle;
    for (int x = 0; x < m; ++x) {
        VertexSet r = g.row(x);
        while (r) {
            int y = std::countr_zero(r);
            r &= r - 1;
            middle.emplace_back(Edge{x, y}, net.add(1 + x, 1 + m + y, 1));
        }
    }
    for (int y = 0; y < n; ++y) net.add(1 + m + y, sink, b);

    long long flow = net.max_flow(source, sink);
    if (flow == want) {
        BiregularFactor factor;
        factor.edges.reserve(static_cast<std::size_t>(want));
        for (const auto& [e, id] : middle)
            if (net.arcs[id].cap == 0) factor.edges.push_back(e);
        return factor;
    }

    std::vector<bool> reach = net.residual_reachable(source);
    OreWitness w;
    for (int x = 0; x < m; ++x)
        if (reach[1 + x]) w.s |= VertexSet{1} << x;
    for (int y = 0; y < n; ++y)
        if (reach[1 + m + y]) w.t |= VertexSet{1} << y;
    w.delta = ore_delta(g, w.s, w.t, a, b);
    if (w.delta != flow - want || w.delta > -1)
        throw std::logic_error("min-cut witness disagrees with maxflow - a*m");
    return w;
}

int matching_number(const BipartiteGraph& g) {
    const int m = g.m(), n = g.n();
    std::vector<int> match_y(n, -1);
    std::vector<bool> visited(n);

    auto try_augment = [&](auto&& self, int x) -> bool {
        VertexSet r = g.row(x);
        while (r) {
            int y = std::countr_zero(r);
            r &= r - 1;
            if (visited[y]) continue;
            visited[y] = true;
            if (match_y[y] == -1 || self(self, match_y[y])) {
                match_y[y] = x;
                return true;
            }
        }
        return false;
    };

    int size = 0;
    for (int x = 0; x < m; ++x) {
        std::fill(visited.begin(), visited.end(), false);
        if (try_augment(try_augment, x)) ++size;
    }
    return size;
}

}  // namespace bispan
