#include "bispan/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace bispan {

namespace {

void check_part_sizes(int m, int n) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("bipartite graph needs m >= 1 and n >= 1");
    if (m > kMaxPartSize || n > kMaxPartSize)
        throw std::invalid_argument("part size exceeds the 64-vertex bitset cap");
}

}  // namespace

BipartiteGraph::BipartiteGraph(int m, int n) : m_(m), n_(n), edge_count_(0) {
    check_part_sizes(m, n);
    rows_.assign(static_cast<std::size_t>(m), 0);
    cols_.assign(static_cast<std::size_t>(n), 0);
}

BipartiteGraph BipartiteGraph::from_rows(int m, int n, std::vector<std::uint64_t> rows) {
    check_part_sizes(m, n);
    if (static_cast<int>(rows.size()) != m)
        throw std::invalid_argument("row count does not match m");
    BipartiteGraph g(m, n);
    g.rows_ = std::move(rows);
    for (int x = 0; x < m; ++x) {
        if (g.rows_[x] & ~full_set(n))
            throw std::invalid_argument("adjacency row has bits beyond n");
        g.edge_count_ += std::popcount(g.rows_[x]);
        std::uint64_t r = g.rows_[x];
        while (r) {
            int y = std::countr_zero(r);
            r &= r - 1;
            g.cols_[y] |= std::uint64_t{1} << x;
        }
    }
    return g;
}

BipartiteGraph BipartiteGraph::from_edges(int m, int n, const std::vector<Edge>& edges) {
    check_part_sizes(m, n);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
    for (const Edge& e : edges) {
        if (e.x < 0 || e.x >= m || e.y < 0 || e.y >= n)
            throw std::invalid_argument("edge endpoint out of range");
        std::uint64_t bit = std::uint64_t{1} << e.y;
        if (rows[e.x] & bit)
            throw std::invalid_argument("duplicate edge");
        rows[e.x] |= bit;
    }
    return from_rows(m, n, std::move(rows));
}

BipartiteGraph BipartiteGraph::from_bits(int m, int n, std::uint64_t code) {
    check_part_sizes(m, n);
    if (m * n > 64) throw std::invalid_argument("from_bits requires m*n <= 64");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
    for (int x = 0; x < m; ++x)
        rows[x] = (code >> (x * n)) & full_set(n);
    return from_rows(m, n, std::move(rows));
}

int BipartiteGraph::degree_x(int x) const { return std::popcount(rows_[x]); }
int BipartiteGraph::degree_y(int y) const { return std::popcount(cols_[y]); }

std::vector<Edge> BipartiteGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int x = 0; x < m_; ++x) {
        std::uint64_t r = rows_[x];
        while (r) {
            int y = std::countr_zero(r);
            r &= r - 1;
            out.push_back(Edge{x, y});
        }
    }
    return out;
}

BipartiteGraph BipartiteGraph::toggled(int x, int y) const {
    if (x < 0 || x >= m_ || y < 0 || y >= n_)
        throw std::invalid_argument("toggled endpoint out of range");
    std::vector<std::uint64_t> rows = rows_;
    rows[x] ^= std::uint64_t{1} << y;
    return from_rows(m_, n_, std::move(rows));
}

void ExtremalSpec::validate() const {
    if (m < 1 || n < 1) throw std::invalid_argument("extremal spec needs m, n >= 1");
    if (p < 1 || p > m) throw std::invalid_argument("extremal spec needs 1 <= p <= m");
    if (q < 1 || q > n) throw std::invalid_argument("extremal spec needs 1 <= q <= n");
}

BipartiteGraph make_complete(int m, int n) {
    check_part_sizes(m, n);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), full_set(n));
    return BipartiteGraph::from_rows(m, n, std::move(rows));
}

BipartiteGraph make_extremal(const ExtremalSpec& spec) {
    spec.validate();
    check_part_sizes(spec.m, spec.n);
    std::uint64_t whole = full_set(spec.n);
    std::uint64_t cut = whole & ~full_set(spec.q);  // survives edge deletion
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(spec.m), whole);
    for (int x = 0; x < spec.p; ++x) rows[x] = cut;
    return BipartiteGraph::from_rows(spec.m, spec.n, std::move(rows));
}

VertexSet neighborhood(const BipartiteGraph& g, VertexSet s) {
    VertexSet out = 0;
    s &= g.all_x();
    while (s) {
        int x = std::countr_zero(s);
        s &= s - 1;
        out |= g.row(x);
    }
    return out;
}

long long edges_between(const BipartiteGraph& g, VertexSet s, VertexSet t) {
    long long count = 0;
    s &= g.all_x();
    t &= g.all_y();
    while (s) {
        int x = std::countr_zero(s);
        s &= s - 1;
        count += std::popcount(g.row(x) & t);
    }
    return count;
}

bool is_connected(const BipartiteGraph& g) {
    VertexSet rx = 1, ry = 0;  // start from x0; parts are nonempty
    for (;;) {
        VertexSet ny = neighborhood(g, rx) | ry;
        VertexSet nx = rx;
        VertexSet fresh = ny & ~ry;
        while (fresh) {
            int y = std::countr_zero(fresh);
            fresh &= fresh - 1;
            nx |= g.col(y);
        }
        if (nx == rx && ny == ry) break;
        rx = nx;
        ry = ny;
    }
    return rx == g.all_x() && ry == g.all_y();
}

int min_degree(const BipartiteGraph& g) {
    int d = kMaxPartSize + 1;
    for (int x = 0; x < g.m(); ++x) d = std::min(d, g.degree_x(x));
    for (int y = 0; y < g.n(); ++y) d = std::min(d, g.degree_y(y));
    return d;
}

BipartiteGraph transposed(const BipartiteGraph& g) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(g.n()));
    for (int y = 0; y < g.n(); ++y) rows[y] = g.col(y);
    return BipartiteGraph::from_rows(g.n(), g.m(), std::move(rows));
}

namespace {

// Maps X(g) onto X(h) by backtracking. After every assignment the multiset
// of partial Y-column signatures (adjacency pattern against the mapped
// prefix) must agree between g and h, which kills most symmetric dead ends
// early. Once X is fully mapped, Y admits a completing bijection iff the
// final signature multisets are equal.
bool part_preserving_isomorphic(const BipartiteGraph& g, const BipartiteGraph& h) {
    const int m = g.m(), n = g.n();
    if (h.m() != m || h.n() != n || h.edge_count() != g.edge_count()) return false;

    std::vector<int> gx_deg(m), hx_deg(m);
    for (int x = 0; x < m; ++x) {
        gx_deg[x] = g.degree_x(x);
        hx_deg[x] = h.degree_x(x);
    }
    {
        std::vector<int> a = gx_deg, b = hx_deg;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
        std::vector<int> c(g.n()), d(g.n());
        for (int y = 0; y < n; ++y) {
            c[y] = g.degree_y(y);
            d[y] = h.degree_y(y);
        }
        std::sort(c.begin(), c.end());
        std::sort(d.begin(), d.end());
        if (c != d) return false;
    }

    std::vector<std::uint64_t> sig_g(n, 0), sig_h(n, 0);
    std::vector<bool> used(m, false);
    std::vector<int> image(m, -1);

    auto signatures_match = [&]() {
        std::vector<std::uint64_t> a = sig_g, b = sig_h;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    };

    auto rec = [&](auto&& self, int x) -> bool {
        if (x == m) return signatures_match();
        for (int t = 0; t < m; ++t) {
            if (used[t] || hx_deg[t] != gx_deg[x]) continue;
            used[t] = true;
            image[x] = t;
            for (int y = 0; y < n; ++y) {
                sig_g[y] = (sig_g[y] << 1) | ((g.row(x) >> y) & 1);
                sig_h[y] = (sig_h[y] << 1) | ((h.row(t) >> y) & 1);
            }
            bool ok = signatures_match() && self(self, x + 1);
            for (int y = 0; y < n; ++y) {
                sig_g[y] >>= 1;
                sig_h[y] >>= 1;
            }
            used[t] = false;
            image[x] = -1;
            if (ok) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace

std::optional<IsoMapping> find_isomorphism(const BipartiteGraph& g, const BipartiteGraph& h) {
    if (g.m() != h.m() || g.n() != h.n()) return std::nullopt;
    if (part_preserving_isomorphic(g, h)) return IsoMapping::part_preserving;
    if (g.m() == g.n() && part_preserving_isomorphic(g, transposed(h)))
        return IsoMapping::part_swapped;
    return std::nullopt;
}

bool is_isomorphic(const BipartiteGraph& g, const BipartiteGraph& h) {
    return find_isomorphism(g, h).has_value();
}

namespace {

int parse_int_token(std::string_view tok, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw std::invalid_argument("malformed " + std::string(what) + ": '" + std::string(tok) + "'");
    return value;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace

BipartiteGraph parse_graph(std::string_view text) {
    std::optional<BipartiteGraph> g;
    std::vector<std::uint64_t> rows;
    int m = 0, n = 0;
    bool have_header = false;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        auto toks = split_tokens(line);
        if (toks.empty() || toks[0].front() == '#') continue;

        if (!have_header) {
            if (toks[0] != "bip" || toks.size() != 3)
                throw std::invalid_argument("malformed header, expected 'bip <m> <n>'");
            m = parse_int_token(toks[1], "m");
            n = parse_int_token(toks[2], "n");
            check_part_sizes(m, n);
            rows.assign(static_cast<std::size_t>(m), 0);
            have_header = true;
            continue;
        }
        if (toks[0] != "e" || toks.size() != 3)
            throw std::invalid_argument("malformed edge line: '" + std::string(line) + "'");
        int i = parse_int_token(toks[1], "edge X index");
        int j = parse_int_token(toks[2], "edge Y index");
        if (i < 1 || i > m) throw std::invalid_argument("edge X index out of range");
        if (j < 1 || j > n) throw std::invalid_argument("edge Y index out of range");
        std::uint64_t bit = std::uint64_t{1} << (j - 1);
        if (rows[i - 1] & bit) throw std::invalid_argument("duplicate edge");
        rows[i - 1] |= bit;
    }
    if (!have_header) throw std::invalid_argument("missing 'bip <m> <n>' header");
    return BipartiteGraph::from_rows(m, n, std::move(rows));
}

std::string serialize_graph(const BipartiteGraph& g) {
    std::ostringstream out;
    out << "bip " << g.m() << ' ' << g.n() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.x + 1 << ' ' << e.y + 1 << '\n';
    return out.str();
}

std::vector<int> set_to_vertices(VertexSet s) {
    std::vector<int> out;
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

}  // namespace bispan
