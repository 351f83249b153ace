#include "bispan/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bispan {

Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

bool QuotientMatrix::integral() const {
    for (const auto& row : entries)
        for (const Rational& r : row)
            if (r.den != 1) return false;
    return true;
}

ExtremalSpec star_on_x_spec(int x, int y, int a) {
    if (x < 1 || y < 1 || a < 1 || a > y)
        throw std::invalid_argument("star-on-X family needs x,y >= 1 and 1 <= a <= y");
    return ExtremalSpec{x, y, 1, y - a + 1};
}

ExtremalSpec star_on_y_spec(int x, int y, int a) {
    if (x < 1 || y < 1 || a < 1 || a > x)
        throw std::invalid_argument("star-on-Y family needs x,y >= 1 and 1 <= a <= x");
    return ExtremalSpec{x, y, x - a + 1, 1};
}

ExtremalSpec biclique_spec(int x, int y, int s) {
    if (x < 1 || y < 1 || s < 1 || s > x || s > y - 1)
        throw std::invalid_argument("biclique family needs 1 <= s <= x and s <= y-1");
    return ExtremalSpec{x, y, s, y - s};
}

namespace {

struct FamilyView {
    int x, y, param;  // param = a for the star families, s for biclique
};

FamilyView view_as(const ExtremalSpec& spec, QuotientFamily family) {
    spec.validate();
    switch (family) {
        case QuotientFamily::star_on_x:
            if (spec.p != 1)
                throw std::invalid_argument("spec is not K_{x,y} \\ E(K_{1, y-a+1})");
            return FamilyView{spec.m, spec.n, spec.n - spec.q + 1};
        case QuotientFamily::star_on_y:
            if (spec.q != 1)
                throw std::invalid_argument("spec is not K_{x,y} \\ E(K_{x-a+1, 1})");
            return FamilyView{spec.m, spec.n, spec.m - spec.p + 1};
        case QuotientFamily::biclique:
            if (spec.q != spec.n - spec.p)
                throw std::invalid_argument("spec is not K_{x,y} \\ E(K_{s, y-s})");
            return FamilyView{spec.m, spec.n, spec.p};
    }
    throw std::invalid_argument("unknown quotient family");
}

QuotientMatrix from_integer_rows(std::vector<std::vector<long long>> rows,
                                 std::vector<int> parts) {
    QuotientMatrix q;
    q.part_sizes = std::move(parts);
    q.entries.reserve(rows.size());
    for (auto& row : rows) {
        std::vector<Rational> r;
        r.reserve(row.size());
        for (long long v : row) r.push_back(Rational{v, 1});
        q.entries.push_back(std::move(r));
    }
    q.equitable = true;
    return q;
}

}  // namespace

QuotientMatrix quotient_matrix(const ExtremalSpec& spec, QuotientFamily family) {
    auto [x, y, t] = view_as(spec, family);
    long long a = t, s = t;
    switch (family) {
        case QuotientFamily::star_on_x:
            return from_integer_rows(
                {{0, 0, a - 1, 0},
                 {0, 0, a - 1, y - a + 1},
                 {1, x - 1, 0, 0},
                 {0, x - 1, 0, 0}},
                {1, x - 1, static_cast<int>(a - 1), static_cast<int>(y - a + 1)});
        case QuotientFamily::star_on_y:
            return from_integer_rows(
                {{0, 0, 1, y - 1},
                 {0, 0, 0, y - 1},
                 {a - 1, 0, 0, 0},
                 {a - 1, x - a + 1, 0, 0}},
                {static_cast<int>(a - 1), static_cast<int>(x - a + 1), 1, y - 1});
        case QuotientFamily::biclique:
            return from_integer_rows(
                {{0, 0, s, 0},
                 {0, 0, s, y - s},
                 {s, x - s, 0, 0},
                 {0, x - s, 0, 0}},
                {static_cast<int>(s), static_cast<int>(x - s), static_cast<int>(s),
                 static_cast<int>(y - s)});
    }
    throw std::invalid_argument("unknown quotient family");
}

EvenQuartic char_poly(const ExtremalSpec& spec, QuotientFamily family) {
    auto [xi, yi, ti] = view_as(spec, family);
    long long x = xi, y = yi, a = ti, s = ti;
    switch (family) {
        case QuotientFamily::star_on_x:
            return EvenQuartic{-x * y - a + y + 1,
                               -a * a * x + a * x * y + a * a + 2 * x * a - a * y - x * y -
                                   2 * a - x + y + 1};
        case QuotientFamily::star_on_y:
            return EvenQuartic{-x * y - a + x + 1,
                               -a * a * y + a * x * y + a * a - x * a + 2 * a * y - x * y -
                                   2 * a + x - y + 1};
        case QuotientFamily::biclique:
            return EvenQuartic{-s * s + s * y - x * y,
                               s * s * s * s - s * s * s * x - s * s * s * y + s * s * x * y};
    }
    throw std::invalid_argument("unknown quotient family");
}

double largest_root(const EvenQuartic& p) {
    __int128 disc = static_cast<__int128>(p.c2) * p.c2 - 4 * static_cast<__int128>(p.c0);
    if (disc < 0) throw std::domain_error("even quartic has a negative discriminant");
    double lambda_sq = (-static_cast<double>(p.c2) + std::sqrt(static_cast<double>(disc))) / 2.0;
    if (lambda_sq < 0) throw std::domain_error("even quartic has no real root");
    return std::sqrt(lambda_sq);
}

std::vector<long long> characteristic_polynomial(const QuotientMatrix& q) {
    if (!q.integral())
        throw std::invalid_argument("characteristic_polynomial needs integer entries");
    const int k = q.order();
    using Big = __int128;
    std::vector<std::vector<Big>> base(k, std::vector<Big>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) base[i][j] = q.entries[i][j].num;

    // Newton's identities on power traces p_i = tr(M^i).
    std::vector<Big> ptr(k + 1, 0);
    std::vector<std::vector<Big>> power = base;
    for (int i = 1; i <= k; ++i) {
        if (i > 1) {
            std::vector<std::vector<Big>> next(k, std::vector<Big>(k, 0));
            for (int r = 0; r < k; ++r)
                for (int c2 = 0; c2 < k; ++c2) {
                    Big acc = 0;
                    for (int t = 0; t < k; ++t) acc += power[r][t] * base[t][c2];
                    next[r][c2] = acc;
                }
            power = std::move(next);
        }
        Big tr = 0;
        for (int r = 0; r < k; ++r) tr += power[r][r];
        ptr[i] = tr;
    }
    std::vector<Big> elem(k + 1, 0);
    elem[0] = 1;
    for (int i = 1; i <= k; ++i) {
        Big acc = 0;
        for (int j = 1; j <= i; ++j) {
            Big term = elem[i - j] * ptr[j];
            acc += (j % 2 == 1) ? term : -term;
        }
        elem[i] = acc / i;  // exact for integer matrices
    }
    std::vector<long long> coeffs(k + 1);
    for (int i = 0; i <= k; ++i) {
        Big c = elem[i];
        if (i % 2 == 1) c = -c;
        coeffs[i] = static_cast<long long>(c);
    }
    return coeffs;
}

namespace {

struct Component {
    VertexSet xs = 0;
    VertexSet ys = 0;
};

std::vector<Component> connected_components(const BipartiteGraph& g) {
    std::vector<Component> comps;
    VertexSet seen_x = 0, seen_y = 0;
    for (int x0 = 0; x0 < g.m(); ++x0) {
        if ((seen_x >> x0) & 1) continue;
        Component c;
        c.xs = VertexSet{1} << x0;
        for (;;) {
            VertexSet ny = (neighborhood(g, c.xs)) | c.ys;
            VertexSet nx = c.xs;
            VertexSet fresh = ny & ~c.ys;
            while (fresh) {
                int y = std::countr_zero(fresh);
                fresh &= fresh - 1;
                nx |= g.col(y);
            }
            if (nx == c.xs && ny == c.ys) break;
            c.xs = nx;
            c.ys = ny;
        }
        seen_x |= c.xs;
        seen_y |= c.ys;
        comps.push_back(c);
    }
    for (int y0 = 0; y0 < g.n(); ++y0)
        if (!((seen_y >> y0) & 1)) comps.push_back(Component{0, VertexSet{1} << y0});
    return comps;
}

struct PowerResult {
    double rho = 0.0;
    double residual = 0.0;
    long long iterations = 0;
};

constexpr long long kIterationCap = 1'000'000;

// Power iteration on the Gram product restricted to one component, built
// over whichever side of the component is smaller.
PowerResult component_radius(const BipartiteGraph& g, const Component& c, double tol) {
    std::vector<int> xs = set_to_vertices(c.xs);
    std::vector<int> ys = set_to_vertices(c.ys);
    const bool use_y = ys.size() <= xs.size();
    const std::vector<int>& side = use_y ? ys : xs;
    const int d = static_cast<int>(side.size());

    std::vector<std::vector<double>> gram(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            VertexSet common = use_y ? (g.col(side[i]) & g.col(side[j]) & c.xs)
                                     : (g.row(side[i]) & g.row(side[j]) & c.ys);
            gram[i][j] = gram[j][i] = static_cast<double>(std::popcount(common));
        }

    std::vector<double> v(d, 1.0), w(d, 0.0);
    auto normalize = [](std::vector<double>& vec) {
        double norm = 0.0;
        for (double t : vec) norm += t * t;
        norm = std::sqrt(norm);
        if (norm == 0.0) return false;
        for (double& t : vec) t /= norm;
        return true;
    };
    normalize(v);

    bool reseeded = false;
    double lam_prev = -1.0;
    PowerResult out;
    for (long long it = 1; it <= kIterationCap; ++it) {
        for (int i = 0; i < d; ++i) {
            double acc = 0.0;
            for (int j = 0; j < d; ++j) acc += gram[i][j] * v[j];
            w[i] = acc;
        }
        double lam = 0.0;
        for (int i = 0; i < d; ++i) lam += v[i] * w[i];  // Rayleigh, v is unit

        double residual = std::numeric_limits<double>::infinity();
        if (lam > 0.0) {
            double rho = std::sqrt(lam);
            // ||A z - rho z||_inf for z = (Bv/rho ; v), scaled to ||z||_inf = 1.
            double u_inf = 0.0;
            const std::vector<int>& other = use_y ? xs : ys;
            for (int idx : other) {
                VertexSet nb = use_y ? (g.row(idx) & c.ys) : (g.col(idx) & c.xs);
                double acc = 0.0;
                while (nb) {
                    int b = std::countr_zero(nb);
                    nb &= nb - 1;
                    int pos = static_cast<int>(std::lower_bound(side.begin(), side.end(), b) -
                                               side.begin());
                    acc += v[pos];
                }
                u_inf = std::max(u_inf, std::abs(acc) / rho);
            }
            double v_inf = 0.0;
            for (double t : v) v_inf = std::max(v_inf, std::abs(t));
            double raw = 0.0;
            for (int i = 0; i < d; ++i) raw = std::max(raw, std::abs(w[i] / rho - rho * v[i]));
            double scale = std::max(u_inf, v_inf);
            if (scale > 0.0) residual = raw / scale;
        }

        bool stagnated = std::abs(lam - lam_prev) <= tol * std::max(1.0, std::abs(lam));
        if (stagnated && residual <= tol) {
            out.rho = lam > 0.0 ? std::sqrt(lam) : 0.0;
            out.residual = residual;
            out.iterations = it;
            return out;
        }
        lam_prev = lam;

        std::vector<double> next = w;
        if (!normalize(next)) {
            if (reseeded)
                throw std::runtime_error("power iteration degenerated twice");
            reseeded = true;
            for (int i = 0; i < d; ++i) next[i] = static_cast<double>(i + 1);
            normalize(next);
            lam_prev = -1.0;
        }
        v = std::move(next);
    }
    throw std::runtime_error("power iteration did not converge within the iteration cap");
}

}  // namespace

SpectralEstimate spectral_radius(const BipartiteGraph& g, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (g.edge_count() == 0) return SpectralEstimate{0.0, 0.0, 0};

    SpectralEstimate best{0.0, 0.0, 0};
    for (const Component& c : connected_components(g)) {
        if (edges_between(g, c.xs, c.ys) == 0) continue;
        PowerResult r = component_radius(g, c, tol);
        if (r.rho > best.value) best = SpectralEstimate{r.rho, r.residual, r.iterations};
    }
    return best;
}

double threshold(Theorem t, int m, int n, const TheoremParams& p) {
    switch (t) {
        case Theorem::t1: {
            if (p.a < 1 || p.b <= p.a)
                throw std::invalid_argument("t1 needs positive integers b > a");
            if (static_cast<long long>(p.a) * m != static_cast<long long>(p.b) * n)
                throw std::invalid_argument("t1 needs a*m = b*n");
            if (m < n + p.b) throw std::invalid_argument("t1 needs m >= n + b");
            return largest_root(char_poly(star_on_x_spec(m, n, p.a), QuotientFamily::star_on_x));
        }
        case Theorem::t2: {
            if (p.k < 3) throw std::invalid_argument("t2 needs k >= 3");
            if (n <= (p.k - 1) * m) throw std::invalid_argument("t2 needs n > (k-1)m");
            if (m < p.k + 1) throw std::invalid_argument("t2 needs m >= k+1");
            return largest_root(char_poly(star_on_x_spec(m, n, p.k), QuotientFamily::star_on_x));
        }
        case Theorem::t3: {
            if (!(n > m && m >= 3)) throw std::invalid_argument("t3 needs n > m >= 3");
            if (p.delta < 1 || p.delta > m)
                throw std::invalid_argument("t3 needs 1 <= delta <= m");
            return largest_root(
                char_poly(biclique_spec(m, n, p.delta), QuotientFamily::biclique));
        }
        case Theorem::t4: {
            if (m != n) throw std::invalid_argument("t4 needs a balanced graph (m = n)");
            if (p.k < 1) throw std::invalid_argument("t4 needs k >= 1");
            if (n < 2 * p.k + 2) throw std::invalid_argument("t4 needs n >= 2k+2");
            return largest_root(char_poly(star_on_x_spec(n, n, p.k), QuotientFamily::star_on_x));
        }
    }
    throw std::invalid_argument("unknown theorem");
}

NosalBound nosal_bound(const BipartiteGraph& g) {
    VertexSet live_x = 0, live_y = 0;
    for (int x = 0; x < g.m(); ++x)
        if (g.row(x)) live_x |= VertexSet{1} << x;
    for (int y = 0; y < g.n(); ++y)
        if (g.col(y)) live_y |= VertexSet{1} << y;
    long long full = static_cast<long long>(std::popcount(live_x)) * std::popcount(live_y);
    return NosalBound{std::sqrt(static_cast<double>(g.edge_count())), g.edge_count() == full};
}

QuotientMatrix quotient_of_partition(const BipartiteGraph& g,
                                     const std::vector<std::vector<int>>& blocks) {
    const int total = g.m() + g.n();
    std::vector<int> owner(total, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw std::invalid_argument("partition block is empty");
        for (int v : blocks[b]) {
            if (v < 0 || v >= total) throw std::invalid_argument("partition vertex out of range");
            if (owner[v] != -1) throw std::invalid_argument("partition blocks overlap");
            owner[v] = static_cast<int>(b);
        }
    }
    for (int v = 0; v < total; ++v)
        if (owner[v] == -1) throw std::invalid_argument("partition misses a vertex");

    const int k = static_cast<int>(blocks.size());
    std::vector<VertexSet> bx(k, 0), by(k, 0);
    for (int b = 0; b < k; ++b)
        for (int v : blocks[b]) {
            if (v < g.m())
                bx[b] |= VertexSet{1} << v;
            else
                by[b] |= VertexSet{1} << (v - g.m());
        }

    auto row_sum_into = [&](int v, int b) -> int {
        if (v < g.m()) return std::popcount(g.row(v) & by[b]);
        return std::popcount(g.col(v - g.m()) & bx[b]);
    };

    QuotientMatrix q;
    q.part_sizes.reserve(blocks.size());
    for (const auto& blk : blocks) q.part_sizes.push_back(static_cast<int>(blk.size()));
    q.equitable = true;
    q.entries.assign(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            long long sum = 0;
            int first = row_sum_into(blocks[i][0], j);
            bool constant = true;
            for (int v : blocks[i]) {
                int s = row_sum_into(v, j);
                sum += s;
                constant = constant && s == first;
            }
            if (!constant) q.equitable = false;
            q.entries[i][j] = make_rational(sum, static_cast<long long>(blocks[i].size()));
        }
    }
    return q;
}

}  // namespace bispan
