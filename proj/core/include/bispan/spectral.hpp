#pragma once

#include <vector>

#include "bispan/graph.hpp"

namespace bispan {

/// Reduced fraction with positive denominator. Quotient entries are exact
/// so the equitable (constant row sum) test never sees rounding.
struct Rational {
    long long num = 0;
    long long den = 1;
    friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(long long num, long long den);

/// Quotient of an adjacency matrix under a vertex partition: entry (i, j)
/// is the average number of block-j neighbors of a block-i vertex.
struct QuotientMatrix {
    std::vector<std::vector<Rational>> entries;
    std::vector<int> part_sizes;
    bool equitable = false;

    int order() const { return static_cast<int>(part_sizes.size()); }
    bool integral() const;
    friend bool operator==(const QuotientMatrix&, const QuotientMatrix&) = default;
};

/// lambda^4 + c2*lambda^2 + c0 with exact integer coefficients; the
/// characteristic polynomial shape shared by all three extremal families.
struct EvenQuartic {
    long long c2 = 0;
    long long c0 = 0;
    friend bool operator==(const EvenQuartic&, const EvenQuartic&) = default;
};

struct SpectralEstimate {
    double value = 0.0;
    double residual = 0.0;    // ||A z - rho z||_inf of the assembled eigenvector
    long long iterations = 0;
};

/// The three one-parameter families of K_{m,n} minus a biclique whose
/// 4x4 equitable quotients have closed-form characteristic polynomials.
enum class QuotientFamily {
    star_on_x,  // K_{x,y} \ E(K_{1, y-a+1}): one X-vertex keeps a-1 neighbors
    star_on_y,  // K_{x,y} \ E(K_{x-a+1, 1}): one Y-vertex keeps a-1 neighbors
    biclique,   // K_{x,y} \ E(K_{s, y-s})
};

ExtremalSpec star_on_x_spec(int x, int y, int a);
ExtremalSpec star_on_y_spec(int x, int y, int a);
ExtremalSpec biclique_spec(int x, int y, int s);

/// Largest adjacency eigenvalue by power iteration on the Gram product of
/// the biadjacency matrix (eigenvalues rho^2, so the +-rho symmetry of
/// bipartite spectra cannot stall it), run per connected component with the
/// max taken. Deterministic all-ones start, one ramp re-seed if the iterate
/// degenerates. Throws after 10^6 iterations without convergence.
SpectralEstimate spectral_radius(const BipartiteGraph& g, double tol = 1e-10);

/// The paper-exact 4x4 equitable quotient of the family member named by
/// `spec` viewed through `family`. Errors if `spec` is not in the family.
QuotientMatrix quotient_matrix(const ExtremalSpec& spec, QuotientFamily family);

/// Closed-form quartic coefficients for the same family member.
EvenQuartic char_poly(const ExtremalSpec& spec, QuotientFamily family);

/// sqrt((-c2 + sqrt(c2^2 - 4 c0)) / 2); discriminant in 128-bit integers.
double largest_root(const EvenQuartic& p);

/// Monic characteristic polynomial of an integral quotient matrix,
/// expanded by Faddeev-LeVerrier over 128-bit integers. Coefficients are
/// returned from lambda^k down to the constant term. This is the
/// independent route against which the printed formulas are checked.
std::vector<long long> characteristic_polynomial(const QuotientMatrix& q);

enum class Theorem { t1, t2, t3, t4 };

struct TheoremParams {
    int a = 0;      // t1
    int b = 0;      // t1
    int k = 0;      // t2, t4
    int delta = 0;  // t3
};

/// Spectral-radius threshold of the given theorem at the given parameters,
/// validated against the theorem's stated ranges.
double threshold(Theorem t, int m, int n, const TheoremParams& p);

struct NosalBound {
    double bound = 0.0;  // sqrt(e(G))
    bool tight = false;  // non-isolated part induces a complete bipartite graph
};

NosalBound nosal_bound(const BipartiteGraph& g);

/// Average-row-sum quotient of an arbitrary partition of V(G); blocks are
/// global vertex ids (X first, then Y offset by m). The equitable flag is
/// set by the exact constant-row-sum test. Blocks must be nonempty,
/// disjoint, and cover V(G).
QuotientMatrix quotient_of_partition(const BipartiteGraph& g,
                                     const std::vector<std::vector<int>>& blocks);

}  // namespace bispan
