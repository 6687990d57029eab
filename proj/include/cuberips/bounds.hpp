#pragma once

// Numeric invariants of VR(Q_n;r): total-domination connectivity lower
// bounds, exact Cayley-graph Laplacian spectra of the complement graph with
// the resulting spectral bound, the coconnectivity upper bound, the maximal
// diameter-r cardinality bound, and exact total domination for small graphs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuberips/complex.hpp"
#include "cuberips/hypercube.hpp"

namespace cuberips {

// alpha(n,r) = 2^(n-1) / degree_complement(n,r)
inline BigRational alpha(const CubeParams& p) {
    validate_params(p);
    BigInt denom = degree_complement(p.n, p.r);
    if (denom == 0) throw std::invalid_argument("alpha undefined at r = n (empty complement degree)");
    BigInt num = BigInt(1) << (p.n - 1);
    return BigRational(num, denom);
}

inline BigInt floor_rational(const BigRational& q) {
    BigInt n = boost::multiprecision::numerator(q);
    BigInt d = boost::multiprecision::denominator(q);  // always > 0
    BigInt f = n / d;
    if (n < 0 && f * d != n) --f;
    return f;
}

inline BigInt ceil_rational(const BigRational& q) {
    BigInt n = boost::multiprecision::numerator(q);
    BigInt d = boost::multiprecision::denominator(q);
    BigInt c = n / d;
    if (n > 0 && c * d != n) ++c;
    return c;
}

inline bool is_integer(const BigRational& q) { return boost::multiprecision::denominator(q) == 1; }

// VR(Q_n;r) is (k-1)-connected with k = [alpha] for non-integer alpha and
// k = alpha - 1 otherwise; returns k-1.
inline BigInt conn_lower_bound(const CubeParams& p) {
    BigRational a = alpha(p);
    BigInt k = is_integer(a) ? BigInt(boost::multiprecision::numerator(a) - 1) : floor_rational(a);
    return k - 1;
}

// gamma_t(G) >= m / max_degree for graphs without isolated vertices.
inline BigRational total_domination_lb(const BigInt& m, const BigInt& max_degree) {
    if (max_degree < 1) throw std::invalid_argument("max degree must be >= 1 (no isolated vertices)");
    return BigRational(m, max_degree);
}

// Krawtchouk polynomial K_j(i;n) = sum_t (-1)^t C(i,t) C(n-i,j-t).
inline BigInt krawtchouk(int j, int i, int n) {
    if (j < 0 || i < 0 || n < 0 || i > n) throw std::invalid_argument("krawtchouk arguments out of range");
    BigInt acc = 0;
    for (int t = 0; t <= j; ++t) {
        BigInt term = binomial(i, t) * binomial(n - i, j - t);
        acc += (t % 2 == 0) ? term : -term;
    }
    return acc;
}

// Laplacian spectrum of the Cayley graph G^c_{n,r} (edges at Hamming
// distance > r): one eigenvalue per weight class i with multiplicity C(n,i).
struct LaplacianSpectrum {
    int n = 0;
    int r = 0;
    std::vector<BigInt> eigenvalue;     // indexed by weight class 0..n
    std::vector<BigInt> multiplicity;   // C(n,i)

    BigInt max_eigenvalue() const {
        BigInt m = 0;
        for (const auto& e : eigenvalue) m = std::max(m, e);
        return m;
    }
};

inline LaplacianSpectrum laplacian_spectrum_complement(const CubeParams& p) {
    validate_params(p);
    LaplacianSpectrum sp;
    sp.n = p.n;
    sp.r = p.r;
    BigInt degree = degree_complement(p.n, p.r);
    for (int i = 0; i <= p.n; ++i) {
        BigInt character_sum = 0;  // adjacency eigenvalue at weight class i
        for (int j = p.r + 1; j <= p.n; ++j) character_sum += krawtchouk(j, i, p.n);
        sp.eigenvalue.push_back(degree - character_sum);
        sp.multiplicity.push_back(binomial(p.n, i));
    }
    return sp;
}

// Conn(VR(Q_n;r)) >= 2^n / lambda_max(G^c) - 2, exact rational.
inline BigRational spectral_conn_lb(const CubeParams& p) {
    LaplacianSpectrum sp = laplacian_spectrum_complement(p);
    BigInt lam = sp.max_eigenvalue();
    if (lam == 0) throw std::invalid_argument("complement graph has empty spectrum gap (r = n?)");
    return BigRational(BigInt(1) << p.n, lam) - 2;
}

// Cohomology of VR(Q_n;r) vanishes in all degrees >= B where
// B = 2^(n-1) - 2^(n-2) S / (2S - 1) - 1 with S = sum_{i=r+1}^{n-1} C(n,i).
// Requires n > r+1 so that S >= 1.
struct CoconnBound {
    BigRational exact;
    BigInt report;  // ceil(exact): first integer degree with asserted vanishing
};

inline CoconnBound coconn_upper_bound(const CubeParams& p) {
    validate_params(p);
    if (p.n <= p.r + 1) throw std::invalid_argument("coconnectivity bound needs n > r+1");
    BigInt S = 0;
    for (int i = p.r + 1; i <= p.n - 1; ++i) S += binomial(p.n, i);
    BigRational B = BigRational(BigInt(1) << (p.n - 1)) -
                    BigRational((BigInt(1) << (p.n - 2)) * S, 2 * S - 1) - 1;
    return {B, ceil_rational(B)};
}

// Largest cardinality of a subset of Q_n with diameter <= r.
inline BigInt kleitman_max_cardinality(int n, int r) {
    if (n < 1 || r < 0) throw std::invalid_argument("kleitman arguments out of range");
    BigInt acc = 0;
    if (r % 2 == 0) {
        int t = r / 2;
        for (int i = 0; i <= t; ++i) acc += binomial(n, i);
    } else {
        int t = (r - 1) / 2;
        for (int i = 0; i <= t; ++i) acc += binomial(n - 1, i);
        acc *= 2;
    }
    return acc;
}

// Aggregated numeric invariants for one parameter pair.
struct BoundReport {
    int n = 0;
    int r = 0;
    BigRational alpha;
    BigInt conn_lb;
    BigInt spectral_lambda;
    BigRational spectral_conn;
    std::optional<BigInt> coconn_ub;       // absent when n <= r+1
    std::optional<BigRational> coconn_exact;
    BigInt kleitman_max_card;
};

inline BoundReport bound_report(const CubeParams& p) {
    BoundReport rep;
    rep.n = p.n;
    rep.r = p.r;
    rep.alpha = alpha(p);
    rep.conn_lb = conn_lower_bound(p);
    LaplacianSpectrum sp = laplacian_spectrum_complement(p);
    rep.spectral_lambda = sp.max_eigenvalue();
    rep.spectral_conn = spectral_conn_lb(p);
    if (p.n > p.r + 1) {
        CoconnBound cb = coconn_upper_bound(p);
        rep.coconn_ub = cb.report;
        rep.coconn_exact = cb.exact;
    }
    rep.kleitman_max_card = kleitman_max_cardinality(p.n, p.r);
    return rep;
}

// ---------------------------------------------------------------------------
// Exact total domination on small explicit graphs (up to 64 vertices for
// membership tests; exact gamma_t capped at 24 vertices).

struct SmallGraph {
    int m = 0;                        // vertex count
    std::vector<std::uint64_t> adj;   // adjacency masks

    static SmallGraph from_edges(int m, const std::vector<std::pair<int, int>>& edges) {
        if (m < 1 || m > 64) throw std::invalid_argument("SmallGraph supports 1..64 vertices");
        SmallGraph g;
        g.m = m;
        g.adj.assign(m, 0);
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= m || b >= m) throw std::invalid_argument("edge endpoint out of range");
            if (a == b) throw std::invalid_argument("loops are not allowed");
            g.adj[a] |= std::uint64_t{1} << b;
            g.adj[b] |= std::uint64_t{1} << a;
        }
        return g;
    }

    bool has_isolated_vertex() const {
        for (int v = 0; v < m; ++v)
            if (adj[v] == 0) return true;
        return false;
    }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < m; ++v) d = std::max(d, popcount(adj[v]));
        return d;
    }
};

// The complement graph of G_{n,r}: vertices of Q_n, edges at distance > r.
inline SmallGraph complement_distance_graph(const CubeParams& p) {
    validate_params(p, true);
    if (p.n > 6) throw std::invalid_argument("explicit complement graph limited to n <= 6 (64 vertices)");
    SmallGraph g;
    g.m = static_cast<int>(vertex_count(p.n));
    g.adj.assign(g.m, 0);
    for (int a = 0; a < g.m; ++a)
        for (int b = 0; b < g.m; ++b)
            if (a != b && hamming(static_cast<Vertex>(a), static_cast<Vertex>(b)) > p.r)
                g.adj[a] |= std::uint64_t{1} << b;
    return g;
}

inline bool is_total_dominating(const SmallGraph& g, std::uint64_t S) {
    for (int v = 0; v < g.m; ++v)
        if ((g.adj[v] & S) == 0) return false;
    return true;
}

inline std::optional<int> undominated_witness(const SmallGraph& g, std::uint64_t S) {
    for (int v = 0; v < g.m; ++v)
        if ((g.adj[v] & S) == 0) return v;
    return std::nullopt;
}

namespace detail {

// Branch and bound: pick the lowest-indexed undominated vertex and try each
// of its neighbors as the next member of the dominating set.
inline void gamma_t_search(const SmallGraph& g, std::uint64_t S, int size, int lowest_undominated, int& best) {
    if (size >= best) return;
    int v = -1;
    for (int u = lowest_undominated; u < g.m; ++u)
        if ((g.adj[u] & S) == 0) {
            v = u;
            break;
        }
    if (v < 0) {
        best = size;
        return;
    }
    std::uint64_t cands = g.adj[v];
    while (cands) {
        int w = std::countr_zero(cands);
        cands &= cands - 1;
        if (S & (std::uint64_t{1} << w)) continue;
        gamma_t_search(g, S | (std::uint64_t{1} << w), size + 1, v, best);
    }
}

}  // namespace detail

inline int gamma_t_exact(const SmallGraph& g) {
    if (g.m > 24) throw CapExceeded("exact total domination capped at 24 vertices");
    if (g.has_isolated_vertex()) throw std::invalid_argument("total domination undefined with isolated vertices");
    int best = g.m + 1;
    detail::gamma_t_search(g, 0, 0, 0, best);
    return best;
}

// Whether the 2m vertices of a validated cross-polytope cycle totally
// dominate G^c_{n,r}: every vertex of Q_n has some cycle vertex at distance
// greater than r. Returns the first undominated vertex on failure.
struct TdsCheck {
    bool dominating = false;
    std::optional<Vertex> witness;
};

inline TdsCheck tds_from_cycle(const VertexPairs& pairs, const CubeParams& p) {
    validate_cross_polytope_pairs(pairs, p);
    std::vector<Vertex> members;
    for (const auto& [a, b] : pairs) {
        members.push_back(a);
        members.push_back(b);
    }
    TdsCheck res;
    const std::size_t nv = vertex_count(p.n);
    for (Vertex v = 0; v < nv; ++v) {
        bool dominated = false;
        for (Vertex u : members)
            if (u != v && hamming(u, v) > p.r) {
                dominated = true;
                break;
            }
        if (!dominated) {
            res.witness = v;
            return res;
        }
    }
    res.dominating = true;
    return res;
}

}  // namespace cuberips
