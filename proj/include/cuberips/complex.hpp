#pragma once

// Flag complexes of Hamming-distance graphs on hypercube vertex sets:
// simplex tests, capped skeleton enumeration, cross-polytope cycles,
// and induced subcomplex views on restricted vertex sets.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cuberips/hypercube.hpp"
#include "cuberips/rings.hpp"

namespace cuberips {

using Simplex = std::vector<Vertex>;  // vertices strictly increasing

inline Simplex normalize_simplex(Simplex s) {
    std::sort(s.begin(), s.end());
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1]) throw std::invalid_argument("simplex has a repeated vertex");
    return s;
}

// Sign of the permutation sorting `s` ascending; s must have no repeats.
inline int sort_sign(const Simplex& s) {
    int sign = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (s[i] == s[j]) throw std::invalid_argument("simplex has a repeated vertex");
            if (s[i] > s[j]) sign = -sign;
        }
    return sign;
}

// Formal R-linear combination of simplices, keyed by the ascending vertex
// list with coefficients relative to that orientation.
template <typename R>
struct Chain {
    using Elem = typename R::Elem;
    std::map<Simplex, Elem> terms;

    void add(const Simplex& raw, Elem coeff) {
        if (R::is_zero(coeff)) return;
        Simplex s = raw;
        int sign = 1;
        if (!std::is_sorted(s.begin(), s.end())) {
            sign = sort_sign(s);
            std::sort(s.begin(), s.end());
        } else {
            for (std::size_t i = 1; i < s.size(); ++i)
                if (s[i] == s[i - 1]) throw std::invalid_argument("simplex has a repeated vertex");
        }
        if (sign < 0) coeff = R::neg(coeff);
        auto it = terms.find(s);
        if (it == terms.end()) {
            terms.emplace(std::move(s), std::move(coeff));
        } else {
            it->second = R::add(it->second, coeff);
            if (R::is_zero(it->second)) terms.erase(it);
        }
    }

    bool empty() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }

    Chain& operator+=(const Chain& other) {
        for (const auto& [s, c] : other.terms) add(s, c);
        return *this;
    }
    Chain& scale(const Elem& k) {
        if (R::is_zero(k)) {
            terms.clear();
            return *this;
        }
        for (auto& [s, c] : terms) c = R::mul(c, k);
        return *this;
    }
    bool operator==(const Chain& other) const { return terms == other.terms; }
};

using ChainF2 = Chain<F2Ring>;
using ChainQ = Chain<QRing>;
using ChainZ = Chain<ZRing>;

// Thrown when an enumeration or matrix computation exceeds a resource cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Flag complex of the graph on a vertex subset of Q_n with edges at Hamming
// distance <= r. Adjacency is cached as bitsets, so views are limited to
// n <= 13 (8192 vertices, 8 MiB of adjacency).
struct FlagView {
    int n = 0;
    int r = 0;
    VSet live;                 // vertex set of the view
    std::vector<VSet> adj;     // adj[v] = live neighbors of v, only valid for live v

    std::size_t vertex_capacity() const { return live.size(); }
    bool is_live(Vertex v) const { return v < live.size() && live.test(v); }
    bool adjacent(Vertex a, Vertex b) const { return a != b && is_live(a) && is_live(b) && adj[a].test(b); }
};

inline constexpr int kMaxViewN = 13;

inline FlagView make_view(const CubeParams& p, const VSet& vertices) {
    validate_params(p);
    if (p.n > kMaxViewN) throw std::invalid_argument("flag views cache adjacency bitsets; n must be <= 13");
    const std::size_t nv = vertex_count(p.n);
    if (vertices.size() != nv) throw std::invalid_argument("vertex set has wrong universe size");
    FlagView view;
    view.n = p.n;
    view.r = p.r;
    view.live = vertices;
    view.adj.assign(nv, VSet(nv));
    for (Vertex a = 0; a < nv; ++a) {
        if (!vertices.test(a)) continue;
        for (Vertex b = a + 1; b < nv; ++b) {
            if (!vertices.test(b)) continue;
            if (hamming(a, b) <= p.r) {
                view.adj[a].set(b);
                view.adj[b].set(a);
            }
        }
    }
    return view;
}

// Full Vietoris-Rips view: every vertex of Q_n, edges at distance <= r.
inline FlagView make_vr_view(const CubeParams& p) {
    VSet all(vertex_count(p.n));
    all.set();
    return make_view(p, all);
}

// Induced subcomplex on the vertex subset I.
inline FlagView make_induced_view(const CubeParams& p, const std::vector<Vertex>& I) {
    return make_view(p, vset_of(p.n, I));
}

inline bool is_simplex(const FlagView& view, const Simplex& raw) {
    Simplex s;
    try {
        s = normalize_simplex(raw);
    } catch (const std::invalid_argument&) {
        return false;
    }
    for (Vertex v : s)
        if (!view.is_live(v)) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!view.adj[s[i]].test(s[j])) return false;
    return true;
}

// Live vertices adjacent to every vertex of s (excluding s itself).
inline VSet common_neighbors(const FlagView& view, const Simplex& s) {
    VSet cn = view.live;
    for (Vertex v : s) cn &= view.adj[v];
    for (Vertex v : s) cn.reset(v);
    return cn;
}

inline bool is_maximal_simplex(const FlagView& view, const Simplex& raw) {
    Simplex s = normalize_simplex(raw);
    if (!is_simplex(view, s)) throw std::invalid_argument("not a simplex of the view");
    return common_neighbors(view, s).none();
}

// Skeleton of a flag view up to a dimension: dims[d] lists the d-simplices
// in lexicographic order of their ascending vertex lists.
struct SkeletonComplex {
    int n = 0;
    int r = 0;
    std::vector<std::vector<Simplex>> dims;

    int top_dim() const { return static_cast<int>(dims.size()) - 1; }
    std::uint64_t count(int d) const {
        return (d >= 0 && d <= top_dim()) ? dims[d].size() : 0;
    }
    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& layer : dims) t += layer.size();
        return t;
    }
    std::vector<std::uint64_t> f_vector() const {
        std::vector<std::uint64_t> f;
        for (const auto& layer : dims) f.push_back(layer.size());
        return f;
    }
};

inline constexpr std::uint64_t kDefaultMaxSimplices = 50'000'000;

inline unsigned thread_budget() {
    if (const char* env = std::getenv("CUBERIPS_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace detail {

// Deterministic chunked parallel map: out[i] = fn(i), order preserved.
template <typename Fn>
inline void parallel_for(std::size_t count, Fn&& fn) {
    unsigned threads = thread_budget();
    if (threads <= 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    const std::size_t chunk = std::max<std::size_t>(1, count / (threads * 8));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t begin = next.fetch_add(chunk);
                if (begin >= count) return;
                std::size_t end = std::min(count, begin + chunk);
                for (std::size_t i = begin; i < end; ++i) fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

// Enumerate all simplices of dimension <= max_dim, layer by layer. Each
// d-simplex is extended by live neighbors larger than its last vertex, which
// yields each simplex exactly once in lexicographic order. Throws CapExceeded
// (naming the dimension reached) if the running total passes max_simplices.
inline SkeletonComplex enumerate_skeleton(const FlagView& view, int max_dim,
                                          std::uint64_t max_simplices = kDefaultMaxSimplices) {
    if (max_dim < 0) throw std::invalid_argument("max_dim must be >= 0");
    SkeletonComplex sk;
    sk.n = view.n;
    sk.r = view.r;
    sk.dims.emplace_back();
    for (Vertex v = 0; v < view.vertex_capacity(); ++v)
        if (view.live.test(v)) sk.dims[0].push_back({v});
    std::uint64_t total = sk.dims[0].size();
    if (total > max_simplices)
        throw CapExceeded("simplex cap exceeded at dimension 0 (count " + std::to_string(total) + ")");

    for (int d = 0; d < max_dim; ++d) {
        const auto& layer = sk.dims[d];
        if (layer.empty()) break;
        std::vector<std::vector<Simplex>> ext(layer.size());
        detail::parallel_for(layer.size(), [&](std::size_t i) {
            const Simplex& s = layer[i];
            VSet cands = view.adj[s[0]];
            for (std::size_t j = 1; j < s.size(); ++j) cands &= view.adj[s[j]];
            for (std::size_t w = cands.find_first(); w != VSet::npos; w = cands.find_next(w)) {
                if (w <= s.back()) continue;
                Simplex t = s;
                t.push_back(static_cast<Vertex>(w));
                ext[i].push_back(std::move(t));
            }
        });
        std::vector<Simplex> next;
        for (auto& e : ext) {
            total += e.size();
            next.insert(next.end(), std::make_move_iterator(e.begin()), std::make_move_iterator(e.end()));
        }
        if (total > max_simplices)
            throw CapExceeded("simplex cap exceeded at dimension " + std::to_string(d + 1) + " (running total " +
                              std::to_string(total) + ")");
        if (next.empty()) break;
        sk.dims.push_back(std::move(next));
    }
    return sk;
}

// Maximal simplices (maximal cliques of the view's graph), via pivoted
// Bron-Kerbosch. Deterministic output order: sorted vertex lists, lex order.
inline std::vector<Simplex> maximal_simplices(const FlagView& view,
                                              std::uint64_t max_count = kDefaultMaxSimplices) {
    std::vector<Simplex> out;
    const std::size_t nv = view.vertex_capacity();
    Simplex cur;
    auto expand = [&](auto&& self, VSet cand, VSet excl) -> void {
        if (cand.none() && excl.none()) {
            out.push_back(cur);
            if (out.size() > max_count) throw CapExceeded("maximal simplex cap exceeded");
            return;
        }
        VSet both = cand;
        both |= excl;
        std::size_t pivot = 0;
        std::size_t best = 0;
        bool have = false;
        for (std::size_t u = both.find_first(); u != VSet::npos; u = both.find_next(u)) {
            VSet t = cand;
            t &= view.adj[u];
            if (!have || t.count() > best) {
                have = true;
                best = t.count();
                pivot = u;
            }
        }
        VSet scan = cand;
        scan -= view.adj[pivot];
        for (std::size_t v = scan.find_first(); v != VSet::npos; v = scan.find_next(v)) {
            cur.push_back(static_cast<Vertex>(v));
            VSet nc = cand;
            nc &= view.adj[v];
            VSet ne = excl;
            ne &= view.adj[v];
            self(self, nc, ne);
            cur.pop_back();
            cand.reset(v);
            excl.set(v);
        }
    };
    expand(expand, view.live, VSet(nv));
    for (auto& s : out) std::sort(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Pairs spanning a cross-polytope inside a distance graph: the two vertices
// of a pair are farther than r apart, any two vertices from different pairs
// are within r.
using VertexPairs = std::vector<std::pair<Vertex, Vertex>>;

inline void validate_cross_polytope_pairs(const VertexPairs& pairs, const CubeParams& p) {
    validate_params(p);
    if (pairs.empty()) throw std::invalid_argument("need at least one pair");
    std::set<Vertex> seen;
    const std::size_t nv = vertex_count(p.n);
    for (const auto& [a, b] : pairs) {
        if (a >= nv || b >= nv) throw std::invalid_argument("pair vertex out of range");
        if (!seen.insert(a).second || !seen.insert(b).second)
            throw std::invalid_argument("pairs are not disjoint");
        if (hamming(a, b) <= p.r)
            throw std::invalid_argument("pair {" + std::to_string(a) + "," + std::to_string(b) +
                                        "} is within distance r");
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            for (Vertex a : {pairs[i].first, pairs[i].second})
                for (Vertex b : {pairs[j].first, pairs[j].second})
                    if (hamming(a, b) > p.r)
                        throw std::invalid_argument("vertices " + std::to_string(a) + " and " + std::to_string(b) +
                                                    " from different pairs exceed distance r");
}

// Fundamental cycle of the cross-polytope on m validated pairs: the signed
// sum over all 2^m choices of one vertex per pair, with sign (-1)^k where k
// counts pairs contributing their first vertex. For m = 1 this is the
// 0-cycle [second] - [first].
inline ChainZ cross_polytope_cycle(const VertexPairs& pairs, const CubeParams& p) {
    validate_cross_polytope_pairs(pairs, p);
    const std::size_t m = pairs.size();
    ChainZ cycle;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Simplex s;
        int firsts = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                s.push_back(pairs[i].first);
                ++firsts;
            } else {
                s.push_back(pairs[i].second);
            }
        }
        cycle.add(s, (firsts % 2 == 0) ? BigInt(1) : BigInt(-1));
    }
    return cycle;
}

// The one simplex of a chain whose vertices all lie in the bottom half of
// the cube (every coordinate word below 2^(n-1)). Errors unless unique.
template <typename R>
inline Simplex small_chain(const Chain<R>& chain, int n) {
    const Vertex half = Vertex{1} << (n - 1);
    const Simplex* found = nullptr;
    for (const auto& [s, c] : chain.terms) {
        bool small = true;
        for (Vertex v : s)
            if (v >= half) {
                small = false;
                break;
            }
        if (small) {
            if (found) throw std::invalid_argument("chain has more than one bottom-half simplex");
            found = &s;
        }
    }
    if (!found) throw std::invalid_argument("chain has no bottom-half simplex");
    return *found;
}

// Downward closure of a set of faces, as a SkeletonComplex (lex-sorted).
inline SkeletonComplex closure_complex(const std::vector<Simplex>& faces, int n, int r) {
    std::set<Simplex> all;
    for (const auto& raw : faces) {
        Simplex s = normalize_simplex(raw);
        const std::size_t k = s.size();
        if (k >= 64) throw std::invalid_argument("face too large for closure");
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
            Simplex f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::uint64_t{1} << i)) f.push_back(s[i]);
            all.insert(std::move(f));
        }
    }
    SkeletonComplex sk;
    sk.n = n;
    sk.r = r;
    for (const auto& s : all) {
        const std::size_t d = s.size() - 1;
        if (sk.dims.size() <= d) sk.dims.resize(d + 1);
        sk.dims[d].push_back(s);
    }
    for (auto& layer : sk.dims) std::sort(layer.begin(), layer.end());
    return sk;
}

}  // namespace cuberips
