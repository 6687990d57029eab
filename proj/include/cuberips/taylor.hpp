#pragma once

// Taylor resolution machinery for the face ideal of VR(Q_n;r): generator
// ordering, differential (resolution and reduced modes), the Gemeda product,
// reverse admissibility, the full antipodal product, and the two dual
// complexes whose low-degree homology mirrors top-degree cohomology.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cuberips/complex.hpp"
#include "cuberips/homology.hpp"
#include "cuberips/hypercube.hpp"

namespace cuberips {

using VPair = std::pair<Vertex, Vertex>;  // a < b

inline VPair make_vpair(Vertex a, Vertex b) {
    if (a == b) throw std::invalid_argument("generator pair needs distinct vertices");
    return a < b ? VPair{a, b} : VPair{b, a};
}

// Total order on ideal generators: Hamming distance first, then
// lexicographic on the (smaller, larger) endpoint pair.
inline int compare_generators(const VPair& p, const VPair& q) {
    int dp = hamming(p.first, p.second);
    int dq = hamming(q.first, q.second);
    if (dp != dq) return dp < dq ? -1 : 1;
    if (p == q) return 0;
    return p < q ? -1 : 1;
}

struct GeneratorOrdering {
    bool operator()(const VPair& p, const VPair& q) const { return compare_generators(p, q) < 0; }
};

// Product of ideal generators e_{p1}...e_{ps}, kept sorted by the generator
// ordering, with the union of endpoints cached.
struct TaylorGenerator {
    std::vector<VPair> pairs;
    VSet lcm;

    std::size_t filtration() const { return pairs.size(); }
    bool operator<(const TaylorGenerator& o) const { return pairs < o.pairs; }
    bool operator==(const TaylorGenerator& o) const { return pairs == o.pairs; }
};

inline VSet pairs_lcm(int n, const std::vector<VPair>& pairs) {
    VSet s(vertex_count(n));
    for (const auto& [a, b] : pairs) {
        s.set(a);
        s.set(b);
    }
    return s;
}

inline TaylorGenerator make_generator(const CubeParams& p, std::vector<VPair> pairs, bool require_sorted = false) {
    validate_params(p);
    const std::size_t nv = vertex_count(p.n);
    for (auto& pr : pairs) {
        pr = make_vpair(pr.first, pr.second);
        if (pr.second >= nv) throw std::invalid_argument("generator endpoint out of range");
        if (hamming(pr.first, pr.second) <= p.r)
            throw std::invalid_argument("pair {" + std::to_string(pr.first) + "," + std::to_string(pr.second) +
                                        "} is not an ideal generator (distance <= r)");
    }
    if (require_sorted) {
        for (std::size_t i = 1; i < pairs.size(); ++i)
            if (compare_generators(pairs[i - 1], pairs[i]) >= 0)
                throw std::invalid_argument("generator factors must be strictly sorted by the ordering");
    } else {
        std::sort(pairs.begin(), pairs.end(), GeneratorOrdering{});
        for (std::size_t i = 1; i < pairs.size(); ++i)
            if (pairs[i - 1] == pairs[i]) throw std::invalid_argument("repeated generator factor");
    }
    TaylorGenerator g;
    g.lcm = pairs_lcm(p.n, pairs);
    g.pairs = std::move(pairs);
    return g;
}

// The product of all antipodal-pair generators: full support, filtration
// 2^(n-1). Valid for any r < n since antipodes sit at the maximal distance.
inline TaylorGenerator theta(int n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("theta: n out of range");
    std::vector<VPair> pairs;
    const Vertex half = Vertex{1} << (n - 1);
    for (Vertex i = 0; i < half; ++i) pairs.push_back({i, antipode(i, n)});
    TaylorGenerator g;
    g.pairs = std::move(pairs);  // distance n ties broken by lex: already sorted by first element
    g.lcm = pairs_lcm(n, g.pairs);
    return g;
}

// Formal combination of Taylor terms: (generator, squarefree monomial
// coefficient) -> integer. All coefficient monomials in this codebase stay
// squarefree, so a vertex bitset is an exact representation.
using TaylorChain = std::map<std::pair<std::vector<VPair>, VSet>, BigInt>;

inline void taylor_add(TaylorChain& chain, const std::vector<VPair>& gen, const VSet& coeff, const BigInt& c) {
    if (c == 0) return;
    auto key = std::make_pair(gen, coeff);
    auto it = chain.find(key);
    if (it == chain.end()) {
        chain.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) chain.erase(it);
    }
}

enum class TaylorMode { Resolution, Reduced };

// d(e_J) = sum_i (-1)^(i-1) (m_J / m_{J minus j_i}) e_{J minus j_i}. The
// reduced mode (after tensoring with the residue field) keeps only terms
// whose monomial coefficient is 1.
inline TaylorChain taylor_differential(const TaylorGenerator& g, const CubeParams& p, TaylorMode mode) {
    TaylorChain out;
    for (std::size_t i = 0; i < g.pairs.size(); ++i) {
        std::vector<VPair> sub;
        sub.reserve(g.pairs.size() - 1);
        for (std::size_t j = 0; j < g.pairs.size(); ++j)
            if (j != i) sub.push_back(g.pairs[j]);
        VSet coeff = g.lcm;
        coeff -= pairs_lcm(p.n, sub);
        if (mode == TaylorMode::Reduced && coeff.any()) continue;
        taylor_add(out, sub, coeff, (i % 2 == 0) ? BigInt(1) : BigInt(-1));
    }
    return out;
}

// Differential extended linearly to chains; coefficient monomials multiply
// (disjoint unions at every step, so bitset union is exact).
inline TaylorChain taylor_differential(const TaylorChain& chain, const CubeParams& p, TaylorMode mode) {
    TaylorChain out;
    for (const auto& [key, c] : chain) {
        TaylorGenerator g;
        g.pairs = key.first;
        g.lcm = pairs_lcm(p.n, g.pairs);
        TaylorChain dg = taylor_differential(g, p, mode);
        for (const auto& [dkey, dc] : dg) {
            VSet coeff = key.second;
            coeff |= dkey.second;
            taylor_add(out, dkey.first, coeff, c * dc);
        }
    }
    return out;
}

// Gemeda product e_W * e_Q: zero when the factor sets share a generator;
// otherwise the merged generator with coefficient gcd(m_W, m_Q) and the sign
// of the permutation that interleaves the two sorted factor lists. Reduced
// mode keeps only coefficient-1 results (vertex-disjoint lcms).
struct TaylorTerm {
    int sign = 1;
    VSet coeff;
    TaylorGenerator gen;
};

inline std::optional<TaylorTerm> gemeda_product(const TaylorGenerator& w, const TaylorGenerator& q,
                                                const CubeParams& p, TaylorMode mode) {
    for (const auto& pw : w.pairs)
        for (const auto& pq : q.pairs)
            if (pw == pq) return std::nullopt;
    VSet shared = w.lcm;
    shared &= q.lcm;
    if (mode == TaylorMode::Reduced && shared.any()) return std::nullopt;
    // merge-sort the factor lists, counting inversions for the sign
    TaylorTerm t;
    t.coeff = shared;
    std::size_t i = 0, j = 0;
    long inversions = 0;
    while (i < w.pairs.size() || j < q.pairs.size()) {
        if (j == q.pairs.size() ||
            (i < w.pairs.size() && compare_generators(w.pairs[i], q.pairs[j]) < 0)) {
            t.gen.pairs.push_back(w.pairs[i]);
            ++i;
        } else {
            inversions += static_cast<long>(w.pairs.size() - i);
            t.gen.pairs.push_back(q.pairs[j]);
            ++j;
        }
    }
    t.sign = (inversions % 2 == 0) ? 1 : -1;
    t.gen.lcm = pairs_lcm(p.n, t.gen.pairs);
    return t;
}

// Reverse admissibility: for every prefix of the sorted factor list, no
// generator strictly later in the ordering may divide the prefix lcm. The
// scan enumerates candidate generators inside the prefix lcm directly.
inline bool is_admissible(const TaylorGenerator& g, const CubeParams& p) {
    for (std::size_t i = 1; i < g.pairs.size(); ++i)
        if (compare_generators(g.pairs[i - 1], g.pairs[i]) >= 0)
            throw std::invalid_argument("admissibility requires factors sorted by the ordering");
    VSet lcm(vertex_count(p.n));
    for (std::size_t h = 0; h < g.pairs.size(); ++h) {
        lcm.set(g.pairs[h].first);
        lcm.set(g.pairs[h].second);
        std::vector<Vertex> verts;
        for (std::size_t v = lcm.find_first(); v != VSet::npos; v = lcm.find_next(v))
            verts.push_back(static_cast<Vertex>(v));
        for (std::size_t a = 0; a < verts.size(); ++a)
            for (std::size_t b = a + 1; b < verts.size(); ++b) {
                if (hamming(verts[a], verts[b]) <= p.r) continue;  // not a generator
                if (compare_generators({verts[a], verts[b]}, g.pairs[h]) > 0) return false;
            }
    }
    return true;
}

// Split an admissible full-support generator as e_J * Theta_n. Throws if an
// antipodal factor is missing, which would contradict the decomposition
// property of admissible full-support generators.
inline std::pair<TaylorGenerator, TaylorGenerator> decompose_full_support(const TaylorGenerator& g,
                                                                          const CubeParams& p) {
    if (g.lcm.count() != vertex_count(p.n))
        throw std::invalid_argument("decomposition applies to full-support generators");
    if (!is_admissible(g, p)) throw std::invalid_argument("decomposition applies to admissible generators");
    TaylorGenerator th = theta(p.n);
    TaylorGenerator j;
    std::size_t found = 0;
    for (const auto& pr : g.pairs) {
        if (pr.second == static_cast<Vertex>(antipode(pr.first, p.n)))
            ++found;
        else
            j.pairs.push_back(pr);
    }
    if (found != th.pairs.size())
        throw std::logic_error("admissible full-support generator is missing an antipodal factor");
    j.lcm = pairs_lcm(p.n, j.pairs);
    return {j, th};
}

// ---------------------------------------------------------------------------
// Dual complexes on the intermediate-distance generators.

enum class DualVariant { C, J };  // admissible products / no antipodal pair in the endpoint union

struct DualComplex {
    CubeParams params;
    DualVariant variant = DualVariant::J;
    std::vector<VPair> vertices;  // generators with r < distance < n, sorted by the ordering
    SkeletonComplex sk;           // faces as index simplices into `vertices`
};

inline std::vector<VPair> intermediate_generators(const CubeParams& p) {
    validate_params(p);
    std::vector<VPair> out;
    const std::size_t nv = vertex_count(p.n);
    for (Vertex a = 0; a < nv; ++a)
        for (Vertex b = a + 1; b < nv; ++b) {
            int d = hamming(a, b);
            if (d > p.r && d < p.n) out.push_back({a, b});
        }
    std::sort(out.begin(), out.end(), GeneratorOrdering{});
    return out;
}

// Faces of size <= dim_cap+1, layered extension, deterministic order.
// vertex_ok(v) filters the 0-layer; extend_ok(face, w) decides whether
// face + {w} is again a face.
template <typename VertexOk, typename ExtendOk>
inline SkeletonComplex enumerate_layered(std::size_t vertex_total, int dim_cap, std::uint64_t max_simplices,
                                         VertexOk&& vertex_ok, ExtendOk&& extend_ok) {
    SkeletonComplex sk;
    sk.dims.emplace_back();
    for (std::size_t v = 0; v < vertex_total; ++v)
        if (vertex_ok(static_cast<Vertex>(v))) sk.dims[0].push_back({static_cast<Vertex>(v)});
    std::uint64_t total = sk.dims[0].size();
    for (int d = 0; d < dim_cap; ++d) {
        const auto& layer = sk.dims[d];
        if (layer.empty()) break;
        std::vector<std::vector<Simplex>> ext(layer.size());
        detail::parallel_for(layer.size(), [&](std::size_t i) {
            const Simplex& s = layer[i];
            for (std::size_t w = s.back() + 1; w < vertex_total; ++w) {
                if (!extend_ok(s, static_cast<Vertex>(w))) continue;
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
            throw CapExceeded("dual complex face cap exceeded at dimension " + std::to_string(d + 1));
        if (next.empty()) break;
        sk.dims.push_back(std::move(next));
    }
    return sk;
}

inline DualComplex build_dual_complex(const CubeParams& p, DualVariant variant, int dim_cap,
                                      std::uint64_t max_simplices = kDefaultMaxSimplices) {
    DualComplex dc;
    dc.params = p;
    dc.variant = variant;
    dc.vertices = intermediate_generators(p);
    dc.sk.n = p.n;
    dc.sk.r = p.r;
    const std::size_t M = dc.vertices.size();
    if (variant == DualVariant::J) {
        // flag complex: a set of generators is a face iff no antipodal pair
        // lies inside the union of their endpoints
        std::vector<VSet> compatible(M, VSet(M));
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = i + 1; j < M; ++j) {
                VSet u(vertex_count(p.n));
                u.set(dc.vertices[i].first);
                u.set(dc.vertices[i].second);
                u.set(dc.vertices[j].first);
                u.set(dc.vertices[j].second);
                bool ok = true;
                for (std::size_t v = u.find_first(); v != VSet::npos && ok; v = u.find_next(v))
                    if (u.test(antipode(static_cast<Vertex>(v), p.n))) ok = false;
                if (ok) {
                    compatible[i].set(j);
                    compatible[j].set(i);
                }
            }
        dc.sk = enumerate_layered(
            M, dim_cap, max_simplices, [](Vertex) { return true; },
            [&](const Simplex& s, Vertex w) {
                for (Vertex v : s)
                    if (!compatible[v].test(w)) return false;
                return true;
            });
    } else {
        // admissible products: face iff (product of members) * Theta_n is
        // admissible; closed under subsets, so layered extension is complete
        TaylorGenerator th = theta(p.n);
        auto with_theta = [&](const Simplex& s, Vertex extra, bool use_extra) {
            TaylorGenerator g;
            for (Vertex v : s) g.pairs.push_back(dc.vertices[v]);
            if (use_extra) g.pairs.push_back(dc.vertices[extra]);
            g.pairs.insert(g.pairs.end(), th.pairs.begin(), th.pairs.end());
            g.lcm = pairs_lcm(p.n, g.pairs);
            return is_admissible(g, p);
        };
        dc.sk = enumerate_layered(
            M, dim_cap, max_simplices,
            [&](Vertex v) { return with_theta({v}, 0, false); },
            [&](const Simplex& s, Vertex w) { return with_theta(s, w, true); });
    }
    dc.sk.n = p.n;
    dc.sk.r = p.r;
    return dc;
}

// Compare rank H^(2^(n-1)-t-1)(VR(Q_n;r)) with rank H_(t-1) of the two dual
// complexes: equality against the admissible-product complex, and a summand
// inequality against the flag variant.
struct DualHomologyReport {
    int t = 0;
    int vr_degree = 0;
    std::int64_t vr_rank = 0;
    std::int64_t c_rank = 0;
    std::int64_t j_rank = 0;
    bool c_equal = false;
    bool j_summand = false;
};

inline DualHomologyReport dual_homology_check(const CubeParams& p, int t, CoeffRing ring,
                                              std::uint64_t max_simplices = kDefaultMaxSimplices) {
    if (t < 1) throw std::invalid_argument("dual homology check needs t >= 1");
    DualHomologyReport rep;
    rep.t = t;
    const long long half = 1LL << (p.n - 1);
    rep.vr_degree = static_cast<int>(half - t - 1);
    if (rep.vr_degree < 0) throw std::invalid_argument("degree 2^(n-1)-t-1 is negative for this t");
    FlagView view = make_vr_view(p);
    SkeletonComplex vr = enumerate_skeleton(view, rep.vr_degree + 1, max_simplices);
    rep.vr_rank = reduced_betti(vr, rep.vr_degree, ring);
    DualComplex c = build_dual_complex(p, DualVariant::C, t, max_simplices);
    DualComplex j = build_dual_complex(p, DualVariant::J, t, max_simplices);
    rep.c_rank = reduced_betti(c.sk, t - 1, ring);
    rep.j_rank = reduced_betti(j.sk, t - 1, ring);
    rep.c_equal = (rep.vr_rank == rep.c_rank);
    rep.j_summand = (rep.vr_rank <= rep.j_rank);
    return rep;
}

}  // namespace cuberips
