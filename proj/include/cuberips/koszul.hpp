#pragma once

// Koszul complex over the face ideal of a flag view (ghost vertices
// included): differential, monomial cocycle criterion, star products,
// support-restricted cohomology ranks, ghost restriction maps, and the
// triangular independence certificate built from detector vertex sets.

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
#include "cuberips/rings.hpp"

namespace cuberips {

// Generators of the face ideal of a view: one quadratic generator per
// non-adjacent live pair, one linear generator per dead (ghost) vertex.
struct IdealGenerators {
    std::vector<std::pair<Vertex, Vertex>> pairs;  // a < b, sorted
    std::vector<Vertex> singletons;                // dead vertices, sorted
};

inline IdealGenerators sr_generators(const FlagView& view) {
    IdealGenerators gens;
    const std::size_t nv = view.vertex_capacity();
    for (Vertex a = 0; a < nv; ++a) {
        if (!view.live.test(a)) {
            gens.singletons.push_back(a);
            continue;
        }
        for (Vertex b = a + 1; b < nv; ++b)
            if (view.live.test(b) && !view.adj[a].test(b)) gens.pairs.emplace_back(a, b);
    }
    return gens;
}

// Basis monomial u_U (x) x_X of the Koszul complex; U and X are disjoint
// vertex bitsets over the full algebraic universe [0, 2^n).
struct KoszulMonomial {
    VSet u;
    VSet x;

    VSet support() const {
        VSet s = u;
        s |= x;
        return s;
    }
    bool operator<(const KoszulMonomial& o) const {
        if (u != o.u) return u < o.u;
        return x < o.x;
    }
    bool operator==(const KoszulMonomial& o) const { return u == o.u && x == o.x; }
};

inline KoszulMonomial make_koszul_monomial(int n, const std::vector<Vertex>& u_verts,
                                           const std::vector<Vertex>& x_verts) {
    KoszulMonomial m{vset_of(n, u_verts), vset_of(n, x_verts)};
    if ((m.u & m.x).any()) throw std::invalid_argument("u-part and x-part must be disjoint");
    return m;
}

// Full-support monomial: u-part is everything outside the x-part.
inline KoszulMonomial full_support_monomial(int n, const std::vector<Vertex>& x_verts) {
    VSet x = vset_of(n, x_verts);
    VSet u = x;
    u.flip();
    return {u, x};
}

template <typename R>
struct KoszulCochain {
    using Elem = typename R::Elem;
    std::map<KoszulMonomial, Elem> terms;

    void add(const KoszulMonomial& m, Elem c) {
        if (R::is_zero(c)) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, std::move(c));
        } else {
            it->second = R::add(it->second, c);
            if (R::is_zero(it->second)) terms.erase(it);
        }
    }
    bool empty() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }
    bool operator==(const KoszulCochain& o) const { return terms == o.terms; }

    // Common support of all terms; throws if terms disagree.
    VSet common_support() const {
        if (terms.empty()) throw std::invalid_argument("empty cochain has no support");
        VSet s = terms.begin()->first.support();
        for (const auto& [m, c] : terms)
            if (m.support() != s) throw std::invalid_argument("cochain terms have mixed supports");
        return s;
    }
};

using KoszulF2 = KoszulCochain<F2Ring>;
using KoszulZ = KoszulCochain<ZRing>;

namespace detail {

// Is X (plus optionally one extra vertex) a face of the view?
inline bool face_with(const FlagView& view, const VSet& x, Vertex extra) {
    if (!view.is_live(extra)) return false;
    for (std::size_t v = x.find_first(); v != VSet::npos; v = x.find_next(v))
        if (!view.adj[extra].test(v)) return false;
    return true;
}

}  // namespace detail

// d(u_{i1}...u_{is} (x) x_J) = sum_l (-1)^(l+1) u-part minus u_{il} (x)
// x_{il} x_J, dropping terms whose new x-part is not a face (it then lies in
// the ideal). Homological x-degree rises by one; support is preserved.
template <typename R>
inline KoszulCochain<R> koszul_differential(const KoszulCochain<R>& c, const FlagView& view) {
    KoszulCochain<R> out;
    for (const auto& [m, coeff] : c.terms) {
        int pos = 0;
        for (std::size_t v = m.u.find_first(); v != VSet::npos; v = m.u.find_next(v)) {
            ++pos;  // 1-based position of v in the ascending u-list
            if (!detail::face_with(view, m.x, static_cast<Vertex>(v))) continue;
            KoszulMonomial t = m;
            t.u.reset(v);
            t.x.set(v);
            out.add(t, (pos % 2 == 1) ? coeff : R::neg(coeff));
        }
    }
    return out;
}

// A full-support monomial is a cocycle iff its x-part is a maximal simplex.
inline bool is_monomial_cocycle(const KoszulMonomial& m, const FlagView& view) {
    VSet sup = m.support();
    if (sup.count() != sup.size())
        throw std::invalid_argument("monomial cocycle criterion needs full support");
    Simplex x = vset_to_vertices(m.x);
    if (!is_simplex(view, x)) throw std::invalid_argument("x-part is not a face of the view");
    return is_maximal_simplex(view, x);
}

// Every vertex of a maximal simplex of VR(Q_{r+1};r) must have another
// member at distance at least r (the excluded pair lies in the ideal one
// scale down).
inline bool local_diameter_check(const Simplex& sigma, int r) {
    CubeParams p{r + 1, r};
    FlagView view = make_vr_view(p);
    Simplex s = normalize_simplex(sigma);
    if (!is_simplex(view, s) || !is_maximal_simplex(view, s))
        throw std::invalid_argument("local diameter condition applies to maximal simplices only");
    for (Vertex a : s) {
        bool has_far = false;
        for (Vertex b : s)
            if (b != a && hamming(a, b) >= r) {
                has_far = true;
                break;
            }
        if (!has_far) return false;
    }
    return true;
}

// Push a maximal simplex of VR(Q_{r+1};r) through a subcube embedding and
// return the full-support Koszul monomial on its image. The local diameter
// condition guarantees the result is a cocycle; this is re-verified.
inline KoszulMonomial lift_cocycle(const Simplex& sigma, const SubcubeEmbedding& emb, const CubeParams& p,
                                   const FlagView& ambient) {
    if (static_cast<int>(emb.coords.size()) != p.r + 1)
        throw std::invalid_argument("embedding must come from Q_{r+1}");
    if (emb.n != p.n || ambient.n != p.n || ambient.r != p.r)
        throw std::invalid_argument("embedding/view dimension mismatch");
    if (!local_diameter_check(sigma, p.r)) throw std::invalid_argument("simplex fails the local diameter condition");
    std::vector<Vertex> image;
    for (Vertex v : sigma) image.push_back(emb.map(v));
    KoszulMonomial m = full_support_monomial(p.n, image);
    KoszulF2 c;
    c.add(m, 1);
    if (!koszul_differential(c, ambient).empty())
        throw std::logic_error("lifted monomial unexpectedly fails the cocycle check");
    return m;
}

// Star product: zero when the supports meet; otherwise monomial-wise union
// with the sign of the shuffle interleaving the two ascending u-lists.
template <typename R>
inline KoszulCochain<R> star_product(const KoszulCochain<R>& c1, const KoszulCochain<R>& c2) {
    KoszulCochain<R> out;
    if (c1.empty() || c2.empty()) return out;
    if ((c1.common_support() & c2.common_support()).any()) return out;
    for (const auto& [m1, a] : c1.terms)
        for (const auto& [m2, b] : c2.terms) {
            // count inversions between the two ascending u-lists
            std::uint64_t inversions = 0;
            std::uint64_t greater_in_m1 = 0;  // m1.u vertices seen above the current m2.u vertex
            std::size_t i = m1.u.find_first(), j = m2.u.find_first();
            std::uint64_t remaining1 = m1.u.count();
            while (j != VSet::npos) {
                while (i != VSet::npos && i < j) {
                    i = m1.u.find_next(i);
                    --remaining1;
                }
                greater_in_m1 = remaining1;
                inversions += greater_in_m1;
                j = m2.u.find_next(j);
            }
            KoszulMonomial t;
            t.u = m1.u | m2.u;
            t.x = m1.x | m2.x;
            typename R::Elem coeff = R::mul(a, b);
            out.add(t, (inversions % 2 == 0) ? coeff : R::neg(coeff));
        }
    return out;
}

// Kill every monomial whose x-part uses a vertex outside I; u-generators
// pass through. This is the map into the ghost complex's Koszul complex.
template <typename R>
inline KoszulCochain<R> ghost_restrict(const KoszulCochain<R>& c, const VSet& I) {
    KoszulCochain<R> out;
    for (const auto& [m, coeff] : c.terms)
        if (m.x.is_subset_of(I)) out.add(m, coeff);
    return out;
}

// ---------------------------------------------------------------------------
// Support-restricted cohomology ranks.

namespace detail {

// Faces of the view lying inside J with exactly `size` vertices, as bitsets,
// in deterministic order. size 0 yields the empty face.
inline std::vector<VSet> faces_in_support(const FlagView& view, const VSet& J, int size) {
    std::vector<VSet> out;
    if (size < 0) return out;
    if (size == 0) {
        out.emplace_back(J.size());
        return out;
    }
    std::vector<Vertex> verts;
    for (std::size_t v = J.find_first(); v != VSet::npos; v = J.find_next(v))
        if (view.is_live(static_cast<Vertex>(v))) verts.push_back(static_cast<Vertex>(v));
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(vset_of(view.n, cur));
            return;
        }
        for (std::size_t k = start; k < verts.size(); ++k) {
            Vertex w = verts[k];
            bool ok = true;
            for (Vertex v : cur)
                if (!view.adj[v].test(w)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(w);
            self(self, k + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace detail

// Rank of the Koszul cohomology at support J and x-degree s, over F2 or Q.
// Basis in x-degree t: monomials u_{J minus X} (x) x_X with X a t-face in J.
// By the Hochster decomposition this equals the reduced Betti number of the
// full subcomplex on J in degree s-1.
inline std::uint64_t koszul_support_rank(const FlagView& view, const VSet& J, int s, CoeffRing ring) {
    if (s < 0) return 0;
    if (ring == CoeffRing::Z) throw std::invalid_argument("support rank needs a field (f2 or q)");
    std::vector<VSet> below = detail::faces_in_support(view, J, s - 1);
    std::vector<VSet> here = detail::faces_in_support(view, J, s);
    std::vector<VSet> above = detail::faces_in_support(view, J, s + 1);
    std::sort(below.begin(), below.end());
    std::sort(here.begin(), here.end());
    std::sort(above.begin(), above.end());
    auto index_of = [](const std::vector<VSet>& list, const VSet& x) -> std::optional<std::size_t> {
        auto it = std::lower_bound(list.begin(), list.end(), x);
        if (it == list.end() || *it != x) return std::nullopt;
        return static_cast<std::size_t>(it - list.begin());
    };
    // Differential rows: one per source monomial, entries over target faces.
    // d moves a vertex v of U = J \ X into X, with sign by position in U.
    auto build = [&](const std::vector<VSet>& src, const std::vector<VSet>& dst, auto&& emit) {
        for (std::size_t i = 0; i < src.size(); ++i) {
            VSet U = J;
            U -= src[i];
            int pos = 0;
            for (std::size_t v = U.find_first(); v != VSet::npos; v = U.find_next(v)) {
                ++pos;
                if (!detail::face_with(view, src[i], static_cast<Vertex>(v))) continue;
                VSet t = src[i];
                t.set(v);
                if (auto j = index_of(dst, t)) emit(i, *j, pos % 2 == 1 ? 1 : -1);
            }
        }
    };
    std::uint64_t rank_out = 0, rank_in = 0;
    if (ring == CoeffRing::F2) {
        std::vector<VSet> m1(here.size(), VSet(above.size()));
        build(here, above, [&](std::size_t i, std::size_t j, int) { m1[i].flip(j); });
        rank_out = rank_rows_f2(m1);
        std::vector<VSet> m2(below.size(), VSet(here.size()));
        build(below, here, [&](std::size_t i, std::size_t j, int) { m2[i].flip(j); });
        rank_in = rank_rows_f2(m2);
    } else {
        std::vector<SparseRow<QRing>> m1(here.size());
        build(here, above, [&](std::size_t i, std::size_t j, int sgn) { m1[i].emplace_back(j, BigRational(sgn)); });
        rank_out = rank_rows_field<QRing>(m1);
        std::vector<SparseRow<QRing>> m2(below.size());
        build(below, here, [&](std::size_t i, std::size_t j, int sgn) { m2[i].emplace_back(j, BigRational(sgn)); });
        rank_in = rank_rows_field<QRing>(m2);
    }
    return here.size() - rank_out - rank_in;
}

// Reduced Betti number of the full subcomplex on J in degree d, for
// comparison against koszul_support_rank(view, J, d+1).
inline std::int64_t subcomplex_reduced_betti(const FlagView& view, const VSet& J, int d, CoeffRing ring,
                                             std::uint64_t max_simplices = kDefaultMaxSimplices) {
    VSet live = view.live;
    live &= J;
    FlagView sub = make_view(CubeParams{view.n, view.r}, live);
    if (live.none()) return d == -1 ? 1 : 0;  // empty complex: only reduced degree -1 survives
    if (d == -1) return 0;
    SkeletonComplex sk = enumerate_skeleton(sub, d + 1, max_simplices);
    return reduced_betti(sk, d, ring);
}

// Rank of H^degree (suspension indexing: x-degree = degree) of the ghost
// complex at full support, computed two ways: directly from the Koszul
// complex of the ghost ideal, and from the reduced cohomology of the live
// subcomplex. Throws if the two disagree.
struct GhostRankReport {
    std::uint64_t koszul_rank = 0;
    std::int64_t subcomplex_betti = 0;
};

inline GhostRankReport ghost_cohomology_rank(const FlagView& ghost, int degree, CoeffRing ring) {
    GhostRankReport rep;
    VSet full(vertex_count(ghost.n));
    full.set();
    rep.koszul_rank = koszul_support_rank(ghost, full, degree, ring);
    rep.subcomplex_betti = subcomplex_reduced_betti(ghost, ghost.live, degree - 1, ring);
    if (rep.subcomplex_betti < 0 || rep.koszul_rank != static_cast<std::uint64_t>(rep.subcomplex_betti))
        throw std::logic_error("ghost cohomology ranks disagree between Koszul and subcomplex routes");
    return rep;
}

// ---------------------------------------------------------------------------
// Independence certificate.

// The unique far-pair matching inside a detector set: every detector vertex
// must have exactly one non-neighbor within the set.
inline VertexPairs detector_pairs(const FlagView& view, const std::vector<Vertex>& detector) {
    VertexPairs pairs;
    std::vector<Vertex> D = detector;
    std::sort(D.begin(), D.end());
    for (std::size_t i = 0; i < D.size(); ++i) {
        std::vector<Vertex> far;
        for (std::size_t j = 0; j < D.size(); ++j)
            if (i != j && hamming(D[i], D[j]) > view.r) far.push_back(D[j]);
        if (far.size() != 1)
            throw std::invalid_argument("detector vertex " + std::to_string(D[i]) +
                                        " does not have a unique far partner");
        if (D[i] < far[0]) pairs.emplace_back(D[i], far[0]);
    }
    return pairs;
}

// F2 fundamental cycle of the cross polytope spanned by a detector set.
inline ChainF2 detector_fundamental_cycle(const FlagView& view, const std::vector<Vertex>& detector) {
    VertexPairs pairs = detector_pairs(view, detector);
    return reduce_mod2(cross_polytope_cycle(pairs, CubeParams{view.n, view.r}));
}

// View an F2 Koszul cochain as a simplicial cochain on the x-parts.
inline ChainF2 x_parts_as_chain(const KoszulF2& c) {
    ChainF2 out;
    for (const auto& [m, coeff] : c.terms) out.add(vset_to_vertices(m.x), coeff);
    return out;
}

// Triangular elimination: for each step, restricting to the detector must
// keep the step's own class nonzero (pairing 1 against the detector's
// fundamental cycle) and kill every class not yet eliminated.
struct IndependenceVerdict {
    bool pass = false;
    std::vector<std::size_t> elimination_order;
    std::string failure;  // empty on pass

    explicit operator bool() const { return pass; }
};

inline IndependenceVerdict independence_certificate(const FlagView& view, const std::vector<KoszulF2>& classes,
                                                    const std::vector<std::vector<Vertex>>& detectors,
                                                    const std::vector<std::size_t>& elimination_order) {
    IndependenceVerdict v;
    v.elimination_order = elimination_order;
    if (classes.size() != detectors.size()) {
        v.failure = "class/detector count mismatch";
        return v;
    }
    std::vector<std::size_t> order = elimination_order;
    if (order.empty())
        for (std::size_t i = 0; i < classes.size(); ++i) order.push_back(i);
    std::vector<bool> eliminated(classes.size(), false);
    for (std::size_t step : order) {
        if (step >= classes.size()) {
            v.failure = "elimination order index out of range";
            return v;
        }
        try {
            const VSet I = vset_of(view.n, detectors[step]);
            ChainF2 cycle = detector_fundamental_cycle(view, detectors[step]);
            KoszulF2 own = ghost_restrict(classes[step], I);
            if (own.empty() || F2Ring::is_zero(pair_chains(x_parts_as_chain(own), cycle))) {
                v.failure = "class " + std::to_string(step) + " does not survive its own detector";
                return v;
            }
            for (std::size_t j = 0; j < classes.size(); ++j) {
                if (j == step || eliminated[j]) continue;
                if (!ghost_restrict(classes[j], I).empty()) {
                    v.failure = "detector " + std::to_string(step) + " fails to kill class " + std::to_string(j);
                    return v;
                }
            }
        } catch (const std::exception& e) {
            v.failure = "detector " + std::to_string(step) + " invalid: " + e.what();
            return v;
        }
        eliminated[step] = true;
    }
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (!eliminated[i]) {
            v.failure = "class " + std::to_string(i) + " never eliminated";
            return v;
        }
    v.pass = true;
    return v;
}

}  // namespace cuberips
