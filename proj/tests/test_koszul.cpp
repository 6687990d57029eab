#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "cuberips/homology.hpp"
#include "cuberips/koszul.hpp"

using namespace cuberips;

namespace {

// the nine full-support cocycle x-sets in the 16-vertex view at r = 2
const std::vector<std::vector<Vertex>> kXSets{
    {0, 1, 2, 3}, {0, 1, 4, 5}, {0, 2, 4, 6}, {0, 3, 5, 6}, {2, 3, 6, 7},
    {1, 3, 5, 7}, {1, 2, 4, 7}, {4, 5, 6, 7}, {8, 9, 10, 11},
};

// detector of class i: the x-set together with its translate by a mask
const std::vector<Vertex> kDetectorMasks{11, 13, 14, 15, 13, 14, 15, 11, 7};

std::vector<Vertex> detector_of(std::size_t i) {
    std::set<Vertex> s;
    for (Vertex v : kXSets[i]) {
        s.insert(v);
        s.insert(v ^ kDetectorMasks[i]);
    }
    return {s.begin(), s.end()};
}

std::vector<KoszulF2> nine_classes() {
    std::vector<KoszulF2> cs;
    for (const auto& x : kXSets) {
        KoszulF2 c;
        c.add(full_support_monomial(4, x), 1);
        cs.push_back(c);
    }
    return cs;
}

const std::vector<std::size_t> kOrder{1, 2, 3, 4, 5, 6, 7, 8, 0};

template <typename R>
KoszulCochain<R> random_koszul(const FlagView& view, const SkeletonComplex& sk, std::mt19937& rng) {
    KoszulCochain<R> c;
    std::uniform_int_distribution<int> nterms(1, 5), pick_dim(0, int(sk.dims.size()) - 1),
        coeff(-3, 3);
    const std::size_t nv = view.vertex_capacity();
    for (int t = nterms(rng); t > 0; --t) {
        int d = pick_dim(rng);
        if (sk.dims[d].empty()) continue;
        const Simplex& x = sk.dims[d][rng() % sk.dims[d].size()];
        std::vector<Vertex> u;
        for (Vertex v = 0; v < nv; ++v)
            if (std::find(x.begin(), x.end(), v) == x.end() && rng() % 3 == 0) u.push_back(v);
        c.add(make_koszul_monomial(view.n, u, x), R::from_int(coeff(rng)));
    }
    return c;
}

}  // namespace

TEST_CASE("ideal generators split into far pairs and ghost singletons", "[koszul]") {
    FlagView full = make_vr_view(CubeParams{3, 1});
    IdealGenerators g = sr_generators(full);
    CHECK(g.singletons.empty());
    CHECK(g.pairs.size() == 16);  // 8 * (C(3,2) + C(3,3)) / 2 far pairs
    for (auto [a, b] : g.pairs) {
        CHECK(a < b);
        CHECK(hamming(a, b) > 1);
    }

    FlagView ghost = make_view(CubeParams{3, 1}, vset_of(3, {0, 1, 2, 4}));
    IdealGenerators gg = sr_generators(ghost);
    CHECK(gg.singletons == std::vector<Vertex>{3, 5, 6, 7});
    CHECK(gg.pairs == (std::vector<std::pair<Vertex, Vertex>>{{1, 2}, {1, 4}, {2, 4}}));
}

TEST_CASE("koszul monomial construction", "[koszul]") {
    KoszulMonomial m = make_koszul_monomial(3, {4, 5}, {0, 1});
    CHECK(m.u == vset_of(3, {4, 5}));
    CHECK(m.x == vset_of(3, {0, 1}));
    CHECK(m.support() == vset_of(3, {0, 1, 4, 5}));
    CHECK_THROWS_AS(make_koszul_monomial(3, {0, 4}, {0, 1}), std::invalid_argument);

    KoszulMonomial f = full_support_monomial(3, {0, 1, 2, 3});
    CHECK(f.x == vset_of(3, {0, 1, 2, 3}));
    CHECK(f.u == vset_of(3, {4, 5, 6, 7}));
    CHECK(f.support().count() == 8);
}

TEST_CASE("differential sign convention on a two-generator u-part", "[koszul]") {
    FlagView view = make_vr_view(CubeParams{3, 1});
    KoszulZ c;
    c.add(make_koszul_monomial(3, {0, 1}, {}), 1);
    KoszulZ d = koszul_differential(c, view);
    // removing position 1 keeps sign, position 2 flips it
    KoszulZ expect;
    expect.add(make_koszul_monomial(3, {1}, {0}), 1);
    expect.add(make_koszul_monomial(3, {0}, {1}), -1);
    CHECK(d == expect);
    CHECK(koszul_differential(d, view).empty());  // {0,1} is an edge, both routes cancel
}

TEST_CASE("differential drops moves that land outside the complex", "[koszul]") {
    FlagView view = make_vr_view(CubeParams{3, 2});
    KoszulZ c;
    c.add(make_koszul_monomial(3, {7}, {0}), 1);  // d(0,7) = 3: x {0,7} is no face
    CHECK(koszul_differential(c, view).empty());
}

TEST_CASE("differential squares to zero on random cochains", "[koszul]") {
    std::mt19937 rng(99);
    for (const CubeParams p : {CubeParams{3, 1}, CubeParams{3, 2}, CubeParams{4, 2}}) {
        FlagView view = make_vr_view(p);
        SkeletonComplex sk = enumerate_skeleton(view, 3);
        for (int trial = 0; trial < 40; ++trial) {
            KoszulZ cz = random_koszul<ZRing>(view, sk, rng);
            CHECK(koszul_differential(koszul_differential(cz, view), view).empty());
            KoszulF2 c2 = random_koszul<F2Ring>(view, sk, rng);
            CHECK(koszul_differential(koszul_differential(c2, view), view).empty());
        }
    }
}

TEST_CASE("full-support monomial is a cocycle exactly when its face is maximal", "[koszul]") {
    for (const CubeParams p : {CubeParams{3, 1}, CubeParams{3, 2}, CubeParams{4, 2}}) {
        FlagView view = make_vr_view(p);
        SkeletonComplex sk = enumerate_skeleton(view, int(vertex_count(p.n)));
        for (const auto& layer : sk.dims)
            for (const Simplex& x : layer) {
                KoszulMonomial m = full_support_monomial(p.n, x);
                KoszulF2 c;
                c.add(m, 1);
                bool vanishes = koszul_differential(c, view).empty();
                CHECK(is_monomial_cocycle(m, view) == vanishes);
                CHECK(vanishes == is_maximal_simplex(view, x));
            }
    }
}

TEST_CASE("monomial cocycle criterion rejects partial support and non-faces", "[koszul]") {
    FlagView view = make_vr_view(CubeParams{3, 2});
    CHECK_THROWS_AS(is_monomial_cocycle(make_koszul_monomial(3, {4, 5}, {0, 1}), view),
                    std::invalid_argument);
    KoszulMonomial bad = full_support_monomial(3, {0, 7});  // distance 3: not a face
    CHECK_THROWS_AS(is_monomial_cocycle(bad, view), std::invalid_argument);
}

TEST_CASE("local diameter condition selects half the maximal tetrahedra", "[koszul]") {
    FlagView view = make_vr_view(CubeParams{3, 2});
    std::vector<Simplex> tops = maximal_simplices(view);
    REQUIRE(tops.size() == 16);
    std::set<Simplex> passing;
    for (const Simplex& s : tops)
        if (local_diameter_check(s, 2)) passing.insert(s);
    CHECK(passing.size() == 8);
    std::set<Simplex> expect(kXSets.begin(), kXSets.begin() + 8);
    CHECK(passing == expect);

    // the failing half are the closed stars {v, v^1, v^2, v^4}
    CHECK_FALSE(local_diameter_check({0, 1, 2, 4}, 2));
    CHECK_THROWS_AS(local_diameter_check({0, 1, 2}, 2), std::invalid_argument);  // not maximal
    CHECK_THROWS_AS(local_diameter_check({0, 7}, 2), std::invalid_argument);     // not a face
}

TEST_CASE("lifting through subcube embeddings reproduces the nine classes", "[koszul]") {
    CubeParams p{4, 2};
    FlagView ambient = make_vr_view(p);

    SubcubeEmbedding bottom = make_embedding(4, {0, 1, 2}, 0);
    KoszulMonomial a1 = lift_cocycle({0, 1, 2, 3}, bottom, p, ambient);
    CHECK(a1 == full_support_monomial(4, {0, 1, 2, 3}));

    SubcubeEmbedding top = make_embedding(4, {0, 1, 2}, 1);  // complement coordinate 3 pinned to 1
    KoszulMonomial a9 = lift_cocycle({0, 1, 2, 3}, top, p, ambient);
    CHECK(a9 == full_support_monomial(4, {8, 9, 10, 11}));

    CHECK_THROWS_AS(lift_cocycle({0, 1, 2, 4}, bottom, p, ambient), std::invalid_argument);  // fails local diameter
    SubcubeEmbedding wrong = make_embedding(4, {0, 1}, 0);
    CHECK_THROWS_AS(lift_cocycle({0, 1, 2, 3}, wrong, p, ambient), std::invalid_argument);
}

TEST_CASE("star product shuffles disjoint supports", "[koszul]") {
    KoszulZ a, b;
    a.add(make_koszul_monomial(3, {0, 4}, {2}), 1);
    b.add(make_koszul_monomial(3, {1, 5}, {3}), 1);
    KoszulZ ab = star_product(a, b);
    REQUIRE(ab.size() == 1);
    const auto& [m, coeff] = *ab.terms.begin();
    CHECK(m.u == vset_of(3, {0, 1, 4, 5}));
    CHECK(m.x == vset_of(3, {2, 3}));
    // interleaving (0,4) with (1,5): 1 passes 4, 5 passes nothing -> one inversion
    CHECK(coeff == -1);

    // anticommutativity: swapping the factors costs (-1)^{|u1||u2|}
    KoszulZ ba = star_product(b, a);
    REQUIRE(ba.size() == 1);
    CHECK(ba.terms.begin()->second == -1);  // |u1||u2| = 4: even, signs agree

    // shared support collapses to zero
    KoszulZ c;
    c.add(make_koszul_monomial(3, {0, 6}, {}), 1);
    CHECK(star_product(a, c).empty());
    CHECK(star_product(a, a).empty());
}

TEST_CASE("star product sign matches u-degree parity on random pairs", "[koszul]") {
    std::mt19937 rng(3131);
    int done = 0;
    while (done < 60) {
        // random disjoint monomials over the 16-element universe
        std::vector<Vertex> pool(16);
        for (Vertex v = 0; v < 16; ++v) pool[v] = v;
        std::shuffle(pool.begin(), pool.end(), rng);
        std::size_t s1 = 1 + rng() % 4, s2 = 1 + rng() % 4, x1 = rng() % 3, x2 = rng() % 3;
        if (s1 + s2 + x1 + x2 > pool.size()) continue;
        auto it = pool.begin();
        std::vector<Vertex> u1(it, it + s1);
        it += s1;
        std::vector<Vertex> u2(it, it + s2);
        it += s2;
        std::vector<Vertex> xa(it, it + x1);
        it += x1;
        std::vector<Vertex> xb(it, it + x2);
        KoszulZ a, b;
        a.add(make_koszul_monomial(4, u1, xa), 2);
        b.add(make_koszul_monomial(4, u2, xb), 3);
        KoszulZ ab = star_product(a, b);
        KoszulZ ba = star_product(b, a);
        REQUIRE(ab.size() == 1);
        REQUIRE(ba.size() == 1);
        BigInt lhs = ab.terms.begin()->second;
        BigInt rhs = ba.terms.begin()->second;
        CHECK(lhs == ((s1 * s2) % 2 == 0 ? rhs : -rhs));
        CHECK(ab.terms.begin()->first == ba.terms.begin()->first);
        ++done;
    }
}

TEST_CASE("ghost restriction keeps exactly the classes seen by a detector", "[koszul]") {
    std::vector<KoszulF2> cs = nine_classes();
    VSet L2 = vset_of(4, detector_of(1));
    CHECK(detector_of(1) == std::vector<Vertex>{0, 1, 4, 5, 8, 9, 12, 13});

    CHECK_FALSE(ghost_restrict(cs[1], L2).empty());  // own class survives
    for (std::size_t j : {0u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) CHECK(ghost_restrict(cs[j], L2).empty());

    // L1 sees the antipodal class too, which forces it to the end of the order
    VSet L1 = vset_of(4, detector_of(0));
    CHECK_FALSE(ghost_restrict(cs[0], L1).empty());
    CHECK_FALSE(ghost_restrict(cs[8], L1).empty());

    VSet everything(16);
    everything.set();
    for (const auto& c : cs) CHECK(ghost_restrict(c, everything).size() == c.size());
}

TEST_CASE("support-restricted ranks agree with subcomplex betti numbers", "[koszul][hochster]") {
    for (int r : {1, 2}) {
        FlagView view = make_vr_view(CubeParams{3, r});
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            VSet J = make_vset(3);
            for (int v = 0; v < 8; ++v)
                if (mask & (1u << v)) J.set(v);
            int top = int(J.count());
            for (int s = 0; s <= top + 1; ++s)
                for (CoeffRing ring : {CoeffRing::F2, CoeffRing::Q}) {
                    std::int64_t betti = subcomplex_reduced_betti(view, J, s - 1, ring);
                    REQUIRE(betti >= 0);
                    CHECK(koszul_support_rank(view, J, s, ring) == std::uint64_t(betti));
                }
        }
    }
}

TEST_CASE("support rank rejects integer coefficients", "[koszul]") {
    FlagView view = make_vr_view(CubeParams{3, 1});
    VSet J = vset_of(3, {0, 1, 2});
    CHECK_THROWS_AS(koszul_support_rank(view, J, 1, CoeffRing::Z), std::invalid_argument);
}

TEST_CASE("ghost cohomology profile of a detector subcomplex", "[koszul]") {
    FlagView ghost = make_view(CubeParams{4, 2}, vset_of(4, detector_of(1)));
    for (CoeffRing ring : {CoeffRing::F2, CoeffRing::Q}) {
        CHECK(ghost_cohomology_rank(ghost, 4, ring).koszul_rank == 1);
        for (int degree : {1, 2, 3, 5}) CHECK(ghost_cohomology_rank(ghost, degree, ring).koszul_rank == 0);
    }
}

TEST_CASE("detector pairs recover the induced antipodal matching", "[koszul]") {
    FlagView view = make_vr_view(CubeParams{4, 2});
    VertexPairs pairs = detector_pairs(view, detector_of(1));
    CHECK(pairs == (VertexPairs{{0, 13}, {1, 12}, {4, 9}, {5, 8}}));

    ChainF2 cycle = detector_fundamental_cycle(view, detector_of(1));
    CHECK(cycle.size() == 16);  // 2^4 tetrahedra, coefficient 1 each

    // {0,1,2} has no far partner at r = 2 inside the set
    CHECK_THROWS_AS(detector_pairs(view, {0, 1, 2}), std::invalid_argument);
    // {0,13,14} gives vertex 13 two far partners? d(13,14)=2, d(0,14)=3: vertex 0 has two
    CHECK_THROWS_AS(detector_pairs(view, {0, 13, 14}), std::invalid_argument);
}

TEST_CASE("x-parts of a koszul cochain as a simplicial cochain", "[koszul]") {
    KoszulF2 c;
    c.add(full_support_monomial(4, {0, 1, 2, 3}), 1);
    c.add(full_support_monomial(4, {0, 1, 4, 5}), 1);
    ChainF2 s = x_parts_as_chain(c);
    CHECK(s.size() == 2);
    CHECK(s.terms.count(Simplex{0, 1, 2, 3}) == 1);
    CHECK(s.terms.count(Simplex{0, 1, 4, 5}) == 1);
}

TEST_CASE("independence certificate accepts the canonical nine-class system", "[koszul]") {
    FlagView view = make_vr_view(CubeParams{4, 2});
    std::vector<KoszulF2> cs = nine_classes();
    std::vector<std::vector<Vertex>> dets;
    for (std::size_t i = 0; i < 9; ++i) dets.push_back(detector_of(i));

    IndependenceVerdict v = independence_certificate(view, cs, dets, kOrder);
    INFO(v.failure);
    CHECK(v.pass);
    CHECK(static_cast<bool>(v));
}

TEST_CASE("independence certificate rejects corrupted inputs", "[koszul]") {
    FlagView view = make_vr_view(CubeParams{4, 2});
    std::vector<KoszulF2> cs = nine_classes();
    std::vector<std::vector<Vertex>> dets;
    for (std::size_t i = 0; i < 9; ++i) dets.push_back(detector_of(i));

    SECTION("duplicated class") {
        cs[8] = cs[0];  // the antipodal class replaced by a copy of the first
        IndependenceVerdict v = independence_certificate(view, cs, dets, kOrder);
        CHECK_FALSE(v.pass);
        CHECK_FALSE(v.failure.empty());
    }
    SECTION("detector too large to isolate") {
        std::vector<Vertex> all(16);
        for (Vertex v = 0; v < 16; ++v) all[v] = v;
        dets[1] = all;
        IndependenceVerdict v = independence_certificate(view, cs, dets, kOrder);
        CHECK_FALSE(v.pass);
    }
    SECTION("detector without a far-pair matching") {
        dets[1] = {0, 1, 4, 5};  // pairwise close: no fundamental cycle
        IndependenceVerdict v = independence_certificate(view, cs, dets, kOrder);
        CHECK_FALSE(v.pass);
        CHECK(v.failure.find("invalid") != std::string::npos);
    }
    SECTION("count mismatch") {
        dets.pop_back();
        CHECK_FALSE(independence_certificate(view, cs, dets, kOrder).pass);
    }
    SECTION("order index out of range") {
        std::vector<std::size_t> order{9};
        CHECK_FALSE(independence_certificate(view, cs, dets, order).pass);
    }
    SECTION("default order fails because the first detector sees the antipodal class") {
        IndependenceVerdict v = independence_certificate(view, cs, dets, {});
        CHECK_FALSE(v.pass);
        CHECK(v.failure.find("kill") != std::string::npos);
    }
}
