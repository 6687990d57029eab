#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cuberips/complex.hpp"
#include "cuberips/homology.hpp"

using namespace cuberips;

namespace {

template <typename R>
Chain<R> random_chain(const SkeletonComplex& sk, int d, std::mt19937& rng) {
    Chain<R> c;
    if (d < 0 || d > sk.top_dim() || sk.dims[d].empty()) return c;
    for (int t = 0; t < 6; ++t) {
        const Simplex& s = sk.dims[d][rng() % sk.dims[d].size()];
        int coef = 1 + int(rng() % 5);
        c.add(s, R::from_int(rng() % 2 ? coef : -coef));
    }
    return c;
}

}  // namespace

TEST_CASE("boundary basics", "[homology]") {
    ChainZ edge;
    edge.add({0, 1}, 1);
    ChainZ b = boundary(edge);
    REQUIRE(b.size() == 2);
    CHECK(b.terms.at({1}) == 1);
    CHECK(b.terms.at({0}) == -1);

    // orientation normalization: adding [1,0] equals subtracting [0,1]
    ChainZ swapped;
    swapped.add({1, 0}, 1);
    swapped.add({0, 1}, 1);
    CHECK(swapped.empty());
}

TEST_CASE("boundary squares to zero on random chains over all rings", "[homology]") {
    std::mt19937 rng(42);
    for (auto [n, r] : {std::pair{3, 2}, {4, 2}, {4, 3}}) {
        SkeletonComplex sk = enumerate_skeleton(make_vr_view(CubeParams{n, r}), 5);
        for (int d = 1; d <= sk.top_dim(); ++d)
            for (int t = 0; t < 12; ++t) {
                CHECK(boundary(boundary(random_chain<ZRing>(sk, d, rng))).empty());
                CHECK(boundary(boundary(random_chain<QRing>(sk, d, rng))).empty());
                CHECK(boundary(boundary(random_chain<F2Ring>(sk, d, rng))).empty());
            }
    }
}

TEST_CASE("frozen desk-scale betti numbers", "[homology]") {
    SkeletonComplex sk31 = enumerate_skeleton(make_vr_view(CubeParams{3, 1}), 2);
    CHECK(reduced_betti(sk31, 0, CoeffRing::F2) == 0);
    CHECK(reduced_betti(sk31, 1, CoeffRing::F2) == 5);
    CHECK(reduced_betti(sk31, 1, CoeffRing::Q) == 5);

    SkeletonComplex sk42 = enumerate_skeleton(make_vr_view(CubeParams{4, 2}), 4);
    CHECK(reduced_betti(sk42, 3, CoeffRing::F2) == 9);
    CHECK(reduced_betti(sk42, 3, CoeffRing::Q) == 9);
    CHECK(reduced_betti(sk42, 2, CoeffRing::F2) == 0);
    CHECK(reduced_betti(sk42, 4, CoeffRing::F2) == 0);

    SkeletonComplex sk41 = enumerate_skeleton(make_vr_view(CubeParams{4, 1}), 2);
    CHECK(reduced_betti(sk41, 1, CoeffRing::F2) == 17);

    // VR(Q_3;2) and VR(Q_4;3) are cross-polytope boundary spheres
    SkeletonComplex sk32 = enumerate_skeleton(make_vr_view(CubeParams{3, 2}), 4);
    CHECK(reduced_betti(sk32, 3, CoeffRing::Q) == 1);
    CHECK(reduced_betti(sk32, 2, CoeffRing::Q) == 0);
    SkeletonComplex sk43 = enumerate_skeleton(make_vr_view(CubeParams{4, 3}), 8);
    CHECK(reduced_betti(sk43, 7, CoeffRing::F2) == 1);
}

TEST_CASE("cross-polytope boundary complexes are spheres", "[homology]") {
    // join of m S^0 pairs: build the closure of all 2^m top simplices
    for (int m = 1; m <= 5; ++m) {
        std::vector<Simplex> tops;
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            Simplex s;
            for (int i = 0; i < m; ++i) s.push_back(2 * i + ((mask >> i) & 1));
            tops.push_back(normalize_simplex(s));
        }
        SkeletonComplex sk = closure_complex(tops, 4, 2);
        for (int d = 0; d < m; ++d)
            CHECK(reduced_betti(sk, d, CoeffRing::Q) == (d == m - 1 ? 1 : 0));
    }
}

TEST_CASE("euler characteristic consistency", "[homology]") {
    SkeletonComplex sk = enumerate_skeleton(make_vr_view(CubeParams{4, 2}), 5);
    long long euler_f = 0;
    for (std::size_t d = 0; d < sk.dims.size(); ++d)
        euler_f += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(sk.count(static_cast<int>(d)));
    long long euler_b = 1;  // reduced: add back the empty simplex contribution
    for (int d = 0; d <= sk.top_dim(); ++d)
        euler_b += (d % 2 == 0 ? 1 : -1) * reduced_betti(sk, d, CoeffRing::F2);
    CHECK(euler_f == euler_b);
}

TEST_CASE("integral homology detects torsion", "[homology]") {
    // minimal projective-plane triangulation: free part 0, torsion Z/2 in degree 1
    std::vector<Simplex> faces{{0, 1, 3}, {0, 1, 4}, {0, 2, 4}, {0, 2, 5}, {0, 3, 5},
                               {1, 2, 3}, {1, 2, 5}, {1, 4, 5}, {2, 3, 4}, {3, 4, 5}};
    SkeletonComplex rp2 = closure_complex(faces, 3, 2);
    ZHomology h1 = homology_z(rp2, 1);
    CHECK(h1.free_rank == 0);
    REQUIRE(h1.torsion.size() == 1);
    CHECK(h1.torsion[0] == 2);
    // the two field computations bracket it: F2 sees the torsion, Q does not
    CHECK(reduced_betti(rp2, 1, CoeffRing::F2) == 1);
    CHECK(reduced_betti(rp2, 1, CoeffRing::Q) == 0);

    // torsion-free case: the 3-sphere
    SkeletonComplex sk32 = enumerate_skeleton(make_vr_view(CubeParams{3, 2}), 4);
    ZHomology h3 = homology_z(sk32, 3);
    CHECK(h3.free_rank == 1);
    CHECK(h3.torsion.empty());

    CHECK_THROWS_AS(homology_z(sk32, 2, 5), CapExceeded);
}

TEST_CASE("betti profile runs a dimension range", "[homology]") {
    std::vector<std::int64_t> prof = reduced_betti_profile(make_vr_view(CubeParams{3, 1}), 1, CoeffRing::F2);
    REQUIRE(prof.size() == 2);
    CHECK(prof[0] == 0);
    CHECK(prof[1] == 5);
}

TEST_CASE("cocycle verification", "[homology]") {
    FlagView v42 = make_vr_view(CubeParams{4, 2});
    // dual of a maximal simplex is a cocycle: no cofacets at all
    ChainF2 top;
    top.add({0, 1, 2, 3}, F2Ring::one());
    REQUIRE(is_maximal_simplex(v42, {0, 1, 2, 3}));
    CocycleCheck cc = is_cocycle(v42, top);
    CHECK(cc.ok);
    CHECK(cc.cofacets_checked == 0);

    // dual of a non-maximal simplex is not: [0,1,2,4] has cofacet [0,1,2,4,8]
    ChainF2 open;
    open.add({0, 1, 2, 4}, F2Ring::one());
    CocycleCheck bad = is_cocycle(v42, open);
    CHECK_FALSE(bad.ok);
    REQUIRE_FALSE(bad.violations.empty());
    CHECK(bad.violations.front() == Simplex{0, 1, 2, 4, 8});

    // simplices outside the complex are rejected
    ChainF2 ghost;
    ghost.add({0, 15}, F2Ring::one());
    CHECK_THROWS_AS(is_cocycle(v42, ghost), std::invalid_argument);
}

TEST_CASE("coboundary is dual to boundary", "[homology]") {
    FlagView view = make_vr_view(CubeParams{3, 2});
    SkeletonComplex sk = enumerate_skeleton(view, 3);
    std::mt19937 rng(9);
    for (int d = 0; d + 1 <= sk.top_dim(); ++d)
        for (int t = 0; t < 8; ++t) {
            ChainQ phi = random_chain<QRing>(sk, d, rng);
            ChainQ beta = random_chain<QRing>(sk, d + 1, rng);
            CHECK(pair_chains(boundary(beta), phi) == pair_chains(beta, coboundary(view, phi)));
        }
}

TEST_CASE("pairing against boundaries of cocycles vanishes", "[homology]") {
    FlagView view = make_vr_view(CubeParams{3, 2});
    SkeletonComplex sk = enumerate_skeleton(view, 3);
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        int d = 1 + int(rng() % 2);
        ChainQ phi = random_chain<QRing>(sk, d, rng);
        // project phi to a cocycle? instead: check <d beta, phi> = <beta, delta phi> = 0 when phi is a cocycle
        if (!coboundary(view, phi).empty()) continue;
        ChainQ beta = random_chain<QRing>(sk, d + 1, rng);
        CHECK(QRing::is_zero(pair_chains(boundary(beta), phi)));
    }
    // deterministic instance: a coboundary is always a cocycle, and pairs to
    // zero against the boundary of anything one dimension up
    ChainF2 two_cocycle;
    ChainF2 one_cochain;
    one_cochain.add(sk.dims[1][5], F2Ring::one());
    two_cocycle = coboundary(view, one_cochain);
    REQUIRE(is_cocycle(view, two_cocycle).ok);
    ChainF2 three_chain;
    three_chain.add(sk.dims[3][7], F2Ring::one());
    three_chain.add(sk.dims[3][2], F2Ring::one());
    CHECK(F2Ring::is_zero(pair_chains(boundary(three_chain), two_cocycle)));
}

TEST_CASE("pairing requires matching shapes", "[homology]") {
    ChainZ a, b;
    a.add({0, 1}, 1);
    b.add({0}, 1);
    CHECK_THROWS_AS(pair_chains(a, b), std::invalid_argument);
}

TEST_CASE("mod-2 reduction and rational lift", "[homology]") {
    ChainZ z;
    z.add({0, 1}, 3);
    z.add({1, 2}, -2);
    z.add({2, 3}, 1);
    ChainF2 f = reduce_mod2(z);
    CHECK(f.size() == 2);
    CHECK(f.terms.count({0, 1}) == 1);
    CHECK(f.terms.count({2, 3}) == 1);
    ChainQ q = chain_to_q(z);
    CHECK(q.size() == 3);
    CHECK(q.terms.at({1, 2}) == BigRational(-2));
}
