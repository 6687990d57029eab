#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cuberips/hypercube.hpp"

using namespace cuberips;

TEST_CASE("hamming distance is popcount of xor", "[hypercube]") {
    CHECK(hamming(0, 0) == 0);
    CHECK(hamming(0, 7) == 3);
    CHECK(hamming(5, 6) == 2);
    CHECK(hamming(0b10110, 0b01101) == 4);

    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        Vertex a = rng() & 0xFFFFF, b = rng() & 0xFFFFF, c = rng() & 0xFFFFF;
        CHECK(hamming(a, b) == hamming(b, a));
        CHECK(hamming(a, b) + hamming(b, c) >= hamming(a, c));
        CHECK((hamming(a, b) == 0) == (a == b));
    }
}

TEST_CASE("antipode flips all coordinates and realizes the diameter", "[hypercube]") {
    CHECK(antipode(0, 3) == 7);
    CHECK(antipode(5, 3) == 2);
    for (int n : {1, 3, 5, 8}) {
        for (Vertex v = 0; v < vertex_count(n); ++v) {
            CHECK(hamming(v, antipode(v, n)) == n);
            CHECK(antipode(antipode(v, n), n) == v);
        }
    }
}

TEST_CASE("parameter validation", "[hypercube]") {
    CHECK_NOTHROW(validate_params(CubeParams{3, 1}));
    CHECK_NOTHROW(validate_params(CubeParams{3, 2}));
    CHECK_THROWS_AS(validate_params(CubeParams{3, 3}), std::invalid_argument);
    CHECK_NOTHROW(validate_params(CubeParams{3, 3}, true));
    CHECK_THROWS_AS(validate_params(CubeParams{0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(CubeParams{31, 2}), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(CubeParams{4, -1}), std::invalid_argument);
}

TEST_CASE("binomial is exact", "[hypercube]") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(20, 10) == 184756);
    CHECK(binomial(30, 15) == 155117520);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(5, -1) == 0);
    // Pascal recurrence on a grid large enough to overflow 64-bit naive products
    for (int n = 1; n <= 68; n += 7)
        for (int k = 0; k <= n; k += 3) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("complement degree counts the far sphere", "[hypercube]") {
    // brute force vs formula
    for (int n : {3, 4, 5})
        for (int r = 1; r < n; ++r) {
            int far = 0;
            for (Vertex v = 1; v < vertex_count(n); ++v)
                if (hamming(0, v) > r) ++far;
            CHECK(degree_complement(n, r) == far);
        }
    CHECK(degree_complement(7, 5) == binomial(7, 6) + binomial(7, 7));
}

TEST_CASE("subcube embeddings are isometries", "[hypercube]") {
    SubcubeEmbedding e = make_embedding(5, {0, 2, 3}, 0b01);
    for (Vertex a = 0; a < 8; ++a)
        for (Vertex b = 0; b < 8; ++b) CHECK(hamming(e.map(a), e.map(b)) == hamming(a, b));
    // offset bits land on the complement coordinates (here 1 and 4): offset 0b01 sets coordinate 1
    CHECK(e.map(0) == 0b00010);
    CHECK(e.map(0b111) == 0b01111);

    CHECK_THROWS_AS(make_embedding(4, {1, 1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_embedding(4, {5}, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_embedding(4, {0, 1}, 0b100), std::invalid_argument);

    std::vector<Vertex> img = embed_subcube(4, {0, 1, 2}, 1);
    REQUIRE(img.size() == 8);
    for (Vertex a = 0; a < 8; ++a) CHECK(img[a] == (a | 0b1000));
}

TEST_CASE("vertex-set helpers roundtrip", "[hypercube]") {
    VSet s = vset_of(4, {3, 7, 11});
    CHECK(s.size() == 16);
    CHECK(s.count() == 3);
    CHECK(vset_to_vertices(s) == std::vector<Vertex>{3, 7, 11});
    CHECK(vset_subset(vset_of(4, {3, 11}), s));
    CHECK_FALSE(vset_subset(s, vset_of(4, {3, 11})));
}
