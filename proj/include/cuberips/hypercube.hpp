#pragma once

// Hypercube vertex kernels: vertices of Q_n are integers in [0, 2^n) read as
// coordinate bitmasks, Hamming distance is popcount of XOR, the antipode flips
// every coordinate. Counting helpers use exact big integers so that bound
// formulas never overflow at large n.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace cuberips {

using Vertex = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using VSet = boost::dynamic_bitset<std::uint64_t>;

// Structural cap: vertices are materialized as 32-bit masks only below this.
inline constexpr int kMaxN = 30;

struct CubeParams {
    int n = 0;
    int r = 0;
};

inline void validate_params(const CubeParams& p, bool allow_r_eq_n = false) {
    if (p.n < 1 || p.n > kMaxN)
        throw std::invalid_argument("n out of range [1," + std::to_string(kMaxN) + "]: " + std::to_string(p.n));
    if (p.r < 0 || p.r > p.n || (!allow_r_eq_n && p.r >= p.n))
        throw std::invalid_argument("r out of range for n=" + std::to_string(p.n) + ": " + std::to_string(p.r));
}

inline int popcount(std::uint64_t x) { return std::popcount(x); }

inline int hamming(Vertex a, Vertex b) { return std::popcount(a ^ b); }

inline Vertex antipode(Vertex a, int n) { return a ^ static_cast<Vertex>((std::uint64_t(1) << n) - 1); }

inline std::uint64_t vertex_count(int n) { return std::uint64_t(1) << n; }

// C(n, k) exactly; zero outside the Pascal triangle.
inline BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt num = 1;
    for (int i = 1; i <= k; ++i) {
        num *= (n - k + i);
        num /= i;  // exact at every step: product of i consecutive integers is divisible by i!
    }
    return num;
}

// Number of vertices at distance > r from a fixed vertex, i.e. the regular
// degree of the distance-complement graph on Q_n.
inline BigInt degree_complement(int n, int r) {
    BigInt s = 0;
    for (int i = r + 1; i <= n; ++i) s += binomial(n, i);
    return s;
}

// Isometric embedding of Q_p into Q_n: coordinate j of Q_p is routed to
// coordinate S[j] of Q_n (S strictly increasing, |S| = p) and every coordinate
// outside S is fixed to the corresponding bit of offset_bits (indexed by the
// ascending list of coordinates not in S).
struct SubcubeEmbedding {
    int n = 0;
    std::vector<int> coords;      // S, ascending
    std::uint32_t offset_mask = 0;  // resolved bits on the complement coordinates

    Vertex map(Vertex a) const {
        Vertex out = offset_mask;
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (a >> j & 1u) out |= Vertex(1) << coords[j];
        return out;
    }
};

inline SubcubeEmbedding make_embedding(int n, const std::vector<int>& S, std::uint32_t offset_bits) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("embed: bad n");
    SubcubeEmbedding e;
    e.n = n;
    e.coords = S;
    for (std::size_t j = 0; j < S.size(); ++j) {
        if (S[j] < 0 || S[j] >= n) throw std::invalid_argument("embed: coordinate out of range");
        if (j > 0 && S[j] <= S[j - 1]) throw std::invalid_argument("embed: coordinates must be strictly increasing");
    }
    std::uint32_t in_S = 0;
    for (int c : S) in_S |= 1u << c;
    int bit = 0;
    for (int c = 0; c < n; ++c) {
        if (in_S >> c & 1u) continue;
        if (offset_bits >> bit & 1u) e.offset_mask |= 1u << c;
        ++bit;
    }
    if (offset_bits >> bit != 0) throw std::invalid_argument("embed: offset has more bits than complement coordinates");
    return e;
}

// Images of all of Q_p in Q_p vertex order.
inline std::vector<Vertex> embed_subcube(int n, const std::vector<int>& S, std::uint32_t offset_bits) {
    SubcubeEmbedding e = make_embedding(n, S, offset_bits);
    std::vector<Vertex> out;
    out.reserve(std::size_t(1) << S.size());
    for (Vertex a = 0; a < (Vertex(1) << S.size()); ++a) out.push_back(e.map(a));
    return out;
}

// ---- vertex-set helpers ----

inline VSet make_vset(int n) { return VSet(vertex_count(n)); }

inline VSet vset_of(int n, const std::vector<Vertex>& vs) {
    VSet s = make_vset(n);
    for (Vertex v : vs) s.set(v);
    return s;
}

inline std::vector<Vertex> vset_to_vertices(const VSet& s) {
    std::vector<Vertex> out;
    for (auto i = s.find_first(); i != VSet::npos; i = s.find_next(i)) out.push_back(static_cast<Vertex>(i));
    return out;
}

inline bool vset_subset(const VSet& a, const VSet& b) { return a.is_subset_of(b); }

}  // namespace cuberips
