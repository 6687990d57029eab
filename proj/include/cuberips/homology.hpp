#pragma once

// Simplicial (co)homology at desk scale: boundary operators, rank via
// Gaussian elimination over F2 or any field, Smith normal form over Z,
// reduced Betti numbers with augmentation, cocycle checks, and pairings.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cuberips/complex.hpp"
#include "cuberips/hypercube.hpp"
#include "cuberips/rings.hpp"

namespace cuberips {

template <typename R>
inline Chain<R> boundary(const Chain<R>& chain) {
    Chain<R> out;
    for (const auto& [s, c] : chain.terms) {
        if (s.size() < 2) continue;  // boundary of a vertex is zero (no augmentation here)
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f;
            f.reserve(s.size() - 1);
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != i) f.push_back(s[j]);
            out.add(f, (i % 2 == 0) ? c : R::neg(c));
        }
    }
    return out;
}

template <typename R>
inline bool is_cycle(const Chain<R>& chain) {
    return boundary(chain).empty();
}

// <cochain, chain> = sum of products of matching coefficients, both keyed by
// ascending vertex lists.
template <typename R>
inline typename R::Elem pair_chains(const Chain<R>& cochain, const Chain<R>& chain) {
    if (!cochain.terms.empty() && !chain.terms.empty() &&
        cochain.terms.begin()->first.size() != chain.terms.begin()->first.size())
        throw std::invalid_argument("pairing requires chains of the same dimension");
    typename R::Elem acc = R::zero();
    auto it = cochain.terms.begin();
    auto jt = chain.terms.begin();
    while (it != cochain.terms.end() && jt != chain.terms.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            acc = R::add(acc, R::mul(it->second, jt->second));
            ++it;
            ++jt;
        }
    }
    return acc;
}

inline ChainF2 reduce_mod2(const ChainZ& chain) {
    ChainF2 out;
    for (const auto& [s, c] : chain.terms)
        if (c % 2 != 0) out.add(s, 1);
    return out;
}

inline ChainQ chain_to_q(const ChainZ& chain) {
    ChainQ out;
    for (const auto& [s, c] : chain.terms) out.add(s, BigRational(c));
    return out;
}

// Result of checking a cochain against every cofacet of its support.
struct CocycleCheck {
    bool ok = false;
    std::uint64_t cofacets_checked = 0;
    std::vector<Simplex> violations;  // cofacets where the coboundary is nonzero
};

// A d-cochain is a cocycle iff its coboundary vanishes on every (d+1)-simplex.
// Only cofacets of support simplices can evaluate nonzero, so those are the
// only ones that need checking.
template <typename R>
inline CocycleCheck is_cocycle(const FlagView& view, const Chain<R>& cochain) {
    CocycleCheck res;
    if (cochain.empty()) {
        res.ok = true;
        return res;
    }
    const std::size_t k = cochain.terms.begin()->first.size();
    for (const auto& [s, c] : cochain.terms) {
        if (s.size() != k) throw std::invalid_argument("cochain mixes dimensions");
        if (!is_simplex(view, s)) throw std::invalid_argument("cochain supported outside the complex");
    }
    std::set<Simplex> cofacets;
    for (const auto& [s, c] : cochain.terms) {
        VSet cn = common_neighbors(view, s);
        for (std::size_t w = cn.find_first(); w != VSet::npos; w = cn.find_next(w)) {
            Simplex t = s;
            t.push_back(static_cast<Vertex>(w));
            std::sort(t.begin(), t.end());
            cofacets.insert(std::move(t));
        }
    }
    res.ok = true;
    for (const auto& t : cofacets) {
        ++res.cofacets_checked;
        typename R::Elem val = R::zero();
        for (std::size_t i = 0; i < t.size(); ++i) {
            Simplex f;
            f.reserve(t.size() - 1);
            for (std::size_t j = 0; j < t.size(); ++j)
                if (j != i) f.push_back(t[j]);
            auto it = cochain.terms.find(f);
            if (it == cochain.terms.end()) continue;
            val = R::add(val, (i % 2 == 0) ? it->second : R::neg(it->second));
        }
        if (!R::is_zero(val)) {
            res.ok = false;
            res.violations.push_back(t);
        }
    }
    return res;
}

// Coboundary of a d-cochain as a (d+1)-cochain on the view.
template <typename R>
inline Chain<R> coboundary(const FlagView& view, const Chain<R>& cochain) {
    Chain<R> out;
    if (cochain.empty()) return out;
    std::set<Simplex> cofacets;
    for (const auto& [s, c] : cochain.terms) {
        VSet cn = common_neighbors(view, s);
        for (std::size_t w = cn.find_first(); w != VSet::npos; w = cn.find_next(w)) {
            Simplex t = s;
            t.push_back(static_cast<Vertex>(w));
            std::sort(t.begin(), t.end());
            cofacets.insert(std::move(t));
        }
    }
    for (const auto& t : cofacets) {
        typename R::Elem val = R::zero();
        for (std::size_t i = 0; i < t.size(); ++i) {
            Simplex f;
            f.reserve(t.size() - 1);
            for (std::size_t j = 0; j < t.size(); ++j)
                if (j != i) f.push_back(t[j]);
            auto it = cochain.terms.find(f);
            if (it == cochain.terms.end()) continue;
            val = R::add(val, (i % 2 == 0) ? it->second : R::neg(it->second));
        }
        out.add(t, val);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rank computations.

namespace detail {

inline std::size_t simplex_index(const std::vector<Simplex>& layer, const Simplex& s) {
    auto it = std::lower_bound(layer.begin(), layer.end(), s);
    if (it == layer.end() || *it != s) throw std::logic_error("facet missing from skeleton layer");
    return static_cast<std::size_t>(it - layer.begin());
}

}  // namespace detail

// Rank of a matrix given as bitset rows over F2 (rows are consumed).
inline std::uint64_t rank_rows_f2(std::vector<VSet>& mat) {
    std::uint64_t rank = 0;
    std::vector<std::pair<std::size_t, VSet>> pivots;  // (leading column, row)
    for (auto& row : mat) {
        for (const auto& [lead, prow] : pivots)
            if (row.test(lead)) row ^= prow;
        std::size_t lead = row.find_first();
        if (lead == VSet::npos) continue;
        pivots.emplace_back(lead, row);
        ++rank;
    }
    return rank;
}

// Sparse row type for field elimination: (column, value) sorted by column.
template <typename R>
using SparseRow = std::vector<std::pair<std::size_t, typename R::Elem>>;

// Rank of a sparse matrix over a field (rows are consumed).
template <typename R>
inline std::uint64_t rank_rows_field(std::vector<SparseRow<R>>& mat) {
    static_assert(R::is_field, "rank_rows_field needs a field");
    using Elem = typename R::Elem;
    using Row = SparseRow<R>;
    auto axpy = [](const Row& src, const Elem& k, const Row& dst) {
        // dst + k * src, merged by column
        Row out;
        out.reserve(src.size() + dst.size());
        std::size_t i = 0, j = 0;
        while (i < src.size() || j < dst.size()) {
            if (j == dst.size() || (i < src.size() && src[i].first < dst[j].first)) {
                Elem v = R::mul(k, src[i].second);
                if (!R::is_zero(v)) out.emplace_back(src[i].first, std::move(v));
                ++i;
            } else if (i == src.size() || dst[j].first < src[i].first) {
                out.push_back(dst[j]);
                ++j;
            } else {
                Elem v = R::add(dst[j].second, R::mul(k, src[i].second));
                if (!R::is_zero(v)) out.emplace_back(dst[j].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    };
    std::uint64_t rank = 0;
    std::map<std::size_t, Row> pivots;  // leading column -> normalized row
    for (auto& row : mat) {
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (;;) {
            if (row.empty()) break;
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) break;
            Elem k = R::neg(row.front().second);
            row = axpy(it->second, k, row);
        }
        if (row.empty()) continue;
        Elem inv = R::inv(row.front().second);
        for (auto& [c, v] : row) v = R::mul(v, inv);
        pivots.emplace(row.front().first, std::move(row));
        ++rank;
    }
    return rank;
}

// Rank over F2 of the boundary map from d-simplices to (d-1)-simplices of a
// skeleton; d = 0 is the augmentation to the empty simplex.
inline std::uint64_t rank_boundary_f2(const SkeletonComplex& sk, int d) {
    if (d < 0) return 0;
    if (d == 0) return sk.count(0) > 0 ? 1 : 0;
    if (sk.count(d) == 0) return 0;
    const auto& cols = sk.dims[d];
    const auto& rows = sk.dims[d - 1];
    std::vector<VSet> mat(rows.size(), VSet(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Simplex& s = cols[j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f;
            f.reserve(s.size() - 1);
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != i) f.push_back(s[t]);
            mat[detail::simplex_index(rows, f)].set(j);
        }
    }
    return rank_rows_f2(mat);
}

// Rank over an arbitrary field via sparse row elimination.
template <typename R>
inline std::uint64_t rank_boundary_field(const SkeletonComplex& sk, int d) {
    static_assert(R::is_field, "rank_boundary_field needs a field");
    if (d < 0) return 0;
    if (d == 0) return sk.count(0) > 0 ? 1 : 0;
    if (sk.count(d) == 0) return 0;
    using Elem = typename R::Elem;
    const auto& cols = sk.dims[d];
    const auto& rows = sk.dims[d - 1];
    std::vector<SparseRow<R>> mat(rows.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Simplex& s = cols[j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f;
            f.reserve(s.size() - 1);
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != i) f.push_back(s[t]);
            Elem e = (i % 2 == 0) ? R::one() : R::neg(R::one());
            mat[detail::simplex_index(rows, f)].emplace_back(j, std::move(e));
        }
    }
    return rank_rows_field<R>(mat);
}

// Smith normal form of the boundary map from d-simplices to (d-1)-simplices:
// rank plus the invariant factors. Dense, so capped by entry count.
struct SnfResult {
    std::uint64_t rank = 0;
    std::vector<BigInt> divisors;  // nontrivial invariant factors (> 1)
};

inline SnfResult snf_boundary(const SkeletonComplex& sk, int d,
                              std::uint64_t max_entries = 1'000'000) {
    SnfResult res;
    if (d < 0) return res;
    if (d == 0) {
        res.rank = sk.count(0) > 0 ? 1 : 0;
        return res;
    }
    if (sk.count(d) == 0) return res;
    const auto& cols = sk.dims[d];
    const auto& rows = sk.dims[d - 1];
    if (static_cast<std::uint64_t>(rows.size()) * cols.size() > max_entries)
        throw CapExceeded("matrix entry cap exceeded for Smith normal form (" + std::to_string(rows.size()) + "x" +
                          std::to_string(cols.size()) + ")");
    std::vector<std::vector<BigInt>> m(rows.size(), std::vector<BigInt>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Simplex& s = cols[j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f;
            f.reserve(s.size() - 1);
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != i) f.push_back(s[t]);
            m[detail::simplex_index(rows, f)][j] = (i % 2 == 0) ? 1 : -1;
        }
    }
    const std::size_t R = rows.size(), C = cols.size();
    std::size_t t = 0;
    std::vector<BigInt> diag;
    while (t < R && t < C) {
        // pick the nonzero entry of smallest magnitude in the remaining block
        std::size_t pi = t, pj = t;
        BigInt best = 0;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (m[i][j] == 0) continue;
                BigInt a = abs(m[i][j]);
                if (best == 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        std::swap(m[pi], m[t]);
        for (std::size_t i = 0; i < R; ++i) std::swap(m[i][pj], m[i][t]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (m[i][t] == 0) continue;
                BigInt q = m[i][t] / m[t][t];
                for (std::size_t j = t; j < C; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {  // remainder smaller than pivot: swap up and redo
                    std::swap(m[i], m[t]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (m[t][j] == 0) continue;
                BigInt q = m[t][j] / m[t][t];
                for (std::size_t i = t; i < R; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (std::size_t i = 0; i < R; ++i) std::swap(m[i][j], m[i][t]);
                    clean = false;
                }
            }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    // enforce divisibility chain
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j)
            if (diag[j] % diag[i] != 0) {
                BigInt g = gcd(diag[i], diag[j]);
                BigInt l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
    res.rank = diag.size();
    for (const auto& v : diag)
        if (v > 1) res.divisors.push_back(v);
    return res;
}

enum class CoeffRing { F2, Q, Z };

inline CoeffRing parse_ring(const std::string& s) {
    if (s == "f2" || s == "F2") return CoeffRing::F2;
    if (s == "q" || s == "Q") return CoeffRing::Q;
    if (s == "z" || s == "Z") return CoeffRing::Z;
    throw std::invalid_argument("unknown coefficient ring: " + s);
}

inline std::string ring_name(CoeffRing r) {
    switch (r) {
        case CoeffRing::F2: return "f2";
        case CoeffRing::Q: return "q";
        default: return "z";
    }
}

// Reduced Betti number of the skeleton in dimension d over a field. The
// skeleton must contain the (d+1)-layer unless the complex genuinely has no
// (d+1)-simplices.
inline std::int64_t reduced_betti(const SkeletonComplex& sk, int d, CoeffRing ring) {
    if (d < 0) throw std::invalid_argument("dimension must be >= 0");
    std::uint64_t rd = 0, rd1 = 0;
    switch (ring) {
        case CoeffRing::F2:
            rd = rank_boundary_f2(sk, d);
            rd1 = rank_boundary_f2(sk, d + 1);
            break;
        case CoeffRing::Q:
            rd = rank_boundary_field<QRing>(sk, d);
            rd1 = rank_boundary_field<QRing>(sk, d + 1);
            break;
        default:
            throw std::invalid_argument("reduced_betti needs a field; use homology_z for Z");
    }
    return static_cast<std::int64_t>(sk.count(d)) - static_cast<std::int64_t>(rd) - static_cast<std::int64_t>(rd1);
}

// Integral homology of the skeleton in dimension d: free rank and torsion
// invariant factors.
struct ZHomology {
    std::int64_t free_rank = 0;
    std::vector<BigInt> torsion;
};

inline ZHomology homology_z(const SkeletonComplex& sk, int d, std::uint64_t max_entries = 1'000'000) {
    ZHomology h;
    SnfResult bd = snf_boundary(sk, d, max_entries);
    SnfResult bd1 = snf_boundary(sk, d + 1, max_entries);
    h.free_rank = static_cast<std::int64_t>(sk.count(d)) - static_cast<std::int64_t>(bd.rank) -
                  static_cast<std::int64_t>(bd1.rank);
    h.torsion = bd1.divisors;
    return h;
}

// Reduced Betti numbers of a flag view in dimensions 0..max_dim; enumerates
// one dimension past max_dim so the top rank is correct.
inline std::vector<std::int64_t> reduced_betti_profile(const FlagView& view, int max_dim, CoeffRing ring,
                                                       std::uint64_t max_simplices = kDefaultMaxSimplices) {
    SkeletonComplex sk = enumerate_skeleton(view, max_dim + 1, max_simplices);
    std::vector<std::int64_t> out;
    for (int d = 0; d <= max_dim; ++d) out.push_back(reduced_betti(sk, d, ring));
    return out;
}

}  // namespace cuberips
