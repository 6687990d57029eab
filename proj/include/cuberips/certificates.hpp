#pragma once

// Bundled explicit (co)homology certificates and the end-to-end workflows
// that verify them: the nine degree-3 monomial cocycles of VR(Q_4;2) with
// their detector sets, the 112-simplex degree-4 cocycle of VR(Q_5;3), and the
// three cross-polytope cycle families it pairs with.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuberips/bounds.hpp"
#include "cuberips/complex.hpp"
#include "cuberips/homology.hpp"
#include "cuberips/hypercube.hpp"
#include "cuberips/koszul.hpp"

namespace cuberips {

// ---------------------------------------------------------------------------
// Cross-polytope cycle families in VR(Q_5;3). Each instance is five antipodal
// pairs; the first member of pair t is v XOR (mask over the chosen coordinate
// indices), the second its antipode.

enum class FamilyTag { A, B, C };

inline char family_tag_char(FamilyTag t) { return t == FamilyTag::A ? 'A' : t == FamilyTag::B ? 'B' : 'C'; }

inline FamilyTag parse_family_tag(const std::string& s) {
    if (s == "A" || s == "a") return FamilyTag::A;
    if (s == "B" || s == "b") return FamilyTag::B;
    if (s == "C" || s == "c") return FamilyTag::C;
    throw std::invalid_argument("unknown family tag: " + s);
}

// indices: the five coordinate names (1..5) in the role order (i,j,k,l,m).
inline VertexPairs instantiate_family(FamilyTag tag, Vertex v, const std::array<int, 5>& indices) {
    const CubeParams p{5, 3};
    if (v >= vertex_count(p.n)) throw std::invalid_argument("base vertex out of range");
    unsigned seen = 0;
    for (int idx : indices) {
        if (idx < 1 || idx > 5) throw std::invalid_argument("coordinate index out of range 1..5");
        unsigned bit = 1u << (idx - 1);
        if (seen & bit) throw std::invalid_argument("repeated coordinate index");
        seen |= bit;
    }
    auto bit = [&](int role) { return Vertex{1} << (indices[role] - 1); };
    const Vertex full = (Vertex{1} << 5) - 1;  // all five coordinates: v XOR full is the antipode
    // first-member masks per template, as subsets of the chosen coordinates
    std::array<Vertex, 5> first{};
    switch (tag) {
        case FamilyTag::A:
            first = {bit(0), bit(1), bit(2), bit(3), bit(4)};
            break;
        case FamilyTag::B:
            first = {0, bit(0) | bit(1), bit(0) | bit(2), bit(0) | bit(3), bit(0) | bit(4)};
            break;
        case FamilyTag::C:
            first = {bit(0), bit(1), bit(2) | bit(3), bit(2) | bit(4), bit(3) | bit(4)};
            break;
    }
    VertexPairs pairs;
    for (Vertex m : first) pairs.push_back({v ^ m, v ^ (full ^ m)});
    try {
        validate_cross_polytope_pairs(pairs, p);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("family template violation: ") + e.what());
    }
    return pairs;
}

// ---------------------------------------------------------------------------
// Canonical in-code copies of the bundled VR(Q_4;2) certificate data. The
// shipped JSON files are cross-checked against these in the test suite.

inline std::vector<Simplex> canonical_q4_xsets() {
    return {
        {0, 1, 2, 3}, {0, 1, 4, 5}, {0, 2, 4, 6}, {0, 3, 5, 6}, {2, 3, 6, 7},
        {1, 3, 5, 7}, {1, 2, 4, 7}, {4, 5, 6, 7}, {8, 9, 10, 11},
    };
}

inline std::vector<std::string> canonical_q4_labels() {
    return {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"};
}

inline std::vector<KoszulF2> canonical_q4_classes() {
    std::vector<KoszulF2> out;
    for (const Simplex& x : canonical_q4_xsets()) {
        KoszulF2 c;
        c.add(full_support_monomial(4, x), F2Ring::one());
        out.push_back(std::move(c));
    }
    return out;
}

// Detector vertex sets: the class's own x-set together with its XOR translate
// by a per-class mask, giving four antipodal pairs of Q_4 whose cross-polytope
// cycle pairs to 1 with that class and 0 with the others that matter.
inline std::vector<std::vector<Vertex>> canonical_q4_detectors() {
    const auto xsets = canonical_q4_xsets();
    const std::array<Vertex, 9> masks{11, 13, 14, 15, 13, 14, 15, 11, 7};
    std::vector<std::vector<Vertex>> out;
    for (std::size_t i = 0; i < xsets.size(); ++i) {
        std::vector<Vertex> L = xsets[i];
        for (Vertex v : xsets[i]) L.push_back(v ^ masks[i]);
        std::sort(L.begin(), L.end());
        out.push_back(std::move(L));
    }
    return out;
}

// Elimination order for the triangular independence argument (0-based class
// indices): a1 last, since its detector also sees a9.
inline std::vector<std::size_t> canonical_q4_elimination_order() { return {1, 2, 3, 4, 5, 6, 7, 8, 0}; }

// ---------------------------------------------------------------------------
// Workflows.

struct FamilyResult {
    FamilyTag tag = FamilyTag::A;
    bool cycle_ok = false;
    int f2_pairing = 0;
    BigInt z_pairing_naive_lift = 0;  // informational: the lift takes every coefficient of the mod-2 cocycle to 1
};

struct Q5Report {
    bool alpha_cocycle = false;
    std::uint64_t cofacets_checked = 0;
    std::string failure;
    std::vector<FamilyResult> families;

    bool pass() const {
        if (!alpha_cocycle || !failure.empty()) return false;
        if (families.empty()) return false;
        for (const auto& f : families)
            if (!f.cycle_ok || f.f2_pairing != 1) return false;
        return true;
    }
};

inline Q5Report verify_q5_generator(const ChainF2& alpha) {
    const CubeParams p{5, 3};
    Q5Report rep;
    FlagView view = make_vr_view(p);
    try {
        CocycleCheck cc = is_cocycle<F2Ring>(view, alpha);
        rep.alpha_cocycle = cc.ok;
        rep.cofacets_checked = cc.cofacets_checked;
        if (!cc.ok) {
            rep.failure = "cocycle condition fails at " + std::to_string(cc.violations.size()) + " cofacet(s)";
            return rep;
        }
    } catch (const std::exception& e) {
        rep.failure = std::string("cocycle check: ") + e.what();
        return rep;
    }
    ChainZ alpha_z;
    for (const auto& [s, c] : alpha.terms)
        if (c) alpha_z.add(s, BigInt(1));
    for (FamilyTag tag : {FamilyTag::A, FamilyTag::B, FamilyTag::C}) {
        FamilyResult fr;
        fr.tag = tag;
        VertexPairs pairs = instantiate_family(tag, 0, {1, 2, 3, 4, 5});
        ChainZ cycle = cross_polytope_cycle(pairs, p);
        fr.cycle_ok = is_cycle<ZRing>(cycle);
        ChainF2 cyc2 = reduce_mod2(cycle);
        fr.f2_pairing = pair_chains<F2Ring>(cyc2, alpha) ? 1 : 0;
        fr.z_pairing_naive_lift = pair_chains<ZRing>(cycle, alpha_z);
        rep.families.push_back(std::move(fr));
    }
    return rep;
}

struct Q4Report {
    std::vector<std::string> labels;
    bool cocycles_ok = false;
    std::string cocycle_failure;
    IndependenceVerdict independence;
    std::int64_t betti3 = -1;
    bool betti_ok = false;
    std::string failing_stage() const {
        if (!cocycles_ok) return "cocycle";
        if (!independence.pass) return "independence";
        if (!betti_ok) return "betti";
        return "";
    }
    bool pass() const { return failing_stage().empty(); }
};

inline Q4Report verify_q4_rank9(const std::vector<std::string>& labels, const std::vector<KoszulF2>& classes,
                                const std::vector<std::vector<Vertex>>& detectors,
                                const std::vector<std::size_t>& elimination_order,
                                std::uint64_t max_simplices = kDefaultMaxSimplices) {
    const CubeParams p{4, 2};
    Q4Report rep;
    rep.labels = labels;
    FlagView view = make_vr_view(p);
    rep.cocycles_ok = true;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::string label = i < labels.size() ? labels[i] : ("class " + std::to_string(i + 1));
        try {
            if (classes[i].terms.size() == 1) {
                if (!is_monomial_cocycle(classes[i].terms.begin()->first, view)) {
                    rep.cocycles_ok = false;
                    rep.cocycle_failure = label + " is not a cocycle (x-part not maximal)";
                    break;
                }
            }
            if (!koszul_differential(classes[i], view).empty()) {
                rep.cocycles_ok = false;
                rep.cocycle_failure = label + " has nonzero differential";
                break;
            }
        } catch (const std::exception& e) {
            rep.cocycles_ok = false;
            rep.cocycle_failure = label + ": " + e.what();
            break;
        }
    }
    if (!rep.cocycles_ok) return rep;
    rep.independence = independence_certificate(view, classes, detectors, elimination_order);
    if (!rep.independence.pass) return rep;
    SkeletonComplex sk = enumerate_skeleton(view, 4, max_simplices);
    rep.betti3 = reduced_betti(sk, 3, CoeffRing::F2);
    rep.betti_ok = rep.betti3 == static_cast<std::int64_t>(classes.size());
    return rep;
}

struct TdsFamilyResult {
    FamilyTag tag = FamilyTag::A;
    int f2_pairing = 0;
    bool dominates = false;
    std::optional<Vertex> witness;
};

struct TdsReport {
    std::vector<TdsFamilyResult> families;
    bool theta_pairs_32_dominate = false;          // 4 antipodal pairs of Q_3 against distance > 2
    bool family_a_r4_dominates = false;            // informational: same vertices, threshold raised to 4
    std::string failure;

    bool pass() const {
        if (!failure.empty()) return false;
        for (const auto& f : families)
            if (f.f2_pairing != 0 && !f.dominates) return false;
        return theta_pairs_32_dominate;
    }
};

inline TdsReport verify_tds_propositions(const ChainF2& alpha) {
    const CubeParams p{5, 3};
    TdsReport rep;
    Q5Report q5 = verify_q5_generator(alpha);
    if (!q5.alpha_cocycle) {
        rep.failure = "bundled cocycle failed its own check: " + q5.failure;
        return rep;
    }
    for (const auto& f : q5.families) {
        TdsFamilyResult tr;
        tr.tag = f.tag;
        tr.f2_pairing = f.f2_pairing;
        VertexPairs pairs = instantiate_family(f.tag, 0, {1, 2, 3, 4, 5});
        TdsCheck check = tds_from_cycle(pairs, p);
        tr.dominates = check.dominating;
        tr.witness = check.witness;
        rep.families.push_back(tr);
        if (f.tag == FamilyTag::A) {
            TdsCheck raised = tds_from_cycle(pairs, CubeParams{5, 4});
            rep.family_a_r4_dominates = raised.dominating;
        }
    }
    VertexPairs theta_pairs;
    for (Vertex v = 0; v < 4; ++v) theta_pairs.push_back({v, antipode(v, 3)});
    rep.theta_pairs_32_dominate = tds_from_cycle(theta_pairs, CubeParams{3, 2}).dominating;
    return rep;
}

}  // namespace cuberips
