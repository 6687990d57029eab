#pragma once

// JSON serialization for the public data shapes: simplex lists, chains and
// Koszul cochains, small graphs, bound reports, and the bundled certificate
// files. Uses nlohmann::ordered_json throughout so output key order (and
// hence the emitted bytes) is deterministic.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cuberips/bounds.hpp"
#include "cuberips/complex.hpp"
#include "cuberips/hypercube.hpp"
#include "cuberips/koszul.hpp"
#include "cuberips/rings.hpp"

namespace cuberips {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << j.dump(2) << '\n';
}

namespace detail {

inline std::vector<Vertex> vertex_list_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<Vertex> out;
    for (const auto& v : j) {
        // signed storage is fine as long as the value is nonnegative
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ParseError(std::string(what) + " entries must be nonnegative integers");
        out.push_back(v.get<Vertex>());
    }
    return out;
}

inline Json coef_to_json(const BigInt& c) {
    if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(c);
    return c.str();
}

inline BigInt coef_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw ParseError("integer coefficient must be a number or decimal string");
}

inline std::string rational_to_string(const BigRational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

inline BigRational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRational(BigInt(s));
        return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("malformed rational: " + s);
    }
}

}  // namespace detail

// --------------------------------------------------------------------------
// Simplex lists: {"n":…, "r":…, "dims":{"0":[[v],…], "1":[[a,b],…], …}}

inline Json skeleton_to_json(const SkeletonComplex& sk) {
    Json dims = Json::object();
    for (std::size_t d = 0; d < sk.dims.size(); ++d) {
        Json layer = Json::array();
        for (const Simplex& s : sk.dims[d]) layer.push_back(s);
        dims[std::to_string(d)] = std::move(layer);
    }
    return Json{{"n", sk.n}, {"r", sk.r}, {"dims", std::move(dims)}};
}

inline SkeletonComplex skeleton_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("r") || !j.contains("dims"))
        throw ParseError("simplex list needs keys n, r, dims");
    SkeletonComplex sk;
    sk.n = j.at("n").get<int>();
    sk.r = j.at("r").get<int>();
    const Json& dims = j.at("dims");
    if (!dims.is_object()) throw ParseError("dims must be an object keyed by dimension");
    int top = -1;
    for (const auto& [key, _] : dims.items()) top = std::max(top, std::stoi(key));
    sk.dims.assign(top + 1, {});
    for (const auto& [key, layer] : dims.items()) {
        int d = std::stoi(key);
        if (d < 0) throw ParseError("negative dimension key");
        for (const auto& js : layer) {
            Simplex s = detail::vertex_list_from_json(js, "simplex");
            if (static_cast<int>(s.size()) != d + 1) throw ParseError("simplex size does not match its dimension key");
            sk.dims[d].push_back(normalize_simplex(std::move(s)));
        }
    }
    return sk;
}

// --------------------------------------------------------------------------
// Chains: {"n":…, "r":…, "dim":…, "ring":"f2|q|z", "terms":[{"simplex":…, "coef":…}]}

template <typename R>
inline Json chain_to_json(const Chain<R>& c, const CubeParams& p) {
    int dim = -1;
    Json terms = Json::array();
    for (const auto& [s, coef] : c.terms) {
        if (R::is_zero(coef)) continue;
        dim = static_cast<int>(s.size()) - 1;
        Json t{{"simplex", s}};
        if constexpr (std::is_same_v<R, QRing>) {
            t["coef"] = detail::rational_to_string(coef);
        } else if constexpr (std::is_same_v<R, F2Ring>) {
            t["coef"] = static_cast<int>(coef);
        } else {
            t["coef"] = detail::coef_to_json(coef);
        }
        terms.push_back(std::move(t));
    }
    return Json{{"n", p.n}, {"r", p.r}, {"dim", dim}, {"ring", R::name()}, {"terms", std::move(terms)}};
}

struct ChainDoc {
    CubeParams params;
    int dim = -1;
    std::string ring;
    Json terms;
};

inline ChainDoc chain_doc_from_json(const Json& j) {
    for (const char* k : {"n", "r", "dim", "ring", "terms"})
        if (!j.is_object() || !j.contains(k)) throw ParseError(std::string("chain needs key ") + k);
    ChainDoc doc;
    doc.params = CubeParams{j.at("n").get<int>(), j.at("r").get<int>()};
    validate_params(doc.params, true);
    doc.dim = j.at("dim").get<int>();
    doc.ring = j.at("ring").get<std::string>();
    doc.terms = j.at("terms");
    if (!doc.terms.is_array()) throw ParseError("terms must be an array");
    return doc;
}

template <typename R>
inline Chain<R> chain_from_doc(const ChainDoc& doc) {
    if (doc.ring != R::name()) throw ParseError("chain ring is '" + doc.ring + "', expected '" + R::name() + "'");
    Chain<R> c;
    for (const auto& t : doc.terms) {
        if (!t.is_object() || !t.contains("simplex") || !t.contains("coef"))
            throw ParseError("each term needs simplex and coef");
        Simplex s = detail::vertex_list_from_json(t.at("simplex"), "simplex");
        if (static_cast<int>(s.size()) != doc.dim + 1) throw ParseError("term simplex does not match chain dim");
        for (Vertex v : s)
            if (v >= vertex_count(doc.params.n)) throw ParseError("simplex vertex out of range for n");
        typename R::Elem coef;
        if constexpr (std::is_same_v<R, QRing>) {
            coef = t.at("coef").is_string() ? detail::rational_from_string(t.at("coef").get<std::string>())
                                            : BigRational(detail::coef_from_json(t.at("coef")));
        } else if constexpr (std::is_same_v<R, F2Ring>) {
            BigInt raw = detail::coef_from_json(t.at("coef"));
            coef = static_cast<F2Ring::Elem>(raw % 2 != 0);
        } else {
            coef = detail::coef_from_json(t.at("coef"));
        }
        c.add(std::move(s), coef);
    }
    return c;
}

// --------------------------------------------------------------------------
// Koszul cochains: {"n":…, "r":…, "ghosts":[…], "terms":[{"u":…, "x":…, "coef":…}]}

inline Json koszul_to_json(const KoszulF2& c, const CubeParams& p, const std::vector<Vertex>& ghosts = {}) {
    Json terms = Json::array();
    for (const auto& [m, coef] : c.terms) {
        if (!coef) continue;
        terms.push_back(Json{{"u", vset_to_vertices(m.u)}, {"x", vset_to_vertices(m.x)}, {"coef", 1}});
    }
    return Json{{"n", p.n}, {"r", p.r}, {"ghosts", ghosts}, {"terms", std::move(terms)}};
}

struct KoszulDoc {
    CubeParams params;
    std::vector<Vertex> ghosts;
    KoszulF2 cochain;
};

inline KoszulDoc koszul_f2_from_json(const Json& j) {
    for (const char* k : {"n", "r", "ghosts", "terms"})
        if (!j.is_object() || !j.contains(k)) throw ParseError(std::string("koszul cochain needs key ") + k);
    KoszulDoc doc;
    doc.params = CubeParams{j.at("n").get<int>(), j.at("r").get<int>()};
    validate_params(doc.params);
    doc.ghosts = detail::vertex_list_from_json(j.at("ghosts"), "ghosts");
    const std::size_t nv = vertex_count(doc.params.n);
    for (const auto& t : j.at("terms")) {
        if (!t.is_object() || !t.contains("u") || !t.contains("x") || !t.contains("coef"))
            throw ParseError("each koszul term needs u, x, coef");
        std::vector<Vertex> u = detail::vertex_list_from_json(t.at("u"), "u");
        std::vector<Vertex> x = detail::vertex_list_from_json(t.at("x"), "x");
        for (Vertex v : u)
            if (v >= nv) throw ParseError("u vertex out of range for n");
        for (Vertex v : x)
            if (v >= nv) throw ParseError("x vertex out of range for n");
        BigInt coef = detail::coef_from_json(t.at("coef"));
        if (coef % 2 != 0) doc.cochain.add(make_koszul_monomial(doc.params.n, u, x), F2Ring::one());
    }
    return doc;
}

// --------------------------------------------------------------------------
// Small graphs: {"m":…, "edges":[[a,b],…]}

inline Json small_graph_to_json(const SmallGraph& g) {
    Json edges = Json::array();
    for (int a = 0; a < g.m; ++a)
        for (int b = a + 1; b < g.m; ++b)
            if (g.adj[a] >> b & 1) edges.push_back(Json::array({a, b}));
    return Json{{"m", g.m}, {"edges", std::move(edges)}};
}

inline SmallGraph small_graph_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("edges")) throw ParseError("graph needs keys m, edges");
    int m = j.at("m").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    try {
        return SmallGraph::from_edges(m, edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

// --------------------------------------------------------------------------
// Bound reports, rationals rendered as "p/q".

inline Json bound_report_to_json(const BoundReport& rep) {
    Json j{{"n", rep.n},
           {"r", rep.r},
           {"alpha", detail::rational_to_string(rep.alpha)},
           {"conn_lower_bound", detail::coef_to_json(rep.conn_lb)},
           {"spectral_lambda_max", detail::coef_to_json(rep.spectral_lambda)},
           {"spectral_conn_lower_bound", detail::rational_to_string(rep.spectral_conn)},
           {"kleitman_max_cardinality", detail::coef_to_json(rep.kleitman_max_card)}};
    if (rep.coconn_ub) {
        j["coconn_upper_bound"] = detail::coef_to_json(*rep.coconn_ub);
        j["coconn_upper_bound_exact"] = detail::rational_to_string(*rep.coconn_exact);
    }
    return j;
}

// --------------------------------------------------------------------------
// Bundled certificate files.

// data/q5r3_alpha.json: a single mod-2 chain document; every simplex vertex
// must be below 16 (the classes live in the subcube spanned by the low half).
inline ChainF2 load_alpha_chain(const std::string& path) {
    ChainDoc doc = chain_doc_from_json(load_json_file(path));
    if (doc.params.n != 5 || doc.params.r != 3 || doc.dim != 4)
        throw ParseError(path + ": expected a dimension-4 chain with n=5, r=3");
    ChainF2 c = chain_from_doc<F2Ring>(doc);
    for (const auto& [s, coef] : c.terms)
        if (coef)
            for (Vertex v : s)
                if (v >= 16) throw ParseError(path + ": simplex vertex >= 16 violates the low-half support invariant");
    return c;
}

struct NamedKoszulClasses {
    CubeParams params;
    std::vector<std::string> labels;
    std::vector<KoszulF2> classes;
};

// data/q4r2_cocycles.json: {"n","r","classes":[{"label", "ghosts", "terms"}...]}
inline NamedKoszulClasses load_koszul_classes(const std::string& path) {
    Json j = load_json_file(path);
    for (const char* k : {"n", "r", "classes"})
        if (!j.is_object() || !j.contains(k)) throw ParseError(path + ": needs key " + k);
    NamedKoszulClasses out;
    out.params = CubeParams{j.at("n").get<int>(), j.at("r").get<int>()};
    validate_params(out.params);
    for (const auto& cj : j.at("classes")) {
        if (!cj.is_object() || !cj.contains("label")) throw ParseError(path + ": each class needs a label");
        Json body = cj;
        body["n"] = out.params.n;
        body["r"] = out.params.r;
        if (!body.contains("ghosts")) body["ghosts"] = Json::array();
        KoszulDoc doc = koszul_f2_from_json(body);
        out.labels.push_back(cj.at("label").get<std::string>());
        out.classes.push_back(std::move(doc.cochain));
    }
    return out;
}

struct DetectorFile {
    CubeParams params;
    std::vector<std::string> labels;
    std::vector<std::vector<Vertex>> detectors;
    std::vector<std::size_t> elimination_order;  // indices into the class list
};

// data/q4r2_detectors.json:
//   {"n","r","detectors":[{"label","class","vertices"}...],"elimination_order":["a2",...]}
inline DetectorFile load_detectors(const std::string& path, const std::vector<std::string>& class_labels) {
    Json j = load_json_file(path);
    for (const char* k : {"n", "r", "detectors", "elimination_order"})
        if (!j.is_object() || !j.contains(k)) throw ParseError(path + ": needs key " + k);
    DetectorFile out;
    out.params = CubeParams{j.at("n").get<int>(), j.at("r").get<int>()};
    validate_params(out.params);
    std::vector<std::string> kill_targets;
    for (const auto& dj : j.at("detectors")) {
        if (!dj.is_object() || !dj.contains("label") || !dj.contains("class") || !dj.contains("vertices"))
            throw ParseError(path + ": each detector needs label, class, vertices");
        out.labels.push_back(dj.at("label").get<std::string>());
        kill_targets.push_back(dj.at("class").get<std::string>());
        out.detectors.push_back(detail::vertex_list_from_json(dj.at("vertices"), "vertices"));
    }
    if (kill_targets != class_labels)
        throw ParseError(path + ": detector class labels must match the class list in order");
    for (const auto& oj : j.at("elimination_order")) {
        std::string label = oj.get<std::string>();
        auto it = std::find(class_labels.begin(), class_labels.end(), label);
        if (it == class_labels.end()) throw ParseError(path + ": elimination order names unknown class " + label);
        out.elimination_order.push_back(static_cast<std::size_t>(it - class_labels.begin()));
    }
    return out;
}

}  // namespace cuberips
