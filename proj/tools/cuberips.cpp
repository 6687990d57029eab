// cuberips: bounds, desk-scale homology, resolution dual complexes, and
// certificate verification for Vietoris-Rips complexes of hypercubes.
//
// Exit codes: 0 pass, 1 certificate failure, 2 usage or parse error,
// 3 resource cap exceeded.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuberips/bounds.hpp"
#include "cuberips/certificates.hpp"
#include "cuberips/complex.hpp"
#include "cuberips/homology.hpp"
#include "cuberips/hypercube.hpp"
#include "cuberips/json_io.hpp"
#include "cuberips/koszul.hpp"
#include "cuberips/taylor.hpp"

#ifndef CUBERIPS_DATA_DIR
#define CUBERIPS_DATA_DIR "data"
#endif

namespace {

using namespace cuberips;

constexpr int kExitPass = 0;
constexpr int kExitCertFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

std::string data_dir_default() {
    if (const char* env = std::getenv("CUBERIPS_DATA_DIR")) return env;
    return CUBERIPS_DATA_DIR;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- bounds ---

int run_bounds(int n, int r, bool as_json) {
    BoundReport rep = bound_report(CubeParams{n, r});
    if (as_json) {
        emit(bound_report_to_json(rep));
        return kExitPass;
    }
    std::cout << "n = " << rep.n << ", r = " << rep.r << '\n';
    std::cout << "alpha                  = " << detail::rational_to_string(rep.alpha) << '\n';
    std::cout << "connectivity >=        " << rep.conn_lb << '\n';
    std::cout << "lambda_max(complement) = " << rep.spectral_lambda << '\n';
    std::cout << "spectral connectivity  >= " << detail::rational_to_string(rep.spectral_conn) << '\n';
    if (rep.coconn_ub)
        std::cout << "coconnectivity <=      " << *rep.coconn_ub << "  (exact "
                  << detail::rational_to_string(*rep.coconn_exact) << ")\n";
    else
        std::cout << "coconnectivity <=      (needs n > r+1)\n";
    std::cout << "kleitman max |W|       = " << rep.kleitman_max_card << '\n';
    return kExitPass;
}

// -------------------------------------------------------------- homology ---

int run_homology(int n, int r, int dim, const std::string& ring_s, const std::vector<Vertex>& vertices,
                 bool as_json, std::uint64_t max_simplices, std::uint64_t max_matrix) {
    CubeParams p{n, r};
    validate_params(p, true);
    CoeffRing ring = parse_ring(ring_s);
    FlagView view = vertices.empty() ? make_vr_view(p) : make_induced_view(p, vertices);
    SkeletonComplex sk = enumerate_skeleton(view, dim + 1, max_simplices);
    Json j{{"n", n}, {"r", r}, {"dim", dim}, {"ring", ring_name(ring)}};
    if (!vertices.empty()) j["vertices"] = vertices;
    if (ring == CoeffRing::Z) {
        ZHomology h = homology_z(sk, dim, max_matrix);
        j["reduced_free_rank"] = h.free_rank;
        Json tor = Json::array();
        for (const auto& d : h.torsion) tor.push_back(detail::coef_to_json(d));
        j["torsion"] = std::move(tor);
        if (as_json) {
            emit(j);
        } else {
            std::cout << "reduced H_" << dim << " over Z: free rank " << h.free_rank << ", torsion [";
            for (std::size_t i = 0; i < h.torsion.size(); ++i) std::cout << (i ? "," : "") << h.torsion[i];
            std::cout << "]\n";
        }
    } else {
        std::int64_t b = reduced_betti(sk, dim, ring);
        j["reduced_betti"] = b;
        if (as_json)
            emit(j);
        else
            std::cout << "reduced betti_" << dim << " over " << ring_name(ring) << " = " << b << '\n';
    }
    return kExitPass;
}

// ------------------------------------------------------------------ dual ---

int run_dual(int n, int r, const std::string& variant_s, int dim, bool as_json, std::uint64_t max_simplices,
             const std::string& out_path) {
    CubeParams p{n, r};
    validate_params(p);
    DualVariant variant;
    if (variant_s == "C" || variant_s == "c")
        variant = DualVariant::C;
    else if (variant_s == "J" || variant_s == "j")
        variant = DualVariant::J;
    else
        throw CLI::ValidationError("--variant must be C or J");
    DualComplex dc = build_dual_complex(p, variant, dim + 1, max_simplices);
    if (!out_path.empty()) save_json_file(out_path, skeleton_to_json(dc.sk));
    std::int64_t betti = reduced_betti(dc.sk, dim, CoeffRing::F2);
    Json j{{"n", n},
           {"r", r},
           {"variant", variant == DualVariant::C ? "C" : "J"},
           {"dim", dim},
           {"vertices", dc.vertices.size()},
           {"f_vector", dc.sk.f_vector()},
           {"reduced_betti", betti}};
    // the comparison degree on the Rips side: 2^(n-1) - (dim+1) - 1
    const int t = dim + 1;
    const long long vr_degree = (1LL << (n - 1)) - t - 1;
    bool vr_feasible = n <= 4 && vr_degree >= 0 && vr_degree <= 6;
    if (vr_feasible) {
        DualHomologyReport rep = dual_homology_check(p, t, CoeffRing::F2, max_simplices);
        j["comparison"] = Json{{"t", rep.t},
                               {"vr_degree", rep.vr_degree},
                               {"vr_rank", rep.vr_rank},
                               {"c_rank", rep.c_rank},
                               {"j_rank", rep.j_rank},
                               {"c_equal", rep.c_equal},
                               {"j_summand", rep.j_summand}};
    }
    if (as_json) {
        emit(j);
        return kExitPass;
    }
    std::cout << "dual complex " << j["variant"].get<std::string>() << " for n = " << n << ", r = " << r << ": "
              << dc.vertices.size() << " vertices, f-vector [";
    auto f = dc.sk.f_vector();
    for (std::size_t i = 0; i < f.size(); ++i) std::cout << (i ? "," : "") << f[i];
    std::cout << "]\n";
    std::cout << "reduced betti_" << dim << " over f2 = " << betti << '\n';
    if (vr_feasible) {
        const auto& c = j["comparison"];
        std::cout << "rips side: reduced betti_" << c["vr_degree"] << " = " << c["vr_rank"]
                  << (variant == DualVariant::C ? (c["c_equal"].get<bool>() ? "  (equal)" : "  (MISMATCH)")
                                                : (c["j_summand"].get<bool>() ? "  (summand bound holds)"
                                                                              : "  (SUMMAND BOUND FAILS)"))
                  << '\n';
    } else {
        std::cout << "rips side comparison skipped (degree " << vr_degree << " beyond desk scale)\n";
    }
    return kExitPass;
}

// -------------------------------------------------------------- skeleton ---

int run_skeleton(int n, int r, int max_dim, const std::vector<Vertex>& vertices, bool as_json,
                 std::uint64_t max_simplices, const std::string& out_path) {
    CubeParams p{n, r};
    validate_params(p, true);
    FlagView view = vertices.empty() ? make_vr_view(p) : make_induced_view(p, vertices);
    SkeletonComplex sk = enumerate_skeleton(view, max_dim, max_simplices);
    Json j = skeleton_to_json(sk);
    if (!out_path.empty()) {
        save_json_file(out_path, j);
        std::cout << "wrote " << sk.total() << " simplices to " << out_path << '\n';
        return kExitPass;
    }
    if (as_json) {
        emit(j);
    } else {
        auto f = sk.f_vector();
        std::cout << "f-vector [";
        for (std::size_t i = 0; i < f.size(); ++i) std::cout << (i ? "," : "") << f[i];
        std::cout << "]\n";
    }
    return kExitPass;
}

// ---------------------------------------------------------------- verify ---

Json family_result_json(const FamilyResult& f) {
    return Json{{"family", std::string(1, family_tag_char(f.tag))},
                {"cycle_ok", f.cycle_ok},
                {"f2_pairing", f.f2_pairing},
                {"z_pairing_naive_lift", detail::coef_to_json(f.z_pairing_naive_lift)}};
}

int finish_verify(const std::string& kind, bool pass, Json detail_json, bool as_json) {
    if (as_json) {
        emit(Json{{"kind", kind}, {"pass", pass}, {"detail", std::move(detail_json)}});
    } else {
        std::cout << (pass ? "PASS" : "FAIL") << '\n';
    }
    return pass ? kExitPass : kExitCertFail;
}

template <typename R>
std::pair<bool, Json> cocycle_detail(const ChainDoc& doc) {
    Chain<R> c = chain_from_doc<R>(doc);
    FlagView view = make_vr_view(doc.params);
    CocycleCheck cc = is_cocycle<R>(view, c);
    Json d{{"ring", R::name()}, {"cofacets_checked", cc.cofacets_checked}, {"ok", cc.ok}};
    if (!cc.ok) {
        Json w = Json::array();
        for (std::size_t i = 0; i < cc.violations.size() && i < 5; ++i) w.push_back(cc.violations[i]);
        d["witness_cofacets"] = std::move(w);
    }
    return {cc.ok, std::move(d)};
}

template <typename R>
std::pair<bool, Json> cycle_detail(const ChainDoc& doc) {
    Chain<R> c = chain_from_doc<R>(doc);
    bool ok = is_cycle<R>(c);
    return {ok, Json{{"ring", R::name()}, {"ok", ok}}};
}

int run_verify(const std::string& kind, const std::string& file, const std::string& file2,
               const std::string& data_dir, bool as_json) {
    auto bundled = [&](const char* name) { return data_dir + "/" + name; };
    if (kind == "cocycle" || kind == "cycle") {
        if (file.empty()) throw CLI::ValidationError("--file is required for kind " + kind);
        ChainDoc doc = chain_doc_from_json(load_json_file(file));
        std::pair<bool, Json> res;
        if (doc.ring == "f2")
            res = kind == "cocycle" ? cocycle_detail<F2Ring>(doc) : cycle_detail<F2Ring>(doc);
        else if (doc.ring == "q")
            res = kind == "cocycle" ? cocycle_detail<QRing>(doc) : cycle_detail<QRing>(doc);
        else if (doc.ring == "z")
            res = kind == "cocycle" ? cocycle_detail<ZRing>(doc) : cycle_detail<ZRing>(doc);
        else
            throw ParseError("unknown ring: " + doc.ring);
        return finish_verify(kind, res.first, std::move(res.second), as_json);
    }
    if (kind == "pairing") {
        if (file.empty() || file2.empty())
            throw CLI::ValidationError("pairing needs --file (chain) and --against (cochain)");
        ChainDoc a = chain_doc_from_json(load_json_file(file));
        ChainDoc b = chain_doc_from_json(load_json_file(file2));
        if (a.ring != b.ring) throw ParseError("pairing requires matching rings");
        if (a.dim != b.dim) throw ParseError("pairing requires matching dimensions");
        std::string value;
        bool nonzero = false;
        if (a.ring == "f2") {
            auto v = pair_chains<F2Ring>(chain_from_doc<F2Ring>(a), chain_from_doc<F2Ring>(b));
            nonzero = v != 0;
            value = F2Ring::to_string(v);
        } else if (a.ring == "q") {
            auto v = pair_chains<QRing>(chain_from_doc<QRing>(a), chain_from_doc<QRing>(b));
            nonzero = v != 0;
            value = QRing::to_string(v);
        } else if (a.ring == "z") {
            auto v = pair_chains<ZRing>(chain_from_doc<ZRing>(a), chain_from_doc<ZRing>(b));
            nonzero = v != 0;
            value = ZRing::to_string(v);
        } else {
            throw ParseError("unknown ring: " + a.ring);
        }
        if (!as_json) std::cout << "pairing = " << value << '\n';
        return finish_verify(kind, nonzero, Json{{"ring", a.ring}, {"value", value}}, as_json);
    }
    if (kind == "independence") {
        std::string cfile = file.empty() ? bundled("q4r2_cocycles.json") : file;
        std::string dfile = file2.empty() ? bundled("q4r2_detectors.json") : file2;
        NamedKoszulClasses classes = load_koszul_classes(cfile);
        DetectorFile det = load_detectors(dfile, classes.labels);
        FlagView view = make_vr_view(classes.params);
        IndependenceVerdict verdict =
            independence_certificate(view, classes.classes, det.detectors, det.elimination_order);
        Json d{{"pass", verdict.pass}, {"elimination_order", verdict.elimination_order}};
        if (!verdict.failure.empty()) d["failure"] = verdict.failure;
        return finish_verify(kind, verdict.pass, std::move(d), as_json);
    }
    if (kind == "q5") {
        ChainF2 alpha = load_alpha_chain(bundled("q5r3_alpha.json"));
        Q5Report rep = verify_q5_generator(alpha);
        Json fams = Json::array();
        for (const auto& f : rep.families) fams.push_back(family_result_json(f));
        Json d{{"alpha_cocycle", rep.alpha_cocycle}, {"cofacets_checked", rep.cofacets_checked}, {"families", fams}};
        if (!rep.failure.empty()) d["failure"] = rep.failure;
        if (!as_json)
            for (const auto& f : rep.families)
                std::cout << "family " << family_tag_char(f.tag) << ": cycle " << (f.cycle_ok ? "ok" : "BROKEN")
                          << ", pairing " << f.f2_pairing << '\n';
        return finish_verify(kind, rep.pass(), std::move(d), as_json);
    }
    if (kind == "q4") {
        NamedKoszulClasses classes = load_koszul_classes(bundled("q4r2_cocycles.json"));
        DetectorFile det = load_detectors(bundled("q4r2_detectors.json"), classes.labels);
        Q4Report rep = verify_q4_rank9(classes.labels, classes.classes, det.detectors, det.elimination_order);
        Json d{{"cocycles_ok", rep.cocycles_ok},
               {"independence", rep.independence.pass},
               {"betti3", rep.betti3},
               {"rank", rep.betti3}};
        std::string stage = rep.failing_stage();
        if (!stage.empty()) {
            d["failing_stage"] = stage;
            if (!rep.cocycle_failure.empty()) d["cocycle_failure"] = rep.cocycle_failure;
            if (!rep.independence.failure.empty()) d["independence_failure"] = rep.independence.failure;
        }
        if (!as_json && !stage.empty()) std::cout << "failing stage: " << stage << '\n';
        if (!as_json && stage.empty()) std::cout << "rank H^3 = " << rep.betti3 << '\n';
        return finish_verify(kind, rep.pass(), std::move(d), as_json);
    }
    if (kind == "tds") {
        ChainF2 alpha = load_alpha_chain(bundled("q5r3_alpha.json"));
        TdsReport rep = verify_tds_propositions(alpha);
        Json fams = Json::array();
        for (const auto& f : rep.families) {
            Json fj{{"family", std::string(1, family_tag_char(f.tag))},
                    {"f2_pairing", f.f2_pairing},
                    {"dominates", f.dominates}};
            if (f.witness) fj["undominated_witness"] = *f.witness;
            fams.push_back(std::move(fj));
        }
        Json d{{"families", fams},
               {"theta_pairs_32_dominate", rep.theta_pairs_32_dominate},
               {"family_a_r4_dominates_informational", rep.family_a_r4_dominates}};
        if (!rep.failure.empty()) d["failure"] = rep.failure;
        return finish_verify(kind, rep.pass(), std::move(d), as_json);
    }
    throw CLI::ValidationError("unknown verify kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants of Vietoris-Rips complexes of hypercube graphs"};
    app.require_subcommand(1);

    int n = 0, r = 0, dim = 0, max_dim = 1;
    std::string ring = "f2", variant = "J", kind, file, file2, out_path;
    std::string data_dir = data_dir_default();
    bool as_json = false;
    std::uint64_t max_simplices = kDefaultMaxSimplices;
    std::uint64_t max_matrix = 1'000'000;
    std::vector<Vertex> vertices;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", as_json, "emit a JSON report instead of text");
        cmd->add_option("--max-simplices", max_simplices, "cap on enumerated simplices");
        cmd->add_option("--max-matrix", max_matrix, "cap on dense matrix entries");
    };

    CLI::App* cb = app.add_subcommand("bounds", "connectivity and coconnectivity bounds");
    cb->add_option("--n", n, "hypercube dimension")->required();
    cb->add_option("--r", r, "Rips threshold")->required();
    add_common(cb);

    CLI::App* ch = app.add_subcommand("homology", "reduced betti numbers of the Rips complex");
    ch->add_option("--n", n, "hypercube dimension")->required();
    ch->add_option("--r", r, "Rips threshold")->required();
    ch->add_option("--dim", dim, "homology degree")->required();
    ch->add_option("--ring", ring, "coefficients: f2, q, or z");
    ch->add_option("--vertices", vertices, "restrict to the full subcomplex on these vertices");
    add_common(ch);

    CLI::App* cd = app.add_subcommand("dual", "resolution dual complexes and their homology");
    cd->add_option("--n", n, "hypercube dimension")->required();
    cd->add_option("--r", r, "Rips threshold")->required();
    cd->add_option("--variant", variant, "C (admissible products) or J (flag variant)");
    cd->add_option("--dim", dim, "homology degree of the dual complex")->required();
    cd->add_option("--out", out_path, "write the complex as a JSON simplex list");
    add_common(cd);

    CLI::App* cs = app.add_subcommand("skeleton", "enumerate the Rips complex as a JSON simplex list");
    cs->add_option("--n", n, "hypercube dimension")->required();
    cs->add_option("--r", r, "Rips threshold")->required();
    cs->add_option("--max-dim", max_dim, "top dimension to enumerate");
    cs->add_option("--vertices", vertices, "restrict to the full subcomplex on these vertices");
    cs->add_option("--out", out_path, "output path");
    add_common(cs);

    CLI::App* cv = app.add_subcommand("verify", "run a certificate workflow");
    cv->add_option("kind", kind, "cocycle | cycle | pairing | independence | q5 | q4 | tds")->required();
    cv->add_option("--file", file, "input chain / class file");
    cv->add_option("--against", file2, "second input (cochain for pairing, detectors for independence)");
    cv->add_option("--data-dir", data_dir, "directory with the bundled certificate data");
    add_common(cv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cb->parsed()) return run_bounds(n, r, as_json);
        if (ch->parsed()) return run_homology(n, r, dim, ring, vertices, as_json, max_simplices, max_matrix);
        if (cd->parsed()) return run_dual(n, r, variant, dim, as_json, max_simplices, out_path);
        if (cs->parsed()) return run_skeleton(n, r, max_dim, vertices, as_json, max_simplices, out_path);
        if (cv->parsed()) return run_verify(kind, file, file2, data_dir, as_json);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitCap;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
