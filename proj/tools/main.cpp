// Command-line front end: generate example codes, verify code files, query
// exact entropies, evaluate bound tables, and emit certificates, gap
// breakdowns, trade-off curves, and proof transcripts.
//
// Exit codes: 0 pass, 1 checked-property failure, 2 usage error, 3 I/O or
// format error. All diagnostics go to stderr; stdout carries only payload
// (JSON with 2-space indent or CSV with LF endings), byte-identical across
// repeated invocations.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regen/bounds.hpp"
#include "regen/code_model.hpp"
#include "regen/constructions.hpp"
#include "regen/entropy.hpp"
#include "regen/report_io.hpp"

namespace {

using namespace regen;

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int default_window(const CodeParams& p) { return std::min(p.N, p.d + 1); }

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad ") + what + " entry: '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size())
            throw std::invalid_argument(std::string("bad ") + what + " entry: '" + tok + "'");
        out.push_back(value);
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
    return out;
}

VarSet parse_var_list(const std::string& text) {
    VarSet out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto a = tok.find_first_not_of(" \t");
        if (a == std::string::npos) throw std::invalid_argument("empty variable token");
        const auto b = tok.find_last_not_of(" \t");
        out.insert(VarName::parse(tok.substr(a, b - a + 1)));
    }
    if (out.empty()) throw std::invalid_argument("empty variable list");
    return out;
}

Ordering make_ordering(const CodeParams& p, const std::string& perm_text, int n, int ell) {
    Ordering ord = Ordering::identity(p.N, n, ell);
    if (!perm_text.empty()) ord.perm = parse_int_list(perm_text, "perm");
    ord.validate(p);
    return ord;
}

struct GenOptions {
    std::string family;
    int n = 0, w = 0, k = 0, d = 0, q = 0;
    bool has_q = false;
    std::string out;
};

int run_gen(const GenOptions& o) {
    ConstructionSpec spec;
    if (o.family == "layered") spec.family = ConstructionSpec::Family::Layered;
    else if (o.family == "rbt_mbr") spec.family = ConstructionSpec::Family::RbtMbr;
    else if (o.family == "mds_msr") spec.family = ConstructionSpec::Family::MdsMsr;
    else spec.family = ConstructionSpec::Family::Replication;
    spec.n = o.n;
    spec.w = o.w;
    spec.k = o.k;
    spec.d = o.d;
    if (o.has_q) spec.q = o.q;
    save_code(spec.build(), o.out);
    return 0;
}

struct VerifyOptions_ {
    std::string path;
    int sample = 0;
    int seed = 0;
    bool has_sample = false;
};

int run_verify(const VerifyOptions_& o) {
    const RegenCode code = load_code(o.path);
    VerifyOptions opt;
    if (o.has_sample) {
        opt.sample = true;
        opt.sample_count = o.sample;
        opt.seed = static_cast<unsigned>(o.seed);
    }
    const VerificationReport rep = verify(code, opt);
    print_json(to_json(rep));
    return rep.pass() ? 0 : 1;
}

int run_entropy(const std::string& path, const std::string& vars) {
    const RegenCode code = load_code(path);
    const VariableSystem sys = code.to_variable_system();
    std::cout << sys.entropy(parse_var_list(vars)) << "\n";
    return 0;
}

struct BoundsOptions {
    int N = 0, k = 0, d = 0, alpha = 0, beta = 0;
    int n = 0, vmax = 8, improvement_p = 0;
    bool has_n = false, has_improvement = false;
};

int run_bounds(const BoundsOptions& o) {
    if (o.has_improvement) {
        print_json(to_json(improvement_table(o.improvement_p, o.vmax)));
        return 0;
    }
    const CodeParams p{o.N, o.k, o.d, o.alpha, o.beta, 2};
    p.validate();
    const int n = o.has_n ? o.n : default_window(p);
    std::cout << bounds_csv(best_linear_bound(p, n, o.vmax));
    return 0;
}

struct CertifyOptions {
    std::string path;
    std::string theorem = "1";
    int ell = 0, v = 1, n = 0;
    bool has_n = false, all_perms = false;
    std::string perm;
};

int run_certify(const CertifyOptions& o) {
    const RegenCode code = load_code(o.path);
    if (!verify(code).pass()) {
        std::cerr << "error: code fails verification; refusing to certify\n";
        return 1;
    }
    const CodeParams& p = code.params();
    const int n = o.has_n ? o.n : default_window(p);
    if (o.all_perms) {
        if (o.theorem != "1")
            throw std::invalid_argument("--all-perms searches direct certificates only");
        const OrderingSearchResult res =
            worst_case_ordering(code, n, o.ell, SearchObjective::MinSlack);
        ordered_json j;
        j["perm"] = res.ordering.perm;
        j["gap"] = res.gap_total;
        j["min_slack"] = format_rational(res.min_slack);
        j["certificate"] = to_json(res.certificate);
        print_json(j);
        return res.certificate.holds() ? 0 : 1;
    }
    const Ordering ord = make_ordering(p, o.perm, n, o.ell);
    Certificate cert;
    if (o.theorem == "1") {
        cert = certify_direct(code, ord);
    } else {
        const std::vector<Subspace> virtuals = build_virtual_nodes(code, ord, o.v);
        cert = o.theorem == "2" ? certify_virtual(code, ord, o.v, virtuals)
                                : certify_aggregate(code, ord, o.v, virtuals);
    }
    print_json(to_json(cert));
    return cert.holds() ? 0 : 1;
}

struct GapOptions {
    std::string path;
    int ell = 0, n = 0;
    bool has_n = false;
    std::string perm;
};

int run_gap(const GapOptions& o) {
    const RegenCode code = load_code(o.path);
    const CodeParams& p = code.params();
    const int n = o.has_n ? o.n : default_window(p);
    const Ordering ord = make_ordering(p, o.perm, n, o.ell);
    const RedundancyGap gap = redundancy_gap(code, ord);
    std::vector<GapReport> columns;
    for (int j = 1; j <= o.ell; ++j) columns.push_back(gap_terms(code, ord, j));
    print_json(gap_to_json(gap, columns));
    return 0;
}

struct TradeoffOptions {
    int N = 0, k = 0, d = 0, alpha = 0;
    int n = 0, vmax = 8;
    bool has_n = false;
    std::string beta_range;
};

int run_tradeoff(const TradeoffOptions& o) {
    int lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::stringstream ss(o.beta_range);
    if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !ss.eof())
        throw std::invalid_argument("--beta-range must be a:b:step");
    if (lo < 1 || hi < lo || step < 1)
        throw std::invalid_argument("--beta-range needs 1 <= a <= b and step >= 1");
    std::vector<TradeoffRow> rows;
    for (int beta = lo; beta <= hi; beta += step) {
        const CodeParams p{o.N, o.k, o.d, o.alpha, beta, 2};
        p.validate();
        const int n = o.has_n ? o.n : default_window(p);
        rows.push_back({beta, fr_bound_min(p, n).min_value,
                        best_linear_bound(p, n, o.vmax).min_value});
    }
    std::cout << tradeoff_csv(rows);
    return 0;
}

int run_proofs(const std::string& path, int proof_id) {
    const RegenCode code = load_code(path);
    const ProofTranscript t = proofs433_check(code, proof_id);
    print_json(to_json(t));
    return t.holds() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-repair regenerating codes: verification, entropy queries, "
                 "storage bounds, and machine-checked certificates"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* cgen = app.add_subcommand("gen", "Generate a code file from a built-in family");
    cgen->add_option("--family", gen.family, "layered | rbt_mbr | mds_msr | replication")
        ->required()
        ->check(CLI::IsMember({"layered", "rbt_mbr", "mds_msr", "replication"}));
    cgen->add_option("--n", gen.n, "number of nodes")->required();
    cgen->add_option("--w", gen.w, "layer width (layered)");
    cgen->add_option("--k", gen.k, "data nodes (rbt_mbr, mds_msr)");
    cgen->add_option("--d", gen.d, "repair degree (mds_msr)");
    auto* gq = cgen->add_option("--q", gen.q, "field size (prime)");
    cgen->add_option("--out", gen.out, "output path")->required();

    VerifyOptions_ ver;
    auto* cver = app.add_subcommand("verify", "Check storage and repair properties of a code file");
    cver->add_option("path", ver.path, "code file")->required();
    auto* vsample = cver->add_option("--sample", ver.sample, "check this many random access sets");
    auto* vseed = cver->add_option("--seed", ver.seed, "sampling seed");
    vsample->needs(vseed);
    vseed->needs(vsample);

    std::string ent_path, ent_vars;
    auto* cent = app.add_subcommand("entropy", "Exact entropy of a joint set of variables");
    cent->add_option("path", ent_path, "code file")->required();
    cent->add_option("--vars", ent_vars, "comma-separated, e.g. \"W1,S_2_3\"")->required();

    BoundsOptions bnd;
    auto* cbnd = app.add_subcommand("bounds", "File-size bound table for given parameters (CSV)");
    cbnd->add_option("--N", bnd.N, "total nodes");
    cbnd->add_option("--k", bnd.k, "data nodes");
    cbnd->add_option("--d", bnd.d, "repair degree");
    cbnd->add_option("--alpha", bnd.alpha, "per-node storage");
    cbnd->add_option("--beta", bnd.beta, "per-helper bandwidth");
    auto* bn = cbnd->add_option("--n", bnd.n, "window size (default min(N, d+1))");
    cbnd->add_option("--vmax", bnd.vmax, "max virtual-node count")->capture_default_str();
    auto* bip = cbnd->add_option("--improvement-p", bnd.improvement_p,
                                 "emit the scale-p improvement table (JSON) instead");

    CertifyOptions cert;
    auto* ccert = app.add_subcommand("certify", "Emit a machine-checked bound certificate (JSON)");
    ccert->add_option("path", cert.path, "code file")->required();
    ccert->add_option("--theorem", cert.theorem, "certificate kind: 1 | 2 | cor2")->capture_default_str()
        ->check(CLI::IsMember({"1", "2", "cor2"}));
    ccert->add_option("--ell", cert.ell, "repaired-node count")->required();
    ccert->add_option("--v", cert.v, "virtual-node count (kinds 2, cor2)")->capture_default_str();
    ccert->add_option("--perm", cert.perm, "node ordering, e.g. \"2,3,4,1\"");
    auto* cn = ccert->add_option("--n", cert.n, "window size (default min(N, d+1))");
    ccert->add_flag("--all-perms", cert.all_perms,
                    "search all orderings for the smallest slack (kind 1, N <= 8)");

    GapOptions gap;
    auto* cgap = app.add_subcommand("gap", "Redundancy gap and its per-column breakdown (JSON)");
    cgap->add_option("path", gap.path, "code file")->required();
    cgap->add_option("--ell", gap.ell, "repaired-node count")->required();
    cgap->add_option("--perm", gap.perm, "node ordering");
    auto* gn = cgap->add_option("--n", gap.n, "window size (default min(N, d+1))");

    TradeoffOptions tr;
    auto* ctr = app.add_subcommand("tradeoff", "Bound minima over a bandwidth range (CSV)");
    ctr->add_option("--N", tr.N, "total nodes")->required();
    ctr->add_option("--k", tr.k, "data nodes")->required();
    ctr->add_option("--d", tr.d, "repair degree")->required();
    ctr->add_option("--alpha", tr.alpha, "per-node storage")->required();
    ctr->add_option("--beta-range", tr.beta_range, "a:b:step")->required();
    auto* tn = ctr->add_option("--n", tr.n, "window size (default min(N, d+1))");
    ctr->add_option("--vmax", tr.vmax, "max virtual-node count")->capture_default_str();

    std::string pf_path;
    int pf_id = 0;
    auto* cpf = app.add_subcommand("proofs433", "Replay a recorded (4,3,3) proof chain (JSON)");
    cpf->add_option("path", pf_path, "code file")->required();
    cpf->add_option("--proof", pf_id, "proof number")->required()->check(CLI::Range(1, 3));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    gen.has_q = gq->count() > 0;
    ver.has_sample = vsample->count() > 0;
    bnd.has_n = bn->count() > 0;
    bnd.has_improvement = bip->count() > 0;
    cert.has_n = cn->count() > 0;
    gap.has_n = gn->count() > 0;
    tr.has_n = tn->count() > 0;

    try {
        if (cgen->parsed()) return run_gen(gen);
        if (cver->parsed()) return run_verify(ver);
        if (cent->parsed()) return run_entropy(ent_path, ent_vars);
        if (cbnd->parsed()) return run_bounds(bnd);
        if (ccert->parsed()) return run_certify(cert);
        if (cgap->parsed()) return run_gap(gap);
        if (ctr->parsed()) return run_tradeoff(tr);
        if (cpf->parsed()) return run_proofs(pf_path, pf_id);
    } catch (const CodeFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
