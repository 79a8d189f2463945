#include "regen/report_io.hpp"

#include <sstream>

namespace regen {

std::string format_rational(const Rational& r) {
    std::string out = std::to_string(r.numerator());
    if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
    return out;
}

ordered_json to_json(const VerificationReport& rep) {
    ordered_json j;
    j["pass"] = rep.pass();
    j["storage_ok"] = rep.storage_ok;
    j["exact_alpha"] = rep.exact_alpha;
    ordered_json access = ordered_json::array();
    for (const auto& [nodes, ok] : rep.access)
        access.push_back({{"nodes", nodes}, {"ok", ok}});
    j["access"] = access;
    ordered_json repair = ordered_json::array();
    for (const auto& [node, helpers, ok] : rep.repair)
        repair.push_back({{"node", node}, {"helpers", helpers}, {"ok", ok}});
    j["repair"] = repair;
    j["sampled"] = rep.sampled;
    return j;
}

ordered_json to_json(const Certificate& cert) {
    ordered_json j;
    j["kind"] = cert.kind;
    j["n"] = cert.n;
    j["ell"] = cert.ell;
    j["v"] = cert.v;
    j["perm"] = cert.perm;
    if (!cert.virtual_dims.empty()) j["virtual_dims"] = cert.virtual_dims;
    ordered_json chain = ordered_json::array();
    for (const Inequality& q : cert.chain)
        chain.push_back({{"label", q.label},
                         {"lhs", format_rational(q.lhs)},
                         {"rhs", format_rational(q.rhs)},
                         {"slack", format_rational(q.slack())},
                         {"holds", q.holds()}});
    j["chain"] = chain;
    ordered_json terms;
    for (const auto& [name, value] : cert.terms) terms[name] = format_rational(value);
    j["terms"] = terms;
    j["holds"] = cert.holds();
    return j;
}

ordered_json to_json(const VirtualConditionReport& rep) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : rep.entries)
        entries.push_back(
            {{"u", e.u}, {"i", e.i}, {"j", e.j}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"ok", e.ok()}});
    return {{"pass", rep.pass()}, {"entries", entries}};
}

ordered_json to_json(const VirtualSizeReport& rep) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : rep.entries)
        entries.push_back(
            {{"u", e.u}, {"dim", e.lhs}, {"cap", format_rational(e.rhs)}, {"ok", e.ok()}});
    return {{"pass", rep.pass()}, {"entries", entries}};
}

ordered_json to_json(const ProofTranscript& t) {
    ordered_json j;
    j["proof_id"] = t.proof_id;
    ordered_json steps = ordered_json::array();
    for (const ProofStep& s : t.steps)
        steps.push_back({{"description", s.description},
                         {"lhs", format_rational(s.lhs)},
                         {"rhs", format_rational(s.rhs)},
                         {"relation", s.equality ? "==" : "<="},
                         {"slack", format_rational(s.slack())},
                         {"holds", s.holds()}});
    j["steps"] = steps;
    j["final_lhs"] = format_rational(t.final_lhs);
    j["final_rhs"] = format_rational(t.final_rhs);
    if (t.virtual_dim) j["virtual_dim"] = *t.virtual_dim;
    j["holds"] = t.holds();
    return j;
}

ordered_json to_json(const ImprovementTable& t) {
    ordered_json j;
    j["p"] = t.p;
    j["params"] = {{"N", t.params.N}, {"k", t.params.k},       {"d", t.params.d},
                   {"alpha", t.params.alpha}, {"beta", t.params.beta}, {"q", t.params.q}};
    j["n"] = t.n;
    ordered_json rows = ordered_json::array();
    for (const BoundEntry& e : t.fr_rows)
        rows.push_back({{"ell", e.ell}, {"value", format_rational(e.value)}});
    j["fr_rows"] = rows;
    j["fr_min"] = format_rational(t.fr_min);
    j["fr_argmin"] = t.fr_argmin;
    j["improved_value"] = format_rational(t.improved_value);
    j["exact_improvement"] = format_rational(t.exact_improvement);
    j["claimed_improvement"] = format_rational(t.claimed_improvement);
    j["matches_claim"] = t.matches_claim;
    j["quoted_reference"] = format_rational(t.quoted_reference);
    j["best_value"] = format_rational(t.best_value);
    j["best_ell"] = t.best_ell;
    j["best_v"] = t.best_v;
    return j;
}

ordered_json gap_to_json(const RedundancyGap& gap, const std::vector<GapReport>& columns) {
    ordered_json j;
    j["delta"] = gap.total;
    ordered_json terms = ordered_json::array();
    for (const auto& [i, jj, value] : gap.terms)
        terms.push_back({{"i", i}, {"j", jj}, {"value", value}});
    j["terms"] = terms;
    ordered_json cols = ordered_json::array();
    for (const GapReport& g : columns) {
        ordered_json c1 = ordered_json::array(), c2 = ordered_json::array();
        for (const auto& [i, value] : g.c1) c1.push_back({{"i", i}, {"value", value}});
        for (const auto& [i, value] : g.c2) c2.push_back({{"i", i}, {"value", value}});
        cols.push_back({{"j", g.j}, {"c1", c1}, {"c2", c2}, {"c3", g.c3}});
    }
    j["columns"] = cols;
    return j;
}

std::string bounds_csv(const BoundReport& rep) {
    std::ostringstream out;
    out << "n,ell,v,source,bound_num,bound_den,slack\n";
    for (const BoundEntry& e : rep.entries)
        out << e.n << ',' << e.ell << ',' << e.v << ',' << e.source << ','
            << e.value.numerator() << ',' << e.value.denominator() << ','
            << format_rational(e.value - rep.min_value) << '\n';
    return out.str();
}

std::string tradeoff_csv(const std::vector<TradeoffRow>& rows) {
    std::ostringstream out;
    out << "beta,fr_min,best_linear\n";
    for (const TradeoffRow& r : rows)
        out << r.beta << ',' << format_rational(r.fr_min) << ',' << format_rational(r.best_linear)
            << '\n';
    return out.str();
}

}  // namespace regen
