#include "regen/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace regen {

namespace {

long long binom2(long long a) { return a < 2 ? 0 : a * (a - 1) / 2; }

VarSet nodes_range(int from, int to, int skip = 0) {
    VarSet out;
    for (int i = from; i <= to; ++i)
        if (i != skip) out.insert(VarName::node(i));
    return out;
}

VarSet helpers_into(int j, int from, int to) {
    VarSet out;
    for (int i = from; i <= to; ++i)
        if (i != j) out.insert(VarName::helper(i, j));
    return out;
}

VarSet virtuals_range(int from, int to) {
    VarSet out;
    for (int u = from; u <= to; ++u) out.insert(VarName::virtual_node(u));
    return out;
}

}  // namespace

Ordering Ordering::identity(int N, int n, int ell) {
    Ordering o;
    o.perm.resize(N);
    for (int i = 0; i < N; ++i) o.perm[i] = i + 1;
    o.n = n;
    o.ell = ell;
    return o;
}

int Ordering::node_at(int label) const {
    if (label < 1 || label > n) throw std::invalid_argument("window label out of range");
    return perm[perm.size() - static_cast<std::size_t>(n) + label - 1];
}

void Ordering::validate(const CodeParams& p) const {
    if (static_cast<int>(perm.size()) != p.N)
        throw std::invalid_argument("ordering must list all " + std::to_string(p.N) + " nodes");
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < p.N; ++i)
        if (sorted[i] != i + 1)
            throw std::invalid_argument("ordering is not a permutation of 1.." +
                                        std::to_string(p.N));
    if (n < 0 || n > p.N) throw std::invalid_argument("window size out of range");
    if (n > p.d + 1)
        throw std::invalid_argument("window size n = " + std::to_string(n) +
                                    " exceeds d+1 = " + std::to_string(p.d + 1));
    if (ell < 0 || ell > n) throw std::invalid_argument("ell must satisfy 0 <= ell <= n");
}

VariableSystem windowed_system(const RegenCode& code, const Ordering& ord) {
    ord.validate(code.params());
    std::size_t ambient = static_cast<std::size_t>(code.file_size());
    VariableSystem sys(code.field(), ambient);
    sys.add_variable(VarName::whole(), Subspace::full(code.field(), ambient));
    for (int i = 1; i <= ord.n; ++i)
        sys.add_variable(VarName::node(i), code.node_space(ord.node_at(i)));
    for (int i = 1; i <= ord.n; ++i)
        for (int j = 1; j <= ord.n; ++j)
            if (i != j)
                sys.add_variable(VarName::helper(i, j),
                                 code.helper_space(ord.node_at(i), ord.node_at(j)));
    return sys;
}

Rational fr_bound(const CodeParams& p, int n, int ell) {
    if (ell < 0 || ell > n) throw std::invalid_argument("ell must satisfy 0 <= ell <= n");
    if (n > p.d + 1)
        throw std::invalid_argument("window size n = " + std::to_string(n) +
                                    " exceeds d+1 = " + std::to_string(p.d + 1));
    long long value = static_cast<long long>(n - ell) * p.alpha + binom2(ell) * p.beta +
                      static_cast<long long>(ell) * (p.d + 1 - n) * p.beta;
    return Rational(value);
}

namespace {

BoundReport finalize_report(std::vector<BoundEntry> entries) {
    BoundReport rep;
    rep.entries = std::move(entries);
    rep.min_value = rep.entries.front().value;
    for (const BoundEntry& e : rep.entries) rep.min_value = std::min(rep.min_value, e.value);
    for (const BoundEntry& e : rep.entries)
        if (e.value == rep.min_value) rep.argmin.push_back(e);
    return rep;
}

}  // namespace

BoundReport fr_bound_min(const CodeParams& p, int n) {
    std::vector<BoundEntry> entries;
    for (int ell = 0; ell <= n; ++ell)
        entries.push_back({n, ell, 0, fr_bound(p, n, ell), "FR"});
    return finalize_report(std::move(entries));
}

RedundancyGap redundancy_gap(const RegenCode& code, const Ordering& ord) {
    VariableSystem sys = windowed_system(code, ord);
    RedundancyGap gap;
    for (int j = 2; j <= ord.ell; ++j)
        for (int i = 1; i < j; ++i) {
            std::int64_t term =
                sys.conditional({VarName::helper(i, j)}, nodes_range(i + 1, ord.n));
            gap.terms.emplace_back(i, j, term);
            gap.total += term;
        }
    return gap;
}

bool Certificate::holds() const {
    for (const Inequality& q : chain)
        if (!q.holds()) return false;
    return true;
}

namespace {

struct MiddleTerms {
    std::int64_t suffix = 0;       // H(W_[ell+1,n])
    std::int64_t helper_sum = 0;   // sum over i < j <= ell of H(S_i_j)
    std::int64_t cond_sum = 0;     // sum over j <= ell of H(W_j | S_[1,n]\j)
    std::int64_t total() const { return suffix + helper_sum + cond_sum; }
};

MiddleTerms middle_terms(const VariableSystem& sys, int n, int ell) {
    MiddleTerms m;
    m.suffix = sys.entropy(nodes_range(ell + 1, n));
    for (int j = 2; j <= ell; ++j)
        for (int i = 1; i < j; ++i) m.helper_sum += sys.entropy({VarName::helper(i, j)});
    for (int j = 1; j <= ell; ++j)
        m.cond_sum += sys.conditional({VarName::node(j)}, helpers_into(j, 1, n));
    return m;
}

}  // namespace

Certificate certify_direct(const RegenCode& code, const Ordering& ord) {
    VariableSystem sys = windowed_system(code, ord);
    std::int64_t bn = sys.entropy(nodes_range(1, ord.n));
    RedundancyGap gap = redundancy_gap(code, ord);
    MiddleTerms mid = middle_terms(sys, ord.n, ord.ell);
    Rational fr = fr_bound(code.params(), ord.n, ord.ell);

    Certificate cert;
    cert.kind = "1";
    cert.n = ord.n;
    cert.ell = ord.ell;
    cert.v = 0;
    cert.perm = ord.perm;
    cert.chain.push_back({"inner", Rational(bn + gap.total), Rational(mid.total())});
    cert.chain.push_back({"outer", Rational(mid.total()), fr});
    cert.terms = {{"B(n)", Rational(bn)},
                  {"gap", Rational(gap.total)},
                  {"suffix", Rational(mid.suffix)},
                  {"helper_sum", Rational(mid.helper_sum)},
                  {"cond_sum", Rational(mid.cond_sum)},
                  {"fr", fr}};
    return cert;
}

GapReport gap_terms(const RegenCode& code, const Ordering& ord, int j) {
    if (j < 1 || j > ord.ell) throw std::invalid_argument("gap terms need 1 <= j <= ell");
    VariableSystem sys = windowed_system(code, ord);
    GapReport rep;
    rep.j = j;
    for (int i = 1; i < j; ++i) {
        VarSet sij = {VarName::helper(i, j)};
        std::int64_t c1 = sys.conditional_mutual(
            sij, nodes_range(i + 1, j - 1),
            set_union(helpers_into(j, i + 1, j - 1), nodes_range(j, ord.n)));
        std::int64_t c2 = sys.mutual_info(
            sij, set_union(helpers_into(j, i + 1, j - 1), nodes_range(j + 1, ord.n)));
        rep.c1.emplace_back(i, c1);
        rep.c2.emplace_back(i, c2);
    }
    rep.c3 = sys.conditional_mutual({VarName::node(j)}, nodes_range(j + 1, ord.n),
                                    helpers_into(j, 1, ord.n));
    return rep;
}

std::vector<Subspace> build_virtual_nodes(const RegenCode& code, const Ordering& ord, int v) {
    ord.validate(code.params());
    if (v < 0) throw std::invalid_argument("virtual count must be >= 0");
    std::size_t ambient = static_cast<std::size_t>(code.file_size());
    std::vector<Subspace> nodes;  // window node spaces by label
    for (int i = 1; i <= ord.n; ++i) nodes.push_back(code.node_space(ord.node_at(i)));

    std::vector<Subspace> virtuals;
    Subspace virtual_span(code.field(), ambient);  // span of V_1..V_{u-1}
    for (int u = 1; u <= v; ++u) {
        // tail[i] spans W_[i+2,n] plus all earlier virtual nodes (0-based i)
        std::vector<Subspace> tails(static_cast<std::size_t>(ord.n), virtual_span);
        for (int i = ord.n - 2; i >= 0; --i)
            tails[i] = span_sum(nodes[i + 1], tails[i + 1]);
        Subspace vu(code.field(), ambient);
        for (int i = 0; i < ord.ell; ++i) vu = span_sum(vu, intersect(nodes[i], tails[i]));
        virtual_span = span_sum(virtual_span, vu);
        virtuals.push_back(std::move(vu));
    }
    return virtuals;
}

namespace {

// Windowed system extended with the supplied virtual-node subspaces.
VariableSystem extended_system(const RegenCode& code, const Ordering& ord,
                               const std::vector<Subspace>& virtuals) {
    VariableSystem sys = windowed_system(code, ord);
    for (std::size_t u = 0; u < virtuals.size(); ++u)
        sys.add_variable(VarName::virtual_node(static_cast<int>(u) + 1), virtuals[u]);
    return sys;
}

}  // namespace

bool VirtualConditionReport::pass() const {
    for (const Entry& e : entries)
        if (!e.ok()) return false;
    return true;
}

VirtualConditionReport check_virtual_condition(const RegenCode& code, const Ordering& ord,
                                               const std::vector<Subspace>& virtuals) {
    VariableSystem sys = extended_system(code, ord, virtuals);
    VirtualConditionReport rep;
    for (int u = 1; u <= static_cast<int>(virtuals.size()); ++u)
        for (int j = 2; j <= ord.ell; ++j)
            for (int i = 1; i < j; ++i) {
                VarSet sij = {VarName::helper(i, j)};
                VarSet tail = set_union(nodes_range(i + 1, ord.n), virtuals_range(1, u - 1));
                rep.entries.push_back({u, i, j,
                                       sys.conditional(sij, {VarName::virtual_node(u)}),
                                       sys.conditional(sij, tail)});
            }
    return rep;
}

bool VirtualSizeReport::pass() const {
    for (const Entry& e : entries)
        if (!e.ok()) return false;
    return true;
}

VirtualSizeReport virtual_size_check(const RegenCode& code, const Ordering& ord,
                                     const std::vector<Subspace>& virtuals) {
    VariableSystem sys = windowed_system(code, ord);
    std::int64_t bn = sys.entropy(nodes_range(1, ord.n));
    long long alpha = code.params().alpha;
    long long cap = std::min<long long>(static_cast<long long>(ord.ell) * alpha,
                                        static_cast<long long>(ord.n) * alpha - bn);
    VirtualSizeReport rep;
    for (std::size_t u = 0; u < virtuals.size(); ++u)
        rep.entries.push_back({static_cast<int>(u) + 1,
                               static_cast<std::int64_t>(virtuals[u].dim()),
                               Rational(static_cast<long long>(u + 1) * cap)});
    return rep;
}

namespace {

void require_virtual_condition(const RegenCode& code, const Ordering& ord,
                               const std::vector<Subspace>& virtuals) {
    VirtualConditionReport cond = check_virtual_condition(code, ord, virtuals);
    for (const auto& e : cond.entries)
        if (!e.ok())
            throw PreconditionError(
                "virtual-node condition fails at u=" + std::to_string(e.u) + ", pair (" +
                std::to_string(e.i) + "," + std::to_string(e.j) + "): H(S|V" +
                std::to_string(e.u) + ") = " + std::to_string(e.lhs) + " > " +
                std::to_string(e.rhs) + "; refusing to certify");
}

}  // namespace

Certificate certify_virtual(const RegenCode& code, const Ordering& ord, int v,
                            const std::vector<Subspace>& virtuals) {
    if (static_cast<int>(virtuals.size()) != v)
        throw std::invalid_argument("expected " + std::to_string(v) + " virtual nodes, got " +
                                    std::to_string(virtuals.size()));
    require_virtual_condition(code, ord, virtuals);

    VariableSystem sys = extended_system(code, ord, virtuals);
    std::int64_t bn = sys.entropy(nodes_range(1, ord.n));
    MiddleTerms mid = middle_terms(sys, ord.n, ord.ell);

    Certificate cert;
    cert.kind = "2";
    cert.n = ord.n;
    cert.ell = ord.ell;
    cert.v = v;
    cert.perm = ord.perm;
    for (const Subspace& s : virtuals)
        cert.virtual_dims.push_back(static_cast<std::int64_t>(s.dim()));

    std::int64_t rhs = mid.total();
    cert.terms = {{"B(n)", Rational(bn)},
                  {"suffix", Rational(mid.suffix)},
                  {"helper_sum", Rational(mid.helper_sum)},
                  {"cond_sum", Rational(mid.cond_sum)}};
    for (int u = 1; u <= v; ++u) {
        VarSet vu = {VarName::virtual_node(u)};
        std::int64_t bracket = mid.suffix + sys.conditional(vu, nodes_range(ord.ell + 1, ord.n));
        for (int j = 1; j <= ord.ell; ++j)
            bracket += sys.conditional({VarName::node(j)},
                                       set_union(helpers_into(j, 1, ord.n), vu));
        cert.terms.emplace_back("bracket_u" + std::to_string(u), Rational(bracket));
        rhs += bracket;
    }
    cert.chain.push_back({"virtual-chain", Rational((1 + v) * bn), Rational(rhs)});
    return cert;
}

Certificate certify_aggregate(const RegenCode& code, const Ordering& ord, int v,
                              const std::vector<Subspace>& virtuals) {
    if (static_cast<int>(virtuals.size()) != v)
        throw std::invalid_argument("expected " + std::to_string(v) + " virtual nodes, got " +
                                    std::to_string(virtuals.size()));
    require_virtual_condition(code, ord, virtuals);

    VariableSystem sys = windowed_system(code, ord);
    std::int64_t bn = sys.entropy(nodes_range(1, ord.n));
    std::int64_t suffix = sys.entropy(nodes_range(ord.ell + 1, ord.n));  // B(n-ell)
    Rational fr = fr_bound(code.params(), ord.n, ord.ell);
    long long pairs_beta = binom2(ord.ell) * code.params().beta;

    Rational virtual_sum(0);
    for (const Subspace& s : virtuals)
        virtual_sum += Rational(static_cast<long long>(s.dim()) - pairs_beta);

    Certificate cert;
    cert.kind = "cor2";
    cert.n = ord.n;
    cert.ell = ord.ell;
    cert.v = v;
    cert.perm = ord.perm;
    for (const Subspace& s : virtuals)
        cert.virtual_dims.push_back(static_cast<std::int64_t>(s.dim()));

    Rational agg_lhs = Rational(v + 1) * bn;
    Rational agg_rhs = Rational(v + 1) * fr + virtual_sum;
    cert.chain.push_back({"aggregate", agg_lhs, agg_rhs});

    Rational diff_lhs = Rational(v + 1) * (bn - suffix);
    Rational diff_rhs =
        Rational(v + 1) * (fr - Rational(static_cast<long long>(ord.n - ord.ell) *
                                         code.params().alpha)) +
        virtual_sum;
    cert.chain.push_back({"difference", diff_lhs, diff_rhs});

    cert.terms = {{"B(n)", Rational(bn)},
                  {"B(n-ell)", Rational(suffix)},
                  {"fr", fr},
                  {"virtual_sum", virtual_sum}};
    return cert;
}

Rational linear_bound(const CodeParams& p, int n, int ell, int v) {
    if (v < 0) throw std::invalid_argument("v must be >= 0");
    Rational fr = fr_bound(p, n, ell);
    Rational num = Rational(v + 1) * fr +
                   Rational(binom2(v + 1) * static_cast<long long>(n) * p.alpha) -
                   Rational(static_cast<long long>(v) * binom2(ell) * p.beta);
    return num / Rational(binom2(v + 2));
}

Rational linear_bound_full(int n, int alpha, int beta, int v) {
    if (v < 0) throw std::invalid_argument("v must be >= 0");
    if (n < 1 || alpha < 1 || beta < 1) throw std::invalid_argument("n, alpha, beta must be >= 1");
    Rational num(binom2(v + 1) * static_cast<long long>(n) * alpha +
                 binom2(n) * static_cast<long long>(beta));
    return num / Rational(binom2(v + 2));
}

BoundReport best_linear_bound(const CodeParams& p, int n, int v_max) {
    if (v_max < 0) throw std::invalid_argument("v_max must be >= 0");
    std::vector<BoundEntry> entries;
    for (int v = 0; v <= v_max; ++v)
        for (int ell = 0; ell <= n; ++ell)
            entries.push_back({n, ell, v, linear_bound(p, n, ell, v), v == 0 ? "FR" : "linear"});
    if (p.d + 1 == n)
        for (int v = 0; v <= v_max; ++v)
            entries.push_back({n, n, v, linear_bound_full(n, p.alpha, p.beta, v), "linear-full"});
    return finalize_report(std::move(entries));
}

std::optional<double> stationary_v(const CodeParams& p, int n, int ell) {
    // d/dv of linear_bound has the sign of a*v^2 + b*v + c with the
    // coefficients below; a sign change from - to + marks the minimum.
    double A = static_cast<double>(n) * p.alpha;
    double Bl = boost::rational_cast<double>(fr_bound(p, n, ell));
    double Cb = static_cast<double>(binom2(ell)) * p.beta;
    double a = A - Bl + Cb, b = 2 * (A - Bl), c = A - Bl - 2 * Cb;

    auto deriv_sign = [&](double x) { return a * x * x + b * x + c; };
    std::vector<double> roots;
    if (a == 0.0) {
        if (b != 0.0) roots.push_back(-c / b);
    } else {
        double disc = b * b - 4 * a * c;
        if (disc < 0) return std::nullopt;
        double s = std::sqrt(disc);
        roots.push_back((-b - s) / (2 * a));
        roots.push_back((-b + s) / (2 * a));
    }
    std::sort(roots.begin(), roots.end());
    for (double r : roots)
        if (r > 0 && deriv_sign(r - 1e-6) < 0 && deriv_sign(r + 1e-6) > 0) return r;
    return std::nullopt;
}

ImprovementTable improvement_table(int p, int v_max) {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    ImprovementTable t;
    t.p = p;
    t.params = CodeParams{3 * p + 1, 2 * p, 3 * p, 2 * p, 1, 2};
    t.params.validate();
    t.n = 2 * p;

    BoundReport fr = fr_bound_min(t.params, t.n);
    t.fr_rows = fr.entries;
    t.fr_min = fr.min_value;
    for (const BoundEntry& e : fr.argmin) t.fr_argmin.push_back(e.ell);

    t.improved_value = linear_bound(t.params, t.n, t.n, 1);
    t.exact_improvement = t.fr_min - t.improved_value;
    t.claimed_improvement = Rational(static_cast<long long>(p) * p, 6);
    t.matches_claim = t.exact_improvement == t.claimed_improvement;
    t.quoted_reference = Rational(static_cast<long long>(p) * p - 1, 16);

    BoundReport best = best_linear_bound(t.params, t.n, v_max);
    t.best_value = best.min_value;
    t.best_ell = best.argmin.front().ell;
    t.best_v = best.argmin.front().v;
    return t;
}

OrderingSearchResult worst_case_ordering(const RegenCode& code, int n, int ell,
                                         SearchObjective objective) {
    const CodeParams& p = code.params();
    if (p.N > 8) throw std::invalid_argument("ordering search is limited to N <= 8");
    std::vector<int> base(p.N);
    for (int i = 0; i < p.N; ++i) base[i] = i + 1;

    std::optional<OrderingSearchResult> best;
    std::vector<int> perm = base;
    std::sort(perm.begin(), perm.end());
    do {
        // the leading N-n entries never enter the window; keep them sorted so
        // each window is visited once
        bool canonical = true;
        for (int i = 1; i < p.N - n; ++i)
            if (perm[i - 1] > perm[i]) canonical = false;
        if (!canonical) continue;

        Ordering ord{perm, n, ell};
        ord.validate(p);
        RedundancyGap gap = redundancy_gap(code, ord);
        Certificate cert = certify_direct(code, ord);
        Rational slack = std::min(cert.chain[0].slack(), cert.chain[1].slack());

        bool better;
        if (!best) {
            better = true;
        } else if (objective == SearchObjective::MaxGap) {
            better = gap.total > best->gap_total ||
                     (gap.total == best->gap_total && slack < best->min_slack);
        } else {
            better = slack < best->min_slack ||
                     (slack == best->min_slack && gap.total > best->gap_total);
        }
        if (better)
            best = OrderingSearchResult{ord, gap.total, slack, cert};
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

bool ProofTranscript::holds() const {
    for (const ProofStep& s : steps)
        if (!s.holds()) return false;
    return final_lhs <= final_rhs;
}

}  // namespace regen
