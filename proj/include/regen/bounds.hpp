#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "regen/code_model.hpp"
#include "regen/rational.hpp"

namespace regen {

/// Thrown when a certificate's machine-checked hypothesis fails; the
/// certificate is refused rather than stamped.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A window over the node set. The last n entries of perm receive labels
/// 1..n and all bound formulas index nodes by label; ell of the labeled
/// nodes (labels 1..ell) play the repaired-node role. Shrinking the window
/// drops low labels, so the data on labels [m+1, n] is the size-(n-m)
/// suffix quantity.
struct Ordering {
    std::vector<int> perm;  // permutation of 1..N
    int n = 0;
    int ell = 0;

    static Ordering identity(int N, int n, int ell);

    /// Physical node behind label i, 1 <= i <= n.
    int node_at(int label) const;

    /// Throws std::invalid_argument unless perm permutes [1,N],
    /// 0 <= ell <= n <= N and n <= d+1.
    void validate(const CodeParams& p) const;
};

/// The code's variable system renamed by window label: Node(i) holds the
/// space of node_at(i) and Helper(i,j) the transfer between the labeled
/// nodes. Nodes outside the window are absent.
VariableSystem windowed_system(const RegenCode& code, const Ordering& ord);

/// Functional-repair bound (n-ell)*alpha + C(ell,2)*beta + ell*(d+1-n)*beta
/// on the data held by n nodes. Requires 0 <= ell <= n <= d+1.
Rational fr_bound(const CodeParams& p, int n, int ell);

struct BoundEntry {
    int n = 0, ell = 0, v = 0;
    Rational value;
    std::string source;  // "FR", "linear", or "linear-full"
};

struct BoundReport {
    std::vector<BoundEntry> entries;
    Rational min_value;
    std::vector<BoundEntry> argmin;
};

/// FR bound minimized over ell in [0, n].
BoundReport fr_bound_min(const CodeParams& p, int n);

/// Total redundant helper information sum of H(S_i_j | W_[i+1,n]) over
/// 1 <= i < j <= ell, with the per-pair terms.
struct RedundancyGap {
    std::int64_t total = 0;
    std::vector<std::tuple<int, int, std::int64_t>> terms;  // (i, j, value) by label
};
RedundancyGap redundancy_gap(const RegenCode& code, const Ordering& ord);

struct Inequality {
    std::string label;
    Rational lhs, rhs;
    Rational slack() const { return rhs - lhs; }
    bool holds() const { return lhs <= rhs; }
};

struct Certificate {
    std::string kind;  // "1", "2", or "cor2" as on the command line
    int n = 0, ell = 0, v = 0;
    std::vector<int> perm;
    std::vector<std::int64_t> virtual_dims;
    std::vector<Inequality> chain;
    std::vector<std::pair<std::string, Rational>> terms;
    bool holds() const;
};

/// Certifies the two-step chain
///   B(n) + gap <= H(W_[ell+1,n]) + sum H(S_i_j) + sum H(W_j | S_[1,n]\j)
///              <= FR bound,
/// which holds unconditionally on verified codes; a violation signals a bug.
Certificate certify_direct(const RegenCode& code, const Ordering& ord);

/// The three per-pair gap families swallowed when the exchange identity is
/// relaxed to the direct chain: c1 and c2 are indexed by i < j, c3 by j.
struct GapReport {
    int j = 0;
    std::vector<std::pair<int, std::int64_t>> c1;
    std::vector<std::pair<int, std::int64_t>> c2;
    std::int64_t c3 = 0;
};
GapReport gap_terms(const RegenCode& code, const Ordering& ord, int j);

/// Virtual nodes collecting helper overlap: iteratively the span over
/// i <= ell of W_i intersected with the span of everything after i,
/// including earlier virtual nodes. All live in the ambient B-dim space.
std::vector<Subspace> build_virtual_nodes(const RegenCode& code, const Ordering& ord, int v);

/// Per (u, i, j) check that conditioning on virtual node u tells at least as
/// much about S_i_j as the tail W_[i+1, n+u-1] does:
///   H(S_i_j | V_u) <= H(S_i_j | W_[i+1,n+u-1]).
struct VirtualConditionReport {
    struct Entry {
        int u = 0, i = 0, j = 0;
        std::int64_t lhs = 0, rhs = 0;
        bool ok() const { return lhs <= rhs; }
    };
    std::vector<Entry> entries;
    bool pass() const;
};
VirtualConditionReport check_virtual_condition(const RegenCode& code, const Ordering& ord,
                                               const std::vector<Subspace>& virtuals);

/// Size bound H(V_u) <= u * min(ell*alpha, n*alpha - B(n)) for virtual nodes
/// built from node-block intersections.
struct VirtualSizeReport {
    struct Entry {
        int u = 0;
        std::int64_t lhs = 0;
        Rational rhs;
        bool ok() const { return Rational(lhs) <= rhs; }
    };
    std::vector<Entry> entries;
    bool pass() const;
};
VirtualSizeReport virtual_size_check(const RegenCode& code, const Ordering& ord,
                                     const std::vector<Subspace>& virtuals);

/// Certifies (1+v) B(n) <= RHS where the RHS augments the direct chain with
/// one bracket per virtual node. Checks the virtual-node condition first and
/// throws PreconditionError instead of certifying when it fails.
Certificate certify_virtual(const RegenCode& code, const Ordering& ord, int v,
                            const std::vector<Subspace>& virtuals);

/// Certifies the aggregated form
///   (v+1) B(n) <= (v+1) FR + sum_u (H(V_u) - C(ell,2) beta)
/// together with its difference variant
///   (v+1) (B(n) - B(n-ell)) <= (v+1) (FR - (n-ell) alpha) + same sum.
/// Same precondition handling as certify_virtual.
Certificate certify_aggregate(const RegenCode& code, const Ordering& ord, int v,
                              const std::vector<Subspace>& virtuals);

/// Closed-form bound for linear codes:
///   [(v+1) FR(n,ell) + C(v+1,2) n alpha - v C(ell,2) beta] / C(v+2,2).
/// v = 0 reduces to the FR bound.
Rational linear_bound(const CodeParams& p, int n, int ell, int v);

/// linear_bound at ell = n in the n = k+1 = d+1 regime, where the
/// ell*(d+1-n)*beta term vanishes:
///   [C(v+1,2) n alpha + C(n,2) beta] / C(v+2,2).
Rational linear_bound_full(int n, int alpha, int beta, int v);

/// Grid minimum of linear_bound over ell in [0,n], v in [0,v_max]; v = 0
/// rows carry source "FR", the full-window closed form is added as
/// "linear-full" when d+1 = n. Never exceeds fr_bound_min.
BoundReport best_linear_bound(const CodeParams& p, int n, int v_max);

/// Real-valued v minimizing linear_bound for fixed (n, ell), when a finite
/// positive stationary point exists. Diagnostic only; the grid search uses
/// integer v.
std::optional<double> stationary_v(const CodeParams& p, int n, int ell);

/// Bound comparison for the family (k, d, alpha, beta) = (2p, 3p, 2p, 1) at
/// window n = k: the FR table with its minimum (7p^2+p)/2, the improved
/// linear bound at ell = n, v = 1, and the exact improvement next to the
/// (p^2)/6 figure often quoted for it, flagged when they differ. The
/// (p^2-1)/16 figure for a different refinement is carried as a quoted
/// reference only, never recomputed.
struct ImprovementTable {
    int p = 0;
    CodeParams params;
    int n = 0;
    std::vector<BoundEntry> fr_rows;
    Rational fr_min;
    std::vector<int> fr_argmin;
    Rational improved_value;
    Rational exact_improvement;   // fr_min - improved_value
    Rational claimed_improvement; // p^2/6
    bool matches_claim = false;
    Rational quoted_reference;    // (p^2-1)/16
    Rational best_value;          // grid minimum up to v_max
    int best_ell = 0, best_v = 0;
};
ImprovementTable improvement_table(int p, int v_max = 8);

/// Exhaustive window search (all ordered n-tuples of nodes; N <= 8) for the
/// ordering maximizing the redundancy gap or minimizing certificate slack.
enum class SearchObjective { MaxGap, MinSlack };
struct OrderingSearchResult {
    Ordering ordering;
    std::int64_t gap_total = 0;
    Rational min_slack;
    Certificate certificate;
};
OrderingSearchResult worst_case_ordering(const RegenCode& code, int n, int ell,
                                         SearchObjective objective);

/// One step of a replayed proof chain; equality steps must have zero slack.
struct ProofStep {
    std::string description;
    Rational lhs, rhs;
    bool equality = false;
    Rational slack() const { return rhs - lhs; }
    bool holds() const { return equality ? lhs == rhs : lhs <= rhs; }
};

/// Replay of one of the three recorded outer-bound arguments for codes with
/// (N,k,d) = (4,3,3), ending in 3B <= sum H(W_j) + sum H(S_i_j).
struct ProofTranscript {
    int proof_id = 0;
    std::vector<ProofStep> steps;
    Rational final_lhs, final_rhs;
    std::optional<std::int64_t> virtual_dim;  // proof 3's adjoined space
    bool holds() const;
};
ProofTranscript proofs433_check(const RegenCode& code, int proof_id);

}  // namespace regen
