#include "regen/bounds.hpp"

#include <numeric>

namespace regen {

namespace {

VarName W(int j) { return VarName::node(j); }
VarName S(int i, int j) { return VarName::helper(i, j); }

VarSet nodes_from(int from) {
    VarSet out;
    for (int i = from; i <= 4; ++i) out.insert(W(i));
    return out;
}

// Each step records one displayed inequality of the derivation; all of them
// are re-evaluated on the given code, so a transcript holds only if every
// line holds.
struct Builder {
    VariableSystem sys;
    ProofTranscript out;

    std::int64_t H(const VarSet& a) const { return sys.entropy(a); }
    std::int64_t C(const VarSet& a, const VarSet& b) const { return sys.conditional(a, b); }

    void step(std::string desc, Rational lhs, Rational rhs, bool equality = false) {
        out.steps.push_back({std::move(desc), lhs, rhs, equality});
    }

    std::int64_t sum_nodes() const {
        std::int64_t t = 0;
        for (int j = 1; j <= 4; ++j) t += H({W(j)});
        return t;
    }
    std::int64_t sum_helpers() const {
        std::int64_t t = 0;
        for (int j = 2; j <= 4; ++j)
            for (int i = 1; i < j; ++i) t += H({S(i, j)});
        return t;
    }
};

void proof_one(Builder& b, std::int64_t B) {
    b.step("B <= H(W4|W3 S_1_2) + H(W3 S_1_2); W3, W4 and S_1_2 repair W2, then three nodes give M",
           Rational(B), Rational(b.C({W(4)}, {W(3), S(1, 2)}) + b.H({W(3), S(1, 2)})));
    b.step("B <= H(W4|S_3_4) + H(W3 S_1_2); the conditioning set determines S_3_4",
           Rational(B), Rational(b.C({W(4)}, {S(3, 4)}) + b.H({W(3), S(1, 2)})));
    b.step("B <= H(S_2_3|W1 S_2_4 S_3_4) + H(W1 S_2_4 S_3_4); the joint set repairs W4, then W3, then gives M",
           Rational(B),
           Rational(b.C({S(2, 3)}, {W(1), S(2, 4), S(3, 4)}) + b.H({W(1), S(2, 4), S(3, 4)})));
    b.step("B <= H(S_2_3|W4 S_3_4) + H(W1 S_2_4) + H(S_3_4); determined conditioning set, then subadditivity",
           Rational(B),
           Rational(b.C({S(2, 3)}, {W(4), S(3, 4)}) + b.H({W(1), S(2, 4)}) + b.H({S(3, 4)})));
    b.step("B <= H(S_1_3|W2 S_1_4 S_3_4) + H(W2 S_1_4 S_3_4); the joint set repairs W4, then W3, then gives M",
           Rational(B),
           Rational(b.C({S(1, 3)}, {W(2), S(1, 4), S(3, 4)}) + b.H({W(2), S(1, 4), S(3, 4)})));
    b.step("B <= H(S_1_3|S_2_3 W4 S_3_4) + H(W2 S_1_4 S_3_4); the conditioning set determines S_2_3, W4, S_3_4",
           Rational(B),
           Rational(b.C({S(1, 3)}, {S(2, 3), W(4), S(3, 4)}) + b.H({W(2), S(1, 4), S(3, 4)})));
    b.step("3B <= H(S_1_3 S_2_3 W4 S_3_4) + H(W3 S_1_2) + H(W1 S_2_4) + H(W2 S_1_4 S_3_4); chain rule joins the three conditionals",
           Rational(3 * B),
           Rational(b.H({S(1, 3), S(2, 3), W(4), S(3, 4)}) + b.H({W(3), S(1, 2)}) +
                    b.H({W(1), S(2, 4)}) + b.H({W(2), S(1, 4), S(3, 4)})));
    b.step("H(S_1_3 S_2_3 W4 S_3_4) = H(S_1_3 S_2_3 W4); S_1_3, S_2_3 and W4 repair W3, which holds S_3_4",
           Rational(b.H({S(1, 3), S(2, 3), W(4), S(3, 4)})),
           Rational(b.H({S(1, 3), S(2, 3), W(4)})), true);
    b.step("3B <= sum H(W_j) + sum H(S_i_j); subadditivity, every node and helper used once",
           Rational(3 * B), Rational(b.sum_nodes() + b.sum_helpers()));
}

void proof_two(Builder& b, std::int64_t B) {
    b.step("B <= H(W3 W4) + H(S_1_2); W3, W4 and S_1_2 repair W2, then three nodes give M",
           Rational(B), Rational(b.H({W(3), W(4)}) + b.H({S(1, 2)})));
    b.step("B <= H(S_2_3 S_2_4) + H(W1 S_3_4); the joint set repairs W4, then W3, then gives M",
           Rational(B), Rational(b.H({S(2, 3), S(2, 4)}) + b.H({W(1), S(3, 4)})));
    b.step("B <= H(W3 W4|W2) + H(W2); three nodes give M, chain rule",
           Rational(B), Rational(b.C({W(3), W(4)}, {W(2)}) + b.H({W(2)})));
    b.step("B <= H(W3 W4|S_2_3 S_2_4) + H(W2); W2 determines its own transfers",
           Rational(B), Rational(b.C({W(3), W(4)}, {S(2, 3), S(2, 4)}) + b.H({W(2)})));
    b.step("3B <= H(W3 W4 S_2_3 S_2_4) + H(W3 W4) + H(S_1_2) + H(W1 S_3_4) + H(W2); chain rule joins the transfers",
           Rational(3 * B),
           Rational(b.H({W(3), W(4), S(2, 3), S(2, 4)}) + b.H({W(3), W(4)}) + b.H({S(1, 2)}) +
                    b.H({W(1), S(3, 4)}) + b.H({W(2)})));
    b.step("3B <= H(W3 W4 S_2_3) + H(W3 W4 S_2_4) + H(S_1_2) + H(W1 S_3_4) + H(W2); submodularity on the shared pair W3, W4",
           Rational(3 * B),
           Rational(b.H({W(3), W(4), S(2, 3)}) + b.H({W(3), W(4), S(2, 4)}) + b.H({S(1, 2)}) +
                    b.H({W(1), S(3, 4)}) + b.H({W(2)})));
    b.step("3B <= H(W4 S_1_3 S_2_3) + H(W3 S_1_4 S_2_4) + H(S_1_2) + H(W1 S_3_4) + H(W2); each triple repairs the dropped node",
           Rational(3 * B),
           Rational(b.H({W(4), S(1, 3), S(2, 3)}) + b.H({W(3), S(1, 4), S(2, 4)}) +
                    b.H({S(1, 2)}) + b.H({W(1), S(3, 4)}) + b.H({W(2)})));
    b.step("3B <= sum H(W_j) + sum H(S_i_j); subadditivity, every node and helper used once",
           Rational(3 * B), Rational(b.sum_nodes() + b.sum_helpers()));
}

void proof_three(Builder& b, const RegenCode& code, std::int64_t B) {
    // V1 spans the chained intersections W_j with the span of the later nodes
    Subspace v1(code.field(), static_cast<std::size_t>(code.file_size()));
    for (int j = 1; j <= 3; ++j) {
        Subspace tail(code.field(), v1.ambient_dim());
        for (int i = j + 1; i <= 4; ++i) tail = span_sum(tail, code.node_space(i));
        v1 = span_sum(v1, intersect(code.node_space(j), tail));
    }
    b.sys.add_variable(VarName::virtual_node(1), v1);
    b.out.virtual_dim = static_cast<std::int64_t>(v1.dim());
    const VarSet V1 = {VarName::virtual_node(1)};

    auto cond_sum = [&](const VarSet& extra) {
        std::int64_t t = 0;
        for (int j = 2; j <= 4; ++j)
            for (int i = 1; i < j; ++i)
                t += b.C({S(i, j)}, set_union(nodes_from(i + 1), extra));
        return t;
    };
    auto helper_sum_given = [&](const VarSet& given) {
        std::int64_t t = 0;
        for (int j = 2; j <= 4; ++j)
            for (int i = 1; i < j; ++i) t += b.C({S(i, j)}, given);
        return t;
    };

    std::int64_t h14 = b.H(nodes_from(1));
    b.step("H(W_[1,4]) + sum H(S_i_j|W_[i+1,4]) <= sum H(S_i_j); window accounting, repair conditionals vanish",
           Rational(h14 + cond_sum({})), Rational(b.sum_helpers()));
    b.step("H(W_[1,4]|V1) + sum H(S_i_j|W_[i+1,4] V1) <= sum H(S_i_j|V1); the same accounting conditioned on V1",
           Rational(b.C(nodes_from(1), V1) + cond_sum(V1)),
           Rational(helper_sum_given(V1)));
    for (int j = 2; j <= 4; ++j)
        for (int i = 1; i < j; ++i)
            b.step("H(S_" + std::to_string(i) + "_" + std::to_string(j) + "|V1) <= H(S_" +
                       std::to_string(i) + "_" + std::to_string(j) + "|W_[" +
                       std::to_string(i + 1) + ",4]); the transfer meets W_[" +
                       std::to_string(i + 1) + ",4] inside V1",
                   Rational(b.C({S(i, j)}, V1)),
                   Rational(b.C({S(i, j)}, nodes_from(i + 1))));
    b.step("B + H(W_[1,4]|V1) <= B + sum H(S_i_j|V1); drop the nonnegative conditionals",
           Rational(B + b.C(nodes_from(1), V1)), Rational(B + helper_sum_given(V1)));
    b.step("H(W_[1,4]) + sum H(S_i_j|V1) <= sum H(S_i_j); per-pair comparisons feed the first line",
           Rational(h14 + helper_sum_given(V1)), Rational(b.sum_helpers()));
    b.step("H(V1) <= sum H(W_j) - H(W_[1,4]); the intersections telescope by modularity",
           Rational(b.H(V1)), Rational(b.sum_nodes() - h14));
    b.step("3B <= sum H(W_j) + sum H(S_i_j); add the last three lines, H(W_[1,4]) = B",
           Rational(3 * B), Rational(b.sum_nodes() + b.sum_helpers()));
}

}  // namespace

ProofTranscript proofs433_check(const RegenCode& code, int proof_id) {
    const CodeParams& p = code.params();
    if (p.N != 4 || p.k != 3 || p.d != 3)
        throw std::invalid_argument("proof transcripts require a code with N=4, k=3, d=3");
    if (proof_id < 1 || proof_id > 3)
        throw std::invalid_argument("proof id must be 1, 2 or 3");

    Builder b{code.to_variable_system(), {}};
    b.out.proof_id = proof_id;
    std::int64_t B = code.file_size();

    if (proof_id == 1)
        proof_one(b, B);
    else if (proof_id == 2)
        proof_two(b, B);
    else
        proof_three(b, code, B);

    b.out.final_lhs = Rational(3 * B);
    b.out.final_rhs = Rational(b.sum_nodes() + b.sum_helpers());
    return b.out;
}

}  // namespace regen
