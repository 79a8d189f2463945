#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "regen/field_linalg.hpp"

namespace regen {

/// Name of one random variable in a stored-data system. The whole file is M,
/// node contents are W1..WN, repair transfers are S_i_j (from node i to node
/// j), and adjoined virtual nodes are V1, V2, ...
class VarName {
public:
    enum class Tag { Whole, Node, Helper, Virtual };

    static VarName whole() { return VarName(Tag::Whole, 0, 0); }
    static VarName node(int j);
    static VarName helper(int from, int to);
    static VarName virtual_node(int u);

    Tag tag() const { return tag_; }
    int a() const { return a_; }  // node index, helper source, or virtual index
    int b() const { return b_; }  // helper destination

    std::string to_string() const;
    /// Inverse of to_string; accepts "M", "W3", "S_1_2", "V1".
    static VarName parse(const std::string& text);

    auto operator<=>(const VarName&) const = default;

private:
    VarName(Tag t, int a, int b) : tag_(t), a_(a), b_(b) {}
    Tag tag_;
    int a_, b_;
};

using VarSet = std::set<VarName>;

VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_minus(const VarSet& a, const VarSet& b);

/// A family of named subspaces of a common ambient space, queried through the
/// entropy dictionary: H of a set of variables is the dimension of the sum of
/// their subspaces. All results are exact nonnegative integers.
class VariableSystem {
public:
    VariableSystem(Field f, std::size_t ambient_dim);
    VariableSystem(const VariableSystem& other);
    VariableSystem(VariableSystem&& other) noexcept;
    VariableSystem& operator=(VariableSystem other);

    const Field& field() const { return field_; }
    std::size_t ambient_dim() const { return ambient_; }

    void add_variable(VarName name, Subspace space);
    bool has(const VarName& name) const { return vars_.count(name) > 0; }
    const Subspace& subspace_of(const VarName& name) const;
    std::vector<VarName> names() const;

    /// Joint entropy H(vars) = dim of the span-sum. Memoized.
    std::int64_t entropy(const VarSet& vars) const;
    /// Same value computed without touching the cache.
    std::int64_t entropy_nocache(const VarSet& vars) const;
    /// H(a | b) = H(a ∪ b) − H(b).
    std::int64_t conditional(const VarSet& a, const VarSet& b) const;
    /// I(a ; b) = H(a) + H(b) − H(a ∪ b).
    std::int64_t mutual_info(const VarSet& a, const VarSet& b) const;
    /// I(a ; b | c) = H(a|c) − H(a|b∪c).
    std::int64_t conditional_mutual(const VarSet& a, const VarSet& b, const VarSet& c) const;

    /// Span-sum of the named subspaces as a concrete object.
    Subspace joint_space(const VarSet& vars) const;

private:
    Field field_;
    std::size_t ambient_;
    std::map<VarName, Subspace> vars_;
    mutable std::mutex memo_mutex_;
    mutable std::map<std::vector<VarName>, std::int64_t> memo_;
};

struct ExchangeIdentityReport {
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool holds() const { return lhs == rhs; }
};

/// Evaluates both sides of the chain-rule identity
///   H(X_j|X_[j+1,n]) + Σ_{i<j} H(X_i|X_[i+1,n])
///     = Σ_{i<j} H(X_i|X_[i+1,n]∖j) + H(X_j|X_[1,n]∖j)
/// over the ordered sequence xs (1-based j). The two values agree for every
/// input; both are returned so callers can assert that.
ExchangeIdentityReport exchange_identity_check(const VariableSystem& sys, const std::vector<VarSet>& xs, int j);

/// Ordered sequence X_1..X_{n+virtuals} with X_i = S_i_j for i < j, W_i for
/// j <= i <= n, and V_u for position n+u. Positions are node labels 1..n.
std::vector<VarSet> x_sequence(int j, int n, int virtuals = 0);

}  // namespace regen
