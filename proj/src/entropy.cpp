#include "regen/entropy.hpp"

#include <algorithm>
#include <stdexcept>

namespace regen {

VarName VarName::node(int j) {
    if (j < 1) throw std::invalid_argument("node index must be >= 1");
    return VarName(Tag::Node, j, 0);
}

VarName VarName::helper(int from, int to) {
    if (from < 1 || to < 1) throw std::invalid_argument("helper indices must be >= 1");
    if (from == to) throw std::invalid_argument("helper endpoints must differ");
    return VarName(Tag::Helper, from, to);
}

VarName VarName::virtual_node(int u) {
    if (u < 1) throw std::invalid_argument("virtual index must be >= 1");
    return VarName(Tag::Virtual, u, 0);
}

std::string VarName::to_string() const {
    switch (tag_) {
        case Tag::Whole: return "M";
        case Tag::Node: return "W" + std::to_string(a_);
        case Tag::Helper: return "S_" + std::to_string(a_) + "_" + std::to_string(b_);
        case Tag::Virtual: return "V" + std::to_string(a_);
    }
    throw std::logic_error("unreachable");
}

VarName VarName::parse(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("unrecognized variable name: " + text); };
    if (text == "M") return whole();
    if (text.size() >= 2 && (text[0] == 'W' || text[0] == 'V')) {
        int idx = 0;
        for (std::size_t i = 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
            idx = idx * 10 + (text[i] - '0');
        }
        if (idx < 1) throw bad();
        return text[0] == 'W' ? node(idx) : virtual_node(idx);
    }
    if (text.size() >= 5 && text.rfind("S_", 0) == 0) {
        std::size_t sep = text.find('_', 2);
        if (sep == std::string::npos || sep == 2 || sep + 1 >= text.size()) throw bad();
        int from = 0, to = 0;
        for (std::size_t i = 2; i < sep; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
            from = from * 10 + (text[i] - '0');
        }
        for (std::size_t i = sep + 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
            to = to * 10 + (text[i] - '0');
        }
        if (from < 1 || to < 1 || from == to) throw bad();
        return helper(from, to);
    }
    throw bad();
}

VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

VarSet set_minus(const VarSet& a, const VarSet& b) {
    VarSet out;
    for (const VarName& v : a)
        if (!b.count(v)) out.insert(v);
    return out;
}

VariableSystem::VariableSystem(Field f, std::size_t ambient_dim)
    : field_(f), ambient_(ambient_dim) {}

VariableSystem::VariableSystem(const VariableSystem& other)
    : field_(other.field_), ambient_(other.ambient_) {
    std::lock_guard<std::mutex> lock(other.memo_mutex_);
    vars_ = other.vars_;
    memo_ = other.memo_;
}

VariableSystem::VariableSystem(VariableSystem&& other) noexcept
    : field_(other.field_), ambient_(other.ambient_) {
    std::lock_guard<std::mutex> lock(other.memo_mutex_);
    vars_ = std::move(other.vars_);
    memo_ = std::move(other.memo_);
}

VariableSystem& VariableSystem::operator=(VariableSystem other) {
    field_ = other.field_;
    ambient_ = other.ambient_;
    vars_ = std::move(other.vars_);
    memo_ = std::move(other.memo_);
    return *this;
}

void VariableSystem::add_variable(VarName name, Subspace space) {
    if (space.ambient_dim() != ambient_)
        throw std::invalid_argument("subspace ambient dimension mismatch for " + name.to_string());
    vars_.insert_or_assign(name, std::move(space));
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.clear();
}

const Subspace& VariableSystem::subspace_of(const VarName& name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) throw std::invalid_argument("unknown variable: " + name.to_string());
    return it->second;
}

std::vector<VarName> VariableSystem::names() const {
    std::vector<VarName> out;
    out.reserve(vars_.size());
    for (const auto& [name, space] : vars_) out.push_back(name);
    return out;
}

Subspace VariableSystem::joint_space(const VarSet& vars) const {
    Subspace acc(field_, ambient_);
    for (const VarName& v : vars) acc = span_sum(acc, subspace_of(v));
    return acc;
}

std::int64_t VariableSystem::entropy_nocache(const VarSet& vars) const {
    return static_cast<std::int64_t>(joint_space(vars).dim());
}

std::int64_t VariableSystem::entropy(const VarSet& vars) const {
    std::vector<VarName> key(vars.begin(), vars.end());
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    std::int64_t value = entropy_nocache(vars);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(std::move(key), value);
    return value;
}

std::int64_t VariableSystem::conditional(const VarSet& a, const VarSet& b) const {
    return entropy(set_union(a, b)) - entropy(b);
}

std::int64_t VariableSystem::mutual_info(const VarSet& a, const VarSet& b) const {
    return entropy(a) + entropy(b) - entropy(set_union(a, b));
}

std::int64_t VariableSystem::conditional_mutual(const VarSet& a, const VarSet& b,
                                                const VarSet& c) const {
    return conditional(a, c) - conditional(a, set_union(b, c));
}

namespace {

// Union of xs[from-1 .. to-1] (1-based, inclusive), skipping position skip.
VarSet range_union(const std::vector<VarSet>& xs, int from, int to, int skip = 0) {
    VarSet out;
    for (int i = from; i <= to; ++i) {
        if (i == skip) continue;
        out = set_union(out, xs[static_cast<std::size_t>(i) - 1]);
    }
    return out;
}

}  // namespace

ExchangeIdentityReport exchange_identity_check(const VariableSystem& sys, const std::vector<VarSet>& xs, int j) {
    int n = static_cast<int>(xs.size());
    if (j < 1 || j > n) throw std::invalid_argument("sequence index out of range");
    ExchangeIdentityReport rep;
    rep.lhs = sys.conditional(xs[j - 1], range_union(xs, j + 1, n));
    for (int i = 1; i < j; ++i)
        rep.lhs += sys.conditional(xs[i - 1], range_union(xs, i + 1, n));
    for (int i = 1; i < j; ++i)
        rep.rhs += sys.conditional(xs[i - 1], range_union(xs, i + 1, n, j));
    rep.rhs += sys.conditional(xs[j - 1], range_union(xs, 1, n, j));
    return rep;
}

std::vector<VarSet> x_sequence(int j, int n, int virtuals) {
    if (n < 1 || j < 1 || j > n) throw std::invalid_argument("sequence index out of range");
    if (virtuals < 0) throw std::invalid_argument("virtual count must be >= 0");
    std::vector<VarSet> xs;
    xs.reserve(static_cast<std::size_t>(n + virtuals));
    for (int i = 1; i <= n; ++i)
        xs.push_back({i < j ? VarName::helper(i, j) : VarName::node(i)});
    for (int u = 1; u <= virtuals; ++u) xs.push_back({VarName::virtual_node(u)});
    return xs;
}

}  // namespace regen
