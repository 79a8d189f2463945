#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracle_util.hpp"
#include "regen/entropy.hpp"

using namespace regen;

namespace {

// Raw generating sets kept alongside the system so oracle checks never go
// through Subspace.
struct RawSystem {
    std::int64_t p = 2;
    std::size_t ambient = 0;
    std::map<VarName, oracle::Mat> gens;  // generators as row vectors
    VariableSystem sys;

    RawSystem(std::int64_t p_, std::size_t ambient_)
        : p(p_), ambient(ambient_), sys(Field(p_), ambient_) {}

    void add(VarName name, const oracle::Mat& rows) {
        gens[name] = rows;
        Matrix m(Field(p), ambient, rows.size());
        for (std::size_t c = 0; c < rows.size(); ++c)
            for (std::size_t r = 0; r < ambient; ++r) m.set(r, c, rows[c][r]);
        sys.add_variable(name, Subspace::from_columns(m));
    }

    std::int64_t oracle_entropy(const VarSet& vars) const {
        oracle::Mat all;
        for (const VarName& v : vars) {
            const oracle::Mat& g = gens.at(v);
            all.insert(all.end(), g.begin(), g.end());
        }
        return static_cast<std::int64_t>(oracle::echelon_rank(all, p));
    }
};

RawSystem random_system(std::int64_t p, std::size_t ambient, int nvars, std::mt19937& rng) {
    RawSystem rs(p, ambient);
    for (int j = 1; j <= nvars; ++j) {
        std::size_t ngens = 1 + rng() % 3;
        oracle::Mat rows(ngens, oracle::Vec(ambient));
        for (auto& row : rows)
            for (auto& x : row) x = static_cast<std::int64_t>(rng() % p);
        rs.add(VarName::node(j), rows);
    }
    return rs;
}

}  // namespace

TEST_CASE("variable names print and parse") {
    CHECK(VarName::whole().to_string() == "M");
    CHECK(VarName::node(3).to_string() == "W3");
    CHECK(VarName::helper(1, 2).to_string() == "S_1_2");
    CHECK(VarName::virtual_node(1).to_string() == "V1");
    for (const char* s : {"M", "W12", "S_4_11", "V2"})
        CHECK(VarName::parse(s).to_string() == s);
    CHECK_THROWS_AS(VarName::parse("W"), std::invalid_argument);
    CHECK_THROWS_AS(VarName::parse("S_1_1"), std::invalid_argument);
    CHECK_THROWS_AS(VarName::parse("X7"), std::invalid_argument);
    CHECK_THROWS_AS(VarName::helper(2, 2), std::invalid_argument);
    CHECK(VarName::node(1) < VarName::node(2));
}

TEST_CASE("entropy basics on a hand-built system") {
    // three coordinate lines and one diagonal in GF(2)^3
    RawSystem rs(2, 3);
    rs.add(VarName::node(1), {{1, 0, 0}});
    rs.add(VarName::node(2), {{0, 1, 0}});
    rs.add(VarName::node(3), {{1, 1, 0}});
    rs.add(VarName::whole(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

    CHECK(rs.sys.entropy({}) == 0);
    CHECK(rs.sys.entropy({VarName::whole()}) == 3);
    CHECK(rs.sys.entropy({VarName::node(1)}) == 1);
    CHECK(rs.sys.entropy({VarName::node(1), VarName::node(2)}) == 2);
    // W3 is inside the span of W1 and W2
    CHECK(rs.sys.conditional({VarName::node(3)}, {VarName::node(1), VarName::node(2)}) == 0);
    CHECK(rs.sys.mutual_info({VarName::node(1)}, {VarName::node(2)}) == 0);
    CHECK(rs.sys.mutual_info({VarName::node(1), VarName::node(2)},
                             {VarName::node(2), VarName::node(3)}) == 2);
    CHECK(rs.sys.conditional({VarName::node(1)}, {VarName::node(1)}) == 0);
    CHECK(rs.sys.conditional({VarName::node(1)}, {}) == 1);
    CHECK_THROWS_AS(rs.sys.entropy({VarName::node(9)}), std::invalid_argument);
}

TEST_CASE("random systems match the span oracle") {
    std::mt19937 rng(20260823);
    for (int trial = 0; trial < 40; ++trial) {
        std::int64_t p = trial % 2 == 0 ? 2 : 3;
        RawSystem rs = random_system(p, 3 + rng() % 4, 4, rng);
        for (int mask = 0; mask < 16; ++mask) {
            VarSet vars;
            for (int j = 0; j < 4; ++j)
                if (mask & (1 << j)) vars.insert(VarName::node(j + 1));
            CHECK(rs.sys.entropy(vars) == rs.oracle_entropy(vars));
            CHECK(rs.sys.entropy(vars) == rs.sys.entropy_nocache(vars));
        }
    }
}

TEST_CASE("monotonicity and submodularity") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        std::int64_t p = trial % 2 == 0 ? 2 : 5;
        RawSystem rs = random_system(p, 4 + rng() % 3, 5, rng);
        VarSet a, b, c;
        for (int j = 1; j <= 5; ++j) {
            if (rng() % 2) a.insert(VarName::node(j));
            if (rng() % 2) b.insert(VarName::node(j));
            if (rng() % 2) c.insert(VarName::node(j));
        }
        CHECK(rs.sys.entropy(set_union(a, b)) >= rs.sys.entropy(a));
        std::int64_t lhs = rs.sys.entropy(set_union(a, c)) + rs.sys.entropy(set_union(b, c));
        std::int64_t rhs = rs.sys.entropy(set_union(set_union(a, b), c)) + rs.sys.entropy(c);
        CHECK(lhs >= rhs);
        CHECK(rs.sys.conditional(a, b) >= 0);
        CHECK(rs.sys.mutual_info(a, b) >= 0);
        CHECK(rs.sys.conditional_mutual(a, b, c) >= 0);
    }
}

TEST_CASE("chain-rule identity on degenerate sequences") {
    RawSystem rs(2, 2);
    rs.add(VarName::node(1), {{1, 0}});

    SUBCASE("single variable") {
        auto rep = exchange_identity_check(rs.sys, {{VarName::node(1)}}, 1);
        CHECK(rep.lhs == 1);
        CHECK(rep.rhs == 1);
    }
    SUBCASE("all positions equal") {
        // both sides vanish for j < n; at j = n the unconditioned head term
        // survives and both sides equal H(X_1)
        std::vector<VarSet> xs(4, VarSet{VarName::node(1)});
        for (int j = 1; j <= 4; ++j) {
            auto rep = exchange_identity_check(rs.sys, xs, j);
            CHECK(rep.holds());
            CHECK(rep.lhs == (j == 4 ? 1 : 0));
        }
    }
    SUBCASE("index out of range") {
        CHECK_THROWS_AS(exchange_identity_check(rs.sys, {{VarName::node(1)}}, 2), std::invalid_argument);
    }
}

TEST_CASE("chain-rule identity on random systems") {
    std::mt19937 rng(8675309);
    for (int trial = 0; trial < 60; ++trial) {
        std::int64_t p = trial % 2 == 0 ? 2 : 3;
        int n = 2 + static_cast<int>(rng() % 5);
        RawSystem rs = random_system(p, 3 + rng() % 5, n, rng);
        std::vector<VarSet> xs;
        for (int i = 1; i <= n; ++i) xs.push_back({VarName::node(i)});
        for (int j = 1; j <= n; ++j) {
            auto rep = exchange_identity_check(rs.sys, xs, j);
            CHECK(rep.holds());
        }
    }
}

TEST_CASE("sequence builder maps positions to transfers then nodes") {
    auto xs = x_sequence(3, 5, 2);
    REQUIRE(xs.size() == 7);
    CHECK(*xs[0].begin() == VarName::helper(1, 3));
    CHECK(*xs[1].begin() == VarName::helper(2, 3));
    CHECK(*xs[2].begin() == VarName::node(3));
    CHECK(*xs[4].begin() == VarName::node(5));
    CHECK(*xs[5].begin() == VarName::virtual_node(1));
    CHECK(*xs[6].begin() == VarName::virtual_node(2));

    auto first = x_sequence(1, 3);
    CHECK(*first[0].begin() == VarName::node(1));
    CHECK_THROWS_AS(x_sequence(4, 3), std::invalid_argument);
}
