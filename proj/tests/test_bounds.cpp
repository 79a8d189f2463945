#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "regen/bounds.hpp"
#include "regen/constructions.hpp"

using namespace regen;

namespace {

std::vector<Ordering> seeded_orderings(const RegenCode& code, int n, int ell, int count,
                                       unsigned seed) {
    std::vector<Ordering> out = {Ordering::identity(code.params().N, n, ell)};
    std::mt19937 rng(seed);
    std::vector<int> perm = out.front().perm;
    for (int t = 0; t < count; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        out.push_back(Ordering{perm, n, ell});
    }
    return out;
}

std::vector<RegenCode> all_families() {
    return {layered(4, 3, 2), layered(4, 3, 3),    rbt_mbr(5, 3),
            rbt_mbr(4, 3, 7), mds_msr(6, 3, 3, 7), replication(4)};
}

}  // namespace

TEST_CASE("orderings label the window suffix") {
    Ordering id = Ordering::identity(5, 4, 2);
    CHECK(id.perm == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(id.node_at(1) == 2);
    CHECK(id.node_at(4) == 5);
    CHECK_THROWS_AS(id.node_at(0), std::invalid_argument);
    CHECK_THROWS_AS(id.node_at(5), std::invalid_argument);

    CodeParams p{5, 3, 4, 4, 1, 11};
    CHECK_NOTHROW(id.validate(p));
    CHECK_THROWS_AS((Ordering{{1, 2, 3, 4}, 4, 2}.validate(p)), std::invalid_argument);
    CHECK_THROWS_AS((Ordering{{1, 2, 2, 4, 5}, 4, 2}.validate(p)), std::invalid_argument);
    CHECK_THROWS_AS((Ordering{{1, 2, 3, 4, 5}, 4, 5}.validate(p)), std::invalid_argument);
    CodeParams small_d{5, 3, 3, 4, 1, 11};
    CHECK_THROWS_WITH_AS((Ordering{{1, 2, 3, 4, 5}, 5, 2}.validate(small_d)),
                         doctest::Contains("exceeds d+1"), std::invalid_argument);
}

TEST_CASE("windowed systems rename nodes by label") {
    RegenCode lay = layered(4, 3, 2);
    Ordering ord{{4, 1, 2, 3}, 3, 2};  // labels 1,2,3 are physical 1,2,3
    VariableSystem sys = windowed_system(lay, ord);
    CHECK(sys.entropy({VarName::node(1)}) == lay.b_of({1}));
    CHECK(sys.entropy({VarName::node(1), VarName::node(2)}) == lay.b_of({1, 2}));
    CHECK(sys.subspace_of(VarName::helper(1, 2)) == lay.helper_space(1, 2));
    CHECK(sys.has(VarName::whole()));
    CHECK_FALSE(sys.has(VarName::node(4)));  // physical 4 fell outside the window

    Ordering shifted{{2, 3, 4, 1}, 4, 4};
    VariableSystem sys2 = windowed_system(lay, shifted);
    CHECK(sys2.entropy({VarName::node(4)}) == lay.b_of({1}));
    CHECK(sys2.subspace_of(VarName::helper(1, 2)) == lay.helper_space(2, 3));
}

TEST_CASE("storage bound values") {
    CodeParams a{4, 3, 3, 3, 2, 2};
    CHECK(fr_bound(a, 4, 0) == Rational(12));  // n*alpha
    CHECK(fr_bound(a, 4, 2) == Rational(8));

    CodeParams wide{8, 4, 6, 4, 1, 2};  // d exceeds the window, repair term active
    CHECK(fr_bound(wide, 4, 2) == Rational(15));

    CHECK_THROWS_AS(fr_bound(a, 4, 5), std::invalid_argument);
    CHECK_THROWS_AS(fr_bound(a, 5, 2), std::invalid_argument);

    SUBCASE("minimum over ell") {
        CodeParams p{4, 3, 3, 2, 1, 2};
        BoundReport rep = fr_bound_min(p, 4);
        std::vector<long long> table = {8, 6, 5, 5, 6};  // hand arithmetic
        REQUIRE(rep.entries.size() == 5);
        for (int ell = 0; ell <= 4; ++ell) {
            CHECK(rep.entries[ell].ell == ell);
            CHECK(rep.entries[ell].value == Rational(table[ell]));
            CHECK(rep.entries[ell].source == "FR");
        }
        CHECK(rep.min_value == Rational(5));
        REQUIRE(rep.argmin.size() == 2);
        CHECK(rep.argmin[0].ell == 2);
        CHECK(rep.argmin[1].ell == 3);
    }
    SUBCASE("huge alpha pushes the argmin to ell = n") {
        CodeParams p{4, 3, 3, 100, 1, 2};
        CHECK(fr_bound_min(p, 4).argmin.front().ell == 4);
    }
}

TEST_CASE("redundancy gap of the helper accounting") {
    RegenCode lay = layered(4, 3, 2);

    SUBCASE("empty below two chained nodes") {
        for (int ell : {0, 1}) {
            RedundancyGap g = redundancy_gap(lay, Ordering::identity(4, 4, ell));
            CHECK(g.total == 0);
            CHECK(g.terms.empty());
        }
    }
    SUBCASE("regression value for the full window") {
        RedundancyGap g = redundancy_gap(lay, Ordering::identity(4, 4, 4));
        CHECK(g.total == 4);
        REQUIRE(g.terms.size() == 6);
        std::map<std::pair<int, int>, std::int64_t> want = {
            {{1, 2}, 0}, {{1, 3}, 0}, {{1, 4}, 0}, {{2, 3}, 1}, {{2, 4}, 1}, {{3, 4}, 2}};
        for (const auto& [i, j, value] : g.terms) CHECK(value == want.at({i, j}));
    }
    SUBCASE("pair-symbol codes have no gap at any ell") {
        RegenCode rbt = rbt_mbr(5, 3);
        for (int ell : {3, 5})
            CHECK(redundancy_gap(rbt, Ordering::identity(5, 5, ell)).total == 0);
        CHECK(redundancy_gap(rbt, Ordering::identity(5, 3, 3)).total == 0);
    }
    SUBCASE("nonnegative under every ordering") {
        for (const RegenCode& code : all_families()) {
            int n = std::min(code.params().N, code.params().d + 1);
            for (const Ordering& ord : seeded_orderings(code, n, n, 5, 11))
                CHECK(redundancy_gap(code, ord).total >= 0);
        }
    }
}

TEST_CASE("direct chain certificates") {
    SUBCASE("layered full window sits at equality") {
        Certificate c = certify_direct(layered(4, 3, 2), Ordering::identity(4, 4, 4));
        CHECK(c.kind == "1");
        REQUIRE(c.chain.size() == 2);
        CHECK(c.chain[0].lhs == Rational(12));
        CHECK(c.chain[0].rhs == Rational(12));
        CHECK(c.chain[1].rhs == Rational(12));
        CHECK(c.holds());
        std::map<std::string, Rational> terms(c.terms.begin(), c.terms.end());
        CHECK(terms.at("B(n)") == Rational(8));
        CHECK(terms.at("gap") == Rational(4));
        CHECK(terms.at("fr") == Rational(12));
    }
    SUBCASE("mbr meets the bound at ell = n = k") {
        Certificate c = certify_direct(rbt_mbr(5, 3), Ordering::identity(5, 3, 3));
        CHECK(c.chain[0].lhs == Rational(9));  // B(3) + 0
        CHECK(c.chain[1].rhs == Rational(9));  // B_3(3)
        CHECK(c.holds());
    }
    SUBCASE("msr meets the bound at ell = 0, n = k") {
        Certificate c = certify_direct(mds_msr(6, 3, 3, 7), Ordering::identity(6, 3, 0));
        CHECK(c.chain[1].slack() == Rational(0));
        CHECK(c.chain[0].lhs == Rational(3));
    }
    SUBCASE("slack is nonnegative across families, windows and orderings") {
        for (const RegenCode& code : all_families()) {
            const CodeParams& p = code.params();
            for (int n = 0; n <= std::min(p.N, p.d + 1); ++n)
                for (int ell = 0; ell <= n; ++ell)
                    for (const Ordering& ord : seeded_orderings(code, n, ell, 3, 23)) {
                        Certificate c = certify_direct(code, ord);
                        CHECK(c.holds());
                    }
        }
    }
}

TEST_CASE("per-column gap breakdown") {
    RegenCode lay = layered(4, 3, 2);
    Ordering full = Ordering::identity(4, 4, 4);

    SUBCASE("j = 1 has no incoming pairs") {
        GapReport g = gap_terms(lay, full, 1);
        CHECK(g.c1.empty());
        CHECK(g.c2.empty());
        CHECK(g.c3 >= 0);
    }
    SUBCASE("all three families vanish on layered codes") {
        for (int j = 1; j <= 4; ++j) {
            GapReport g = gap_terms(lay, full, j);
            for (const auto& [i, value] : g.c1) CHECK(value == 0);
            for (const auto& [i, value] : g.c2) CHECK(value == 0);
            CHECK(g.c3 == 0);
        }
    }
    SUBCASE("nonnegative everywhere else") {
        for (const RegenCode& code : all_families()) {
            int n = std::min(code.params().N, code.params().d + 1);
            Ordering ord = Ordering::identity(code.params().N, n, n);
            for (int j = 1; j <= n; ++j) {
                GapReport g = gap_terms(code, ord, j);
                for (const auto& [i, value] : g.c1) CHECK(value >= 0);
                for (const auto& [i, value] : g.c2) CHECK(value >= 0);
                CHECK(g.c3 >= 0);
            }
        }
    }
    SUBCASE("j outside the chained prefix is rejected") {
        CHECK_THROWS_AS(gap_terms(lay, Ordering::identity(4, 4, 2), 3), std::invalid_argument);
        CHECK_THROWS_AS(gap_terms(lay, full, 0), std::invalid_argument);
    }
}

TEST_CASE("virtual node construction and checks") {
    RegenCode lay = layered(4, 3, 2);
    Ordering full = Ordering::identity(4, 4, 4);

    SUBCASE("chained intersections reach the expected size") {
        auto v = build_virtual_nodes(lay, full, 1);
        REQUIRE(v.size() == 1);
        CHECK(v[0].dim() == 4);  // sum of node dims minus the file size
        CHECK(build_virtual_nodes(lay, full, 0).empty());
    }
    SUBCASE("independent blocks give a zero first virtual") {
        RegenCode mds = mds_msr(6, 3, 3, 7);
        auto v = build_virtual_nodes(mds, Ordering::identity(6, 3, 3), 1);
        CHECK(v[0].dim() == 0);
    }
    SUBCASE("condition holds for constructed virtuals everywhere") {
        for (const RegenCode& code : all_families()) {
            int n = std::min(code.params().N, code.params().d + 1);
            for (int ell = 0; ell <= n; ++ell) {
                Ordering ord = Ordering::identity(code.params().N, n, ell);
                for (int v = 1; v <= 2; ++v) {
                    auto virt = build_virtual_nodes(code, ord, v);
                    CHECK(check_virtual_condition(code, ord, virt).pass());
                    CHECK(virtual_size_check(code, ord, virt).pass());
                }
            }
        }
    }
    SUBCASE("whole space always passes, zero space fails when transfers matter") {
        std::vector<Subspace> whole = {Subspace::full(lay.field(), 8)};
        CHECK(check_virtual_condition(lay, full, whole).pass());
        std::vector<Subspace> zero = {Subspace(lay.field(), 8)};
        CHECK_FALSE(check_virtual_condition(lay, full, zero).pass());
    }
    SUBCASE("size check reports equality on the layered witness") {
        auto v = build_virtual_nodes(lay, full, 1);
        VirtualSizeReport rep = virtual_size_check(lay, full, v);
        REQUIRE(rep.entries.size() == 1);
        CHECK(rep.entries[0].lhs == 4);
        CHECK(rep.entries[0].rhs == Rational(4));  // 1 * min(12, 12 - 8)
        CHECK(rep.pass());
    }
}

TEST_CASE("virtual chain certificates") {
    RegenCode lay = layered(4, 3, 2);
    Ordering full = Ordering::identity(4, 4, 4);

    SUBCASE("v = 0 reduces to the direct middle expression") {
        Certificate direct = certify_direct(lay, full);
        Certificate virt = certify_virtual(lay, full, 0, {});
        CHECK(virt.chain.size() == 1);
        CHECK(virt.chain[0].rhs == direct.chain[0].rhs);
        CHECK(virt.chain[0].lhs == Rational(8));
    }
    SUBCASE("layered witness is tight at v = 1") {
        auto v = build_virtual_nodes(lay, full, 1);
        Certificate c = certify_virtual(lay, full, 1, v);
        CHECK(c.kind == "2");
        CHECK(c.virtual_dims == std::vector<std::int64_t>{4});
        CHECK(c.chain[0].lhs == Rational(16));
        CHECK(c.chain[0].rhs == Rational(16));
        CHECK(c.holds());
    }
    SUBCASE("certification refuses virtuals that break the condition") {
        std::vector<Subspace> zero = {Subspace(lay.field(), 8)};
        CHECK_THROWS_WITH_AS(certify_virtual(lay, full, 1, zero),
                             doctest::Contains("refusing to certify"), PreconditionError);
        CHECK_THROWS_AS(certify_aggregate(lay, full, 1, zero), PreconditionError);
        CHECK_THROWS_AS(certify_virtual(lay, full, 2, zero), std::invalid_argument);
    }
    SUBCASE("holds on every family for v in {1,2}") {
        for (const RegenCode& code : all_families()) {
            int n = std::min(code.params().N, code.params().d + 1);
            for (int ell = 0; ell <= n; ++ell) {
                Ordering ord = Ordering::identity(code.params().N, n, ell);
                for (int v = 1; v <= 2; ++v) {
                    auto virt = build_virtual_nodes(code, ord, v);
                    CHECK(certify_virtual(code, ord, v, virt).holds());
                }
            }
        }
    }
}

TEST_CASE("aggregate certificates") {
    RegenCode lay = layered(4, 3, 2);
    Ordering full = Ordering::identity(4, 4, 4);

    SUBCASE("v = 0 is the storage bound") {
        Certificate c = certify_aggregate(lay, full, 0, {});
        CHECK(c.kind == "cor2");
        CHECK(c.chain[0].lhs == Rational(8));
        CHECK(c.chain[0].rhs == Rational(12));
    }
    SUBCASE("layered witness reaches equality, difference variant included") {
        auto v = build_virtual_nodes(lay, full, 1);
        Certificate c = certify_aggregate(lay, full, 1, v);
        REQUIRE(c.chain.size() == 2);
        CHECK(c.chain[0].label == "aggregate");
        CHECK(c.chain[0].lhs == Rational(16));
        CHECK(c.chain[0].rhs == Rational(16));  // 2*12 + (4 - 12)
        CHECK(c.chain[1].label == "difference");
        CHECK(c.chain[1].holds());
        CHECK(c.holds());
    }
    SUBCASE("holds on every family for v in {1,2}") {
        for (const RegenCode& code : all_families()) {
            int n = std::min(code.params().N, code.params().d + 1);
            for (int ell = 0; ell <= n; ++ell) {
                Ordering ord = Ordering::identity(code.params().N, n, ell);
                for (int v = 1; v <= 2; ++v) {
                    auto virt = build_virtual_nodes(code, ord, v);
                    Certificate c = certify_aggregate(code, ord, v, virt);
                    CHECK(c.chain.size() == 2);
                    CHECK(c.holds());
                }
            }
        }
    }
}

TEST_CASE("closed-form linear bounds") {
    CodeParams thin{4, 3, 3, 2, 1, 2};
    CodeParams thick{4, 3, 3, 3, 2, 2};

    SUBCASE("v = 0 collapses to the storage bound") {
        for (int ell = 0; ell <= 4; ++ell) {
            CHECK(linear_bound(thin, 4, ell, 0) == fr_bound(thin, 4, ell));
            CHECK(linear_bound(thick, 4, ell, 0) == fr_bound(thick, 4, ell));
        }
    }
    SUBCASE("hand-computed values") {
        CHECK(linear_bound(thin, 4, 4, 1) == Rational(14, 3));
        CHECK(linear_bound(thick, 4, 4, 1) == Rational(8));
        CHECK(linear_bound_full(4, 3, 2, 1) == Rational(8));
        CHECK(linear_bound_full(4, 2, 1, 0) == Rational(6));  // C(n,2)*beta
    }
    SUBCASE("full-window form agrees when the window exhausts d+1") {
        for (int n = 3; n <= 6; ++n)
            for (int v = 0; v <= 4; ++v)
                for (int alpha = 1; alpha <= 4; ++alpha)
                    for (int beta = 1; beta <= 4; ++beta) {
                        CodeParams p{n, n - 1, n - 1, alpha, beta, 2};
                        CHECK(linear_bound(p, n, n, v) == linear_bound_full(n, alpha, beta, v));
                    }
    }
    SUBCASE("grid minimization") {
        BoundReport rep = best_linear_bound(thin, 4, 2);
        CHECK(rep.min_value == Rational(14, 3));
        CHECK(rep.argmin.front().ell == 4);
        CHECK(rep.argmin.front().v == 1);
        CHECK(rep.argmin.front().source == "linear");
        bool has_full = false;
        for (const BoundEntry& e : rep.entries) has_full |= e.source == "linear-full";
        CHECK(has_full);

        CHECK(best_linear_bound(thin, 4, 0).min_value == fr_bound_min(thin, 4).min_value);
        Rational prev = best_linear_bound(thin, 4, 0).min_value;
        for (int vmax = 1; vmax <= 5; ++vmax) {
            Rational cur = best_linear_bound(thin, 4, vmax).min_value;
            CHECK(cur <= prev);
            prev = cur;
        }
    }
    SUBCASE("window bounds cap the realized file sizes") {
        for (const RegenCode& code : all_families()) {
            const CodeParams& p = code.params();
            int n = std::min(p.N, p.d + 1);
            std::vector<int> window;
            for (int i = p.N - n + 1; i <= p.N; ++i) window.push_back(i);
            Rational bn(code.b_of(window));
            CHECK(bn <= fr_bound_min(p, n).min_value);
            CHECK(bn <= best_linear_bound(p, n, 4).min_value);
        }
    }
    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(linear_bound(thin, 4, 4, -1), std::invalid_argument);
        CHECK_THROWS_AS(linear_bound_full(0, 1, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(best_linear_bound(thin, 4, -1), std::invalid_argument);
    }
}

TEST_CASE("stationary point of the bound in v") {
    CodeParams thin{4, 3, 3, 2, 1, 2};
    auto v = stationary_v(thin, 4, 4);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(0.8956439237).epsilon(1e-9));
    // integer neighbors bracket the real minimum
    CHECK(linear_bound(thin, 4, 4, 1) < linear_bound(thin, 4, 4, 0));
    CHECK(linear_bound(thin, 4, 4, 1) < linear_bound(thin, 4, 4, 2));

    CHECK_FALSE(stationary_v(thin, 4, 0).has_value());  // flat in v
    CHECK_FALSE(stationary_v(thin, 4, 2).has_value());  // minimized at v = 0
}

TEST_CASE("improvement table for the quadratic family") {
    SUBCASE("p = 2") {
        ImprovementTable t = improvement_table(2);
        CHECK(t.params.k == 4);
        CHECK(t.params.d == 6);
        CHECK(t.n == 4);
        std::vector<long long> table = {16, 15, 15, 16, 18};
        REQUIRE(t.fr_rows.size() == 5);
        for (int ell = 0; ell <= 4; ++ell) CHECK(t.fr_rows[ell].value == Rational(table[ell]));
        CHECK(t.fr_min == Rational(15));
        CHECK(std::count(t.fr_argmin.begin(), t.fr_argmin.end(), 2) == 1);
        CHECK(t.improved_value == Rational(46, 3));
        CHECK(t.exact_improvement == Rational(-1, 3));
        CHECK(t.claimed_improvement == Rational(2, 3));
        CHECK_FALSE(t.matches_claim);
        CHECK(t.quoted_reference == Rational(3, 16));
    }
    SUBCASE("p = 4") {
        ImprovementTable t = improvement_table(4);
        CHECK(t.fr_min == Rational(58));
        CHECK(t.improved_value == Rational(172, 3));
        CHECK(t.exact_improvement == Rational(2, 3));
        CHECK(t.claimed_improvement == Rational(8, 3));
        CHECK_FALSE(t.matches_claim);
        CHECK(std::count(t.fr_argmin.begin(), t.fr_argmin.end(), 4) == 1);
    }
    SUBCASE("p = 1 regresses instead of improving") {
        ImprovementTable t = improvement_table(1);
        CHECK(t.fr_min == Rational(4));
        CHECK(t.exact_improvement == Rational(-1, 3));
        CHECK(t.quoted_reference == Rational(0));
    }
    SUBCASE("claimed and exact improvements never agree") {
        for (int p = 1; p <= 6; ++p) {
            ImprovementTable t = improvement_table(p);
            CHECK_FALSE(t.matches_claim);
            // exact improvement always sits p/2 below the claim
            CHECK(t.claimed_improvement - t.exact_improvement == Rational(p, 2));
            CHECK(t.fr_min == Rational(7LL * p * p + p, 2));
        }
    }
    CHECK_THROWS_AS(improvement_table(0), std::invalid_argument);
}

TEST_CASE("exhaustive ordering search is deterministic") {
    RegenCode lay = layered(4, 3, 2);
    OrderingSearchResult a = worst_case_ordering(lay, 4, 4, SearchObjective::MaxGap);
    OrderingSearchResult b = worst_case_ordering(lay, 4, 4, SearchObjective::MaxGap);
    CHECK(a.ordering.perm == b.ordering.perm);
    CHECK(a.gap_total == 4);  // symmetric code, identity kept as first witness
    CHECK(a.ordering.perm == std::vector<int>{1, 2, 3, 4});
    CHECK(a.certificate.holds());

    OrderingSearchResult c = worst_case_ordering(lay, 4, 4, SearchObjective::MinSlack);
    CHECK(c.min_slack == Rational(0));
    CHECK(c.certificate.holds());

    // a window smaller than N visits each suffix once
    RegenCode rbt = rbt_mbr(5, 3);
    OrderingSearchResult d = worst_case_ordering(rbt, 3, 3, SearchObjective::MinSlack);
    CHECK(d.min_slack == Rational(0));  // meets the bound at ell = n = k
    CHECK(d.gap_total == 0);
}
