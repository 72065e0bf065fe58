#include <doctest.h>

#include <set>

#include "lrc/error.hpp"
#include "lrc/rational.hpp"
#include "support.hpp"

using namespace lrc;
using namespace lrc::rational;

namespace {

std::set<unsigned> rs_where(std::uint32_t p, std::uint32_t m, bool (*pred)(const RConditions&))
{
    std::set<unsigned> out;
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
    }
    for (unsigned r = 1; r <= q; ++r) {
        if (pred(r_conditions(p, m, r))) {
            out.insert(r);
        }
    }
    return out;
}

std::string violation(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("locality conditions")
{
    auto cyc7 = rs_where(7, 1, [](const RConditions& c) { return c.cyclic; });
    CHECK(cyc7 == std::set<unsigned>{1, 3, 7});
    auto mult13 = rs_where(13, 1, [](const RConditions& c) { return c.multiplicative; });
    CHECK(mult13 == std::set<unsigned>{1, 2, 3, 5, 11});
    auto any64 = rs_where(2, 6, [](const RConditions& c) { return c.any_affine() || c.cyclic; });
    for (unsigned r : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 11u, 12u, 13u, 15u, 17u, 20u}) {
        CHECK_MESSAGE(any64.count(r), r);
    }
    CHECK_FALSE(any64.count(9));
    CHECK_FALSE(any64.count(10));
    CHECK(max_s(Family::ExtendOne, 64, 3) == 14);
    CHECK(max_s(Family::ModExtendOne, 64, 4) == 13);
    CHECK(max_s(Family::Base, 13, 2) == 3);
}

TEST_CASE("parameter validation names the violated condition")
{
    CHECK(validate_params(Family::ExtendOne, 13, 1, 2, 3, 2).ok);
    auto msg = violation([] { require_params(Family::ExtendOne, 13, 1, 2, 4, 2); });
    CHECK(msg.find("s <= floor((q+1-2r)/(r+1))") != std::string::npos);
    CHECK_FALSE(validate_params(Family::ModExtendOne, 13, 1, 2, 2, 1).ok);
    CHECK_FALSE(validate_params(Family::RLOne, 13, 1, 1, 3, 1).ok);
    CHECK_FALSE(validate_params(Family::Base, 13, 1, 2, 3, 4).ok);
}

TEST_CASE("subgroups of the projective line")
{
    auto F13 = Field::make(13, 1);
    auto G = find_subgroup(SubgroupCase::Multiplicative, *F13, 2);
    REQUIRE(G.order() == 3);
    CHECK(is_group(*F13, G));
    CHECK(G.elements[0] == mobius::identity());
    std::set<std::uint32_t> scalars;
    for (const auto& s : G.elements) {
        CHECK(s.b.is_zero());
        CHECK(s.c.is_zero());
        scalars.insert(F13->div(s.a, s.d).v);
    }
    CHECK(scalars == std::set<std::uint32_t>{1, 3, 9});

    auto F9 = Field::make(3, 2);
    auto A = find_subgroup(SubgroupCase::Additive, *F9, 2);
    CHECK(A.order() == 3);
    CHECK(is_group(*F9, A));
    auto S = find_subgroup(SubgroupCase::Semidirect, *F9, 5);
    CHECK(S.order() == 6);
    CHECK(is_group(*F9, S));

    auto F7 = Field::make(7, 1);
    auto [a, b] = irreducible_quadratic(*F7);
    CHECK(a == Fe(1));
    CHECK(b == Fe(3));
    CHECK(mobius::order(*F7, quadratic_map(*F7, a, b)) == 8);
    auto C = find_subgroup(SubgroupCase::CyclicQPlus1, *F7, 3);
    CHECK(C.order() == 4);
    CHECK(is_group(*F7, C));
    CHECK_THROWS_AS((void)find_subgroup(SubgroupCase::Multiplicative, *F13, 4), Error);
}

TEST_CASE("invariant function and orbit partition")
{
    auto F = Field::make(13, 1);
    auto G = find_subgroup(SubgroupCase::Multiplicative, *F, 2);
    RatFn w = invariant_function(*F, G);
    CHECK(w == ratfn::from_poly(*F, Poly::monomial(Fe(1), 3)));
    for (const auto& s : G.elements) {
        CHECK(mobius::pullback(*F, s, w) == w);
    }
    auto part = orbit_partition(*F, G, w, 3, false);
    REQUIRE(part.blocks.size() == 3);
    auto enc = [&](const std::vector<PlaceP1>& b) {
        std::vector<std::uint32_t> v;
        for (const auto& P : b) {
            v.push_back(P.encode(13));
        }
        return v;
    };
    CHECK(enc(part.blocks[0]) == std::vector<std::uint32_t>{1, 3, 9});
    CHECK(enc(part.blocks[1]) == std::vector<std::uint32_t>{2, 5, 6});
    CHECK(enc(part.blocks[2]) == std::vector<std::uint32_t>{4, 10, 12});
    CHECK(part.free_orbits == 4);
    CHECK(part.ramified_places == 2);
    CHECK_THROWS_AS((void)orbit_partition(*F, G, w, 5, false), Error);
}

TEST_CASE("basis invariance, block constancy and rank for every family")
{
    struct Case {
        FieldPtr F;
        Family f;
        SubgroupCase c;
        unsigned r, s, t;
    };
    auto F13 = Field::make(13, 1);
    auto F7 = Field::make(7, 1);
    auto F9 = Field::make(3, 2);
    std::vector<Case> cases{
        {F13, Family::Base, SubgroupCase::Multiplicative, 2, 3, 2},
        {F13, Family::ExtendOne, SubgroupCase::Multiplicative, 2, 3, 2},
        {F13, Family::ExtendAll, SubgroupCase::Multiplicative, 2, 2, 2},
        {F13, Family::RLOne, SubgroupCase::Multiplicative, 2, 3, 2},
        {F13, Family::RLAll, SubgroupCase::Multiplicative, 2, 3, 2},
        {F7, Family::ModExtendOne, SubgroupCase::CyclicQPlus1, 3, 2, 2},
        {F7, Family::ModExtendAll, SubgroupCase::CyclicQPlus1, 3, 2, 1},
        {F9, Family::Base, SubgroupCase::Additive, 2, 2, 2},
    };
    for (const auto& cs : cases) {
        CAPTURE(to_string(cs.f));
        auto plan = make_plan(cs.F, cs.f, cs.c, cs.r, cs.s, cs.t);
        const Field& F = *cs.F;
        for (const auto& fj : plan.basis.f) {
            for (const auto& s : plan.group.elements) {
                CHECK(mobius::pullback(F, s, fj) == fj);
            }
            for (const auto& blk : plan.partition.blocks) {
                Value v0 = ratfn::eval(F, fj, blk.front());
                for (const auto& P : blk) {
                    CHECK(ratfn::eval(F, fj, P) == v0);
                }
            }
        }
        auto code = build_code(plan);
        FamilyParams fp = family_params(cs.f, cs.r, cs.s, cs.t);
        CHECK(code.n == fp.n);
        CHECK(code.k == cs.r * cs.t);
        CHECK(generator_rank(code) == code.k);
        for (const auto& chk : code.log) {
            if (chk.name == "parameters match the family formula" || chk.name == "generator rank" ||
                chk.name == "all modified evaluations finite") {
                CHECK_MESSAGE(chk.passed, chk.name);
            }
        }
    }
}

TEST_CASE("family parameter formulas")
{
    auto fp = family_params(Family::ExtendOne, 3, 14, 5);
    CHECK(fp.n == 57);
    CHECK(fp.k == 15);
    CHECK(fp.d == 59 - 20);
    auto mp = family_params(Family::ModExtendOne, 4, 13, 2);
    CHECK(mp.n == 66);
    CHECK(mp.d == 68 - 10);
    auto ea = family_params(Family::ExtendAll, 2, 2, 2);
    CHECK(ea.n == 8);
    CHECK(ea.d == 3);
    CHECK(ea.kind == DistanceKind::Exact);
    CHECK(ea.delta == 3);
    auto rl = family_params(Family::RLOne, 2, 3, 2);
    CHECK(rl.n == 11);
    CHECK(rl.d == 6);
    CHECK(rl.kind == DistanceKind::LowerBound);
}

TEST_CASE("modified extend-one reaches length q+2 with finite evaluations")
{
    auto plan = make_plan(Field::make(7, 1), Family::ModExtendOne, SubgroupCase::CyclicQPlus1, 3, 2, 2);
    auto code = build_code(plan);
    CHECK(code.n == 9);
    CHECK(code.k == 6);
    bool seen = false;
    for (const auto& chk : code.log) {
        if (chk.name == "all modified evaluations finite") {
            seen = true;
            CHECK(chk.passed);
        }
    }
    CHECK(seen);
}

TEST_CASE("extend-all repairs every within-block pair")
{
    auto plan = make_plan(Field::make(13, 1), Family::ExtendAll, SubgroupCase::Multiplicative, 2, 2, 2);
    auto code = build_code(plan);
    auto loc = verify_locality(code);
    CHECK(loc.ok);
    for (const auto& g : loc.groups) {
        CHECK(g.block_distance >= 3);
    }
    auto rt = testing::repair_round_trip(code, 100, 11, 2);
    CHECK(rt.failures == 0);
    CHECK(rt.patterns == 2 * (4 + 6));
}

TEST_CASE("Roth-Lempel case-4 predicate")
{
    auto F = Field::make(13, 1);
    std::vector<PlaceP1> block{PlaceP1::finite(Fe(1)), PlaceP1::finite(Fe(3)), PlaceP1::finite(Fe(9))};
    CHECK_FALSE(rl_case4_subset(*F, block, 2).has_value());  // r-1 = 1 element equal to zero: none
    std::vector<PlaceP1> with_zero{PlaceP1::finite(Fe(0)), PlaceP1::finite(Fe(3)), PlaceP1::finite(Fe(9))};
    auto sub = rl_case4_subset(*F, with_zero, 2);
    REQUIRE(sub.has_value());
    CHECK(*sub == std::vector<Fe>{Fe(0)});
    auto plan = make_plan(F, Family::RLOne, SubgroupCase::Multiplicative, 2, 3, 2);
    auto code = build_code(plan);
    bool noted = false;
    for (const auto& n : code.claims.notes) {
        noted = noted || n.find("case-4 predicate") != std::string::npos;
    }
    CHECK(noted);
}
