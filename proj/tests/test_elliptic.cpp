#include <doctest.h>

#include <set>

#include "lrc/elliptic.hpp"
#include "lrc/error.hpp"
#include "support.hpp"

using namespace lrc;
using namespace lrc::elliptic;

namespace {

struct Setup {
    FieldPtr F = Field::make(13, 1);
    Curve E;
    std::vector<Pt> pts;

    explicit Setup(std::uint32_t a6)
    {
        E = make_curve(*F, Fe(0), Fe(0), Fe(0), Fe(0), Fe(a6));
        pts = enumerate_points(*F, E);
    }
};

Recipe zeta3()
{
    Recipe r;
    r.kind = Recipe::Kind::Zeta3;
    r.zeta = Fe(3);
    return r;
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("group law")
{
    Setup A(2);
    CHECK(A.pts.size() == 19);
    CHECK(A.pts.back() == Pt::O());
    Setup B(1);
    CHECK(B.pts.size() == 12);
    const Field& F = *A.F;
    for (const auto& P : A.pts) {
        CHECK(on_curve(F, A.E, P));
        CHECK(add(F, A.E, P, neg(F, A.E, P)) == Pt::O());
        CHECK(add(F, A.E, P, Pt::O()) == P);
        CHECK(smul(F, A.E, 19, P) == Pt::O());
    }
    for (std::size_t i = 0; i < A.pts.size(); i += 3) {
        for (std::size_t j = 1; j < A.pts.size(); j += 4) {
            for (std::size_t k = 2; k < A.pts.size(); k += 5) {
                const auto &P = A.pts[i], &Q = A.pts[j], &R = A.pts[k];
                CHECK(add(F, A.E, add(F, A.E, P, Q), R) == add(F, A.E, P, add(F, A.E, Q, R)));
                CHECK(add(F, A.E, P, Q) == add(F, A.E, Q, P));
            }
        }
    }
    std::set<std::uint64_t> orders;
    for (const auto& P : B.pts) {
        orders.insert(point_order(F, B.E, P));
    }
    CHECK(orders.count(1));
    CHECK(orders.count(2));
    CHECK(*orders.rbegin() <= 12);
}

TEST_CASE("curve validation")
{
    auto F = Field::make(13, 1);
    CHECK(code_of([&] { (void)make_curve(*F, Fe(0), Fe(0), Fe(0), Fe(0), Fe(0)); }) == ErrorCode::InvalidCurve);
    CHECK(discriminant(*F, make_curve(*F, Fe(0), Fe(0), Fe(0), Fe(0), Fe(2))) != Fe(0));
}

TEST_CASE("valuations of coordinate functions")
{
    Setup A(2);
    const Field& F = *A.F;
    CHECK(fn::valuation(F, A.E, fn::x(F), Pt::O()) == -2);
    CHECK(fn::valuation(F, A.E, fn::y(F), Pt::O()) == -3);
    for (const auto& P : A.pts) {
        if (P.inf) {
            continue;
        }
        CurveFn lx = fn::sub(F, fn::x(F), fn::constant(F, P.x));
        int total = 0;
        for (const auto& Q : A.pts) {
            total += fn::valuation(F, A.E, lx, Q);
        }
        CHECK(total == 0);
        int expect = P.y.is_zero() ? 2 : 1;
        CHECK(fn::valuation(F, A.E, lx, P) == expect);
        CurveFn ly = fn::sub(F, fn::y(F), fn::constant(F, P.y));
        CHECK(fn::valuation(F, A.E, ly, Pt::O()) == -3);
        CHECK(fn::eval(F, A.E, ly, P) == Value(Fe(0)));
    }
    CHECK(code_of([&] { (void)fn::valuation(F, A.E, fn::constant(F, Fe(0)), Pt::O()); }) == ErrorCode::ZeroFunction);
}

TEST_CASE("Riemann-Roch spaces")
{
    Setup A(2);
    const Field& F = *A.F;
    for (int n = 1; n <= 6; ++n) {
        Divisor D;
        add_to(D, Pt::O(), n);
        auto L = rr_basis(F, A.E, D, A.pts);
        CHECK(L.size() == std::size_t(n));
        for (const auto& f : L) {
            CHECK(fn::valuation(F, A.E, f, Pt::O()) >= -n);
            for (const auto& P : A.pts) {
                if (!P.inf) {
                    CHECK(fn::eval(F, A.E, f, P).has_value());
                }
            }
        }
    }
    Divisor D;
    add_to(D, Pt::O(), 2);
    add_to(D, A.pts[0], 1);
    add_to(D, A.pts[3], 2);
    CHECK(degree(D) == 5);
    auto L = rr_basis(F, A.E, D, A.pts);
    CHECK(L.size() == 5);
    for (const auto& f : L) {
        for (const auto& P : A.pts) {
            int need = D.count(P) ? -D.at(P) : 0;
            if (!fn::is_zero(f)) {
                CHECK(fn::valuation(F, A.E, f, P) >= need);
            }
        }
    }
}

TEST_CASE("automorphism recipes")
{
    Setup A(2);
    const Field& F = *A.F;
    Recipe neg_r;
    auto G2 = make_subgroup(F, A.E, A.pts, neg_r);
    CHECK(G2.size() == 2);
    auto G3 = make_subgroup(F, A.E, A.pts, zeta3());
    CHECK(G3.size() == 3);
    for (const auto& g : G3) {
        CHECK(g.perm[A.pts.size() - 1] == A.pts.size() - 1);
    }

    Setup B(1);
    Recipe dih;
    dih.kind = Recipe::Kind::Dihedral;
    dih.m = 3;
    auto D6 = make_subgroup(F, B.E, B.pts, dih);
    CHECK(D6.size() == 6);

    Recipe ex;
    ex.kind = Recipe::Kind::Explicit;
    ex.order = 2;
    ex.maps.push_back({fn::x(F), fn::scale(F, fn::y(F), F.neg(Fe(1)))});
    auto Gx = make_subgroup(F, A.E, A.pts, ex);
    REQUIRE(Gx.size() == 2);
    std::set<std::vector<std::size_t>> a, b;
    for (const auto& g : Gx) {
        a.insert(g.perm);
    }
    for (const auto& g : G2) {
        b.insert(g.perm);
    }
    CHECK(a == b);

    Recipe bad = zeta3();
    bad.zeta = Fe(1);
    CHECK(code_of([&] { (void)make_subgroup(F, A.E, A.pts, bad); }) == ErrorCode::RecipeInapplicable);
    auto E2 = make_curve(F, Fe(0), Fe(0), Fe(0), Fe(1), Fe(2));
    auto p2 = enumerate_points(F, E2);
    CHECK(code_of([&] { (void)make_subgroup(F, E2, p2, zeta3()); }) == ErrorCode::RecipeInapplicable);
    Recipe wrong = ex;
    wrong.order = 3;
    CHECK(code_of([&] { (void)make_subgroup(F, A.E, A.pts, wrong); }) == ErrorCode::RecipeInapplicable);
}

TEST_CASE("orbit partition and free-orbit count")
{
    Setup A(2);
    auto G = make_subgroup(*A.F, A.E, A.pts, zeta3());
    auto part = orbit_partition_curve(G, A.pts, 3);
    CHECK(part.free_orbits == 6);
    CHECK(part.orbit_bound == 3);
    CHECK(part.pole_block.size() == 3);
    CHECK(part.blocks.size() == 3);
    CHECK(code_of([&] { (void)orbit_partition_curve(G, A.pts, 6); }) == ErrorCode::NotEnoughFreeOrbits);
}

TEST_CASE("separating functions on y^2 = x^3 + 2")
{
    auto F = Field::make(13, 1);
    auto E = make_curve(*F, Fe(0), Fe(0), Fe(0), Fe(0), Fe(2));
    auto plan = make_plan(F, Family::EExtendOne, E, zeta3(), 3, 2);
    const Field& K = *F;
    CurveFn one = fn::constant(K, Fe(1));
    CurveFn y4 = fn::sub(K, fn::y(K), fn::constant(K, Fe(4)));
    CurveFn y9 = fn::sub(K, fn::y(K), fn::constant(K, Fe(9)));
    CHECK(plan.z == fn::div(K, E, one, y4));
    CHECK(plan.zhat == fn::div(K, E, y9, y4));
    for (const auto& g : plan.group) {
        for (std::size_t i = 0; i < plan.points.size(); ++i) {
            CHECK(fn::eval(K, E, plan.z, plan.points[i]) == fn::eval(K, E, plan.z, plan.points[g.perm[i]]));
        }
    }
    REQUIRE(plan.omegas.size() == plan.r);
    CHECK(plan.omegas[0] == one);
}

TEST_CASE("elliptic codes have the claimed shape")
{
    auto F = Field::make(13, 1);
    auto E = make_curve(*F, Fe(0), Fe(0), Fe(0), Fe(0), Fe(2));
    struct Case {
        Family f;
        unsigned s, t;
        std::size_t n, k;
        unsigned delta;
    };
    for (auto cs : {Case{Family::EBase, 3, 2, 9, 3, 2}, Case{Family::EExtendOne, 3, 2, 10, 3, 2},
                    Case{Family::EExtendAll, 2, 2, 8, 3, 3}, Case{Family::EExtendAll, 3, 3, 12, 5, 3}}) {
        CAPTURE(to_string(cs.f));
        auto plan = make_plan(F, cs.f, E, zeta3(), cs.s, cs.t);
        auto code = build_code(plan);
        CHECK(code.n == cs.n);
        CHECK(code.k == cs.k);
        CHECK(generator_rank(code) == cs.k);
        CHECK(code.claims.delta == cs.delta);
        auto loc = verify_locality(code);
        CHECK(loc.ok);
        for (const auto& chk : code.log) {
            CHECK_MESSAGE(chk.passed, std::string(chk.name + ": " + chk.detail));
        }
        auto rt = testing::repair_round_trip(code, 20, 5, cs.delta - 1);
        CHECK(rt.failures == 0);
    }
}
