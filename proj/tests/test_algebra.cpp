#include <doctest.h>

#include <random>

#include "lrc/error.hpp"
#include "lrc/field.hpp"
#include "lrc/matrix.hpp"
#include "lrc/poly.hpp"
#include "lrc/ratfn.hpp"
#include "support.hpp"

using namespace lrc;
using lrc::testing::fes;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an lrc::Error");
    return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("prime fields")
{
    auto F = Field::make(13, 1);
    CHECK(F->q() == 13);
    CHECK(F->mul(Fe(7), Fe(9)) == Fe(63 % 13));
    CHECK(F->inv(Fe(2)) == Fe(7));
    CHECK(F->div(Fe(1), Fe(5)) == Fe(8));
    CHECK(F->neg(Fe(4)) == Fe(9));
    CHECK(F->from_int(-1) == Fe(12));
    CHECK(F->primitive() == Fe(2));
    CHECK(F->order(Fe(3)) == 3);
    CHECK(F->order(Fe(12)) == 2);
    CHECK(F->pow(Fe(2), 12) == Fe(1));
    CHECK(F->pow(Fe(2), -1) == Fe(7));
    CHECK(code_of([&] { (void)F->inv(Fe(0)); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("GF(256) with the AES modulus matches the published products")
{
    auto F = Field::make(2, 8, std::vector<std::uint32_t>{1, 1, 0, 1, 1, 0, 0, 0, 1});
    CHECK(F->mul(Fe(0x57), Fe(0x83)) == Fe(0xc1));
    CHECK(F->mul(Fe(0x57), Fe(0x13)) == Fe(0xfe));
    CHECK(F->inv(Fe(0x53)) == Fe(0xca));
    CHECK(F->add(Fe(0x57), Fe(0x83)) == Fe(0xd4));
    CHECK(F->mul(Fe(3), Fe(7)) == Fe(9));
}

TEST_CASE("default moduli are the smallest irreducible polynomials")
{
    auto F9 = Field::make(3, 2);
    CHECK(F9->modulus() == std::vector<std::uint32_t>{1, 0, 1});
    // u = 3 encodes the root of u^2 + 1
    CHECK(F9->mul(Fe(3), Fe(3)) == Fe(2));
    CHECK(F9->add(Fe(5), Fe(7)) == Fe(0));  // (2+u) + (1+2u)
    CHECK(F9->add(Fe(5), Fe(5)) == Fe(7));  // 2(2+u) = 1+2u
    auto F64 = Field::make(2, 6);
    CHECK(F64->modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 0, 0, 1});
    CHECK(F64->mul(Fe(32), Fe(2)) == Fe(3));
    CHECK(F64->digits(Fe(37)) == std::vector<std::uint32_t>{1, 0, 1, 0, 0, 1});
    CHECK(F64->from_digits({1, 0, 1, 0, 0, 1}) == Fe(37));
}

TEST_CASE("invalid fields are rejected")
{
    CHECK(code_of([] { (void)Field::make(12, 1); }) == ErrorCode::InvalidField);
    CHECK(code_of([] { (void)Field::make(2, 0); }) == ErrorCode::InvalidField);
    CHECK(code_of([] { (void)Field::make(2, 21); }) == ErrorCode::InvalidField);
    CHECK(code_of([] { (void)Field::make(3, 2, std::vector<std::uint32_t>{2, 0, 1}); }) == ErrorCode::InvalidField);
    CHECK(prime_power(64) == std::pair<std::uint32_t, std::uint32_t>{2, 6});
    CHECK_FALSE(prime_power(12).has_value());
}

TEST_CASE("field axioms on random triples")
{
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {7, 1}, {13, 1}, {3, 2}, {2, 6}, {5, 3}}) {
        auto F = Field::make(p, m);
        std::mt19937_64 rng(p * 100 + m);
        for (int i = 0; i < 2000; ++i) {
            auto v = testing::random_vector(*F, 3, rng);
            Fe a = v[0], b = v[1], c = v[2];
            REQUIRE(F->add(a, b) == F->add(b, a));
            REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            REQUIRE(F->add(a, F->neg(a)) == Fe(0));
            if (!a.is_zero()) {
                REQUIRE(F->mul(a, F->inv(a)) == F->one());
            }
        }
    }
}

TEST_CASE("polynomial arithmetic")
{
    auto F = Field::make(7, 1);
    Poly f(fes({1, 0, 1}));  // x^2 + 1
    Poly g(fes({6, 1}));     // x - 1
    auto [qt, rm] = poly::divmod(*F, f, g);
    CHECK(qt == Poly(fes({1, 1})));
    CHECK(rm == Poly::constant(Fe(2)));
    CHECK(poly::eval(*F, f, Fe(3)) == Fe(3));
    CHECK(poly::gcd(*F, poly::mul(*F, g, g), poly::mul(*F, g, f)) == g);
    CHECK(poly::root_multiplicity(*F, poly::pow(*F, g, 3), Fe(1)) == 3);
    CHECK(Poly(fes({1, 2, 0, 0})).degree() == 1);
    auto L = poly::lagrange_interpolate(*F, {{Fe(0), Fe(1)}, {Fe(1), Fe(2)}, {Fe(2), Fe(5)}});
    CHECK(L == f);
    CHECK(code_of([&] { (void)poly::lagrange_interpolate(*F, {{Fe(1), Fe(1)}, {Fe(1), Fe(2)}}); }) ==
          ErrorCode::DuplicateAbscissa);
    CHECK(poly::compose(*F, f, g) == Poly(fes({2, 5, 1})));
}

TEST_CASE("rational functions: normalization, evaluation and valuations")
{
    auto F = Field::make(13, 1);
    RatFn x = ratfn::x(*F);
    RatFn f = ratfn::div(*F, ratfn::mul(*F, x, x), ratfn::from_poly(*F, Poly(fes({12, 1}))));  // x^2/(x-1)
    CHECK(f.den == Poly(fes({12, 1})));
    CHECK(ratfn::valuation(*F, f, PlaceP1::finite(Fe(0))) == 2);
    CHECK(ratfn::valuation(*F, f, PlaceP1::finite(Fe(1))) == -1);
    CHECK(ratfn::valuation(*F, f, PlaceP1::infinity()) == -1);
    CHECK_FALSE(ratfn::eval(*F, f, PlaceP1::finite(Fe(1))).has_value());
    CHECK(ratfn::eval(*F, f, PlaceP1::finite(Fe(2))) == Fe(4));
    RatFn g = ratfn::make(*F, Poly(fes({1, 0, 3})), Poly(fes({5, 0, 2})));
    CHECK(ratfn::eval(*F, g, PlaceP1::infinity()) == F->div(Fe(3), Fe(2)));
    CHECK(ratfn::eval(*F, ratfn::inv(*F, x), PlaceP1::infinity()) == Fe(0));
    RatFn h = ratfn::div(*F, ratfn::mul(*F, f, g), g);
    CHECK(h == f);
}

TEST_CASE("valuations of split rational functions sum to zero")
{
    auto F = Field::make(13, 1);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> deg(0, 4);
    for (int trial = 0; trial < 100; ++trial) {
        // product of linear factors: every zero and pole is rational
        Poly num = Poly::constant(Fe(1 + trial % 12)), den = Poly::constant(Fe(1));
        int dn = deg(rng), dd = deg(rng);
        for (int i = 0; i < dn; ++i) {
            num = poly::mul(*F, num, Poly({testing::random_vector(*F, 1, rng)[0], Fe(1)}));
        }
        for (int i = 0; i < dd; ++i) {
            den = poly::mul(*F, den, Poly({testing::random_vector(*F, 1, rng)[0], Fe(1)}));
        }
        RatFn f = ratfn::make(*F, num, den);
        int sum = 0;
        for (const auto& P : testing::all_places(*F)) {
            sum += ratfn::valuation(*F, f, P);
        }
        REQUIRE(sum == 0);
    }
}

TEST_CASE("Mobius maps act as a group homomorphism")
{
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto F = Field::make(p, m);
        auto maps = testing::all_mobius(*F);
        CHECK(maps.size() == std::size_t(F->q()) * (F->q() * F->q() - 1));
        auto places = testing::all_places(*F);
        for (const auto& s : maps) {
            for (const auto& t : maps) {
                Mobius st = mobius::compose(*F, s, t);
                for (const auto& P : places) {
                    REQUIRE(mobius::act(*F, st, P) == mobius::act(*F, s, mobius::act(*F, t, P)));
                }
            }
            REQUIRE(mobius::compose(*F, s, mobius::inverse(*F, s)) == mobius::identity());
        }
    }
}

TEST_CASE("Mobius pullback and order")
{
    auto F = Field::make(7, 1);
    Mobius s = mobius::make(*F, Fe(0), Fe(1), Fe(6), Fe(4));  // 1/(4 - x)
    unsigned o = mobius::order(*F, s);
    Mobius acc = mobius::identity();
    for (unsigned i = 0; i < o; ++i) {
        acc = mobius::compose(*F, s, acc);
    }
    CHECK(acc == mobius::identity());
    RatFn x = ratfn::x(*F);
    RatFn f = ratfn::mul(*F, x, x);
    RatFn pb = mobius::pullback(*F, s, f);
    for (const auto& P : testing::all_places(*F)) {
        CHECK(ratfn::eval(*F, pb, P) == ratfn::eval(*F, f, mobius::act(*F, s, P)));
    }
    CHECK(code_of([&] { (void)mobius::make(*F, Fe(1), Fe(2), Fe(2), Fe(4)); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("linear algebra")
{
    auto F = Field::make(13, 1);
    Matrix A = testing::matrix({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
    CHECK(linalg::rank(*F, A) == 2);
    CHECK(linalg::det(*F, A) == Fe(0));
    auto ker = linalg::kernel(*F, A);
    REQUIRE(ker.size() == 1);
    auto img = linalg::mul_vec(*F, A, ker[0]);
    CHECK(img == fes({0, 0, 0}));
    Matrix B = testing::matrix({{2, 1}, {1, 1}});
    CHECK(linalg::det(*F, B) == Fe(1));
    auto x = linalg::solve(*F, B, fes({3, 2}));
    REQUIRE(x.has_value());
    CHECK(*x == fes({1, 1}));
    CHECK_FALSE(linalg::solve(*F, A, fes({1, 1, 1})).has_value());
    CHECK(linalg::subsets(4, 2).size() == 6);
    CHECK(linalg::subsets(4, 2).front() == std::vector<std::size_t>{0, 1});
    Matrix V = testing::matrix({{1, 1}, {1, 2}, {1, 3}, {1, 3}});
    auto bad = linalg::singular_row_subset(*F, V);
    REQUIRE(bad.has_value());
    CHECK(*bad == std::vector<std::size_t>{2, 3});
    CHECK_FALSE(linalg::singular_row_subset(*F, V.select_rows({0, 1, 2})).has_value());
}
