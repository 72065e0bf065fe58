#include <doctest.h>

#include <random>

#include "lrc/code.hpp"
#include "lrc/error.hpp"
#include "lrc/rational.hpp"
#include "support.hpp"

using namespace lrc;
using lrc::testing::fes;

namespace {

// [r+1, r] single-parity code as one repair group.
EvaluatedCode parity_block(FieldPtr F, unsigned r)
{
    EvaluatedCode c;
    c.field = F;
    c.n = r + 1;
    c.k = r;
    c.G = Matrix(r, r + 1);
    RepairGroup g;
    g.L = Matrix(0, r);
    for (unsigned i = 0; i < r; ++i) {
        c.G.at(i, i) = F->one();
        c.G.at(i, r) = F->one();
        std::vector<Fe> row(r, Fe(0));
        row[i] = F->one();
        g.L.append_row(row);
        g.positions.push_back(i);
    }
    g.L.append_row(std::vector<Fe>(r, F->one()));
    g.positions.push_back(r);
    c.groups.push_back(g);
    c.claims = CodeClaims{"parity", r, 2, 2, DistanceKind::Exact, "2", {}};
    return c;
}

// Reed-Solomon: polynomials of degree < k at every element of the field.
EvaluatedCode reed_solomon(FieldPtr F, std::size_t k)
{
    EvaluatedCode c;
    c.field = F;
    c.n = F->q();
    c.k = k;
    c.G = Matrix(k, c.n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::uint32_t x = 0; x < F->q(); ++x) {
            c.G.at(i, x) = F->pow(Fe(x), static_cast<std::int64_t>(i));
        }
    }
    c.claims = CodeClaims{"rs", static_cast<unsigned>(k), 2, static_cast<int>(c.n - k + 1), DistanceKind::Exact, "n-k+1", {}};
    return c;
}

EvaluatedCode hamming_7_4()
{
    EvaluatedCode c;
    c.field = Field::make(2, 1);
    c.n = 7;
    c.k = 4;
    c.G = testing::matrix({{1, 0, 0, 0, 1, 1, 0}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}});
    c.claims = CodeClaims{"hamming", 4, 2, 3, DistanceKind::Exact, "3", {}};
    return c;
}

EvaluatedCode base_code_gf13()
{
    auto plan = rational::make_plan(Field::make(13, 1), rational::Family::Base, rational::SubgroupCase::Multiplicative, 2, 3, 2);
    return rational::build_code(plan);
}

}  // namespace

TEST_CASE("singleton-type bound")
{
    CHECK(singleton_bound(13, 4, 2, 2) == 9);
    CHECK(singleton_bound(8, 4, 2, 3) == 3);
    CHECK(singleton_bound(10, 4, 4, 2) == 7);  // r = k: classical n-k+1
    CHECK_THROWS_AS((void)singleton_bound(10, 4, 5, 2), Error);
    CHECK_THROWS_AS((void)singleton_bound(10, 4, 2, 1), Error);
}

TEST_CASE("exhaustive distance on codes with known distance")
{
    CHECK(min_distance_exhaustive(parity_block(Field::make(13, 1), 2)).d() == 2);
    CHECK(min_distance_exhaustive(hamming_7_4()).d() == 3);
    CHECK(min_distance_exhaustive(reed_solomon(Field::make(7, 1), 3)).d() == 5);
    CHECK(min_distance_exhaustive(reed_solomon(Field::make(2, 3), 2)).d() == 7);
    CHECK(projective_classes(13, 4) == 2380);
    CHECK(projective_classes(7, 6) == 19608);
    auto rep = min_distance_exhaustive(hamming_7_4());
    CHECK(rep.enumerated == 15);
    CHECK(weight(rep.witness) == 3);
    CHECK(encode(hamming_7_4(), rep.witness_message) == rep.witness);
}

TEST_CASE("distance is invariant under row operations and thread count")
{
    auto code = base_code_gf13();
    auto ref = min_distance_exhaustive(code);
    CHECK(ref.d() == 5);
    const Field& F = *code.field;
    EvaluatedCode mixed = code;
    std::mt19937_64 rng(3);
    for (int op = 0; op < 10; ++op) {
        std::size_t i = rng() % code.k, j = rng() % code.k;
        if (i == j) {
            continue;
        }
        Fe s = Fe(1 + static_cast<std::uint32_t>(rng() % 12));
        auto ri = mixed.G.row(i), rj = mixed.G.row(j);
        for (std::size_t c = 0; c < code.n; ++c) {
            ri[c] = F.add(ri[c], F.mul(s, rj[c]));
        }
        mixed.G.set_row(i, ri);
    }
    CHECK(min_distance_exhaustive(mixed).d() == ref.d());
    auto par = min_distance_exhaustive(code, kDefaultBudget, 4);
    CHECK(par.d() == ref.d());
    CHECK(par.witness_message == ref.witness_message);
    CHECK(par.enumerated == ref.enumerated);
}

TEST_CASE("budget and bounded mode")
{
    auto code = base_code_gf13();
    CHECK_THROWS_AS((void)min_distance_exhaustive(code, 100), Error);
    auto a = min_distance_bounded(code, 200, 42);
    auto b = min_distance_bounded(code, 200, 42);
    CHECK(a.upper == b.upper);
    CHECK(a.witness_message == b.witness_message);
    CHECK(a.lower <= a.upper);
    CHECK(a.lower_is_claimed);
    CHECK(a.upper >= 5);
    CHECK(weight(a.witness) == static_cast<std::size_t>(a.upper));
    // structured probes find the minimum on this small code
    CHECK(a.upper == 5);
}

TEST_CASE("classification and claims")
{
    auto code = base_code_gf13();
    auto rep = min_distance_exhaustive(code);
    auto cls = classify_code(code, rep);
    CHECK(cls.verdict == Classification::Verdict::Optimal);
    CHECK(cls.text == "optimal, d = 5 = bound");
    CHECK(check_claim(code.claims, rep) == ClaimStatus::Holds);
    CodeClaims lower = code.claims;
    lower.d_kind = DistanceKind::LowerBound;
    lower.design_d = 6;
    CHECK(check_claim(lower, rep) == ClaimStatus::Refuted);
    CodeClaims upper = lower;
    upper.d_kind = DistanceKind::UpperBound;
    CHECK(check_claim(upper, rep) == ClaimStatus::Holds);
    auto bounded = min_distance_bounded(code, 10, 1);
    auto bcls = classify_code(code, bounded);
    CHECK(bcls.verdict == Classification::Verdict::OptimalConsistent);
    CHECK(check_claim(code.claims, bounded) == ClaimStatus::Undetermined);

    auto h = hamming_7_4();
    auto hrep = min_distance_exhaustive(h);
    // r = k = 4: classical Singleton 4 > 3
    auto hc = classify_code(h, hrep);
    CHECK(hc.verdict == Classification::Verdict::Gap);
    CHECK(hc.gap == 1);
}

TEST_CASE("locality report")
{
    auto code = base_code_gf13();
    auto loc = verify_locality(code);
    CHECK(loc.ok);
    REQUIRE(loc.groups.size() == 3);
    for (const auto& g : loc.groups) {
        CHECK(g.block_distance == 2);
        CHECK(g.consistent);
        CHECK_FALSE(g.singular_rows.has_value());
    }
    for (auto s : loc.recovery_size) {
        CHECK(s == 2);
    }
    // negative control: zero one row of L
    EvaluatedCode bad = code;
    bad.groups[1].L.set_row(0, {Fe(0), Fe(0)});
    auto bl = verify_locality(bad);
    CHECK_FALSE(bl.ok);
    CHECK_FALSE(bl.groups[1].consistent);
    CHECK(bl.groups[1].singular_rows.has_value());
    // negative control: a position in no group
    EvaluatedCode orphan = code;
    orphan.groups[2].positions.pop_back();
    orphan.groups[2].L = orphan.groups[2].L.select_rows({0, 1});
    CHECK_FALSE(verify_locality(orphan).partition_ok);
}

TEST_CASE("repair")
{
    auto code = base_code_gf13();
    std::mt19937_64 rng(9);
    auto msg = testing::random_vector(*code.field, code.k, rng);
    auto word = encode(code, msg);
    auto damaged = word;
    damaged[4] = Fe(0);
    auto res = repair(code, damaged, {4});
    CHECK(res.word == word);
    CHECK(res.group == 1);
    CHECK(res.recovery_set == std::vector<std::size_t>{3, 5});
    CHECK_THROWS_AS((void)repair(code, damaged, {0, 4}), Error);
    try {
        (void)repair(code, damaged, {0, 4});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CrossBlockErasure);
    }
    try {
        (void)repair(code, damaged, {3, 4});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooManyErasures);
    }
    auto rt = testing::repair_round_trip(code, 100, 5, 1);
    CHECK(rt.patterns == 9);
    CHECK(rt.failures == 0);
}

TEST_CASE("generator rank and structure audit")
{
    auto code = base_code_gf13();
    CHECK(generator_rank(code) == 4);
    EvaluatedCode c = parity_block(Field::make(5, 1), 3);
    audit_structure(c);
    for (const auto& chk : c.log) {
        CHECK_MESSAGE(chk.passed, chk.name);
    }
}
