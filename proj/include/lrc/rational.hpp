#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/ratfn.hpp"

namespace lrc::rational {

enum class Family { Base, ExtendOne, ExtendAll, RLOne, RLAll, ModExtendOne, ModExtendAll };
enum class SubgroupCase { Multiplicative, Additive, Semidirect, CyclicQPlus1 };

const char* to_string(Family f);
const char* to_string(SubgroupCase c);
std::optional<Family> family_from_string(const std::string& s);
std::optional<SubgroupCase> case_from_string(const std::string& s);
bool is_modified(Family f);

// Which r-conditions hold for q = p^m.
struct RConditions {
    bool additive = false;        // r + 1 = p^v
    bool multiplicative = false;  // (r + 1) | (q - 1)
    bool semidirect = false;      // r + 1 = u p^v, u | (q - 1), u > 1, v > 0
    bool cyclic = false;          // (r + 1) | (q + 1)
    bool any_affine() const { return additive || multiplicative || semidirect; }
};

RConditions r_conditions(std::uint32_t p, std::uint32_t m, unsigned r);
// Largest s admitted for the family, floor((q+1-2r)/(r+1)) or (q+1)/(r+1).
int max_s(Family f, std::uint32_t q, unsigned r);

FamilyParams family_params(Family f, unsigned r, unsigned s, unsigned t);

struct ParamReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> satisfied;
};

ParamReport validate_params(Family f, std::uint32_t p, std::uint32_t m, unsigned r, unsigned s, unsigned t);
// Throws ParamViolation naming the first violated condition.
void require_params(Family f, std::uint32_t p, std::uint32_t m, unsigned r, unsigned s, unsigned t);

struct AutSubgroup {
    std::vector<Mobius> elements;  // identity first
    std::size_t order() const { return elements.size(); }
};

// Smallest (a, b) with X^2 + aX + b irreducible and x -> 1/(-bx - a) of order q + 1.
std::pair<Fe, Fe> irreducible_quadratic(const Field& F);
Mobius quadratic_map(const Field& F, Fe a, Fe b);

// Throws NoSubgroupFound.
AutSubgroup find_subgroup(SubgroupCase c, const Field& F, unsigned r);
// Exhaustive closure / inverse check.
bool is_group(const Field& F, const AutSubgroup& G);

// Throws NoInvariantFound.
RatFn invariant_function(const Field& F, const AutSubgroup& G);

struct BlockPartition {
    std::vector<std::vector<PlaceP1>> blocks;
    // w(Q_u); Infinity when the block is the pole orbit of w.
    std::vector<PlaceP1> labels;
    // Free orbits not selected (for diagnostics).
    std::size_t free_orbits = 0;
    std::size_t ramified_places = 0;
};

// Free orbits sorted by smallest member; Infinity-containing orbits skipped unless allow_infinity.
// Throws NotEnoughFreeOrbits.
BlockPartition orbit_partition(const Field& F, const AutSubgroup& G, const RatFn& w, unsigned s, bool allow_infinity);

enum class BasisVariant { Default, Strict };

struct FunctionBasis {
    std::vector<RatFn> f;
    std::optional<std::size_t> vanishing_block;
    std::vector<int> degree_profile;
};

// f_j = w^(j-1), or the vanishing-block basis for block u.
FunctionBasis build_basis(const Field& F, const RatFn& w, const BlockPartition& part, unsigned t,
                          std::optional<std::size_t> vanishing_block, BasisVariant variant = BasisVariant::Default);

struct PlanOptions {
    BasisVariant basis = BasisVariant::Default;
};

struct Modifier {
    std::size_t position;
    RatFn multiplier;
    int exponent;
};

struct RationalCodePlan {
    Family family = Family::Base;
    FieldPtr field;
    unsigned r = 0, s = 0, t = 0;
    SubgroupCase sub_case = SubgroupCase::Multiplicative;
    AutSubgroup group;
    RatFn w;
    BlockPartition partition;
    RatFn z;
    FunctionBasis basis;
    std::vector<Modifier> modifiers;
    PlanOptions options;
    std::vector<Check> log;

    // Flat index of a_{i,j}, i in [0, r), j in [1, t].
    std::size_t message_index(unsigned i, unsigned j) const { return std::size_t(i) * t + (j - 1); }
};

// Validates, finds the subgroup, invariant, partition, separating function and basis.
RationalCodePlan make_plan(FieldPtr F, Family family, SubgroupCase c, unsigned r, unsigned s, unsigned t,
                           PlanOptions options = {});

EvaluatedCode build_base_code(const RationalCodePlan& plan);
EvaluatedCode build_extend_one(const RationalCodePlan& plan);
EvaluatedCode build_modified_extend_one(const RationalCodePlan& plan);
EvaluatedCode build_extend_all(const RationalCodePlan& plan);
EvaluatedCode build_roth_lempel(const RationalCodePlan& plan, bool all_blocks);
// Dispatch on plan.family.
EvaluatedCode build_code(const RationalCodePlan& plan);

// r-1 distinct block-1 abscissae summing to zero, if any.
std::optional<std::vector<Fe>> rl_case4_subset(const Field& F, const std::vector<PlaceP1>& block, unsigned r);

}  // namespace lrc::rational
