#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrc/field.hpp"
#include "lrc/matrix.hpp"

namespace lrc {

struct RepairGroup {
    std::vector<std::size_t> positions;
    // positions.size() x r; block symbols = L * c.
    Matrix L;
    std::string coeff_map;
};

enum class DistanceKind { Exact, LowerBound, UpperBound };

const char* to_string(DistanceKind k);

struct CodeClaims {
    std::string family;
    unsigned r = 1;
    unsigned delta = 2;
    int design_d = 0;
    DistanceKind d_kind = DistanceKind::Exact;
    std::string formula;
    // Free-form diagnostics carried with the code (one line each).
    std::vector<std::string> notes;

    friend bool operator==(const CodeClaims&, const CodeClaims&) = default;
};

// (n, k, claimed d) of a family instance, from formulas alone.
struct FamilyParams {
    std::size_t n = 0;
    std::size_t k = 0;
    int d = 0;
    DistanceKind kind = DistanceKind::Exact;
    unsigned delta = 2;
    std::string formula;
};

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct EvaluatedCode {
    FieldPtr field;
    std::size_t n = 0;
    std::size_t k = 0;
    Matrix G;
    std::vector<RepairGroup> groups;
    CodeClaims claims;
    // Preconditions verified while building.
    std::vector<Check> log;
};

std::vector<Fe> encode(const EvaluatedCode& code, const std::vector<Fe>& a);
std::size_t weight(const std::vector<Fe>& w);

struct RepairResult {
    std::vector<Fe> word;
    // Intact positions whose symbols were read.
    std::vector<std::size_t> recovery_set;
    std::size_t group = 0;
};

// Erased entries of `word` are ignored. Throws CrossBlockErasure, TooManyErasures,
// SubmatrixSingular (no invertible choice of intact rows).
RepairResult repair(const EvaluatedCode& code, const std::vector<Fe>& word, const std::vector<std::size_t>& erased);

struct DistanceReport {
    enum class Method { Exhaustive, Bounded };
    Method method = Method::Exhaustive;
    // Exhaustive: lower == upper == d.
    int lower = 0;
    int upper = 0;
    bool lower_is_claimed = false;
    std::uint64_t enumerated = 0;
    std::vector<Fe> witness_message;
    std::vector<Fe> witness;

    int d() const { return upper; }
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t(1) << 24;

// Number of projective message classes (q^k - 1)/(q - 1), saturated at UINT64_MAX.
std::uint64_t projective_classes(std::uint32_t q, std::size_t k);

// One message per projective class (first nonzero = 1), ties broken by enumeration order.
// Throws BudgetExceeded. threads > 1 splits the enumeration into chunks merged deterministically.
DistanceReport min_distance_exhaustive(const EvaluatedCode& code, std::uint64_t budget = kDefaultBudget,
                                       unsigned threads = 1);

DistanceReport min_distance_bounded(const EvaluatedCode& code, std::uint64_t trials, std::uint64_t seed);

// n - k - (ceil(k/r) - 1)(delta - 1) + 1. Throws ParamViolation unless 1 <= r <= k, delta >= 2.
int singleton_bound(std::size_t n, std::size_t k, unsigned r, unsigned delta);

struct GroupLocality {
    std::size_t group = 0;
    std::size_t size = 0;
    std::size_t block_dimension = 0;
    // -1 when too large to enumerate and not decidable by minors.
    int block_distance = -1;
    bool size_ok = false;
    bool distance_ok = false;
    // G restricted to the group lies in the column space of L.
    bool consistent = false;
    std::optional<std::vector<std::size_t>> singular_rows;
    // Positions without a recovery subset of size <= r + delta - 1 having distance >= delta.
    std::vector<std::size_t> unrecoverable;
};

struct LocalityReport {
    bool ok = false;
    bool partition_ok = false;
    std::vector<GroupLocality> groups;
    // Per position: number of symbols read by a repair (0 if none possible).
    std::vector<std::size_t> recovery_size;
    std::vector<std::string> problems;
};

LocalityReport verify_locality(const EvaluatedCode& code);

struct Classification {
    enum class Verdict { Optimal, Gap, OptimalConsistent, Inconclusive, ExceedsBound };
    Verdict verdict = Verdict::Inconclusive;
    int bound = 0;
    // bound - d (exhaustive) or bound - upper (bounded, upper < bound).
    int gap = 0;
    unsigned effective_r = 0;
    std::string text;
};

Classification classify_code(const EvaluatedCode& code, const DistanceReport& report);

enum class ClaimStatus { Holds, Refuted, Undetermined };
const char* to_string(ClaimStatus s);

// Compares the claimed distance (exact / lower / upper) with a report.
// Bounded reports only use their measured upper bound.
ClaimStatus check_claim(const CodeClaims& claims, const DistanceReport& report);

std::size_t generator_rank(const EvaluatedCode& code);

// Structural checks shared by all builders: partition, rank, every-r-rows property,
// local-matrix consistency. Appends to code.log.
void audit_structure(EvaluatedCode& code);

}  // namespace lrc
