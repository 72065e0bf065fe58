#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrc/code.hpp"

namespace lrc::io {

// Polynomial coefficient lists, low-to-high, integer-encoded.
struct FnSpec {
    std::vector<std::uint32_t> a, b, c;
    friend bool operator==(const FnSpec&, const FnSpec&) = default;
};

struct MapSpec {
    FnSpec x, y;
    friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

struct RecipeSpec {
    std::string kind;  // negation | zeta3 | dihedral | explicit
    std::optional<std::uint32_t> zeta;
    std::optional<unsigned> m;
    std::optional<unsigned> order;
    std::vector<MapSpec> maps;
    friend bool operator==(const RecipeSpec&, const RecipeSpec&) = default;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

struct PlanFile {
    std::uint32_t p = 0;
    std::uint32_t m = 1;
    std::optional<std::vector<std::uint32_t>> modulus;
    std::string family;
    // rational families
    std::optional<std::string> subgroup;  // multiplicative | additive | semidirect | cyclic_q_plus_1
    std::optional<std::string> basis;     // default | strict
    std::optional<unsigned> r;            // required for rational, checked for elliptic
    unsigned s = 0;
    unsigned t = 0;
    // elliptic families
    std::optional<std::array<std::uint32_t, 5>> curve;  // a1 a2 a3 a4 a6
    std::optional<RecipeSpec> recipe;
    std::uint64_t seed = kDefaultSeed;

    friend bool operator==(const PlanFile&, const PlanFile&) = default;
};

bool is_elliptic_family(const std::string& family);

// Throws ParseError (malformed JSON, unknown or missing fields, wrong types).
PlanFile parse_plan(const std::string& text);
// Canonical JSON: fixed key order, two-space indent, trailing newline.
std::string serialize_plan(const PlanFile& plan);

// Builds the code described by the plan; the construction log is in code.log.
EvaluatedCode construct(const PlanFile& plan);

// Throws ParseError.
EvaluatedCode parse_matrix(const std::string& text);
std::string serialize_matrix(const EvaluatedCode& code);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lrc::io
