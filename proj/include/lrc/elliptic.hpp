#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/ratfn.hpp"

namespace lrc::elliptic {

// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
struct Curve {
    Fe a1, a2, a3, a4, a6;
    friend bool operator==(const Curve&, const Curve&) = default;
};

Fe discriminant(const Field& F, const Curve& E);
// Throws InvalidCurve when singular.
Curve make_curve(const Field& F, Fe a1, Fe a2, Fe a3, Fe a4, Fe a6);
std::string to_string(const Curve& E);

// Affine point or O; O sorts last.
struct Pt {
    bool inf = true;
    Fe x, y;

    static Pt O() { return Pt{}; }
    static Pt affine(Fe x, Fe y) { return Pt{false, x, y}; }
    friend bool operator==(const Pt&, const Pt&) = default;
    friend auto operator<=>(const Pt& a, const Pt& b)
    {
        if (a.inf != b.inf) {
            return a.inf ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (a.inf) {
            return std::strong_ordering::equal;
        }
        if (auto c = a.x <=> b.x; c != 0) {
            return c;
        }
        return a.y <=> b.y;
    }
};

std::string to_string(const Pt& P);

bool on_curve(const Field& F, const Curve& E, const Pt& P);
Pt neg(const Field& F, const Curve& E, const Pt& P);
Pt add(const Field& F, const Curve& E, const Pt& P, const Pt& Q);
Pt smul(const Field& F, const Curve& E, std::int64_t n, const Pt& P);
// Smallest n >= 1 with nP = O.
std::uint64_t point_order(const Field& F, const Curve& E, const Pt& P);
// Affine points sorted by (x, y), then O.
std::vector<Pt> enumerate_points(const Field& F, const Curve& E);

using Divisor = std::map<Pt, int>;
int degree(const Divisor& D);
// Adds n to the multiplicity of P, erasing zeros.
void add_to(Divisor& D, const Pt& P, int n);

// (a(x) + b(x) y) / c(x), gcd(a, b, c) = 1, c monic.
struct CurveFn {
    Poly a, b, c;
    friend bool operator==(const CurveFn&, const CurveFn&) = default;
};

namespace fn {

CurveFn make(const Field& F, const Poly& a, const Poly& b, const Poly& c);
CurveFn constant(const Field& F, Fe v);
CurveFn x(const Field& F);
CurveFn y(const Field& F);
CurveFn add(const Field& F, const CurveFn& f, const CurveFn& g);
CurveFn sub(const Field& F, const CurveFn& f, const CurveFn& g);
CurveFn scale(const Field& F, const CurveFn& f, Fe s);
CurveFn mul(const Field& F, const Curve& E, const CurveFn& f, const CurveFn& g);
CurveFn inv(const Field& F, const Curve& E, const CurveFn& f);
CurveFn div(const Field& F, const Curve& E, const CurveFn& f, const CurveFn& g);
CurveFn pow(const Field& F, const Curve& E, const CurveFn& f, unsigned n);
bool is_zero(const CurveFn& f);
bool is_constant(const CurveFn& f);

// Throws ZeroFunction.
int valuation(const Field& F, const Curve& E, const CurveFn& f, const Pt& P);
// nullopt at a pole.
Value eval(const Field& F, const Curve& E, const CurveFn& f, const Pt& P);
std::string to_string(const CurveFn& f);

}  // namespace fn

// Basis of L(D), deg D >= 1, every element audited by valuations on `points`.
// Throws DegenerateSystem.
std::vector<CurveFn> rr_basis(const Field& F, const Curve& E, const Divisor& D, const std::vector<Pt>& points);

struct CurveAut {
    // perm[i] = index of the image of points[i].
    std::vector<std::size_t> perm;
    std::string descriptor;
};

struct ExplicitMap {
    CurveFn xmap, ymap;
};

struct Recipe {
    enum class Kind { Negation, Zeta3, Dihedral, Explicit };
    Kind kind = Kind::Negation;
    Fe zeta;        // Zeta3
    unsigned m = 1; // Dihedral
    std::vector<ExplicitMap> maps;  // Explicit: generators
    unsigned order = 0;             // Explicit: declared group order
};

const char* to_string(Recipe::Kind k);

// Throws RecipeInapplicable.
std::vector<CurveAut> make_subgroup(const Field& F, const Curve& E, const std::vector<Pt>& points, const Recipe& recipe);

struct CurvePartition {
    std::vector<std::size_t> pole_block;               // point indices
    std::vector<std::vector<std::size_t>> blocks;      // evaluation blocks 1..s
    std::size_t free_orbits = 0;
    int orbit_bound = 0;                             // floor((N-2r-4)/(r+1))
};

// Throws NotEnoughFreeOrbits.
CurvePartition orbit_partition_curve(const std::vector<CurveAut>& G, const std::vector<Pt>& points, unsigned s);

enum class Family { EBase, EExtendOne, EExtendAll };
const char* to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);

struct EllipticPlan {
    Family family = Family::EBase;
    FieldPtr field;
    Curve curve;
    std::vector<Pt> points;
    std::vector<CurveAut> group;
    CurvePartition partition;
    CurveFn z, zhat;
    std::vector<CurveFn> omegas;
    unsigned r = 0, s = 0, t = 0;
    std::vector<Check> log;

    std::size_t k() const { return std::size_t(r) * t - r + 1; }
    // a_{0,j}: j in [1, t]; a_{i,j}, i >= 1: j in [1, t-1].
    std::size_t message_index(unsigned i, unsigned j) const
    {
        return i == 0 ? j - 1 : t + std::size_t(i - 1) * (t - 1) + (j - 1);
    }
};

struct ZOmegas {
    CurveFn z;
    std::vector<CurveFn> omegas;
};

// Throws NoInvariantZ, ExactPoleUnreachable, SubmatrixSingular.
ZOmegas find_z_omegas(EllipticPlan& plan);
// Throws NoSuchFunction.
CurveFn find_zhat(EllipticPlan& plan);

EllipticPlan make_plan(FieldPtr F, Family family, const Curve& E, const Recipe& recipe, unsigned s, unsigned t);

FamilyParams family_params(Family f, unsigned r, unsigned s, unsigned t);

EvaluatedCode build_elliptic_base(const EllipticPlan& plan);
EvaluatedCode build_elliptic_extend_one(const EllipticPlan& plan);
EvaluatedCode build_elliptic_extend_all(const EllipticPlan& plan);
EvaluatedCode build_code(const EllipticPlan& plan);

}  // namespace lrc::elliptic
