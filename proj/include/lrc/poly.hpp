#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lrc/field.hpp"

namespace lrc {

// Univariate polynomial, coefficients low-to-high with no trailing zero.
struct Poly {
    std::vector<Fe> c;

    Poly() = default;
    explicit Poly(std::vector<Fe> coeffs);

    static Poly constant(Fe a) { return Poly({a}); }
    static Poly x() { return Poly({Fe(0), Fe(1)}); }
    static Poly monomial(Fe a, std::size_t deg);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_constant() const { return c.size() <= 1; }
    Fe lead() const { return c.empty() ? Fe(0) : c.back(); }
    Fe coeff(std::size_t i) const { return i < c.size() ? c[i] : Fe(0); }

    friend bool operator==(const Poly&, const Poly&) = default;
};

namespace poly {

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly neg(const Field& F, const Poly& a);
Poly scale(const Field& F, const Poly& a, Fe s);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly pow(const Field& F, const Poly& a, unsigned n);
// Throws DivisionByZero for a zero divisor.
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Field& F, const Poly& a, const Poly& b);
Fe eval(const Field& F, const Poly& f, Fe x);
// f(g(X)).
Poly compose(const Field& F, const Poly& f, const Poly& g);
// Multiplicity of alpha as a root (0 if not a root). f must be nonzero.
unsigned root_multiplicity(const Field& F, const Poly& f, Fe alpha);
// Throws DuplicateAbscissa or DimensionMismatch (empty input).
Poly lagrange_interpolate(const Field& F, const std::vector<std::pair<Fe, Fe>>& points);
std::string to_string(const Poly& f, const std::string& var = "X");

}  // namespace poly
}  // namespace lrc
