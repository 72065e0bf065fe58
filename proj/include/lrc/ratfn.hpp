#pragma once

#include <compare>
#include <optional>
#include <string>

#include "lrc/poly.hpp"

namespace lrc {

// Rational place of the projective line: a finite alpha or Infinity.
struct PlaceP1 {
    bool infinite = false;
    Fe alpha{};

    static PlaceP1 finite(Fe a) { return PlaceP1{false, a}; }
    static PlaceP1 infinity() { return PlaceP1{true, Fe(0)}; }

    // Finite alpha -> its encoding, Infinity -> q.
    std::uint32_t encode(std::uint32_t q) const { return infinite ? q : alpha.v; }
    friend bool operator==(const PlaceP1&, const PlaceP1&) = default;
    // Infinity sorts after every finite place.
    friend auto operator<=>(const PlaceP1& a, const PlaceP1& b)
    {
        if (a.infinite != b.infinite) {
            return a.infinite ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return a.alpha <=> b.alpha;
    }
};

std::string to_string(const PlaceP1& P);

// num/den with gcd 1 and den monic. The zero function is 0/1.
struct RatFn {
    Poly num;
    Poly den;

    friend bool operator==(const RatFn&, const RatFn&) = default;
};

// Evaluation result; nullopt marks a pole.
using Value = std::optional<Fe>;

namespace ratfn {

RatFn make(const Field& F, const Poly& num, const Poly& den);
RatFn constant(const Field& F, Fe a);
RatFn from_poly(const Field& F, const Poly& p);
RatFn x(const Field& F);

RatFn add(const Field& F, const RatFn& a, const RatFn& b);
RatFn sub(const Field& F, const RatFn& a, const RatFn& b);
RatFn neg(const Field& F, const RatFn& a);
RatFn mul(const Field& F, const RatFn& a, const RatFn& b);
RatFn scale(const Field& F, const RatFn& a, Fe s);
RatFn inv(const Field& F, const RatFn& a);
RatFn div(const Field& F, const RatFn& a, const RatFn& b);
RatFn pow(const Field& F, const RatFn& a, int n);
// f(g).
RatFn compose(const Field& F, const RatFn& f, const RatFn& g);

bool is_zero(const RatFn& f);
bool is_constant(const RatFn& f);
// max(deg num, deg den).
int degree(const RatFn& f);

Value eval(const Field& F, const RatFn& f, const PlaceP1& P);
// Throws ZeroFunction.
int valuation(const Field& F, const RatFn& f, const PlaceP1& P);

std::string to_string(const RatFn& f);

}  // namespace ratfn

// x -> (a x + b) / (c x + d), normalized so the first nonzero entry is 1.
struct Mobius {
    Fe a, b, c, d;

    friend bool operator==(const Mobius&, const Mobius&) = default;
    friend auto operator<=>(const Mobius&, const Mobius&) = default;
};

namespace mobius {

// Throws DivisionByZero when ad - bc = 0.
Mobius make(const Field& F, Fe a, Fe b, Fe c, Fe d);
Mobius identity();
// (s o t)(P) = s(t(P)).
Mobius compose(const Field& F, const Mobius& s, const Mobius& t);
Mobius inverse(const Field& F, const Mobius& s);
PlaceP1 act(const Field& F, const Mobius& s, const PlaceP1& P);
unsigned order(const Field& F, const Mobius& s);
// f o s.
RatFn pullback(const Field& F, const Mobius& s, const RatFn& f);
// s(x) as a rational function.
RatFn as_ratfn(const Field& F, const Mobius& s);
std::string to_string(const Mobius& s);

}  // namespace mobius
}  // namespace lrc
