#include "lrc/ratfn.hpp"

#include <sstream>

#include "lrc/error.hpp"

namespace lrc {

std::string to_string(const PlaceP1& P)
{
    return P.infinite ? std::string("inf") : std::to_string(P.alpha.v);
}

namespace ratfn {

RatFn make(const Field& F, const Poly& num, const Poly& den)
{
    if (den.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
    }
    if (num.is_zero()) {
        return RatFn{Poly(), Poly::constant(F.one())};
    }
    Poly g = poly::gcd(F, num, den);
    Poly n = poly::divmod(F, num, g).first;
    Poly d = poly::divmod(F, den, g).first;
    Fe li = F.inv(d.lead());
    return RatFn{poly::scale(F, n, li), poly::scale(F, d, li)};
}

RatFn constant(const Field& F, Fe a)
{
    return RatFn{Poly::constant(a), Poly::constant(F.one())};
}

RatFn from_poly(const Field& F, const Poly& p)
{
    return RatFn{p, Poly::constant(F.one())};
}

RatFn x(const Field& F)
{
    return from_poly(F, Poly::x());
}

RatFn add(const Field& F, const RatFn& a, const RatFn& b)
{
    if (a.den == b.den) {
        return make(F, poly::add(F, a.num, b.num), a.den);
    }
    return make(F,
                poly::add(F, poly::mul(F, a.num, b.den), poly::mul(F, b.num, a.den)),
                poly::mul(F, a.den, b.den));
}

RatFn neg(const Field& F, const RatFn& a)
{
    return RatFn{poly::neg(F, a.num), a.den};
}

RatFn sub(const Field& F, const RatFn& a, const RatFn& b)
{
    return add(F, a, neg(F, b));
}

RatFn mul(const Field& F, const RatFn& a, const RatFn& b)
{
    return make(F, poly::mul(F, a.num, b.num), poly::mul(F, a.den, b.den));
}

RatFn scale(const Field& F, const RatFn& a, Fe s)
{
    if (s.is_zero()) {
        return constant(F, Fe(0));
    }
    return RatFn{poly::scale(F, a.num, s), a.den};
}

RatFn inv(const Field& F, const RatFn& a)
{
    if (a.num.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "inverse of the zero function");
    }
    return make(F, a.den, a.num);
}

RatFn div(const Field& F, const RatFn& a, const RatFn& b)
{
    return mul(F, a, inv(F, b));
}

RatFn pow(const Field& F, const RatFn& a, int n)
{
    if (n < 0) {
        return pow(F, inv(F, a), -n);
    }
    return make(F, poly::pow(F, a.num, static_cast<unsigned>(n)), poly::pow(F, a.den, static_cast<unsigned>(n)));
}

namespace {

// sum n_i A^i B^(M-i)
Poly homogenize(const Field& F, const Poly& n, const Poly& A, const Poly& B, int M)
{
    Poly out;
    for (std::size_t i = 0; i < n.c.size(); ++i) {
        if (n.c[i].is_zero()) {
            continue;
        }
        Poly term = poly::mul(F, poly::pow(F, A, static_cast<unsigned>(i)),
                              poly::pow(F, B, static_cast<unsigned>(M - static_cast<int>(i))));
        out = poly::add(F, out, poly::scale(F, term, n.c[i]));
    }
    return out;
}

}  // namespace

RatFn compose(const Field& F, const RatFn& f, const RatFn& g)
{
    int M = std::max(f.num.degree(), f.den.degree());
    if (M <= 0) {
        return f;
    }
    return make(F, homogenize(F, f.num, g.num, g.den, M), homogenize(F, f.den, g.num, g.den, M));
}

bool is_zero(const RatFn& f)
{
    return f.num.is_zero();
}

bool is_constant(const RatFn& f)
{
    return f.num.degree() <= 0 && f.den.degree() == 0;
}

int degree(const RatFn& f)
{
    return std::max(f.num.degree(), f.den.degree());
}

Value eval(const Field& F, const RatFn& f, const PlaceP1& P)
{
    if (P.infinite) {
        int dn = f.num.degree(), dd = f.den.degree();
        if (dn < dd) {
            return Fe(0);
        }
        if (dn == dd) {
            return F.div(f.num.lead(), f.den.lead());
        }
        return std::nullopt;
    }
    Fe d = poly::eval(F, f.den, P.alpha);
    if (d.is_zero()) {
        return std::nullopt;
    }
    return F.div(poly::eval(F, f.num, P.alpha), d);
}

int valuation(const Field& F, const RatFn& f, const PlaceP1& P)
{
    if (f.num.is_zero()) {
        throw Error(ErrorCode::ZeroFunction, "valuation of the zero function");
    }
    if (P.infinite) {
        return f.den.degree() - f.num.degree();
    }
    return static_cast<int>(poly::root_multiplicity(F, f.num, P.alpha)) -
           static_cast<int>(poly::root_multiplicity(F, f.den, P.alpha));
}

std::string to_string(const RatFn& f)
{
    if (f.den.degree() == 0) {
        return poly::to_string(f.num, "x");
    }
    return "(" + poly::to_string(f.num, "x") + ")/(" + poly::to_string(f.den, "x") + ")";
}

}  // namespace ratfn

namespace mobius {

Mobius make(const Field& F, Fe a, Fe b, Fe c, Fe d)
{
    if (F.sub(F.mul(a, d), F.mul(b, c)).is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "singular fractional-linear map");
    }
    Fe lead = !a.is_zero() ? a : (!b.is_zero() ? b : c);
    Fe s = F.inv(lead);
    return Mobius{F.mul(a, s), F.mul(b, s), F.mul(c, s), F.mul(d, s)};
}

Mobius identity()
{
    return Mobius{Fe(1), Fe(0), Fe(0), Fe(1)};
}

Mobius compose(const Field& F, const Mobius& s, const Mobius& t)
{
    auto m = [&](Fe x1, Fe y1, Fe x2, Fe y2) { return F.add(F.mul(x1, x2), F.mul(y1, y2)); };
    return make(F,
                m(s.a, s.b, t.a, t.c), m(s.a, s.b, t.b, t.d),
                m(s.c, s.d, t.a, t.c), m(s.c, s.d, t.b, t.d));
}

Mobius inverse(const Field& F, const Mobius& s)
{
    return make(F, s.d, F.neg(s.b), F.neg(s.c), s.a);
}

PlaceP1 act(const Field& F, const Mobius& s, const PlaceP1& P)
{
    if (P.infinite) {
        if (s.c.is_zero()) {
            return PlaceP1::infinity();
        }
        return PlaceP1::finite(F.div(s.a, s.c));
    }
    Fe num = F.add(F.mul(s.a, P.alpha), s.b);
    Fe den = F.add(F.mul(s.c, P.alpha), s.d);
    if (den.is_zero()) {
        return PlaceP1::infinity();
    }
    return PlaceP1::finite(F.div(num, den));
}

unsigned order(const Field& F, const Mobius& s)
{
    Mobius id = identity();
    Mobius cur = s;
    unsigned n = 1;
    while (!(cur == id)) {
        cur = compose(F, s, cur);
        ++n;
    }
    return n;
}

RatFn as_ratfn(const Field& F, const Mobius& s)
{
    return ratfn::make(F, Poly({s.b, s.a}), Poly({s.d, s.c}));
}

RatFn pullback(const Field& F, const Mobius& s, const RatFn& f)
{
    int M = std::max(f.num.degree(), f.den.degree());
    if (M <= 0) {
        return f;
    }
    // homogenize with the unnormalized pair (a x + b, c x + d)
    RatFn g{Poly({s.b, s.a}), Poly({s.d, s.c})};
    return ratfn::compose(F, f, g);
}

std::string to_string(const Mobius& s)
{
    std::ostringstream os;
    os << "(" << s.a.v << "x+" << s.b.v << ")/(" << s.c.v << "x+" << s.d.v << ")";
    return os.str();
}

}  // namespace mobius
}  // namespace lrc
