#include "lrc/poly.hpp"

#include <sstream>

#include "lrc/error.hpp"

namespace lrc {

namespace {

void trim(std::vector<Fe>& c)
{
    while (!c.empty() && c.back().is_zero()) {
        c.pop_back();
    }
}

}  // namespace

Poly::Poly(std::vector<Fe> coeffs) : c(std::move(coeffs))
{
    trim(c);
}

Poly Poly::monomial(Fe a, std::size_t deg)
{
    std::vector<Fe> c(deg + 1, Fe(0));
    c[deg] = a;
    return Poly(std::move(c));
}

namespace poly {

Poly add(const Field& F, const Poly& a, const Poly& b)
{
    std::vector<Fe> c(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = F.add(a.coeff(i), b.coeff(i));
    }
    return Poly(std::move(c));
}

Poly neg(const Field& F, const Poly& a)
{
    std::vector<Fe> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = F.neg(a.c[i]);
    }
    return Poly(std::move(c));
}

Poly sub(const Field& F, const Poly& a, const Poly& b)
{
    std::vector<Fe> c(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = F.sub(a.coeff(i), b.coeff(i));
    }
    return Poly(std::move(c));
}

Poly scale(const Field& F, const Poly& a, Fe s)
{
    std::vector<Fe> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = F.mul(a.c[i], s);
    }
    return Poly(std::move(c));
}

Poly mul(const Field& F, const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) {
        return Poly();
    }
    std::vector<Fe> c(a.c.size() + b.c.size() - 1, Fe(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
        }
    }
    return Poly(std::move(c));
}

Poly pow(const Field& F, const Poly& a, unsigned n)
{
    Poly r = Poly::constant(F.one());
    Poly b = a;
    while (n) {
        if (n & 1) {
            r = mul(F, r, b);
        }
        n >>= 1;
        if (n) {
            b = mul(F, b, b);
        }
    }
    return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b)
{
    if (b.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    }
    if (a.degree() < b.degree()) {
        return {Poly(), a};
    }
    std::vector<Fe> r = a.c;
    std::vector<Fe> qc(a.c.size() - b.c.size() + 1, Fe(0));
    Fe li = F.inv(b.lead());
    std::size_t db = b.c.size() - 1;
    for (std::size_t k = qc.size(); k-- > 0;) {
        Fe coef = F.mul(r[k + db], li);
        qc[k] = coef;
        if (coef.is_zero()) {
            continue;
        }
        for (std::size_t i = 0; i <= db; ++i) {
            r[k + i] = F.sub(r[k + i], F.mul(coef, b.c[i]));
        }
    }
    return {Poly(std::move(qc)), Poly(std::move(r))};
}

Poly monic(const Field& F, const Poly& a)
{
    if (a.is_zero()) {
        return a;
    }
    return scale(F, a, F.inv(a.lead()));
}

Poly gcd(const Field& F, const Poly& a, const Poly& b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(F, x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(F, x);
}

Fe eval(const Field& F, const Poly& f, Fe x)
{
    Fe acc(0);
    for (std::size_t i = f.c.size(); i-- > 0;) {
        acc = F.add(F.mul(acc, x), f.c[i]);
    }
    return acc;
}

Poly compose(const Field& F, const Poly& f, const Poly& g)
{
    Poly acc;
    for (std::size_t i = f.c.size(); i-- > 0;) {
        acc = add(F, mul(F, acc, g), Poly::constant(f.c[i]));
    }
    return acc;
}

unsigned root_multiplicity(const Field& F, const Poly& f, Fe alpha)
{
    if (f.is_zero()) {
        throw Error(ErrorCode::ZeroFunction, "multiplicity in the zero polynomial");
    }
    Poly lin({F.neg(alpha), F.one()});
    unsigned k = 0;
    Poly g = f;
    while (g.degree() >= 1) {
        auto [qq, r] = divmod(F, g, lin);
        if (!r.is_zero()) {
            break;
        }
        g = std::move(qq);
        ++k;
    }
    return k;
}

Poly lagrange_interpolate(const Field& F, const std::vector<std::pair<Fe, Fe>>& pts)
{
    if (pts.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "interpolation needs at least one point");
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i].first == pts[j].first) {
                throw Error(ErrorCode::DuplicateAbscissa, "abscissa " + std::to_string(pts[i].first.v) + " repeated");
            }
        }
    }
    Poly out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Poly basis = Poly::constant(F.one());
        Fe denom = F.one();
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) {
                continue;
            }
            basis = mul(F, basis, Poly({F.neg(pts[j].first), F.one()}));
            denom = F.mul(denom, F.sub(pts[i].first, pts[j].first));
        }
        out = add(F, out, scale(F, basis, F.div(pts[i].second, denom)));
    }
    return out;
}

std::string to_string(const Poly& f, const std::string& var)
{
    if (f.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = f.c.size(); i-- > 0;) {
        if (f.c[i].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        bool unit = f.c[i].v == 1;
        if (i == 0 || !unit) {
            os << f.c[i].v;
        }
        if (i >= 1) {
            if (!unit) {
                os << "*";
            }
            os << var;
        }
        if (i >= 2) {
            os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace poly
}  // namespace lrc
