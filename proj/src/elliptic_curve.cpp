#include <algorithm>
#include <set>
#include <sstream>

#include "lrc/elliptic.hpp"
#include "lrc/error.hpp"

namespace lrc::elliptic {

Fe discriminant(const Field& F, const Curve& E)
{
    auto k = [&](std::int64_t n) { return F.from_int(n); };
    auto m = [&](Fe a, Fe b) { return F.mul(a, b); };
    Fe b2 = F.add(m(E.a1, E.a1), m(k(4), E.a2));
    Fe b4 = F.add(m(k(2), E.a4), m(E.a1, E.a3));
    Fe b6 = F.add(m(E.a3, E.a3), m(k(4), E.a6));
    Fe b8 = F.sub(F.add(F.add(m(m(E.a1, E.a1), E.a6), m(k(4), m(E.a2, E.a6))), m(E.a2, m(E.a3, E.a3))),
                  F.add(m(E.a1, m(E.a3, E.a4)), m(E.a4, E.a4)));
    Fe d = F.neg(m(m(b2, b2), b8));
    d = F.sub(d, m(k(8), m(b4, m(b4, b4))));
    d = F.sub(d, m(k(27), m(b6, b6)));
    d = F.add(d, m(k(9), m(b2, m(b4, b6))));
    return d;
}

Curve make_curve(const Field& F, Fe a1, Fe a2, Fe a3, Fe a4, Fe a6)
{
    Curve E{a1, a2, a3, a4, a6};
    if (discriminant(F, E).is_zero()) {
        throw Error(ErrorCode::InvalidCurve, "singular curve " + to_string(E));
    }
    return E;
}

std::string to_string(const Curve& E)
{
    std::ostringstream os;
    os << "[a1,a2,a3,a4,a6] = [" << E.a1.v << "," << E.a2.v << "," << E.a3.v << "," << E.a4.v << "," << E.a6.v
       << "]";
    return os.str();
}

std::string to_string(const Pt& P)
{
    if (P.inf) {
        return "O";
    }
    return "(" + std::to_string(P.x.v) + "," + std::to_string(P.y.v) + ")";
}

namespace {

// F(x, y) = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
Fe equation(const Field& F, const Curve& E, Fe x, Fe y)
{
    Fe lhs = F.add(F.mul(y, y), F.add(F.mul(E.a1, F.mul(x, y)), F.mul(E.a3, y)));
    Fe x2 = F.mul(x, x);
    Fe rhs = F.add(F.add(F.mul(x2, x), F.mul(E.a2, x2)), F.add(F.mul(E.a4, x), E.a6));
    return F.sub(lhs, rhs);
}

}  // namespace

bool on_curve(const Field& F, const Curve& E, const Pt& P)
{
    return P.inf || equation(F, E, P.x, P.y).is_zero();
}

Pt neg(const Field& F, const Curve& E, const Pt& P)
{
    if (P.inf) {
        return P;
    }
    return Pt::affine(P.x, F.sub(F.neg(P.y), F.add(F.mul(E.a1, P.x), E.a3)));
}

Pt add(const Field& F, const Curve& E, const Pt& P, const Pt& Q)
{
    if (P.inf) {
        return Q;
    }
    if (Q.inf) {
        return P;
    }
    if (P.x == Q.x && F.add(F.add(P.y, Q.y), F.add(F.mul(E.a1, Q.x), E.a3)).is_zero()) {
        return Pt::O();
    }
    Fe lambda, nu;
    if (P.x != Q.x) {
        Fe dx = F.sub(Q.x, P.x);
        lambda = F.div(F.sub(Q.y, P.y), dx);
        nu = F.div(F.sub(F.mul(P.y, Q.x), F.mul(Q.y, P.x)), dx);
    } else {
        auto k = [&](std::int64_t n) { return F.from_int(n); };
        Fe den = F.add(F.add(F.mul(k(2), P.y), F.mul(E.a1, P.x)), E.a3);
        Fe x2 = F.mul(P.x, P.x);
        Fe num = F.sub(F.add(F.add(F.mul(k(3), x2), F.mul(k(2), F.mul(E.a2, P.x))), E.a4), F.mul(E.a1, P.y));
        lambda = F.div(num, den);
        Fe num2 = F.sub(F.add(F.add(F.neg(F.mul(x2, P.x)), F.mul(E.a4, P.x)), F.mul(k(2), E.a6)), F.mul(E.a3, P.y));
        nu = F.div(num2, den);
    }
    Fe x3 = F.sub(F.sub(F.add(F.mul(lambda, lambda), F.mul(E.a1, lambda)), E.a2), F.add(P.x, Q.x));
    Fe y3 = F.sub(F.sub(F.neg(F.mul(F.add(lambda, E.a1), x3)), nu), E.a3);
    return Pt::affine(x3, y3);
}

Pt smul(const Field& F, const Curve& E, std::int64_t n, const Pt& P)
{
    Pt base = n < 0 ? neg(F, E, P) : P;
    std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    Pt acc = Pt::O();
    while (k) {
        if (k & 1) {
            acc = add(F, E, acc, base);
        }
        base = add(F, E, base, base);
        k >>= 1;
    }
    return acc;
}

std::uint64_t point_order(const Field& F, const Curve& E, const Pt& P)
{
    std::uint64_t n = 1;
    Pt cur = P;
    while (!cur.inf) {
        cur = add(F, E, cur, P);
        ++n;
    }
    return n;
}

std::vector<Pt> enumerate_points(const Field& F, const Curve& E)
{
    std::vector<Pt> out;
    for (std::uint32_t x = 0; x < F.q(); ++x) {
        for (std::uint32_t y = 0; y < F.q(); ++y) {
            if (equation(F, E, Fe(x), Fe(y)).is_zero()) {
                out.push_back(Pt::affine(Fe(x), Fe(y)));
            }
        }
    }
    out.push_back(Pt::O());
    return out;
}

int degree(const Divisor& D)
{
    int d = 0;
    for (const auto& [P, n] : D) {
        d += n;
    }
    return d;
}

void add_to(Divisor& D, const Pt& P, int n)
{
    int v = D[P] + n;
    if (v == 0) {
        D.erase(P);
    } else {
        D[P] = v;
    }
}

namespace {

using Series = std::vector<Fe>;

Series s_mul(const Field& F, const Series& a, const Series& b)
{
    std::size_t prec = a.size();
    Series out(prec, Fe(0));
    for (std::size_t i = 0; i < prec; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j < prec; ++j) {
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
        }
    }
    return out;
}

Series s_add(const Field& F, const Series& a, const Series& b)
{
    Series out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = F.add(a[i], b[i]);
    }
    return out;
}

Series s_const(std::size_t prec, Fe c)
{
    Series s(prec, Fe(0));
    s[0] = c;
    return s;
}

Series s_poly(const Field& F, const Poly& p, const Series& X)
{
    Series acc(X.size(), Fe(0));
    for (std::size_t i = p.c.size(); i-- > 0;) {
        acc = s_mul(F, acc, X);
        acc[0] = F.add(acc[0], p.c[i]);
    }
    return acc;
}

std::size_t s_ord(const Series& s)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].is_zero()) {
            return i;
        }
    }
    return s.size();
}

Series s_equation(const Field& F, const Curve& E, const Series& X, const Series& Y)
{
    std::size_t prec = X.size();
    Series lhs = s_add(F, s_mul(F, Y, Y), s_add(F, s_mul(F, s_poly(F, Poly::constant(E.a1), X), Y),
                                                 s_poly(F, Poly::constant(E.a3), Y)));
    Poly g({E.a6, E.a4, E.a2, F.one()});
    Series rhs = s_poly(F, g, X);
    Series out(prec);
    for (std::size_t i = 0; i < prec; ++i) {
        out[i] = F.sub(lhs[i], rhs[i]);
    }
    return out;
}

// x = X(t), y = Y(t) in a uniformizer t at the affine point P.
std::pair<Series, Series> local_expansion(const Field& F, const Curve& E, const Pt& P, std::size_t prec)
{
    auto k = [&](std::int64_t n) { return F.from_int(n); };
    Fe fy = F.add(F.add(F.mul(k(2), P.y), F.mul(E.a1, P.x)), E.a3);
    Series X = s_const(prec, P.x), Y = s_const(prec, P.y);
    if (!fy.is_zero()) {
        if (prec > 1) {
            X[1] = F.one();
        }
        Fe inv = F.inv(fy);
        for (std::size_t it = 0; it < prec; ++it) {
            Series R = s_equation(F, E, X, Y);
            for (std::size_t i = 0; i < prec; ++i) {
                Y[i] = F.sub(Y[i], F.mul(R[i], inv));
            }
        }
    } else {
        Fe fx = F.sub(F.mul(E.a1, P.y), F.add(F.add(F.mul(k(3), F.mul(P.x, P.x)), F.mul(k(2), F.mul(E.a2, P.x))), E.a4));
        if (fx.is_zero()) {
            throw Error(ErrorCode::InvalidCurve, "singular point " + to_string(P));
        }
        if (prec > 1) {
            Y[1] = F.one();
        }
        Fe inv = F.inv(fx);
        for (std::size_t it = 0; it < prec; ++it) {
            Series R = s_equation(F, E, X, Y);
            for (std::size_t i = 0; i < prec; ++i) {
                X[i] = F.sub(X[i], F.mul(R[i], inv));
            }
        }
    }
    return {X, Y};
}

std::size_t precision_for(const CurveFn& f)
{
    int p = std::max({2 * f.a.degree(), 2 * f.b.degree() + 3, 2 * f.c.degree(), 1});
    return static_cast<std::size_t>(p) + 2;
}

// Series of a + b y and of c at P.
std::pair<Series, Series> fn_series(const Field& F, const Curve& E, const CurveFn& f, const Pt& P)
{
    auto [X, Y] = local_expansion(F, E, P, precision_for(f));
    Series num = s_add(F, s_poly(F, f.a, X), s_mul(F, s_poly(F, f.b, X), Y));
    return {num, s_poly(F, f.c, X)};
}

Poly h_poly(const Field&, const Curve& E)
{
    return Poly({E.a3, E.a1});
}

Poly g_poly(const Field& F, const Curve& E)
{
    return Poly({E.a6, E.a4, E.a2, F.one()});
}

}  // namespace

namespace fn {

CurveFn make(const Field& F, const Poly& a, const Poly& b, const Poly& c)
{
    if (c.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "curve function with zero denominator");
    }
    if (a.is_zero() && b.is_zero()) {
        return CurveFn{Poly(), Poly(), Poly::constant(F.one())};
    }
    Poly g = poly::gcd(F, poly::gcd(F, a, b), c);
    Poly na = poly::divmod(F, a, g).first;
    Poly nb = poly::divmod(F, b, g).first;
    Poly nc = poly::divmod(F, c, g).first;
    Fe li = F.inv(nc.lead());
    return CurveFn{poly::scale(F, na, li), poly::scale(F, nb, li), poly::scale(F, nc, li)};
}

CurveFn constant(const Field& F, Fe v)
{
    return make(F, Poly::constant(v), Poly(), Poly::constant(F.one()));
}

CurveFn x(const Field& F)
{
    return make(F, Poly::x(), Poly(), Poly::constant(F.one()));
}

CurveFn y(const Field& F)
{
    return make(F, Poly(), Poly::constant(F.one()), Poly::constant(F.one()));
}

CurveFn add(const Field& F, const CurveFn& f, const CurveFn& g)
{
    if (f.c == g.c) {
        return make(F, poly::add(F, f.a, g.a), poly::add(F, f.b, g.b), f.c);
    }
    Poly d = poly::gcd(F, f.c, g.c);
    Poly cf = poly::divmod(F, g.c, d).first;  // multiplier for f
    Poly cg = poly::divmod(F, f.c, d).first;  // multiplier for g
    return make(F, poly::add(F, poly::mul(F, f.a, cf), poly::mul(F, g.a, cg)),
                poly::add(F, poly::mul(F, f.b, cf), poly::mul(F, g.b, cg)), poly::mul(F, f.c, cf));
}

CurveFn scale(const Field& F, const CurveFn& f, Fe s)
{
    return make(F, poly::scale(F, f.a, s), poly::scale(F, f.b, s), f.c);
}

CurveFn sub(const Field& F, const CurveFn& f, const CurveFn& g)
{
    return add(F, f, scale(F, g, F.neg(F.one())));
}

CurveFn mul(const Field& F, const Curve& E, const CurveFn& f, const CurveFn& g)
{
    // y^2 = g(x) - h(x) y
    Poly bb = poly::mul(F, f.b, g.b);
    Poly A = poly::add(F, poly::mul(F, f.a, g.a), poly::mul(F, bb, g_poly(F, E)));
    Poly B = poly::sub(F, poly::add(F, poly::mul(F, f.a, g.b), poly::mul(F, f.b, g.a)), poly::mul(F, bb, h_poly(F, E)));
    return make(F, A, B, poly::mul(F, f.c, g.c));
}

CurveFn inv(const Field& F, const Curve& E, const CurveFn& f)
{
    if (is_zero(f)) {
        throw Error(ErrorCode::DivisionByZero, "inverse of the zero function");
    }
    Poly h = h_poly(F, E);
    Poly N = poly::sub(F, poly::sub(F, poly::mul(F, f.a, f.a), poly::mul(F, poly::mul(F, f.a, f.b), h)),
                       poly::mul(F, poly::mul(F, f.b, f.b), g_poly(F, E)));
    Poly A = poly::mul(F, f.c, poly::sub(F, f.a, poly::mul(F, f.b, h)));
    Poly B = poly::mul(F, f.c, poly::neg(F, f.b));
    return make(F, A, B, N);
}

CurveFn div(const Field& F, const Curve& E, const CurveFn& f, const CurveFn& g)
{
    return mul(F, E, f, inv(F, E, g));
}

CurveFn pow(const Field& F, const Curve& E, const CurveFn& f, unsigned n)
{
    CurveFn r = constant(F, F.one());
    for (unsigned i = 0; i < n; ++i) {
        r = mul(F, E, r, f);
    }
    return r;
}

bool is_zero(const CurveFn& f)
{
    return f.a.is_zero() && f.b.is_zero();
}

bool is_constant(const CurveFn& f)
{
    return f.b.is_zero() && f.a.degree() <= 0 && f.c.degree() == 0;
}

int valuation(const Field& F, const Curve& E, const CurveFn& f, const Pt& P)
{
    if (is_zero(f)) {
        throw Error(ErrorCode::ZeroFunction, "valuation of the zero function");
    }
    if (P.inf) {
        int num = std::max(f.a.is_zero() ? -1000000 : 2 * f.a.degree(), f.b.is_zero() ? -1000000 : 2 * f.b.degree() + 3);
        return -num + 2 * f.c.degree();
    }
    auto [num, den] = fn_series(F, E, f, P);
    std::size_t vn = s_ord(num), vd = s_ord(den);
    if (vn == num.size()) {
        throw Error(ErrorCode::DegenerateSystem, "series precision exhausted at " + to_string(P));
    }
    return static_cast<int>(vn) - static_cast<int>(vd);
}

Value eval(const Field& F, const Curve& E, const CurveFn& f, const Pt& P)
{
    if (is_zero(f)) {
        return Fe(0);
    }
    if (P.inf) {
        int v = valuation(F, E, f, P);
        if (v > 0) {
            return Fe(0);
        }
        if (v < 0) {
            return std::nullopt;
        }
        return F.div(f.a.lead(), f.c.lead());
    }
    Fe cv = poly::eval(F, f.c, P.x);
    if (!cv.is_zero()) {
        return F.div(F.add(poly::eval(F, f.a, P.x), F.mul(poly::eval(F, f.b, P.x), P.y)), cv);
    }
    auto [num, den] = fn_series(F, E, f, P);
    std::size_t vn = s_ord(num), vd = s_ord(den);
    if (vn < vd) {
        return std::nullopt;
    }
    if (vn > vd) {
        return Fe(0);
    }
    return F.div(num[vn], den[vd]);
}

std::string to_string(const CurveFn& f)
{
    std::string num;
    if (f.b.is_zero()) {
        num = poly::to_string(f.a, "x");
    } else if (f.a.is_zero()) {
        num = "(" + poly::to_string(f.b, "x") + ")*y";
    } else {
        num = poly::to_string(f.a, "x") + " + (" + poly::to_string(f.b, "x") + ")*y";
    }
    if (f.c.degree() == 0) {
        return num;
    }
    return "(" + num + ")/(" + poly::to_string(f.c, "x") + ")";
}

}  // namespace fn

std::vector<CurveFn> rr_basis(const Field& F, const Curve& E, const Divisor& D, const std::vector<Pt>& points)
{
    int degD = degree(D);
    if (degD < 1) {
        throw Error(ErrorCode::DegenerateSystem, "deg D must be >= 1");
    }
    // vertical-line denominator clearing the affine poles
    std::map<Fe, int> xexp;
    int nO = 0;
    for (const auto& [P, n] : D) {
        if (P.inf) {
            nO = n;
        } else if (n > 0) {
            xexp[P.x] = std::max(xexp[P.x], n);
        }
    }
    Poly h = Poly::constant(F.one());
    for (const auto& [x0, e] : xexp) {
        h = poly::mul(F, h, poly::pow(F, Poly({F.neg(x0), F.one()}), static_cast<unsigned>(e)));
    }
    int B = nO + 2 * h.degree();
    if (B < 0) {
        throw Error(ErrorCode::DegenerateSystem, "negative pole budget at O");
    }
    int da = B / 2;
    int db = B >= 3 ? (B - 3) / 2 : -1;
    std::size_t na = static_cast<std::size_t>(da + 1), nb = static_cast<std::size_t>(db + 1);
    std::size_t unknowns = na + nb;

    Matrix M(0, unknowns);
    CurveFn hfn = fn::make(F, h, Poly(), Poly::constant(F.one()));
    for (const auto& P : points) {
        if (P.inf) {
            continue;
        }
        int nP = D.count(P) ? D.at(P) : 0;
        int vh = xexp.count(P.x) ? fn::valuation(F, E, hfn, P) : 0;
        int need = vh - nP;
        if (need <= 0) {
            continue;
        }
        std::size_t prec = static_cast<std::size_t>(need);
        auto [X, Y] = local_expansion(F, E, P, std::max<std::size_t>(prec, 2));
        X.resize(prec);
        Y.resize(prec);
        std::vector<Series> cols;
        Series xp = s_const(prec, F.one());
        for (std::size_t i = 0; i < std::max(na, nb); ++i) {
            if (i < na) {
                cols.resize(std::max(cols.size(), i + 1));
            }
            if (i > 0) {
                xp = s_mul(F, xp, X);
            }
            if (i < na) {
                cols[i] = xp;
            }
            if (i < nb) {
                cols.resize(std::max(cols.size(), na + i + 1));
                cols[na + i] = s_mul(F, xp, Y);
            }
        }
        for (std::size_t o = 0; o < prec; ++o) {
            std::vector<Fe> row(unknowns);
            for (std::size_t u = 0; u < unknowns; ++u) {
                row[u] = cols[u][o];
            }
            M.append_row(row);
        }
    }
    std::vector<std::vector<Fe>> ker;
    if (M.rows() == 0) {
        for (std::size_t u = 0; u < unknowns; ++u) {
            std::vector<Fe> v(unknowns, Fe(0));
            v[u] = F.one();
            ker.push_back(v);
        }
    } else {
        ker = linalg::kernel(F, M);
    }
    if (static_cast<int>(ker.size()) != degD) {
        throw Error(ErrorCode::DegenerateSystem,
                    "dim L(D) = " + std::to_string(ker.size()) + " but deg D = " + std::to_string(degD));
    }
    std::vector<CurveFn> basis;
    for (const auto& v : ker) {
        std::vector<Fe> a(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(na));
        std::vector<Fe> b(v.begin() + static_cast<std::ptrdiff_t>(na), v.end());
        basis.push_back(fn::make(F, Poly(a), Poly(b), h));
    }
    for (const auto& f : basis) {
        for (const auto& P : points) {
            int nP = D.count(P) ? D.at(P) : 0;
            if (fn::valuation(F, E, f, P) < -nP) {
                throw Error(ErrorCode::DegenerateSystem, "basis element " + fn::to_string(f) +
                                                             " fails the valuation audit at " + to_string(P));
            }
        }
    }
    return basis;
}

const char* to_string(Recipe::Kind k)
{
    switch (k) {
    case Recipe::Kind::Negation: return "negation";
    case Recipe::Kind::Zeta3: return "zeta3";
    case Recipe::Kind::Dihedral: return "dihedral";
    case Recipe::Kind::Explicit: return "explicit";
    }
    return "negation";
}

namespace {

std::size_t index_of(const std::vector<Pt>& points, const Pt& P)
{
    auto it = std::lower_bound(points.begin(), points.end(), P);
    if (it == points.end() || !(*it == P)) {
        throw Error(ErrorCode::RecipeInapplicable, "image point " + to_string(P) + " is not on the curve");
    }
    return static_cast<std::size_t>(it - points.begin());
}

template <typename Map>
CurveAut from_map(const std::vector<Pt>& points, Map&& m, std::string descriptor)
{
    CurveAut a;
    a.descriptor = std::move(descriptor);
    for (const auto& P : points) {
        a.perm.push_back(index_of(points, m(P)));
    }
    return a;
}

std::vector<std::size_t> compose(const std::vector<std::size_t>& s, const std::vector<std::size_t>& t)
{
    std::vector<std::size_t> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        out[i] = s[t[i]];
    }
    return out;
}

void check_bijection(const CurveAut& a)
{
    std::vector<bool> hit(a.perm.size(), false);
    for (auto i : a.perm) {
        if (hit[i]) {
            throw Error(ErrorCode::RecipeInapplicable, a.descriptor + " is not a bijection on E(F_q)");
        }
        hit[i] = true;
    }
}

// Closure of the generators; identity first, then discovery order.
std::vector<CurveAut> closure(const std::vector<CurveAut>& gens, std::size_t npts)
{
    std::vector<CurveAut> out;
    std::set<std::vector<std::size_t>> seen;
    CurveAut id;
    id.descriptor = "identity";
    for (std::size_t i = 0; i < npts; ++i) {
        id.perm.push_back(i);
    }
    out.push_back(id);
    seen.insert(id.perm);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& g : gens) {
            auto p = compose(g.perm, out[i].perm);
            if (seen.insert(p).second) {
                CurveAut a;
                a.perm = p;
                a.descriptor = out[i].descriptor == "identity" ? g.descriptor
                                                               : "Composite(" + g.descriptor + "," + out[i].descriptor + ")";
                out.push_back(a);
            }
        }
    }
    return out;
}

bool has_ramification(const std::vector<CurveAut>& G)
{
    for (std::size_t e = 1; e < G.size(); ++e) {
        for (std::size_t i = 0; i < G[e].perm.size(); ++i) {
            if (G[e].perm[i] == i) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<CurveAut> make_subgroup(const Field& F, const Curve& E, const std::vector<Pt>& points, const Recipe& recipe)
{
    std::vector<CurveAut> G;
    CurveAut id;
    id.descriptor = "identity";
    for (std::size_t i = 0; i < points.size(); ++i) {
        id.perm.push_back(i);
    }
    switch (recipe.kind) {
    case Recipe::Kind::Negation:
        G = {id, from_map(points, [&](const Pt& P) { return neg(F, E, P); }, "Negation")};
        break;
    case Recipe::Kind::Zeta3: {
        if (!E.a1.is_zero() || !E.a2.is_zero() || !E.a3.is_zero() || !E.a4.is_zero()) {
            throw Error(ErrorCode::RecipeInapplicable, "zeta3 needs a curve y^2 = x^3 + a6");
        }
        Fe z = recipe.zeta;
        if (z == F.one() || F.pow(z, 3) != F.one()) {
            throw Error(ErrorCode::RecipeInapplicable, "zeta must be a primitive cube root of unity");
        }
        Fe z2 = F.mul(z, z);
        G = {id,
             from_map(points, [&](const Pt& P) { return P.inf ? P : Pt::affine(F.mul(z, P.x), P.y); },
                      "TwistZeta3(" + std::to_string(z.v) + ")"),
             from_map(points, [&](const Pt& P) { return P.inf ? P : Pt::affine(F.mul(z2, P.x), P.y); },
                      "TwistZeta3(" + std::to_string(z2.v) + ")")};
        break;
    }
    case Recipe::Kind::Dihedral: {
        std::optional<Pt> T;
        for (const auto& P : points) {
            if (point_order(F, E, P) == recipe.m) {
                T = P;
                break;
            }
        }
        if (!T) {
            throw Error(ErrorCode::RecipeInapplicable, "no point of order " + std::to_string(recipe.m));
        }
        std::vector<Pt> sub;
        for (unsigned i = 0; i < recipe.m; ++i) {
            sub.push_back(smul(F, E, i, *T));
        }
        G.push_back(id);
        for (const auto& Q : sub) {
            if (!Q.inf) {
                G.push_back(from_map(points, [&](const Pt& P) { return add(F, E, P, Q); },
                                     "TranslationBy" + to_string(Q)));
            }
        }
        for (const auto& Q : sub) {
            G.push_back(from_map(points, [&](const Pt& P) { return add(F, E, Q, neg(F, E, P)); },
                                 "Composite(TranslationBy" + to_string(Q) + ",Negation)"));
        }
        break;
    }
    case Recipe::Kind::Explicit: {
        std::vector<CurveAut> gens;
        for (const auto& m : recipe.maps) {
            CurveAut a;
            a.descriptor = "ExplicitMaps(" + fn::to_string(m.xmap) + ", " + fn::to_string(m.ymap) + ")";
            std::vector<bool> hit(points.size(), false);
            std::size_t o_index = points.size() - 1;
            for (const auto& P : points) {
                if (P.inf) {
                    a.perm.push_back(o_index);  // fixed below
                    continue;
                }
                Value xv = fn::eval(F, E, m.xmap, P);
                Value yv = fn::eval(F, E, m.ymap, P);
                Pt img = (!xv || !yv) ? Pt::O() : Pt::affine(*xv, *yv);
                if (!on_curve(F, E, img)) {
                    throw Error(ErrorCode::RecipeInapplicable, a.descriptor + " maps " + to_string(P) + " off the curve");
                }
                std::size_t j = index_of(points, img);
                a.perm.push_back(j);
                hit[j] = true;
            }
            // O goes to the single point not hit by an affine point
            std::size_t missing = points.size();
            for (std::size_t j = 0; j < points.size(); ++j) {
                if (!hit[j]) {
                    if (missing != points.size()) {
                        throw Error(ErrorCode::RecipeInapplicable, a.descriptor + " is not a bijection");
                    }
                    missing = j;
                }
            }
            if (missing == points.size()) {
                throw Error(ErrorCode::RecipeInapplicable, a.descriptor + " is not a bijection");
            }
            a.perm[o_index] = missing;
            gens.push_back(a);
        }
        G = closure(gens, points.size());
        if (recipe.order != 0 && G.size() != recipe.order) {
            throw Error(ErrorCode::RecipeInapplicable, "generated group has order " + std::to_string(G.size()) +
                                                           ", declared " + std::to_string(recipe.order));
        }
        break;
    }
    }
    for (const auto& a : G) {
        check_bijection(a);
    }
    // closure: the recipe's list must already be the whole group
    auto cl = closure(G, points.size());
    if (cl.size() != G.size()) {
        throw Error(ErrorCode::RecipeInapplicable, std::string(to_string(recipe.kind)) + " elements do not form a group");
    }
    if (!has_ramification(G)) {
        throw Error(ErrorCode::RecipeInapplicable, "no fixed point on E(F_q); quotient not certified rational");
    }
    return G;
}

CurvePartition orbit_partition_curve(const std::vector<CurveAut>& G, const std::vector<Pt>& points, unsigned s)
{
    CurvePartition part;
    std::size_t order = G.size();
    unsigned r = static_cast<unsigned>(order - 1);
    long long N = static_cast<long long>(points.size());
    part.orbit_bound = static_cast<int>((N - 2 * static_cast<long long>(r) - 4) / static_cast<long long>(r + 1));
    std::vector<bool> seen(points.size(), false);
    std::vector<std::vector<std::size_t>> free;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        std::set<std::size_t> orbit;
        for (const auto& g : G) {
            orbit.insert(g.perm[i]);
        }
        for (auto j : orbit) {
            seen[j] = true;
        }
        if (orbit.size() == order) {
            free.emplace_back(orbit.begin(), orbit.end());
        }
    }
    part.free_orbits = free.size();
    if (free.size() < std::size_t(s) + 1) {
        throw Error(ErrorCode::NotEnoughFreeOrbits, "need " + std::to_string(s + 1) + " free orbits (pole block + " +
                                                        std::to_string(s) + "), found " + std::to_string(free.size()));
    }
    part.pole_block = free[0];
    for (unsigned u = 1; u <= s; ++u) {
        part.blocks.push_back(free[u]);
    }
    return part;
}

}  // namespace lrc::elliptic
