#include "lrc/rational.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lrc/error.hpp"

namespace lrc::rational {

const char* to_string(Family f)
{
    switch (f) {
    case Family::Base: return "Base";
    case Family::ExtendOne: return "ExtendOne";
    case Family::ExtendAll: return "ExtendAll";
    case Family::RLOne: return "RLOne";
    case Family::RLAll: return "RLAll";
    case Family::ModExtendOne: return "ModExtendOne";
    case Family::ModExtendAll: return "ModExtendAll";
    }
    return "Base";
}

const char* to_string(SubgroupCase c)
{
    switch (c) {
    case SubgroupCase::Multiplicative: return "multiplicative";
    case SubgroupCase::Additive: return "additive";
    case SubgroupCase::Semidirect: return "semidirect";
    case SubgroupCase::CyclicQPlus1: return "cyclic_q_plus_1";
    }
    return "multiplicative";
}

std::optional<Family> family_from_string(const std::string& s)
{
    for (auto f : {Family::Base, Family::ExtendOne, Family::ExtendAll, Family::RLOne, Family::RLAll,
                   Family::ModExtendOne, Family::ModExtendAll}) {
        if (s == to_string(f)) {
            return f;
        }
    }
    return std::nullopt;
}

std::optional<SubgroupCase> case_from_string(const std::string& s)
{
    for (auto c : {SubgroupCase::Multiplicative, SubgroupCase::Additive, SubgroupCase::Semidirect,
                   SubgroupCase::CyclicQPlus1}) {
        if (s == to_string(c)) {
            return c;
        }
    }
    return std::nullopt;
}

bool is_modified(Family f)
{
    return f == Family::ModExtendOne || f == Family::ModExtendAll;
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    while (e--) {
        r *= b;
    }
    return r;
}

// (u, v) with r + 1 = u p^v and p not dividing u.
std::pair<std::uint64_t, unsigned> split_p(std::uint64_t n, std::uint32_t p)
{
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return {n, v};
}

}  // namespace

RConditions r_conditions(std::uint32_t p, std::uint32_t m, unsigned r)
{
    RConditions c;
    std::uint64_t q = ipow(p, m);
    std::uint64_t n = std::uint64_t(r) + 1;
    auto [u, v] = split_p(n, p);
    c.additive = u == 1 && v >= 1 && v <= m;
    c.multiplicative = (q - 1) % n == 0;
    c.semidirect = u > 1 && v >= 1 && v <= m && (q - 1) % u == 0;
    c.cyclic = (q + 1) % n == 0;
    return c;
}

int max_s(Family f, std::uint32_t q, unsigned r)
{
    long long qq = q, rr = r;
    if (is_modified(f)) {
        return (qq + 1) % (rr + 1) == 0 ? static_cast<int>((qq + 1) / (rr + 1)) : 0;
    }
    long long num = qq + 1 - 2 * rr;
    if (num < 0) {
        return -1;
    }
    return static_cast<int>(num / (rr + 1));
}

ParamReport validate_params(Family f, std::uint32_t p, std::uint32_t m, unsigned r, unsigned s, unsigned t)
{
    ParamReport rep;
    std::uint32_t q = static_cast<std::uint32_t>(ipow(p, m));
    auto check = [&](bool ok, const std::string& what) {
        (ok ? rep.satisfied : rep.violations).push_back(what);
        rep.ok = rep.ok && ok;
    };
    check(r >= 1, "r >= 1");
    if (f == Family::RLOne || f == Family::RLAll) {
        check(r >= 2, "r >= 2 (two appended coefficient rows)");
    }
    check(t >= 1 && t <= s, "1 <= t <= s");
    check(s >= 2, "s >= 2");
    auto c = r_conditions(p, m, r);
    int smax = max_s(f, q, r);
    if (is_modified(f)) {
        check(c.cyclic, "(r+1) | (q+1)");
        check(static_cast<int>(s) <= smax, "s <= (q+1)/(r+1) = " + std::to_string(smax));
    } else {
        check(static_cast<int>(s) <= smax, "s <= floor((q+1-2r)/(r+1)) = " + std::to_string(smax));
        check(c.any_affine(), "r = p^v - 1, (r+1) | (q-1) or r+1 = u p^v with u | (q-1)");
    }
    return rep;
}

void require_params(Family f, std::uint32_t p, std::uint32_t m, unsigned r, unsigned s, unsigned t)
{
    auto rep = validate_params(f, p, m, r, s, t);
    if (!rep.ok) {
        throw Error(ErrorCode::ParamViolation, rep.violations.front() + " violated (r = " + std::to_string(r) +
                                                   ", s = " + std::to_string(s) + ", t = " + std::to_string(t) +
                                                   ")");
    }
}

Mobius quadratic_map(const Field& F, Fe a, Fe b)
{
    return mobius::make(F, Fe(0), F.one(), F.neg(b), F.neg(a));
}

std::pair<Fe, Fe> irreducible_quadratic(const Field& F)
{
    const std::uint32_t q = F.q();
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 1; b < q; ++b) {
            Poly f({Fe(b), Fe(a), F.one()});
            bool root = false;
            for (std::uint32_t x = 0; x < q && !root; ++x) {
                root = poly::eval(F, f, Fe(x)).is_zero();
            }
            if (root) {
                continue;
            }
            if (mobius::order(F, quadratic_map(F, Fe(a), Fe(b))) == q + 1) {
                return {Fe(a), Fe(b)};
            }
        }
    }
    throw Error(ErrorCode::NoSubgroupFound, "no quadratic of order q + 1");
}

bool is_group(const Field& F, const AutSubgroup& G)
{
    std::set<Mobius> S(G.elements.begin(), G.elements.end());
    if (S.size() != G.elements.size() || !S.count(mobius::identity())) {
        return false;
    }
    for (const auto& a : G.elements) {
        if (!S.count(mobius::inverse(F, a))) {
            return false;
        }
        for (const auto& b : G.elements) {
            if (!S.count(mobius::compose(F, a, b))) {
                return false;
            }
        }
    }
    return true;
}

AutSubgroup find_subgroup(SubgroupCase c, const Field& F, unsigned r)
{
    const std::uint32_t q = F.q(), p = F.p();
    const std::uint64_t n = std::uint64_t(r) + 1;
    AutSubgroup G;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::NoSubgroupFound, std::string(to_string(c)) + " subgroup of order " +
                                                    std::to_string(n) + " over GF(" + std::to_string(q) +
                                                    "): " + why);
    };
    switch (c) {
    case SubgroupCase::Multiplicative: {
        if ((q - 1) % n != 0) {
            fail("(r+1) does not divide q-1");
        }
        Fe zeta = F.pow(F.primitive(), (q - 1) / n);
        for (std::uint64_t i = 0; i < n; ++i) {
            G.elements.push_back(mobius::make(F, F.pow(zeta, static_cast<std::int64_t>(i)), Fe(0), Fe(0), F.one()));
        }
        break;
    }
    case SubgroupCase::Additive: {
        auto [u, v] = split_p(n, p);
        if (u != 1 || v > F.m()) {
            fail("r+1 is not p^v with v <= m");
        }
        for (std::uint64_t h = 0; h < n; ++h) {
            G.elements.push_back(mobius::make(F, F.one(), Fe(static_cast<std::uint32_t>(h)), Fe(0), F.one()));
        }
        break;
    }
    case SubgroupCase::Semidirect: {
        auto [u, v] = split_p(n, p);
        if (u <= 1 || v == 0 || v > F.m() || (q - 1) % u != 0) {
            fail("r+1 is not u p^v with u | (q-1), u > 1, v >= 1");
        }
        unsigned e = 1;
        for (std::uint64_t pe = p % u; pe != 1 % u; pe = pe * p % u) {
            ++e;
        }
        if (v % e != 0) {
            fail("H must be a GF(p^" + std::to_string(e) + ")-space but v = " + std::to_string(v));
        }
        // GF(p^e) inside GF(q), and H = GF(p^e)-span of 1, g, ..., g^(v/e - 1)
        std::uint64_t pe = ipow(p, e);
        Fe g = F.primitive();
        std::vector<Fe> sub{Fe(0)};
        Fe gen = F.pow(g, static_cast<std::int64_t>((q - 1) / (pe - 1)));
        for (std::uint64_t i = 0; i + 1 < pe; ++i) {
            sub.push_back(F.pow(gen, static_cast<std::int64_t>(i)));
        }
        unsigned dim = v / e;
        std::vector<Fe> H{Fe(0)};
        for (unsigned i = 0; i < dim; ++i) {
            Fe basis = F.pow(g, i);
            std::vector<Fe> next;
            for (Fe h : H) {
                for (Fe a : sub) {
                    next.push_back(F.add(h, F.mul(a, basis)));
                }
            }
            H = std::move(next);
        }
        std::sort(H.begin(), H.end());
        Fe zeta = F.pow(g, static_cast<std::int64_t>((q - 1) / u));
        for (std::uint64_t i = 0; i < u; ++i) {
            Fe z = F.pow(zeta, static_cast<std::int64_t>(i));
            for (Fe h : H) {
                G.elements.push_back(mobius::make(F, z, h, Fe(0), F.one()));
            }
        }
        break;
    }
    case SubgroupCase::CyclicQPlus1: {
        if ((q + 1) % n != 0) {
            fail("(r+1) does not divide q+1");
        }
        auto [a, b] = irreducible_quadratic(F);
        Mobius sigma = quadratic_map(F, a, b);
        Mobius tau = mobius::identity();
        for (std::uint64_t i = 0; i < (q + 1) / n; ++i) {
            tau = mobius::compose(F, sigma, tau);
        }
        Mobius cur = mobius::identity();
        for (std::uint64_t i = 0; i < n; ++i) {
            G.elements.push_back(cur);
            cur = mobius::compose(F, tau, cur);
        }
        break;
    }
    }
    if (G.order() != n || !is_group(F, G)) {
        fail("closure check failed");
    }
    return G;
}

RatFn invariant_function(const Field& F, const AutSubgroup& G)
{
    const std::size_t n = G.order();
    // elementary symmetric functions of {sigma(x)}
    std::vector<RatFn> E(n + 1, ratfn::constant(F, Fe(0)));
    E[0] = ratfn::constant(F, F.one());
    for (const auto& s : G.elements) {
        RatFn sx = mobius::as_ratfn(F, s);
        for (std::size_t k = n; k >= 1; --k) {
            E[k] = ratfn::add(F, E[k], ratfn::mul(F, E[k - 1], sx));
        }
    }
    std::vector<std::size_t> order{n};
    for (std::size_t k = 1; k < n; ++k) {
        order.push_back(k);
    }
    for (auto k : order) {
        const RatFn& w = E[k];
        if (ratfn::is_constant(w) || ratfn::degree(w) != static_cast<int>(n)) {
            continue;
        }
        bool inv = std::all_of(G.elements.begin(), G.elements.end(),
                               [&](const Mobius& s) { return mobius::pullback(F, s, w) == w; });
        if (inv) {
            return w;
        }
    }
    throw Error(ErrorCode::NoInvariantFound, "all symmetric functions degenerate");
}

BlockPartition orbit_partition(const Field& F, const AutSubgroup& G, const RatFn& w, unsigned s, bool allow_infinity)
{
    const std::uint32_t q = F.q();
    BlockPartition part;
    std::vector<bool> seen(q + 1, false);
    std::vector<std::vector<PlaceP1>> free;
    for (std::uint32_t e = 0; e <= q; ++e) {
        if (seen[e]) {
            continue;
        }
        PlaceP1 P = e == q ? PlaceP1::infinity() : PlaceP1::finite(Fe(e));
        std::set<PlaceP1> orbit;
        for (const auto& sg : G.elements) {
            orbit.insert(mobius::act(F, sg, P));
        }
        for (const auto& x : orbit) {
            seen[x.encode(q)] = true;
        }
        if (orbit.size() < G.order()) {
            part.ramified_places += orbit.size();
            continue;
        }
        ++part.free_orbits;
        if (!allow_infinity && orbit.count(PlaceP1::infinity())) {
            continue;
        }
        free.emplace_back(orbit.begin(), orbit.end());
    }
    if (free.size() < s) {
        throw Error(ErrorCode::NotEnoughFreeOrbits,
                    "need " + std::to_string(s) + " free orbits, found " + std::to_string(free.size()));
    }
    std::set<PlaceP1> labels;
    for (unsigned u = 0; u < s; ++u) {
        const auto& blk = free[u];
        Value first = ratfn::eval(F, w, blk.front());
        for (const auto& P : blk) {
            if (ratfn::eval(F, w, P) != first) {
                throw Error(ErrorCode::NoInvariantFound, "invariant function not constant on block " + std::to_string(u));
            }
        }
        PlaceP1 lab = first ? PlaceP1::finite(*first) : PlaceP1::infinity();
        if (!labels.insert(lab).second) {
            throw Error(ErrorCode::NoInvariantFound, "invariant function repeats a block label");
        }
        part.blocks.push_back(blk);
        part.labels.push_back(lab);
    }
    return part;
}

FunctionBasis build_basis(const Field& F, const RatFn& w, const BlockPartition& part, unsigned t,
                          std::optional<std::size_t> vanishing_block, BasisVariant variant)
{
    FunctionBasis B;
    B.vanishing_block = vanishing_block;
    auto wpow = [&](unsigned e) { return ratfn::pow(F, w, static_cast<int>(e)); };
    if (!vanishing_block) {
        for (unsigned j = 1; j <= t; ++j) {
            B.f.push_back(wpow(j - 1));
            B.degree_profile.push_back(static_cast<int>(j - 1));
        }
        return B;
    }
    const PlaceP1& lab = part.labels.at(*vanishing_block);
    if (lab.infinite) {
        throw Error(ErrorCode::ParamViolation, "vanishing block must have a finite label");
    }
    RatFn wb = ratfn::sub(F, w, ratfn::constant(F, lab.alpha));
    unsigned vanishing = variant == BasisVariant::Strict ? (t >= 2 ? t - 2 : 0) : t - 1;
    for (unsigned j = 1; j <= vanishing; ++j) {
        B.f.push_back(ratfn::mul(F, wb, wpow(j - 1)));
        B.degree_profile.push_back(static_cast<int>(j));
    }
    if (variant == BasisVariant::Strict && t >= 2) {
        B.f.push_back(ratfn::constant(F, F.one()));
        B.degree_profile.push_back(0);
        B.f.push_back(wpow(t - 1));
        B.degree_profile.push_back(static_cast<int>(t - 1));
    } else {
        B.f.push_back(ratfn::constant(F, F.one()));
        B.degree_profile.push_back(0);
    }
    return B;
}

namespace {

FunctionBasis modified_basis(const Field& F, const RatFn& x1, unsigned t)
{
    FunctionBasis B;
    B.vanishing_block = std::nullopt;
    for (unsigned j = 1; j <= t; ++j) {
        B.f.push_back(ratfn::pow(F, x1, static_cast<int>(j - 1)));
        B.degree_profile.push_back(static_cast<int>(j - 1));
    }
    return B;
}

std::string join_places(const std::vector<PlaceP1>& blk)
{
    std::string s = "{";
    for (std::size_t i = 0; i < blk.size(); ++i) {
        s += (i ? "," : "") + to_string(blk[i]);
    }
    return s + "}";
}

}  // namespace

RationalCodePlan make_plan(FieldPtr Fp, Family family, SubgroupCase c, unsigned r, unsigned s, unsigned t,
                           PlanOptions options)
{
    const Field& F = *Fp;
    require_params(family, F.p(), F.m(), r, s, t);
    bool modified = is_modified(family);
    if (modified != (c == SubgroupCase::CyclicQPlus1)) {
        throw Error(ErrorCode::ParamViolation,
                    std::string("subgroup case ") + to_string(c) + " does not serve family " + to_string(family) +
                        " (modified families use cyclic_q_plus_1, the others an affine case)");
    }
    RationalCodePlan plan;
    plan.family = family;
    plan.field = Fp;
    plan.r = r;
    plan.s = s;
    plan.t = t;
    plan.sub_case = c;
    plan.options = options;

    plan.group = find_subgroup(c, F, r);
    plan.log.push_back({"subgroup closure", true,
                        std::string(to_string(c)) + ", order " + std::to_string(plan.group.order())});
    plan.w = invariant_function(F, plan.group);
    plan.log.push_back({"invariant function", true, "w = " + ratfn::to_string(plan.w)});

    plan.partition = orbit_partition(F, plan.group, plan.w, s, modified);
    {
        std::string d;
        for (const auto& blk : plan.partition.blocks) {
            d += join_places(blk);
        }
        plan.log.push_back({"free orbits", true,
                            std::to_string(plan.partition.free_orbits) + " free, " +
                                std::to_string(plan.partition.ramified_places) + " ramified places; blocks " + d});
    }
    if (!modified) {
        bool inf_out = true;
        for (const auto& blk : plan.partition.blocks) {
            inf_out = inf_out && !std::count(blk.begin(), blk.end(), PlaceP1::infinity());
        }
        plan.log.push_back({"Infinity outside evaluation blocks", inf_out, "no re-coordination required"});
    }

    // separating function
    if (modified) {
        const PlaceP1& P21 = plan.partition.blocks[1].front();
        if (P21.infinite) {
            plan.z = ratfn::x(F);
        } else {
            plan.z = ratfn::inv(F, ratfn::from_poly(F, Poly({F.neg(P21.alpha), F.one()})));
        }
    } else {
        plan.z = ratfn::x(F);
    }
    for (std::size_t u = 0; u < plan.partition.blocks.size(); ++u) {
        std::set<Value> vals;
        for (const auto& P : plan.partition.blocks[u]) {
            vals.insert(ratfn::eval(F, plan.z, P));
        }
        if (vals.size() != r + 1) {
            throw Error(ErrorCode::SeparationFailure, "z is not injective on block " + std::to_string(u));
        }
    }
    plan.log.push_back({"z separates every block", true, "z = " + ratfn::to_string(plan.z)});

    // basis
    RatFn x1;
    if (modified) {
        const PlaceP1& b1 = plan.partition.labels[0];
        x1 = b1.infinite ? plan.w : ratfn::inv(F, ratfn::sub(F, plan.w, ratfn::constant(F, b1.alpha)));
        plan.basis = modified_basis(F, x1, t);
    } else if (family == Family::ExtendOne || family == Family::RLOne) {
        plan.basis = build_basis(F, plan.w, plan.partition, t, 0, options.basis);
    } else {
        plan.basis = build_basis(F, plan.w, plan.partition, t, std::nullopt);
    }
    bool invariant = true;
    for (const auto& f : plan.basis.f) {
        for (const auto& sg : plan.group.elements) {
            invariant = invariant && mobius::pullback(F, sg, f) == f;
        }
    }
    plan.log.push_back({"basis invariant under the subgroup", invariant, std::to_string(t) + " functions"});
    bool constant = true;
    for (const auto& f : plan.basis.f) {
        for (const auto& blk : plan.partition.blocks) {
            Value v0 = ratfn::eval(F, f, blk.front());
            for (const auto& P : blk) {
                constant = constant && ratfn::eval(F, f, P) == v0;
            }
        }
    }
    plan.log.push_back({"basis constant on blocks", constant, ""});
    if (modified) {
        std::set<int> orders(plan.basis.degree_profile.begin(), plan.basis.degree_profile.end());
        plan.log.push_back({"basis independent (distinct pole orders at Q_1)", orders.size() == t, ""});
    } else {
        Matrix E(t, s);
        for (unsigned j = 0; j < t; ++j) {
            for (unsigned u = 0; u < s; ++u) {
                E.at(j, u) = *ratfn::eval(F, plan.basis.f[j], plan.partition.blocks[u].front());
            }
        }
        std::size_t rk = linalg::rank(F, E);
        plan.log.push_back({"basis independent (evaluation rank at Q_1..Q_s)", rk == t, "rank " + std::to_string(rk)});
    }
    if (plan.basis.vanishing_block) {
        std::size_t u = *plan.basis.vanishing_block;
        bool vanish = true;
        std::size_t nv = options.basis == BasisVariant::Strict ? (t >= 2 ? t - 2 : 0) : t - 1;
        for (std::size_t j = 0; j < nv; ++j) {
            vanish = vanish && ratfn::eval(F, plan.basis.f[j], plan.partition.blocks[u].front()) == Value(Fe(0));
        }
        Value ft = ratfn::eval(F, plan.basis.f.back(), plan.partition.blocks[u].front());
        vanish = vanish && ft && !ft->is_zero();
        plan.log.push_back({"basis vanishes on block 1 except f_t", vanish,
                            options.basis == BasisVariant::Strict ? "strict variant" : "default variant"});
    }

    if (modified) {
        RatFn pi1 = ratfn::inv(F, x1);
        RatFn pi2 = ratfn::inv(F, plan.z);
        for (unsigned v = 0; v <= r; ++v) {
            plan.modifiers.push_back({v, pi1, static_cast<int>(t) - 1});
        }
        plan.modifiers.push_back({std::size_t(r) + 1, pi2, static_cast<int>(r) - 1});
    }
    return plan;
}

namespace {

struct Builder {
    const RationalCodePlan& plan;
    const Field& F;
    unsigned r, s, t;
    std::size_t n_eval;
    EvaluatedCode code;

    explicit Builder(const RationalCodePlan& p)
        : plan(p), F(*p.field), r(p.r), s(p.s), t(p.t), n_eval(std::size_t(p.s) * (p.r + 1))
    {
        code.field = p.field;
        code.k = std::size_t(r) * t;
        code.log = p.log;
    }

    const PlaceP1& place(std::size_t pos) const { return plan.partition.blocks[pos / (r + 1)][pos % (r + 1)]; }

    const Modifier* modifier(std::size_t pos) const
    {
        for (const auto& m : plan.modifiers) {
            if (m.position == pos) {
                return &m;
            }
        }
        return nullptr;
    }

    // (Q_u value of) f_j scaled by an optional modifier power.
    Fe fj_at_block(unsigned j, std::size_t u, const RatFn* mult = nullptr, int e = 0) const
    {
        RatFn g = plan.basis.f[j - 1];
        if (mult) {
            g = ratfn::mul(F, ratfn::pow(F, *mult, e), g);
        }
        Value v = ratfn::eval(F, g, plan.partition.blocks[u].front());
        if (!v) {
            throw Error(ErrorCode::PoleCancellationFailure, "f_" + std::to_string(j) + " has a pole at Q_" +
                                                                std::to_string(u + 1));
        }
        return *v;
    }

    void evaluation_columns(std::size_t n_total)
    {
        code.n = n_total;
        code.G = Matrix(code.k, n_total);
        bool finite = true;
        for (std::size_t pos = 0; pos < n_eval; ++pos) {
            const PlaceP1& P = place(pos);
            const Modifier* mod = modifier(pos);
            for (unsigned i = 0; i < r; ++i) {
                for (unsigned j = 1; j <= t; ++j) {
                    Fe val;
                    if (mod) {
                        RatFn g = ratfn::mul(F, ratfn::pow(F, mod->multiplier, mod->exponent),
                                             ratfn::mul(F, plan.basis.f[j - 1], ratfn::pow(F, plan.z, static_cast<int>(i))));
                        Value v = ratfn::eval(F, g, P);
                        if (!v) {
                            finite = false;
                            throw Error(ErrorCode::PoleCancellationFailure,
                                        "modified evaluation at place " + to_string(P) + " still has a pole");
                        }
                        val = *v;
                    } else {
                        Value fv = ratfn::eval(F, plan.basis.f[j - 1], P);
                        Value zv = ratfn::eval(F, plan.z, P);
                        if (!fv || !zv) {
                            throw Error(ErrorCode::PoleCancellationFailure, "pole at evaluation place " + to_string(P));
                        }
                        val = F.mul(*fv, F.pow(*zv, i));
                    }
                    code.G.at(plan.message_index(i, j), pos) = val;
                }
            }
        }
        if (!plan.modifiers.empty()) {
            code.log.push_back({"all modified evaluations finite", finite,
                                std::to_string(plan.modifiers.size()) + " modified positions"});
        }
    }

    std::vector<Fe> vandermonde_row(std::size_t pos) const
    {
        std::vector<Fe> row(r, Fe(0));
        Value zv = ratfn::eval(F, plan.z, place(pos));
        if (!zv) {
            // the pole of z: only the top coefficient survives the modifier
            row[r - 1] = F.one();
            return row;
        }
        for (unsigned i = 0; i < r; ++i) {
            row[i] = F.pow(*zv, i);
        }
        return row;
    }

    std::vector<Fe> unit_row(unsigned i, Fe scale) const
    {
        std::vector<Fe> row(r, Fe(0));
        row[i] = scale;
        return row;
    }

    // Evaluation groups; extra[u] lists (column, L-row) appended to block u.
    void groups(const std::vector<std::vector<std::pair<std::size_t, std::vector<Fe>>>>& extra)
    {
        for (unsigned u = 0; u < s; ++u) {
            RepairGroup g;
            for (unsigned v = 0; v <= r; ++v) {
                std::size_t pos = std::size_t(u) * (r + 1) + v;
                g.positions.push_back(pos);
                g.L.append_row(vandermonde_row(pos));
            }
            if (u < extra.size()) {
                for (const auto& [col, row] : extra[u]) {
                    g.positions.push_back(col);
                    g.L.append_row(row);
                }
            }
            g.coeff_map = "c_i = sum_j a_{i,j} f_j(Q_" + std::to_string(u + 1) + ")";
            code.groups.push_back(std::move(g));
        }
    }

    void set_claims(const std::string& family, unsigned delta, int d, DistanceKind kind, const std::string& formula)
    {
        code.claims.family = family;
        code.claims.r = r;
        code.claims.delta = delta;
        code.claims.design_d = d;
        code.claims.d_kind = kind;
        code.claims.formula = formula;
    }

    EvaluatedCode finish()
    {
        audit_structure(code);
        return std::move(code);
    }
};

int n_rt_t(std::size_t n, unsigned r, unsigned t, int c)
{
    return static_cast<int>(n) - static_cast<int>(r * t) - static_cast<int>(t) + c;
}

}  // namespace

EvaluatedCode build_base_code(const RationalCodePlan& plan)
{
    Builder b(plan);
    b.evaluation_columns(b.n_eval);
    b.groups({});
    b.set_claims("Base", 2, n_rt_t(b.n_eval, b.r, b.t, 2), DistanceKind::Exact, "n-rt-t+2");
    return b.finish();
}

EvaluatedCode build_extend_one(const RationalCodePlan& plan)
{
    Builder b(plan);
    const Field& F = b.F;
    std::size_t n = b.n_eval + 1;
    b.evaluation_columns(n);
    b.code.G.at(plan.message_index(b.r - 1, b.t), b.n_eval) = F.one();
    Fe ft = b.fj_at_block(b.t, 0);
    b.groups({{{b.n_eval, b.unit_row(b.r - 1, F.inv(ft))}}});
    b.set_claims("ExtendOne", 2, n_rt_t(n, b.r, b.t, 2), DistanceKind::Exact, "n-rt-t+2");
    if (plan.options.basis == BasisVariant::Strict) {
        b.code.claims.notes.push_back("strict basis variant");
    }
    return b.finish();
}

EvaluatedCode build_modified_extend_one(const RationalCodePlan& plan)
{
    Builder b(plan);
    const Field& F = b.F;
    std::size_t n = b.n_eval + 1;
    b.evaluation_columns(n);
    b.code.G.at(plan.message_index(b.r - 1, b.t), b.n_eval) = F.one();
    const Modifier* m0 = b.modifier(0);
    Fe scale = b.fj_at_block(b.t, 0, &m0->multiplier, m0->exponent);
    b.groups({{{b.n_eval, b.unit_row(b.r - 1, F.inv(scale))}}});
    b.set_claims("ModExtendOne", 2, n_rt_t(n, b.r, b.t, 2), DistanceKind::Exact, "n-rt-t+2");
    return b.finish();
}

EvaluatedCode build_extend_all(const RationalCodePlan& plan)
{
    Builder b(plan);
    const Field& F = b.F;
    bool modified = plan.family == Family::ModExtendAll;
    std::size_t n = b.n_eval + b.s;
    b.evaluation_columns(n);
    std::vector<std::vector<std::pair<std::size_t, std::vector<Fe>>>> extra(b.s);
    for (unsigned u = 0; u < b.s; ++u) {
        std::size_t col = b.n_eval + u;
        if (modified && u == 0) {
            // block 1 carries the raw top coefficient a_{r-1,t}
            b.code.G.at(plan.message_index(b.r - 1, b.t), col) = F.one();
            const Modifier* m0 = b.modifier(0);
            Fe scale = b.fj_at_block(b.t, 0, &m0->multiplier, m0->exponent);
            extra[u].push_back({col, b.unit_row(b.r - 1, F.inv(scale))});
            continue;
        }
        for (unsigned j = 1; j <= b.t; ++j) {
            b.code.G.at(plan.message_index(b.r - 1, j), col) = b.fj_at_block(j, u);
        }
        extra[u].push_back({col, b.unit_row(b.r - 1, F.one())});
    }
    b.groups(extra);
    int d = static_cast<int>(n) - static_cast<int>(b.t * (b.r + 1)) - static_cast<int>(b.s) + 3;
    b.set_claims(modified ? "ModExtendAll" : "ExtendAll", 3, d,
                 b.t == b.s ? DistanceKind::Exact : DistanceKind::LowerBound, "n-t(r+1)-s+3");
    if (modified) {
        b.code.claims.notes.push_back("length s(r+2) = " + std::to_string(n) +
                                      " (s blocks of r+2); the count (s+1)(r+1) = " +
                                      std::to_string((b.s + 1) * (b.r + 1)) + " differs unless s = r+1");
        b.code.claims.notes.push_back("Q_2 sum uses a_{r-1,j}");
    }
    return b.finish();
}

std::optional<std::vector<Fe>> rl_case4_subset(const Field& F, const std::vector<PlaceP1>& block, unsigned r)
{
    std::vector<Fe> xs;
    for (const auto& P : block) {
        if (!P.infinite) {
            xs.push_back(P.alpha);
        }
    }
    if (r < 1) {
        return std::nullopt;
    }
    for (const auto& pick : linalg::subsets(xs.size(), r - 1)) {
        Fe sum(0);
        std::vector<Fe> chosen;
        for (auto i : pick) {
            sum = F.add(sum, xs[i]);
            chosen.push_back(xs[i]);
        }
        if (sum.is_zero()) {
            return chosen;
        }
    }
    return std::nullopt;
}

EvaluatedCode build_roth_lempel(const RationalCodePlan& plan, bool all_blocks)
{
    Builder b(plan);
    const Field& F = b.F;
    unsigned r = b.r;
    std::size_t n = b.n_eval + (all_blocks ? 2 * std::size_t(b.s) : 2);
    b.evaluation_columns(n);
    std::vector<std::vector<std::pair<std::size_t, std::vector<Fe>>>> extra(all_blocks ? b.s : 1);
    if (!all_blocks) {
        b.code.G.at(plan.message_index(r - 2, b.t), b.n_eval) = F.one();
        b.code.G.at(plan.message_index(r - 1, b.t), b.n_eval + 1) = F.one();
        Fe ft_inv = F.inv(b.fj_at_block(b.t, 0));
        extra[0].push_back({b.n_eval, b.unit_row(r - 2, ft_inv)});
        extra[0].push_back({b.n_eval + 1, b.unit_row(r - 1, ft_inv)});
    } else {
        for (unsigned u = 0; u < b.s; ++u) {
            for (unsigned h = 0; h < 2; ++h) {
                std::size_t col = b.n_eval + 2 * u + h;
                unsigned i = r - 2 + h;
                for (unsigned j = 1; j <= b.t; ++j) {
                    b.code.G.at(plan.message_index(i, j), col) = b.fj_at_block(j, u);
                }
                extra[u].push_back({col, b.unit_row(i, F.one())});
            }
        }
    }
    b.groups(extra);
    auto sub = rl_case4_subset(F, plan.partition.blocks[0], r);
    std::string pred = "case-4 predicate (r-1 block-1 abscissae summing to zero): ";
    if (sub) {
        pred += "true {";
        for (std::size_t i = 0; i < sub->size(); ++i) {
            pred += (i ? "," : "") + std::to_string((*sub)[i].v);
        }
        pred += "}";
    } else {
        pred += "false";
    }
    if (!all_blocks) {
        b.set_claims("RLOne", 2, n_rt_t(n, r, b.t, 1), DistanceKind::LowerBound, "n-rt-t+1");
    } else {
        int k = static_cast<int>(b.code.k);
        int blocks = (k + static_cast<int>(r) - 1) / static_cast<int>(r);
        int bound = static_cast<int>(n) - k - (blocks - 1) * 2 + 1 - static_cast<int>(b.s);
        b.set_claims("RLAll", 3, bound, DistanceKind::UpperBound, "n-k-2(ceil(k/r)-1)+1-s");
        b.code.claims.notes.push_back("never optimal: d is at most the (r,3) bound minus s");
    }
    b.code.claims.notes.push_back(pred);
    return b.finish();
}

FamilyParams family_params(Family f, unsigned r, unsigned s, unsigned t)
{
    FamilyParams fp;
    int R = static_cast<int>(r), S = static_cast<int>(s), T = static_cast<int>(t);
    fp.k = std::size_t(r) * t;
    int K = static_cast<int>(fp.k);
    switch (f) {
    case Family::Base:
    case Family::ExtendOne:
    case Family::ModExtendOne:
        fp.n = std::size_t(s) * (r + 1) + (f == Family::Base ? 0 : 1);
        fp.d = static_cast<int>(fp.n) - R * T - T + 2;
        fp.formula = "n-rt-t+2";
        break;
    case Family::ExtendAll:
    case Family::ModExtendAll:
        fp.n = std::size_t(s) * (r + 2);
        fp.delta = 3;
        fp.d = static_cast<int>(fp.n) - T * (R + 1) - S + 3;
        fp.kind = t == s ? DistanceKind::Exact : DistanceKind::LowerBound;
        fp.formula = "n-t(r+1)-s+3";
        break;
    case Family::RLOne:
        fp.n = std::size_t(s) * (r + 1) + 2;
        fp.d = static_cast<int>(fp.n) - R * T - T + 1;
        fp.kind = DistanceKind::LowerBound;
        fp.formula = "n-rt-t+1";
        break;
    case Family::RLAll: {
        fp.n = std::size_t(s) * (r + 3);
        fp.delta = 3;
        int blocks = (K + R - 1) / R;
        fp.d = static_cast<int>(fp.n) - K - (blocks - 1) * 2 + 1 - S;
        fp.kind = DistanceKind::UpperBound;
        fp.formula = "n-k-2(ceil(k/r)-1)+1-s";
        break;
    }
    }
    return fp;
}

namespace {

EvaluatedCode dispatch(const RationalCodePlan& plan)
{
    switch (plan.family) {
    case Family::Base: return build_base_code(plan);
    case Family::ExtendOne: return build_extend_one(plan);
    case Family::ModExtendOne: return build_modified_extend_one(plan);
    case Family::ExtendAll:
    case Family::ModExtendAll: return build_extend_all(plan);
    case Family::RLOne: return build_roth_lempel(plan, false);
    case Family::RLAll: return build_roth_lempel(plan, true);
    }
    throw Error(ErrorCode::ParamViolation, "unknown family");
}

}  // namespace

EvaluatedCode build_code(const RationalCodePlan& plan)
{
    EvaluatedCode code = dispatch(plan);
    FamilyParams fp = family_params(plan.family, plan.r, plan.s, plan.t);
    bool match = fp.n == code.n && fp.k == code.k && fp.d == code.claims.design_d && fp.kind == code.claims.d_kind &&
                 fp.delta == code.claims.delta;
    code.log.push_back({"parameters match the family formula", match,
                        "[" + std::to_string(fp.n) + "," + std::to_string(fp.k) + "], d " + fp.formula + " = " +
                            std::to_string(fp.d)});
    return code;
}

}  // namespace lrc::rational
