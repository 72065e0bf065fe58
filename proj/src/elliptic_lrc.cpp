#include <algorithm>

#include "lrc/elliptic.hpp"
#include "lrc/error.hpp"
#include "lrc/matrix.hpp"

namespace lrc::elliptic {

const char* to_string(Family f)
{
    switch (f) {
    case Family::EBase: return "EBase";
    case Family::EExtendOne: return "EExtendOne";
    case Family::EExtendAll: return "EExtendAll";
    }
    return "EBase";
}

std::optional<Family> family_from_string(const std::string& s)
{
    for (Family f : {Family::EBase, Family::EExtendOne, Family::EExtendAll}) {
        if (s == to_string(f)) {
            return f;
        }
    }
    return std::nullopt;
}

namespace {

CurveFn combine(const Field& F, const std::vector<CurveFn>& basis, const std::vector<Fe>& lambda)
{
    CurveFn f = fn::constant(F, Fe(0));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!lambda[k].is_zero()) {
            f = fn::add(F, f, fn::scale(F, basis[k], lambda[k]));
        }
    }
    return f;
}

// Walks nonzero coefficient vectors in base-q counting order (first entry least significant).
template <typename Pred>
std::optional<CurveFn> canonical_scan(const Field& F, const std::vector<CurveFn>& basis, Pred&& accept)
{
    std::size_t dim = basis.size();
    std::vector<Fe> lambda(dim, Fe(0));
    while (true) {
        std::size_t i = 0;
        while (i < dim && lambda[i].v + 1 == F.q()) {
            lambda[i] = Fe(0);
            ++i;
        }
        if (i == dim) {
            return std::nullopt;
        }
        lambda[i] = Fe(lambda[i].v + 1);
        CurveFn f = combine(F, basis, lambda);
        if (!fn::is_zero(f) && accept(f)) {
            return f;
        }
    }
}

bool exact_poles(const Field& F, const Curve& E, const CurveFn& f, const std::vector<Pt>& poles)
{
    for (const auto& P : poles) {
        if (fn::valuation(F, E, f, P) != -1) {
            return false;
        }
    }
    return true;
}

std::vector<Pt> pts(const EllipticPlan& plan, const std::vector<std::size_t>& idx)
{
    std::vector<Pt> out;
    for (auto i : idx) {
        out.push_back(plan.points[i]);
    }
    return out;
}

Fe value_at(const EllipticPlan& plan, const CurveFn& f, const Pt& P, const std::string& what)
{
    Value v = fn::eval(*plan.field, plan.curve, f, P);
    if (!v) {
        throw Error(ErrorCode::PoleCancellationFailure, what + " has a pole at " + to_string(P));
    }
    return *v;
}

Matrix omega_matrix(const EllipticPlan& plan, const std::vector<std::size_t>& block, std::size_t first, std::size_t count)
{
    Matrix M(0, count);
    for (auto idx : block) {
        std::vector<Fe> row;
        for (std::size_t i = first; i < first + count; ++i) {
            row.push_back(value_at(plan, plan.omegas[i], plan.points[idx], "omega_" + std::to_string(i)));
        }
        M.append_row(row);
    }
    return M;
}

std::string idx_list(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}

}  // namespace

ZOmegas find_z_omegas(EllipticPlan& plan)
{
    const Field& F = *plan.field;
    const Curve& E = plan.curve;
    std::vector<Pt> B0 = pts(plan, plan.partition.pole_block);
    Divisor D;
    for (const auto& P : B0) {
        add_to(D, P, 1);
    }
    std::vector<CurveFn> basis = rr_basis(F, E, D, plan.points);

    // invariance, imposed pointwise away from B0
    Matrix C(0, basis.size());
    std::vector<bool> in_b0(plan.points.size(), false);
    for (auto i : plan.partition.pole_block) {
        in_b0[i] = true;
    }
    for (std::size_t g = 1; g < plan.group.size(); ++g) {
        for (std::size_t i = 0; i < plan.points.size(); ++i) {
            if (in_b0[i]) {
                continue;
            }
            const Pt& P = plan.points[i];
            const Pt& gP = plan.points[plan.group[g].perm[i]];
            std::vector<Fe> row;
            for (const auto& b : basis) {
                row.push_back(F.sub(value_at(plan, b, gP, "L(B0) element"), value_at(plan, b, P, "L(B0) element")));
            }
            C.append_row(row);
        }
    }
    std::vector<CurveFn> inv_basis;
    for (const auto& v : linalg::kernel(F, C)) {
        inv_basis.push_back(combine(F, basis, v));
    }
    plan.log.push_back({"invariant subspace of L(B0)", inv_basis.size() >= 2,
                        "dim = " + std::to_string(inv_basis.size()) + " inside dim L(B0) = " + std::to_string(basis.size())});

    auto z = canonical_scan(F, inv_basis, [&](const CurveFn& f) {
        return !fn::is_constant(f) && exact_poles(F, E, f, B0);
    });
    if (!z) {
        throw Error(ErrorCode::NoInvariantZ, "no invariant function with exact simple poles on the pole block");
    }
    // normalize: vanish at O (or at the first point outside B0), lead coefficient 1
    std::size_t anchor = plan.points.size() - 1;
    if (in_b0[anchor]) {
        anchor = 0;
        while (in_b0[anchor]) {
            ++anchor;
        }
    }
    CurveFn zz = fn::sub(F, *z, fn::constant(F, value_at(plan, *z, plan.points[anchor], "z")));
    Fe lead = zz.b.is_zero() ? zz.a.lead() : zz.b.lead();
    zz = fn::scale(F, zz, F.inv(lead));
    for (std::size_t g = 1; g < plan.group.size(); ++g) {
        for (std::size_t i = 0; i < plan.points.size(); ++i) {
            if (in_b0[i]) {
                continue;
            }
            if (value_at(plan, zz, plan.points[i], "z") != value_at(plan, zz, plan.points[plan.group[g].perm[i]], "z")) {
                throw Error(ErrorCode::NoInvariantZ, "z fails the invariance audit");
            }
        }
    }
    plan.log.push_back({"z invariant with simple poles exactly on B0", true, "z = " + fn::to_string(zz) +
                                                                           ", zero anchor " + to_string(plan.points[anchor])});

    std::vector<CurveFn> omegas{fn::constant(F, F.one())};
    for (unsigned i = 1; i < plan.r; ++i) {
        Divisor Di;
        std::vector<Pt> poles(B0.begin(), B0.begin() + i + 1);
        for (const auto& P : poles) {
            add_to(Di, P, 1);
        }
        bool need_prime = plan.family != Family::EBase;
        auto w = canonical_scan(F, rr_basis(F, E, Di, plan.points), [&](const CurveFn& f) {
            if (!exact_poles(F, E, f, poles)) {
                return false;
            }
            if (!need_prime) {
                return true;
            }
            // extension families also need omega_1..omega_i minors nonzero on every block
            for (const auto& blk : plan.partition.blocks) {
                Matrix M(0, i);
                for (auto idx : blk) {
                    std::vector<Fe> row;
                    for (unsigned l = 1; l < i; ++l) {
                        row.push_back(value_at(plan, omegas[l], plan.points[idx], "omega"));
                    }
                    Value v = fn::eval(F, E, f, plan.points[idx]);
                    if (!v) {
                        return false;
                    }
                    row.push_back(*v);
                    M.append_row(row);
                }
                if (linalg::singular_row_subset(F, M)) {
                    return false;
                }
            }
            return true;
        });
        if (!w) {
            throw Error(ErrorCode::ExactPoleUnreachable, "no omega_" + std::to_string(i) + " with exact poles P_{0,1.." +
                                                             std::to_string(i + 1) + "}");
        }
        omegas.push_back(*w);
    }
    plan.z = zz;
    plan.omegas = omegas;
    for (std::size_t u = 0; u < plan.partition.blocks.size(); ++u) {
        Matrix M = omega_matrix(plan, plan.partition.blocks[u], 0, plan.r);
        if (auto bad = linalg::singular_row_subset(F, M)) {
            throw Error(ErrorCode::SubmatrixSingular, "block " + std::to_string(u + 1) + " omega rows {" +
                                                          idx_list(*bad) + "} are singular");
        }
    }
    plan.log.push_back({"every r x r omega submatrix invertible", true,
                        std::to_string(plan.partition.blocks.size()) + " blocks checked"});
    return {zz, omegas};
}

CurveFn find_zhat(EllipticPlan& plan)
{
    const Field& F = *plan.field;
    const Curve& E = plan.curve;
    const auto& b1 = plan.partition.blocks.at(0);
    CurveFn zh = fn::sub(F, plan.z, fn::constant(F, value_at(plan, plan.z, plan.points[b1.front()], "z")));
    std::vector<bool> in_b1(plan.points.size(), false), in_b0(plan.points.size(), false);
    for (auto i : b1) {
        in_b1[i] = true;
    }
    for (auto i : plan.partition.pole_block) {
        in_b0[i] = true;
    }
    for (std::size_t i = 0; i < plan.points.size(); ++i) {
        int v = fn::is_zero(zh) ? 1 : fn::valuation(F, E, zh, plan.points[i]);
        int want = in_b1[i] ? 1 : (in_b0[i] ? -1 : 0);
        if (v != want) {
            throw Error(ErrorCode::NoSuchFunction, "z - z(Q_1) has valuation " + std::to_string(v) + " at " +
                                                       to_string(plan.points[i]) + ", expected " + std::to_string(want));
        }
    }
    // numerator x-part monic; gives (y - y1)/(y - y0) in the zeta3 case
    zh = fn::scale(F, zh, F.inv(zh.a.is_zero() ? zh.b.lead() : zh.a.lead()));
    plan.log.push_back({"zhat divisor B1 - B0", true, "zhat = " + fn::to_string(zh)});
    plan.zhat = zh;
    return zh;
}

EllipticPlan make_plan(FieldPtr Fp, Family family, const Curve& E, const Recipe& recipe, unsigned s, unsigned t)
{
    const Field& F = *Fp;
    if (discriminant(F, E).is_zero()) {
        throw Error(ErrorCode::InvalidCurve, "singular curve " + to_string(E));
    }
    if (s < 2 || t < 1 || t > s) {
        throw Error(ErrorCode::ParamViolation, "need 2 <= s and 1 <= t <= s (s=" + std::to_string(s) +
                                                   ", t=" + std::to_string(t) + ")");
    }
    EllipticPlan plan;
    plan.family = family;
    plan.field = Fp;
    plan.curve = E;
    plan.s = s;
    plan.t = t;
    plan.points = enumerate_points(F, E);
    long long N = static_cast<long long>(plan.points.size());
    long long q = F.q();
    bool hasse = (N - q - 1) * (N - q - 1) <= 4 * q;
    plan.log.push_back({"Hasse bound", hasse, "N = " + std::to_string(N)});
    plan.group = make_subgroup(F, E, plan.points, recipe);
    plan.r = static_cast<unsigned>(plan.group.size() - 1);
    plan.log.push_back({"automorphism subgroup", true, std::string(to_string(recipe.kind)) + ", order " +
                                                          std::to_string(plan.group.size())});
    plan.partition = orbit_partition_curve(plan.group, plan.points, s);
    plan.log.push_back({"free orbits", true, std::to_string(plan.partition.free_orbits) + " found, bound formula gives " +
                                                 std::to_string(plan.partition.orbit_bound)});
    find_z_omegas(plan);
    if (family == Family::EExtendOne) {
        find_zhat(plan);
    }
    if (family == Family::EExtendAll && plan.r >= 2) {
        for (std::size_t u = 0; u < plan.partition.blocks.size(); ++u) {
            Matrix M = omega_matrix(plan, plan.partition.blocks[u], 1, plan.r - 1);
            if (auto bad = linalg::singular_row_subset(F, M)) {
                throw Error(ErrorCode::SubmatrixSingular, "block " + std::to_string(u + 1) +
                                                              ": (r-1) x (r-1) omega_1..omega_{r-1} rows {" +
                                                              idx_list(*bad) + "} are singular");
            }
        }
        plan.log.push_back({"every (r-1) x (r-1) submatrix of omega_1..omega_{r-1} invertible", true, ""});
    }
    return plan;
}

namespace {

struct EBuilder {
    const EllipticPlan& plan;
    const Field& F;
    unsigned r, s, t;
    std::size_t n_eval;
    EvaluatedCode code;
    std::vector<Fe> zq;  // z(Q_u)

    explicit EBuilder(const EllipticPlan& p)
        : plan(p), F(*p.field), r(p.r), s(p.s), t(p.t), n_eval(std::size_t(p.s) * (p.r + 1))
    {
        code.field = p.field;
        code.k = p.k();
        code.log = p.log;
        for (const auto& blk : p.partition.blocks) {
            zq.push_back(value_at(p, p.z, p.points[blk.front()], "z"));
        }
    }

    const Pt& point(std::size_t pos) const { return plan.points[plan.partition.blocks[pos / (r + 1)][pos % (r + 1)]]; }

    // zhat_for_a0: positions with j < t for row i = 0 use zhat * z^{j-1}.
    void evaluation_columns(std::size_t n_total, bool zhat_for_a0)
    {
        code.n = n_total;
        code.G = Matrix(code.k, n_total);
        for (std::size_t pos = 0; pos < n_eval; ++pos) {
            const Pt& P = point(pos);
            Fe zv = zq[pos / (r + 1)];
            for (unsigned i = 0; i < r; ++i) {
                Fe w = value_at(plan, plan.omegas[i], P, "omega_" + std::to_string(i));
                unsigned jmax = i == 0 ? t : t - 1;
                for (unsigned j = 1; j <= jmax; ++j) {
                    Fe v = F.mul(F.pow(zv, j - 1), w);
                    if (i == 0 && zhat_for_a0 && j < t) {
                        v = F.mul(v, value_at(plan, plan.zhat, P, "zhat"));
                    }
                    code.G.at(plan.message_index(i, j), pos) = v;
                }
            }
        }
    }

    std::vector<Fe> unit0(Fe scale) const
    {
        std::vector<Fe> row(r, Fe(0));
        row[0] = scale;
        return row;
    }

    void groups(const std::vector<std::vector<std::pair<std::size_t, std::vector<Fe>>>>& extra)
    {
        for (unsigned u = 0; u < s; ++u) {
            RepairGroup g;
            g.L = Matrix(0, r);
            for (unsigned v = 0; v <= r; ++v) {
                std::size_t pos = std::size_t(u) * (r + 1) + v;
                g.positions.push_back(pos);
                std::vector<Fe> row;
                for (unsigned i = 0; i < r; ++i) {
                    row.push_back(value_at(plan, plan.omegas[i], point(pos), "omega"));
                }
                g.L.append_row(row);
            }
            if (u < extra.size()) {
                for (const auto& [col, row] : extra[u]) {
                    g.positions.push_back(col);
                    g.L.append_row(row);
                }
            }
            g.coeff_map = "c_i = sum_j a_{i,j} z^{j-1}(Q_" + std::to_string(u + 1) + ")";
            code.groups.push_back(std::move(g));
        }
    }

    void set_claims(const char* family, unsigned delta, int d, DistanceKind kind, const std::string& formula)
    {
        code.claims.family = family;
        code.claims.r = r;
        code.claims.delta = delta;
        code.claims.design_d = d;
        code.claims.d_kind = kind;
        code.claims.formula = formula;
        code.claims.notes.push_back("curve " + to_string(plan.curve) + ", z = " + fn::to_string(plan.z));
    }
};

}  // namespace

EvaluatedCode build_elliptic_base(const EllipticPlan& plan)
{
    EBuilder b(plan);
    b.evaluation_columns(b.n_eval, false);
    b.groups({});
    int d = static_cast<int>(b.n_eval) - static_cast<int>((b.t - 1) * (b.r + 1));
    b.set_claims("EBase", 2, d, DistanceKind::Exact, "n-(t-1)(r+1)");
    audit_structure(b.code);
    return std::move(b.code);
}

EvaluatedCode build_elliptic_extend_one(const EllipticPlan& plan)
{
    EBuilder b(plan);
    const Field& F = b.F;
    std::size_t n = b.n_eval + 1;
    b.evaluation_columns(n, true);
    b.code.G.at(plan.message_index(0, b.t), b.n_eval) = F.one();
    Fe zt = F.pow(b.zq[0], b.t - 1);
    if (zt.is_zero()) {
        throw Error(ErrorCode::SubmatrixSingular, "z^{t-1} vanishes on block 1; appended symbol not recoverable");
    }
    b.groups({{{b.n_eval, b.unit0(F.inv(zt))}}});
    int d = static_cast<int>(n) - static_cast<int>((b.t - 1) * (b.r + 1));
    b.set_claims("EExtendOne", 2, d, DistanceKind::Exact, "n-(t-1)(r+1)");
    b.code.claims.notes.push_back("zhat = " + fn::to_string(plan.zhat));
    audit_structure(b.code);
    return std::move(b.code);
}

EvaluatedCode build_elliptic_extend_all(const EllipticPlan& plan)
{
    EBuilder b(plan);
    const Field& F = b.F;
    std::size_t n = b.n_eval + b.s;
    b.evaluation_columns(n, false);
    std::vector<std::vector<std::pair<std::size_t, std::vector<Fe>>>> extra(b.s);
    for (unsigned u = 0; u < b.s; ++u) {
        std::size_t col = b.n_eval + u;
        for (unsigned j = 1; j <= b.t; ++j) {
            b.code.G.at(plan.message_index(0, j), col) = F.pow(b.zq[u], j - 1);
        }
        extra[u].push_back({col, b.unit0(F.one())});
    }
    b.groups(extra);
    int tt = static_cast<int>(b.t), rr = static_cast<int>(b.r), nn = static_cast<int>(n);
    if (b.t == b.s) {
        b.set_claims("EExtendAll", 3, nn - (tt - 1) * (rr + 2), DistanceKind::Exact, "n-(t-1)(r+2)");
    } else {
        b.set_claims("EExtendAll", 3, nn - static_cast<int>(b.s) - (tt - 1) * (rr + 1), DistanceKind::LowerBound,
                     "n-s-(t-1)(r+1)");
    }
    audit_structure(b.code);
    return std::move(b.code);
}

FamilyParams family_params(Family f, unsigned r, unsigned s, unsigned t)
{
    FamilyParams fp;
    int R = static_cast<int>(r), T = static_cast<int>(t);
    fp.k = std::size_t(r) * t - r + 1;
    switch (f) {
    case Family::EBase:
    case Family::EExtendOne:
        fp.n = std::size_t(s) * (r + 1) + (f == Family::EBase ? 0 : 1);
        fp.d = static_cast<int>(fp.n) - (T - 1) * (R + 1);
        fp.formula = "n-(t-1)(r+1)";
        break;
    case Family::EExtendAll:
        fp.n = std::size_t(s) * (r + 2);
        fp.delta = 3;
        if (t == s) {
            fp.d = static_cast<int>(fp.n) - (T - 1) * (R + 2);
            fp.formula = "n-(t-1)(r+2)";
        } else {
            fp.d = static_cast<int>(fp.n) - static_cast<int>(s) - (T - 1) * (R + 1);
            fp.kind = DistanceKind::LowerBound;
            fp.formula = "n-s-(t-1)(r+1)";
        }
        break;
    }
    return fp;
}

EvaluatedCode build_code(const EllipticPlan& plan)
{
    EvaluatedCode code;
    switch (plan.family) {
    case Family::EBase: code = build_elliptic_base(plan); break;
    case Family::EExtendOne: code = build_elliptic_extend_one(plan); break;
    case Family::EExtendAll: code = build_elliptic_extend_all(plan); break;
    }
    FamilyParams fp = family_params(plan.family, plan.r, plan.s, plan.t);
    bool match = fp.n == code.n && fp.k == code.k && fp.d == code.claims.design_d && fp.kind == code.claims.d_kind &&
                 fp.delta == code.claims.delta;
    code.log.push_back({"parameters match the family formula", match,
                        "[" + std::to_string(fp.n) + "," + std::to_string(fp.k) + "], d " + fp.formula + " = " +
                            std::to_string(fp.d)});
    return code;
}

}  // namespace lrc::elliptic
