#include "lrc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lrc/elliptic.hpp"
#include "lrc/error.hpp"
#include "lrc/rational.hpp"

namespace lrc::io {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg)
{
    throw Error(ErrorCode::ParseError, msg);
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!j.is_object()) {
        fail(where + " must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            fail("unknown field '" + key + "' in " + where);
        }
    }
}

std::uint64_t get_uint(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) {
        fail("missing field '" + std::string(key) + "' in " + where);
    }
    const json& v = j.at(key);
    if (!v.is_number_unsigned()) {
        fail("field '" + std::string(key) + "' in " + where + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

unsigned get_small(const json& j, const char* key, const std::string& where)
{
    std::uint64_t v = get_uint(j, key, where);
    if (v > 1000000) {
        fail("field '" + std::string(key) + "' in " + where + " is out of range");
    }
    return static_cast<unsigned>(v);
}

std::string get_string(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) {
        fail("missing field '" + std::string(key) + "' in " + where);
    }
    if (!j.at(key).is_string()) {
        fail("field '" + std::string(key) + "' in " + where + " must be a string");
    }
    return j.at(key).get<std::string>();
}

std::vector<std::uint32_t> get_uints(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) {
        fail("missing field '" + std::string(key) + "' in " + where);
    }
    const json& v = j.at(key);
    if (!v.is_array()) {
        fail("field '" + std::string(key) + "' in " + where + " must be an array");
    }
    std::vector<std::uint32_t> out;
    for (const auto& e : v) {
        if (!e.is_number_unsigned() || e.get<std::uint64_t>() > 0xffffffffu) {
            fail("field '" + std::string(key) + "' in " + where + " must hold non-negative integers");
        }
        out.push_back(e.get<std::uint32_t>());
    }
    return out;
}

FnSpec parse_fn(const json& j, const std::string& where)
{
    only_keys(j, {"a", "b", "c"}, where);
    return FnSpec{get_uints(j, "a", where), get_uints(j, "b", where), get_uints(j, "c", where)};
}

ojson dump_fn(const FnSpec& f)
{
    ojson j;
    j["a"] = f.a;
    j["b"] = f.b;
    j["c"] = f.c;
    return j;
}

Poly to_poly(const Field& F, const std::vector<std::uint32_t>& v)
{
    std::vector<Fe> c;
    for (auto x : v) {
        if (x >= F.q()) {
            throw Error(ErrorCode::ParamViolation, "field element " + std::to_string(x) + " out of range");
        }
        c.push_back(Fe(x));
    }
    return Poly(c);
}

elliptic::CurveFn to_fn(const Field& F, const FnSpec& s)
{
    return elliptic::fn::make(F, to_poly(F, s.a), to_poly(F, s.b), to_poly(F, s.c));
}

Fe element(const Field& F, std::uint32_t v, const std::string& what)
{
    if (v >= F.q()) {
        throw Error(ErrorCode::ParamViolation, what + " = " + std::to_string(v) + " is not a field element");
    }
    return Fe(v);
}

}  // namespace

bool is_elliptic_family(const std::string& family)
{
    return elliptic::family_from_string(family).has_value();
}

PlanFile parse_plan(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("plan is not valid JSON: ") + e.what());
    }
    only_keys(j, {"field", "family", "subgroup", "basis", "r", "s", "t", "curve", "recipe", "seed"}, "plan");
    PlanFile p;
    if (!j.contains("field")) {
        fail("missing field 'field' in plan");
    }
    const json& f = j.at("field");
    only_keys(f, {"p", "m", "modulus"}, "field");
    p.p = static_cast<std::uint32_t>(get_small(f, "p", "field"));
    p.m = f.contains("m") ? get_small(f, "m", "field") : 1;
    if (f.contains("modulus")) {
        p.modulus = get_uints(f, "modulus", "field");
    }
    p.family = get_string(j, "family", "plan");
    if (j.contains("subgroup")) {
        p.subgroup = get_string(j, "subgroup", "plan");
    }
    if (j.contains("basis")) {
        p.basis = get_string(j, "basis", "plan");
    }
    if (j.contains("r")) {
        p.r = get_small(j, "r", "plan");
    }
    p.s = get_small(j, "s", "plan");
    p.t = get_small(j, "t", "plan");
    if (j.contains("curve")) {
        auto c = get_uints(j, "curve", "plan");
        if (c.size() != 5) {
            fail("curve must list a1 a2 a3 a4 a6");
        }
        p.curve = std::array<std::uint32_t, 5>{c[0], c[1], c[2], c[3], c[4]};
    }
    if (j.contains("recipe")) {
        const json& r = j.at("recipe");
        only_keys(r, {"kind", "zeta", "m", "order", "maps"}, "recipe");
        RecipeSpec rs;
        rs.kind = get_string(r, "kind", "recipe");
        if (r.contains("zeta")) {
            rs.zeta = static_cast<std::uint32_t>(get_small(r, "zeta", "recipe"));
        }
        if (r.contains("m")) {
            rs.m = get_small(r, "m", "recipe");
        }
        if (r.contains("order")) {
            rs.order = get_small(r, "order", "recipe");
        }
        if (r.contains("maps")) {
            if (!r.at("maps").is_array()) {
                fail("recipe maps must be an array");
            }
            for (const auto& mj : r.at("maps")) {
                only_keys(mj, {"x", "y"}, "map");
                if (!mj.contains("x") || !mj.contains("y")) {
                    fail("map needs x and y");
                }
                rs.maps.push_back(MapSpec{parse_fn(mj.at("x"), "map x"), parse_fn(mj.at("y"), "map y")});
            }
        }
        p.recipe = rs;
    }
    if (j.contains("seed")) {
        p.seed = get_uint(j, "seed", "plan");
    }
    return p;
}

std::string serialize_plan(const PlanFile& p)
{
    ojson j;
    ojson f;
    f["p"] = p.p;
    f["m"] = p.m;
    if (p.modulus) {
        f["modulus"] = *p.modulus;
    }
    j["field"] = f;
    j["family"] = p.family;
    if (p.subgroup) {
        j["subgroup"] = *p.subgroup;
    }
    if (p.basis) {
        j["basis"] = *p.basis;
    }
    if (p.r) {
        j["r"] = *p.r;
    }
    j["s"] = p.s;
    j["t"] = p.t;
    if (p.curve) {
        j["curve"] = std::vector<std::uint32_t>(p.curve->begin(), p.curve->end());
    }
    if (p.recipe) {
        ojson r;
        r["kind"] = p.recipe->kind;
        if (p.recipe->zeta) {
            r["zeta"] = *p.recipe->zeta;
        }
        if (p.recipe->m) {
            r["m"] = *p.recipe->m;
        }
        if (p.recipe->order) {
            r["order"] = *p.recipe->order;
        }
        if (!p.recipe->maps.empty()) {
            ojson maps = ojson::array();
            for (const auto& mp : p.recipe->maps) {
                ojson mj;
                mj["x"] = dump_fn(mp.x);
                mj["y"] = dump_fn(mp.y);
                maps.push_back(mj);
            }
            r["maps"] = maps;
        }
        j["recipe"] = r;
    }
    j["seed"] = p.seed;
    return j.dump(2) + "\n";
}

EvaluatedCode construct(const PlanFile& p)
{
    FieldPtr F = Field::make(p.p, p.m, p.modulus);
    if (auto ef = elliptic::family_from_string(p.family)) {
        if (p.subgroup || p.basis) {
            throw Error(ErrorCode::ParamViolation, "subgroup/basis apply to rational families only");
        }
        if (!p.curve || !p.recipe) {
            throw Error(ErrorCode::ParamViolation, "elliptic plans need 'curve' and 'recipe'");
        }
        const auto& c = *p.curve;
        elliptic::Curve E = elliptic::make_curve(*F, element(*F, c[0], "a1"), element(*F, c[1], "a2"),
                                                 element(*F, c[2], "a3"), element(*F, c[3], "a4"),
                                                 element(*F, c[4], "a6"));
        elliptic::Recipe R;
        const RecipeSpec& rs = *p.recipe;
        if (rs.kind == "negation") {
            R.kind = elliptic::Recipe::Kind::Negation;
        } else if (rs.kind == "zeta3") {
            R.kind = elliptic::Recipe::Kind::Zeta3;
            if (!rs.zeta) {
                throw Error(ErrorCode::ParamViolation, "zeta3 recipe needs 'zeta'");
            }
            R.zeta = element(*F, *rs.zeta, "zeta");
        } else if (rs.kind == "dihedral") {
            R.kind = elliptic::Recipe::Kind::Dihedral;
            if (!rs.m) {
                throw Error(ErrorCode::ParamViolation, "dihedral recipe needs 'm'");
            }
            R.m = *rs.m;
        } else if (rs.kind == "explicit") {
            R.kind = elliptic::Recipe::Kind::Explicit;
            if (rs.maps.empty()) {
                throw Error(ErrorCode::ParamViolation, "explicit recipe needs 'maps'");
            }
            for (const auto& mp : rs.maps) {
                R.maps.push_back({to_fn(*F, mp.x), to_fn(*F, mp.y)});
            }
            R.order = rs.order.value_or(0);
        } else {
            throw Error(ErrorCode::ParamViolation, "unknown recipe kind '" + rs.kind + "'");
        }
        auto plan = elliptic::make_plan(F, *ef, E, R, p.s, p.t);
        if (p.r && *p.r != plan.r) {
            throw Error(ErrorCode::ParamViolation, "plan says r = " + std::to_string(*p.r) +
                                                       " but the automorphism group gives r = " + std::to_string(plan.r));
        }
        return elliptic::build_code(plan);
    }
    auto rf = rational::family_from_string(p.family);
    if (!rf) {
        throw Error(ErrorCode::ParamViolation, "unknown family '" + p.family + "'");
    }
    if (p.curve || p.recipe) {
        throw Error(ErrorCode::ParamViolation, "curve/recipe apply to elliptic families only");
    }
    if (!p.subgroup || !p.r) {
        throw Error(ErrorCode::ParamViolation, "rational plans need 'subgroup' and 'r'");
    }
    auto sc = rational::case_from_string(*p.subgroup);
    if (!sc) {
        throw Error(ErrorCode::ParamViolation, "unknown subgroup case '" + *p.subgroup + "'");
    }
    rational::PlanOptions opt;
    if (p.basis) {
        if (*p.basis == "strict") {
            opt.basis = rational::BasisVariant::Strict;
        } else if (*p.basis != "default") {
            throw Error(ErrorCode::ParamViolation, "unknown basis '" + *p.basis + "'");
        }
    }
    auto plan = rational::make_plan(F, *rf, *sc, *p.r, p.s, p.t, opt);
    return rational::build_code(plan);
}

namespace {

std::string join(const std::vector<Fe>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + std::to_string(v[i].v);
    }
    return s;
}

struct Reader {
    std::vector<std::string> lines;
    std::size_t pos = 0;

    explicit Reader(const std::string& text)
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            lines.push_back(line);
        }
    }

    [[noreturn]] void error(const std::string& msg) const
    {
        fail("matrix file line " + std::to_string(pos) + ": " + msg);
    }

    const std::string& next()
    {
        if (pos >= lines.size()) {
            ++pos;
            error("unexpected end of file");
        }
        return lines[pos++];
    }

    std::vector<std::uint64_t> numbers(const std::string& line)
    {
        std::istringstream is(line);
        std::vector<std::uint64_t> out;
        std::string tok;
        while (is >> tok) {
            if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 10) {
                error("expected integers, got '" + tok + "'");
            }
            out.push_back(std::stoull(tok));
        }
        return out;
    }

    // "KEY rest"; returns rest.
    std::string keyword(const std::string& key)
    {
        const std::string& line = next();
        if (line == key) {
            return "";
        }
        if (line.rfind(key + " ", 0) != 0) {
            error("expected '" + key + "'");
        }
        return line.substr(key.size() + 1);
    }

    std::vector<std::uint64_t> keyword_numbers(const std::string& key, std::size_t count)
    {
        auto v = numbers(keyword(key));
        if (count != 0 && v.size() != count) {
            error(key + " expects " + std::to_string(count) + " integers");
        }
        return v;
    }

    std::vector<Fe> row(std::size_t len, std::uint32_t q)
    {
        auto v = numbers(next());
        if (v.size() != len) {
            error("expected " + std::to_string(len) + " entries, got " + std::to_string(v.size()));
        }
        std::vector<Fe> out;
        for (auto x : v) {
            if (x >= q) {
                error("entry " + std::to_string(x) + " outside [0, q)");
            }
            out.push_back(Fe(static_cast<std::uint32_t>(x)));
        }
        return out;
    }
};

}  // namespace

std::string serialize_matrix(const EvaluatedCode& code)
{
    const Field& F = *code.field;
    std::ostringstream os;
    os << F.q() << " " << code.n << " " << code.k << "\n";
    for (std::size_t i = 0; i < code.k; ++i) {
        os << join(code.G.row(i)) << "\n";
    }
    os << "FIELD " << F.p() << " " << F.m();
    for (auto c : F.modulus()) {
        os << " " << c;
    }
    os << "\n";
    os << "BLOCKS " << code.groups.size() << "\n";
    for (const auto& g : code.groups) {
        os << "GROUP " << g.positions.size() << " " << g.L.cols() << "\n";
        os << "POSITIONS";
        for (auto p : g.positions) {
            os << " " << p;
        }
        os << "\n";
        os << "MAP" << (g.coeff_map.empty() ? "" : " " + g.coeff_map) << "\n";
        for (std::size_t i = 0; i < g.L.rows(); ++i) {
            os << join(g.L.row(i)) << "\n";
        }
    }
    const CodeClaims& c = code.claims;
    os << "CLAIMS\n";
    os << "FAMILY " << c.family << "\n";
    os << "LOCALITY " << c.r << " " << c.delta << "\n";
    os << "DISTANCE " << to_string(c.d_kind) << " " << c.design_d << "\n";
    os << "FORMULA" << (c.formula.empty() ? "" : " " + c.formula) << "\n";
    for (const auto& n : c.notes) {
        os << "NOTE" << (n.empty() ? "" : " " + n) << "\n";
    }
    os << "END\n";
    return os.str();
}

EvaluatedCode parse_matrix(const std::string& text)
{
    Reader rd(text);
    auto head = rd.numbers(rd.next());
    if (head.size() != 3) {
        rd.error("header must be 'q n k'");
    }
    std::uint64_t q = head[0], n = head[1], k = head[2];
    if (n == 0 || k == 0 || k > n || n > 100000) {
        rd.error("bad dimensions");
    }
    std::vector<std::vector<Fe>> rows;
    for (std::uint64_t i = 0; i < k; ++i) {
        rows.push_back(rd.row(n, static_cast<std::uint32_t>(std::min<std::uint64_t>(q, 0xffffffffu))));
    }
    auto fv = rd.keyword_numbers("FIELD", 0);
    if (fv.size() < 3) {
        rd.error("FIELD expects p m and the modulus");
    }
    std::vector<std::uint32_t> mod;
    for (std::size_t i = 2; i < fv.size(); ++i) {
        mod.push_back(static_cast<std::uint32_t>(fv[i]));
    }
    EvaluatedCode code;
    try {
        code.field = Field::make(static_cast<std::uint32_t>(fv[0]), static_cast<std::uint32_t>(fv[1]), mod);
    } catch (const Error& e) {
        rd.error(std::string("bad field: ") + e.what());
    }
    if (code.field->q() != q) {
        rd.error("header q does not match FIELD");
    }
    code.n = n;
    code.k = k;
    code.G = Matrix(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        code.G.set_row(i, rows[i]);
    }
    auto gcount = rd.keyword_numbers("BLOCKS", 1)[0];
    if (gcount > n) {
        rd.error("more groups than positions");
    }
    for (std::uint64_t g = 0; g < gcount; ++g) {
        auto gh = rd.keyword_numbers("GROUP", 2);
        if (gh[0] == 0 || gh[0] > n || gh[1] == 0 || gh[1] > k) {
            rd.error("bad GROUP dimensions");
        }
        RepairGroup grp;
        for (auto p : rd.keyword_numbers("POSITIONS", gh[0])) {
            if (p >= n) {
                rd.error("position out of range");
            }
            grp.positions.push_back(p);
        }
        grp.coeff_map = rd.keyword("MAP");
        grp.L = Matrix(0, gh[1]);
        for (std::uint64_t i = 0; i < gh[0]; ++i) {
            grp.L.append_row(rd.row(gh[1], static_cast<std::uint32_t>(q)));
        }
        code.groups.push_back(std::move(grp));
    }
    if (rd.next() != "CLAIMS") {
        rd.error("expected CLAIMS");
    }
    code.claims.family = rd.keyword("FAMILY");
    auto loc = rd.keyword_numbers("LOCALITY", 2);
    code.claims.r = static_cast<unsigned>(loc[0]);
    code.claims.delta = static_cast<unsigned>(loc[1]);
    {
        std::istringstream is(rd.keyword("DISTANCE"));
        std::string kind;
        long long v = 0;
        if (!(is >> kind >> v)) {
            rd.error("DISTANCE expects kind and value");
        }
        if (kind == "exact") {
            code.claims.d_kind = DistanceKind::Exact;
        } else if (kind == "lower") {
            code.claims.d_kind = DistanceKind::LowerBound;
        } else if (kind == "upper") {
            code.claims.d_kind = DistanceKind::UpperBound;
        } else {
            rd.error("unknown distance kind '" + kind + "'");
        }
        code.claims.design_d = static_cast<int>(v);
    }
    code.claims.formula = rd.keyword("FORMULA");
    while (true) {
        const std::string& line = rd.next();
        if (line == "END") {
            break;
        }
        if (line == "NOTE") {
            code.claims.notes.emplace_back();
        } else if (line.rfind("NOTE ", 0) == 0) {
            code.claims.notes.push_back(line.substr(5));
        } else {
            rd.error("expected NOTE or END");
        }
    }
    if (rd.pos != rd.lines.size()) {
        rd.error("trailing content after END");
    }
    return code;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        throw Error(ErrorCode::ParseError, "cannot write " + path);
    }
}

}  // namespace lrc::io
