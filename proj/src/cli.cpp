#include "lrc/cli.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrc/code.hpp"
#include "lrc/elliptic.hpp"
#include "lrc/error.hpp"
#include "lrc/io.hpp"
#include "lrc/rational.hpp"

namespace lrc::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string bracket(const EvaluatedCode& c)
{
    return "[" + std::to_string(c.n) + "," + std::to_string(c.k) + "]";
}

std::string join_fe(const std::vector<Fe>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + std::to_string(v[i].v);
    }
    return s;
}

std::string join_idx(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}

std::vector<std::uint32_t> fe_ints(const std::vector<Fe>& v)
{
    std::vector<std::uint32_t> out;
    for (auto x : v) {
        out.push_back(x.v);
    }
    return out;
}

// a t + b in the house style: "3t", "2t+1", "59-4t".
std::string linear(long long a, long long b)
{
    std::string ts = (a == 1 || a == -1) ? "t" : std::to_string(a < 0 ? -a : a) + "t";
    if (a == 0) {
        return std::to_string(b);
    }
    if (a > 0) {
        return b == 0 ? ts : ts + (b > 0 ? "+" : "-") + std::to_string(b < 0 ? -b : b);
    }
    return b == 0 ? "-" + ts : std::to_string(b) + "-" + ts;
}

// Values over t = lo..hi, symbolic when affine in t.
std::string render(const std::vector<long long>& v, unsigned lo)
{
    if (v.size() == 1) {
        return std::to_string(v[0]);
    }
    long long a = v[1] - v[0];
    long long b = v[0] - a * static_cast<long long>(lo);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != a * static_cast<long long>(lo + i) + b) {
            std::string s;
            for (std::size_t j = 0; j < v.size(); ++j) {
                s += (j ? "," : "") + std::to_string(v[j]);
            }
            return "{" + s + "}";
        }
    }
    return linear(a, b);
}

std::uint32_t checked_q(std::uint32_t q, std::uint32_t& p, std::uint32_t& m)
{
    auto pp = prime_power(q);
    if (!pp) {
        throw Error(ErrorCode::InvalidField, std::to_string(q) + " is not a prime power");
    }
    p = pp->first;
    m = pp->second;
    return q;
}

struct RefRow {
    std::string source;
    std::string locality;
    unsigned lo, hi;
    std::vector<long long> n, k, d;
};

std::vector<RefRow> reference_rows()
{
    std::vector<RefRow> rows;
    auto from_params = [&](std::string source, std::string loc, unsigned hi, unsigned shift, auto params) {
        RefRow row{std::move(source), std::move(loc), 1, hi, {}, {}, {}};
        for (unsigned t = 1; t <= hi; ++t) {
            FamilyParams fp = params(t + shift);
            row.n.push_back(static_cast<long long>(fp.n));
            row.k.push_back(static_cast<long long>(fp.k));
            row.d.push_back(fp.d);
        }
        rows.push_back(std::move(row));
    };
    using RF = rational::Family;
    from_params("ExtendOne r=3 s=14", "3", 14, 0, [](unsigned t) { return rational::family_params(RF::ExtendOne, 3, 14, t); });
    from_params("ModExtendOne r=4 s=13", "4", 13, 0,
                [](unsigned t) { return rational::family_params(RF::ModExtendOne, 4, 13, t); });
    // length (s+1)(r+1) with s=16, d at the (r,3) Singleton-like bound
    from_params("ExtendAll length (s+1)(r+1), r=3 s=16", "(3,3)", 16, 0, [](unsigned t) {
        FamilyParams fp;
        fp.n = 17 * 4;
        fp.k = 3 * std::size_t(t);
        fp.d = singleton_bound(fp.n, fp.k, 3, 3);
        return fp;
    });
    using EF = elliptic::Family;
    from_params("EExtendOne r=2 s=26, row index t = ours - 1", "2", 25, 1,
                [](unsigned t) { return elliptic::family_params(EF::EExtendOne, 2, 26, t); });
    from_params("EExtendOne r=3 s=18", "3", 18, 0, [](unsigned t) { return elliptic::family_params(EF::EExtendOne, 3, 18, t); });
    return rows;
}

}  // namespace

std::string table_text(std::uint32_t q)
{
    std::uint32_t p = 0, m = 0;
    checked_q(q, p, m);
    std::ostringstream os;
    os << "parameter table for q = " << q << " (formulas only, nothing constructed)\n";
    using RF = rational::Family;
    for (RF f : {RF::Base, RF::ExtendOne, RF::ExtendAll, RF::RLOne, RF::RLAll, RF::ModExtendOne, RF::ModExtendAll}) {
        os << "\n# " << rational::to_string(f) << "\n";
        os << "# r s t [n,k,claimed d] kind locality singleton\n";
        std::size_t rows = 0;
        for (unsigned r = 1; r <= q; ++r) {
            int smax = rational::max_s(f, q, r);
            for (unsigned s = 2; static_cast<int>(s) <= smax; ++s) {
                if (!rational::validate_params(f, p, m, r, s, 1).ok) {
                    continue;
                }
                std::vector<long long> n, k, d, b;
                std::string kinds;
                for (unsigned t = 1; t <= s; ++t) {
                    FamilyParams fp = rational::family_params(f, r, s, t);
                    n.push_back(static_cast<long long>(fp.n));
                    k.push_back(static_cast<long long>(fp.k));
                    d.push_back(fp.d);
                    b.push_back(singleton_bound(fp.n, fp.k, std::min<unsigned>(r, static_cast<unsigned>(fp.k)), fp.delta));
                    std::string kd = to_string(fp.kind);
                    if (kinds.find(kd) == std::string::npos) {
                        kinds += (kinds.empty() ? "" : "/") + kd;
                    }
                }
                FamilyParams f1 = rational::family_params(f, r, s, 1);
                os << "r=" << r << " s=" << s << " t=1.." << s << " [" << render(n, 1) << "," << render(k, 1) << ","
                   << render(d, 1) << "] " << kinds << " (" << r << "," << f1.delta << ") " << render(b, 1) << "\n";
                ++rows;
            }
        }
        if (rows == 0) {
            os << "(no admissible parameters)\n";
        }
    }
    os << "\n# elliptic families depend on the curve's point count; use construct\n";
    if (q == 64) {
        os << "\n# reference rows\n";
        for (const auto& row : reference_rows()) {
            os << "[" << render(row.n, row.lo) << "," << render(row.k, row.lo) << "," << render(row.d, row.lo)
               << "] locality " << row.locality << " t=" << row.lo << ".." << row.hi << " from " << row.source << "\n";
        }
    }
    return os.str();
}

std::string params_text(std::uint32_t q)
{
    std::uint32_t p = 0, m = 0;
    checked_q(q, p, m);
    std::ostringstream os;
    os << "admissible r for q = " << q << " (p = " << p << ", m = " << m << ")\n";
    os << "# r conditions max_s(affine) max_s(modified) families\n";
    std::vector<unsigned> any, affine, cyclic;
    using RF = rational::Family;
    for (unsigned r = 1; r <= q; ++r) {
        auto c = rational::r_conditions(p, m, r);
        if (!c.any_affine() && !c.cyclic) {
            continue;
        }
        any.push_back(r);
        std::vector<std::string> conds;
        if (c.additive) {
            conds.push_back("r+1=p^v");
        }
        if (c.multiplicative) {
            conds.push_back("(r+1)|(q-1)");
        }
        if (c.semidirect) {
            conds.push_back("r+1=u*p^v,u|(q-1)");
        }
        if (c.cyclic) {
            conds.push_back("(r+1)|(q+1)");
        }
        std::string cs;
        for (std::size_t i = 0; i < conds.size(); ++i) {
            cs += (i ? " " : "") + conds[i];
        }
        std::vector<std::string> fams;
        for (RF f : {RF::Base, RF::ExtendOne, RF::ExtendAll, RF::RLOne, RF::RLAll, RF::ModExtendOne, RF::ModExtendAll}) {
            if (rational::validate_params(f, p, m, r, 2, 1).ok) {
                fams.push_back(rational::to_string(f));
            }
        }
        std::string fs;
        for (std::size_t i = 0; i < fams.size(); ++i) {
            fs += (i ? "," : "") + fams[i];
        }
        if (c.any_affine()) {
            affine.push_back(r);
        }
        if (c.cyclic) {
            cyclic.push_back(r);
        }
        os << r << " " << cs << " " << std::max(0, rational::max_s(RF::Base, q, r)) << " "
           << rational::max_s(RF::ModExtendOne, q, r) << " " << (fs.empty() ? "-" : fs) << "\n";
    }
    auto list = [](const std::vector<unsigned>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += (i ? "," : "") + std::to_string(v[i]);
        }
        return "{" + s + "}";
    };
    os << "affine conditions: r in " << list(affine) << "\n";
    os << "(r+1)|(q+1): r in " << list(cyclic) << "\n";
    os << "any condition: r in " << list(any) << "\n";
    return os.str();
}

namespace {

int cmd_construct(const std::string& plan_path, const std::string& out_path, std::ostream& out)
{
    io::PlanFile plan = io::parse_plan(io::read_file(plan_path));
    EvaluatedCode code = io::construct(plan);
    io::write_file(out_path, io::serialize_matrix(code));
    std::size_t failed = 0;
    out << "constructed " << code.claims.family << " " << bracket(code) << " over GF(" << code.field->q() << ") -> "
        << out_path << "\n";
    for (const auto& c : code.log) {
        out << (c.passed ? "[ok]   " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        failed += c.passed ? 0 : 1;
    }
    for (const auto& n : code.claims.notes) {
        out << "note: " << n << "\n";
    }
    if (failed) {
        out << "warning: " << failed << " check(s) failed\n";
    }
    return kOk;
}

struct VerifyOptions {
    std::string mode = "exhaustive";
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t seed = io::kDefaultSeed;
    unsigned threads = 1;
    bool json = false;
};

int cmd_verify(const std::string& path, const VerifyOptions& opt, std::ostream& out)
{
    EvaluatedCode code = io::parse_matrix(io::read_file(path));
    std::size_t rank = generator_rank(code);
    LocalityReport loc = verify_locality(code);
    std::uint64_t classes = projective_classes(code.field->q(), code.k);
    bool bounded = opt.mode == "bounded";
    bool auto_switched = false;
    if (!bounded && classes > opt.budget) {
        bounded = true;
        auto_switched = true;
    }
    DistanceReport dist = bounded ? min_distance_bounded(code, std::min<std::uint64_t>(opt.budget, 10000), opt.seed)
                                  : min_distance_exhaustive(code, opt.budget, opt.threads);
    Classification cls = classify_code(code, dist);
    ClaimStatus claim = check_claim(code.claims, dist);

    int rc = kInconclusive;
    if (rank != code.k || !loc.ok) {
        rc = kSuboptimal;
    } else if (cls.verdict == Classification::Verdict::Optimal) {
        rc = kOk;
    } else if (cls.verdict == Classification::Verdict::Gap || cls.verdict == Classification::Verdict::ExceedsBound) {
        rc = kSuboptimal;
    }

    if (opt.json) {
        ojson j;
        j["file"] = path;
        j["q"] = code.field->q();
        j["n"] = code.n;
        j["k"] = code.k;
        j["family"] = code.claims.family;
        j["r"] = code.claims.r;
        j["delta"] = code.claims.delta;
        j["rank"] = rank;
        j["rank_ok"] = rank == code.k;
        ojson l;
        l["ok"] = loc.ok;
        l["partition_ok"] = loc.partition_ok;
        ojson groups = ojson::array();
        for (const auto& g : loc.groups) {
            ojson gj;
            gj["size"] = g.size;
            gj["block_distance"] = g.block_distance;
            gj["consistent"] = g.consistent;
            gj["every_r_rows_invertible"] = !g.singular_rows.has_value();
            gj["unrecoverable"] = g.unrecoverable;
            groups.push_back(gj);
        }
        l["groups"] = groups;
        l["recovery_size"] = loc.recovery_size;
        l["problems"] = loc.problems;
        j["locality"] = l;
        ojson d;
        d["method"] = bounded ? "bounded" : "exhaustive";
        d["auto_switched"] = auto_switched;
        d["lower"] = dist.lower;
        d["lower_is_claimed"] = dist.lower_is_claimed;
        d["upper"] = dist.upper;
        d["enumerated"] = dist.enumerated;
        d["witness_message"] = fe_ints(dist.witness_message);
        d["witness"] = fe_ints(dist.witness);
        if (bounded) {
            d["seed"] = opt.seed;
        }
        j["distance"] = d;
        ojson c;
        c["kind"] = to_string(code.claims.d_kind);
        c["value"] = code.claims.design_d;
        c["formula"] = code.claims.formula;
        c["status"] = to_string(claim);
        j["claim"] = c;
        ojson v;
        v["bound"] = cls.bound;
        v["effective_r"] = cls.effective_r;
        v["gap"] = cls.gap;
        v["text"] = cls.text;
        j["classification"] = v;
        j["notes"] = code.claims.notes;
        j["exit_code"] = rc;
        out << j.dump(2) << "\n";
        return rc;
    }

    out << "code: " << code.claims.family << " " << bracket(code) << " over GF(" << code.field->q() << "), locality ("
        << code.claims.r << "," << code.claims.delta << ")\n";
    out << "rank: " << rank << (rank == code.k ? " = k" : " != k") << "\n";
    out << "locality: " << (loc.ok ? "ok" : "VIOLATED") << ", " << loc.groups.size() << " groups\n";
    for (std::size_t g = 0; g < loc.groups.size(); ++g) {
        const auto& gl = loc.groups[g];
        out << "  group " << g << ": size " << gl.size << ", block distance " << gl.block_distance
            << (gl.consistent ? "" : ", L inconsistent") << (gl.singular_rows ? ", singular r-row subset" : "") << "\n";
    }
    for (const auto& pr : loc.problems) {
        out << "  problem: " << pr << "\n";
    }
    if (bounded) {
        out << "distance: bounded" << (auto_switched ? " (auto-switched: " + std::to_string(classes) + " classes > budget)" : "")
            << ", seed " << opt.seed << ", lower " << dist.lower << (dist.lower_is_claimed ? " (claimed, family formula)" : "")
            << ", upper " << dist.upper << " (measured)\n";
    } else {
        out << "distance: exhaustive d = " << dist.d() << " over " << dist.enumerated << " classes\n";
    }
    out << "witness message: " << join_fe(dist.witness_message) << "\n";
    out << "witness word: " << join_fe(dist.witness) << "\n";
    out << "claim: d " << (code.claims.d_kind == DistanceKind::Exact ? "=" : code.claims.d_kind == DistanceKind::LowerBound ? ">=" : "<=")
        << " " << code.claims.design_d << " (" << code.claims.formula << "): " << to_string(claim) << "\n";
    out << "classification: " << cls.text << "\n";
    for (const auto& n : code.claims.notes) {
        out << "note: " << n << "\n";
    }
    return rc;
}

std::vector<std::size_t> parse_positions(const std::string& s)
{
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9) {
            throw Error(ErrorCode::ParseError, "bad position list '" + s + "'");
        }
        out.push_back(std::stoul(tok));
    }
    if (out.empty()) {
        throw Error(ErrorCode::ParseError, "empty position list");
    }
    return out;
}

int cmd_repair(const std::string& path, const std::string& erase, std::uint64_t seed, std::ostream& out)
{
    EvaluatedCode code = io::parse_matrix(io::read_file(path));
    auto erased = parse_positions(erase);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, code.field->q() - 1);
    std::vector<Fe> msg(code.k);
    for (auto& x : msg) {
        x = Fe(pick(rng));
    }
    std::vector<Fe> word = encode(code, msg);
    std::vector<Fe> damaged = word;
    for (auto e : erased) {
        if (e < damaged.size()) {
            damaged[e] = Fe(0);
        }
    }
    out << "message: " << join_fe(msg) << "\n";
    out << "codeword: " << join_fe(word) << "\n";
    out << "erased: " << join_idx(erased) << "\n";
    RepairResult res;
    try {
        res = repair(code, damaged, erased);
    } catch (const Error& e) {
        // the code's local matrices cannot serve this pattern; input itself is fine
        if (e.code() != ErrorCode::SubmatrixSingular) {
            throw;
        }
        out << "repair failed: " << e.what() << "\n";
        return kSuboptimal;
    }
    out << "group: " << res.group << "\n";
    out << "recovery set: " << join_idx(res.recovery_set) << " (size " << res.recovery_set.size() << ")\n";
    out << "repaired: " << join_fe(res.word) << "\n";
    bool ok = res.word == word;
    out << (ok ? "restored bit-exact\n" : "MISMATCH after repair\n");
    return ok ? kOk : kSuboptimal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Locally recoverable code constructions and verification", "lrc_cli"};
    app.require_subcommand(1);

    std::string plan_path, out_path;
    auto* construct = app.add_subcommand("construct", "build a code from a JSON plan");
    construct->add_option("--plan", plan_path, "plan file")->required();
    construct->add_option("-o,--output", out_path, "matrix file to write")->required();

    std::string matrix_path;
    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "rank, locality, distance and optimality of a matrix file");
    verify->add_option("file", matrix_path, "matrix file")->required();
    verify->add_option("--mode", vopt.mode, "exhaustive or bounded")->check(CLI::IsMember({"exhaustive", "bounded"}));
    verify->add_option("--budget", vopt.budget, "exhaustive class budget / bounded trials");
    verify->add_option("--seed", vopt.seed, "seed for bounded mode");
    verify->add_option("--threads", vopt.threads, "enumeration threads")->check(CLI::Range(1u, 256u));
    verify->add_flag("--json", vopt.json, "machine-readable report");

    std::string repair_path, erase;
    std::uint64_t repair_seed = io::kDefaultSeed;
    auto* repair_cmd = app.add_subcommand("repair-demo", "encode, erase within one block, repair");
    repair_cmd->add_option("file", repair_path, "matrix file")->required();
    repair_cmd->add_option("--erase", erase, "comma-separated positions")->required();
    repair_cmd->add_option("--seed", repair_seed, "message seed");

    std::uint32_t table_q = 0, params_q = 0;
    auto* table = app.add_subcommand("table", "family parameter table");
    table->add_option("--q", table_q, "field size")->required();
    auto* params = app.add_subcommand("params", "admissible locality values");
    params->add_option("--q", params_q, "field size")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (*construct) {
            return cmd_construct(plan_path, out_path, out);
        }
        if (*verify) {
            return cmd_verify(matrix_path, vopt, out);
        }
        if (*repair_cmd) {
            return cmd_repair(repair_path, erase, repair_seed, out);
        }
        if (*table) {
            out << table_text(table_q);
            return kOk;
        }
        if (*params) {
            out << params_text(params_q);
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    return kInvalidInput;
}

}  // namespace lrc::cli
