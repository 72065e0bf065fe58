#include "lrc/code.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "lrc/error.hpp"

namespace lrc {

const char* to_string(DistanceKind k)
{
    switch (k) {
    case DistanceKind::Exact: return "exact";
    case DistanceKind::LowerBound: return "lower";
    case DistanceKind::UpperBound: return "upper";
    }
    return "exact";
}

std::vector<Fe> encode(const EvaluatedCode& code, const std::vector<Fe>& a)
{
    if (a.size() != code.k) {
        throw Error(ErrorCode::DimensionMismatch,
                    "message length " + std::to_string(a.size()) + " != k = " + std::to_string(code.k));
    }
    return linalg::vec_mul(*code.field, a, code.G);
}

std::size_t weight(const std::vector<Fe>& w)
{
    return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](Fe x) { return !x.is_zero(); }));
}

std::size_t generator_rank(const EvaluatedCode& code)
{
    return linalg::rank(*code.field, code.G);
}

namespace {

std::optional<std::size_t> group_of(const EvaluatedCode& code, std::size_t pos)
{
    for (std::size_t g = 0; g < code.groups.size(); ++g) {
        const auto& P = code.groups[g].positions;
        if (std::find(P.begin(), P.end(), pos) != P.end()) {
            return g;
        }
    }
    return std::nullopt;
}

}  // namespace

RepairResult repair(const EvaluatedCode& code, const std::vector<Fe>& word, const std::vector<std::size_t>& erased)
{
    const Field& F = *code.field;
    if (word.size() != code.n) {
        throw Error(ErrorCode::DimensionMismatch, "word length");
    }
    if (erased.empty()) {
        return RepairResult{word, {}, 0};
    }
    for (auto e : erased) {
        if (e >= code.n) {
            throw Error(ErrorCode::DimensionMismatch, "erased position " + std::to_string(e) + " out of range");
        }
    }
    auto g0 = group_of(code, erased[0]);
    if (!g0) {
        throw Error(ErrorCode::CrossBlockErasure, "position " + std::to_string(erased[0]) + " is in no repair group");
    }
    for (auto e : erased) {
        if (group_of(code, e) != g0) {
            throw Error(ErrorCode::CrossBlockErasure,
                        "positions " + std::to_string(erased[0]) + " and " + std::to_string(e) +
                            " lie in different repair groups");
        }
    }
    if (erased.size() > code.claims.delta - 1) {
        throw Error(ErrorCode::TooManyErasures,
                    std::to_string(erased.size()) + " erasures exceed delta - 1 = " +
                        std::to_string(code.claims.delta - 1));
    }
    const RepairGroup& grp = code.groups[*g0];
    std::size_t r = grp.L.cols();
    std::vector<std::size_t> intact;
    for (std::size_t i = 0; i < grp.positions.size(); ++i) {
        if (std::find(erased.begin(), erased.end(), grp.positions[i]) == erased.end()) {
            intact.push_back(i);
        }
    }
    for (const auto& pick : linalg::subsets(intact.size(), r)) {
        std::vector<std::size_t> rows;
        for (auto j : pick) {
            rows.push_back(intact[j]);
        }
        Matrix A = grp.L.select_rows(rows);
        std::vector<Fe> b;
        for (auto i : rows) {
            b.push_back(word[grp.positions[i]]);
        }
        auto c = linalg::solve(F, A, b);
        if (!c) {
            continue;
        }
        RepairResult out{word, {}, *g0};
        for (auto i : rows) {
            out.recovery_set.push_back(grp.positions[i]);
        }
        for (std::size_t i = 0; i < grp.positions.size(); ++i) {
            if (std::find(erased.begin(), erased.end(), grp.positions[i]) == erased.end()) {
                continue;
            }
            Fe v(0);
            for (std::size_t j = 0; j < r; ++j) {
                v = F.add(v, F.mul(grp.L.at(i, j), (*c)[j]));
            }
            out.word[grp.positions[i]] = v;
        }
        return out;
    }
    throw Error(ErrorCode::SubmatrixSingular, "no invertible choice of intact rows in group " + std::to_string(*g0));
}

std::uint64_t projective_classes(std::uint32_t q, std::size_t k)
{
    // (q^k - 1)/(q - 1) = 1 + q + ... + q^(k-1)
    std::uint64_t sum = 0, term = 1;
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < k; ++i) {
        if (sum > cap - term) {
            return cap;
        }
        sum += term;
        if (i + 1 < k) {
            if (term > cap / q) {
                return cap;
            }
            term *= q;
        }
    }
    return sum;
}

namespace {

struct Best {
    std::size_t weight = std::numeric_limits<std::size_t>::max();
    std::vector<Fe> message;
    std::uint64_t count = 0;
};

// Messages with a[0..lead) = 0, a[lead] = 1 and, when fixed is set, a[lead+1] = *fixed.
// Tail enumerated in lexicographic order (a[lead+1] most significant).
Best scan_chunk(const EvaluatedCode& code, std::size_t lead, std::optional<std::uint32_t> fixed)
{
    const Field& F = *code.field;
    const std::size_t k = code.k, n = code.n;
    const std::uint32_t q = F.q();
    Best best;

    std::vector<Fe> msg(k, Fe(0));
    msg[lead] = F.one();
    std::size_t first = lead + 1;
    std::vector<std::vector<Fe>> partial(k + 1, std::vector<Fe>(n));
    partial[first] = code.G.row(lead);
    if (fixed) {
        msg[first] = Fe(*fixed);
        auto row = code.G.row(first);
        for (std::size_t c = 0; c < n; ++c) {
            partial[first + 1][c] = F.add(partial[first][c], F.mul(msg[first], row[c]));
        }
        ++first;
    }

    auto visit = [&](const std::vector<Fe>& w) {
        ++best.count;
        std::size_t wt = weight(w);
        if (wt < best.weight) {
            best.weight = wt;
            best.message = msg;
        }
    };

    if (first == k) {
        visit(partial[first]);
        return best;
    }
    // odometer over msg[first..k)
    std::vector<std::uint32_t> digit(k, 0);
    std::size_t j = first;
    while (true) {
        // fill levels from j to k
        for (std::size_t l = j; l < k; ++l) {
            msg[l] = Fe(digit[l]);
            const std::vector<Fe>& prev = partial[l];
            std::vector<Fe>& next = partial[l + 1];
            if (digit[l] == 0) {
                next = prev;
            } else {
                for (std::size_t c = 0; c < n; ++c) {
                    next[c] = F.add(prev[c], F.mul(msg[l], code.G.at(l, c)));
                }
            }
        }
        visit(partial[k]);
        // increment
        std::size_t l = k;
        while (l > first && digit[l - 1] + 1 == q) {
            digit[l - 1] = 0;
            --l;
        }
        if (l == first) {
            break;
        }
        ++digit[l - 1];
        j = l - 1;
    }
    return best;
}

}  // namespace

DistanceReport min_distance_exhaustive(const EvaluatedCode& code, std::uint64_t budget, unsigned threads)
{
    const std::uint32_t q = code.field->q();
    std::uint64_t classes = projective_classes(q, code.k);
    if (classes > budget) {
        throw Error(ErrorCode::BudgetExceeded,
                    std::to_string(classes) + " message classes exceed budget " + std::to_string(budget));
    }
    // chunks in enumeration order: larger lead index first (smaller message encoding)
    struct Chunk {
        std::size_t lead;
        std::optional<std::uint32_t> fixed;
    };
    std::vector<Chunk> chunks;
    for (std::size_t lead = code.k; lead-- > 0;) {
        if (threads > 1 && lead + 1 < code.k) {
            for (std::uint32_t v = 0; v < q; ++v) {
                chunks.push_back({lead, v});
            }
        } else {
            chunks.push_back({lead, std::nullopt});
        }
    }
    std::vector<Best> results(chunks.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            results[i] = scan_chunk(code, chunks[i].lead, chunks[i].fixed);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < chunks.size(); i = next++) {
                    results[i] = scan_chunk(code, chunks[i].lead, chunks[i].fixed);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    DistanceReport rep;
    rep.method = DistanceReport::Method::Exhaustive;
    Best best;
    for (auto& r : results) {
        rep.enumerated += r.count;
        if (r.weight < best.weight) {
            best = r;
        }
    }
    rep.lower = rep.upper = static_cast<int>(best.weight);
    rep.witness_message = best.message;
    rep.witness = encode(code, best.message);
    return rep;
}

namespace {

// Messages whose codewords vanish on a greedily grown set of columns: whole groups first
// (in `group_order`), then single positions (in `pos_order`).
std::vector<std::vector<Fe>> vanishing_probe(const EvaluatedCode& code,
                                             const std::vector<std::size_t>& group_order,
                                             const std::vector<std::size_t>& pos_order)
{
    const Field& F = *code.field;
    const std::size_t k = code.k;
    std::vector<std::size_t> cols;
    std::vector<bool> used(code.n, false);
    auto fits = [&](const std::vector<std::size_t>& extra) {
        std::vector<std::size_t> c = cols;
        c.insert(c.end(), extra.begin(), extra.end());
        return linalg::rank(F, code.G.select_cols(c)) < k;
    };
    for (auto g : group_order) {
        std::vector<std::size_t> extra;
        for (auto p : code.groups[g].positions) {
            if (!used[p]) {
                extra.push_back(p);
            }
        }
        if (!extra.empty() && fits(extra)) {
            for (auto p : extra) {
                used[p] = true;
                cols.push_back(p);
            }
        }
    }
    for (auto p : pos_order) {
        if (!used[p] && fits({p})) {
            used[p] = true;
            cols.push_back(p);
        }
    }
    // messages a with a * G_cols = 0, i.e. kernel of G_cols^T
    return linalg::kernel(F, code.G.select_cols(cols).transpose());
}

}  // namespace

DistanceReport min_distance_bounded(const EvaluatedCode& code, std::uint64_t trials, std::uint64_t seed)
{
    const Field& F = *code.field;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> elem(0, F.q() - 1);

    DistanceReport rep;
    rep.method = DistanceReport::Method::Bounded;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    auto consider = [&](const std::vector<Fe>& msg) {
        if (weight(msg) == 0) {
            return;
        }
        ++rep.enumerated;
        auto w = encode(code, msg);
        std::size_t wt = weight(w);
        if (wt < best) {
            best = wt;
            rep.witness_message = msg;
            rep.witness = w;
        }
    };

    // structured probes: canonical order, then seeded shuffles
    std::vector<std::size_t> gorder(code.groups.size()), porder(code.n);
    std::iota(gorder.begin(), gorder.end(), 0);
    std::iota(porder.begin(), porder.end(), 0);
    std::size_t probes = 8 + 2 * code.groups.size();
    for (std::size_t p = 0; p < probes; ++p) {
        if (p > 0) {
            std::shuffle(gorder.begin(), gorder.end(), rng);
            std::shuffle(porder.begin(), porder.end(), rng);
        }
        for (const auto& msg : vanishing_probe(code, gorder, porder)) {
            consider(msg);
        }
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<Fe> msg(code.k);
        for (auto& x : msg) {
            x = Fe(elem(rng));
        }
        consider(msg);
    }

    rep.upper = best == std::numeric_limits<std::size_t>::max() ? static_cast<int>(code.n)
                                                                 : static_cast<int>(best);
    if (code.claims.d_kind == DistanceKind::UpperBound) {
        rep.lower = 1;
        rep.lower_is_claimed = false;
    } else {
        rep.lower = std::min(code.claims.design_d, rep.upper);
        rep.lower_is_claimed = true;
    }
    return rep;
}

int singleton_bound(std::size_t n, std::size_t k, unsigned r, unsigned delta)
{
    if (r < 1 || r > k) {
        throw Error(ErrorCode::ParamViolation, "need 1 <= r <= k (r = " + std::to_string(r) +
                                                   ", k = " + std::to_string(k) + ")");
    }
    if (delta < 2) {
        throw Error(ErrorCode::ParamViolation, "need delta >= 2");
    }
    long long kk = static_cast<long long>(k);
    long long blocks = (kk + r - 1) / r;
    return static_cast<int>(static_cast<long long>(n) - kk - (blocks - 1) * (delta - 1) + 1);
}

namespace {

// Minimum distance of the row space of B; 0 for the zero code, -1 if undecided.
int row_space_distance(const Field& F, const Matrix& B)
{
    Matrix R = B;
    auto piv = linalg::rref(F, R);
    std::size_t dim = piv.size();
    std::size_t len = B.cols();
    if (dim == 0) {
        return 0;
    }
    std::vector<std::size_t> idx(dim);
    std::iota(idx.begin(), idx.end(), 0);
    Matrix basis = R.select_rows(idx);
    if (projective_classes(F.q(), dim) <= (std::uint64_t(1) << 22)) {
        EvaluatedCode tmp;
        tmp.field = std::shared_ptr<const Field>(std::shared_ptr<const Field>(), &F);
        tmp.n = len;
        tmp.k = dim;
        tmp.G = basis;
        return min_distance_exhaustive(tmp, std::numeric_limits<std::uint64_t>::max()).d();
    }
    // MDS check through maximal minors
    for (const auto& cols : linalg::subsets(len, dim)) {
        if (linalg::det(F, basis.select_cols(cols)).is_zero()) {
            return -1;
        }
    }
    return static_cast<int>(len - dim + 1);
}

}  // namespace

LocalityReport verify_locality(const EvaluatedCode& code)
{
    const Field& F = *code.field;
    const unsigned r = code.claims.r, delta = code.claims.delta;
    LocalityReport rep;
    rep.recovery_size.assign(code.n, 0);

    std::vector<int> owner(code.n, -1);
    rep.partition_ok = true;
    for (std::size_t g = 0; g < code.groups.size(); ++g) {
        for (auto p : code.groups[g].positions) {
            if (p >= code.n || owner[p] != -1) {
                rep.partition_ok = false;
                rep.problems.push_back("position " + std::to_string(p) + " is not owned by exactly one group");
            } else {
                owner[p] = static_cast<int>(g);
            }
        }
    }
    for (std::size_t p = 0; p < code.n; ++p) {
        if (owner[p] == -1) {
            rep.partition_ok = false;
            rep.problems.push_back("position " + std::to_string(p) + " belongs to no group");
        }
    }

    for (std::size_t g = 0; g < code.groups.size(); ++g) {
        const RepairGroup& grp = code.groups[g];
        GroupLocality gl;
        gl.group = g;
        gl.size = grp.positions.size();
        Matrix B = code.G.select_cols(grp.positions);
        gl.block_dimension = linalg::rank(F, B);
        gl.block_distance = row_space_distance(F, B);
        gl.size_ok = gl.size <= r + delta - 1;
        gl.distance_ok = gl.block_distance >= static_cast<int>(delta);

        // consistency: rows of B lie in the span of the columns of L
        if (grp.L.rows() == gl.size) {
            Matrix Lt = grp.L.transpose();
            Matrix stacked = Lt;
            for (std::size_t i = 0; i < B.rows(); ++i) {
                stacked.append_row(B.row(i));
            }
            gl.consistent = linalg::rank(F, stacked) == linalg::rank(F, Lt);
            if (grp.L.cols() == r) {
                gl.singular_rows = linalg::singular_row_subset(F, grp.L);
            }
        }

        // per-position recovery subsets
        std::size_t want = std::min<std::size_t>(gl.size, r + delta - 1);
        for (std::size_t i = 0; i < gl.size; ++i) {
            bool found = false;
            if (gl.size_ok && gl.distance_ok) {
                found = true;
            } else {
                std::vector<std::size_t> others;
                for (std::size_t j = 0; j < gl.size; ++j) {
                    if (j != i) {
                        others.push_back(j);
                    }
                }
                for (const auto& pick : linalg::subsets(others.size(), want - 1)) {
                    std::vector<std::size_t> cols{grp.positions[i]};
                    for (auto j : pick) {
                        cols.push_back(grp.positions[others[j]]);
                    }
                    if (row_space_distance(F, code.G.select_cols(cols)) >= static_cast<int>(delta)) {
                        found = true;
                        break;
                    }
                }
            }
            if (found) {
                rep.recovery_size[grp.positions[i]] = want - (delta - 1);
            } else {
                gl.unrecoverable.push_back(grp.positions[i]);
            }
        }

        std::ostringstream os;
        os << "group " << g << ":";
        bool bad = false;
        if (!gl.unrecoverable.empty()) {
            bad = true;
            os << " positions without an (r,delta) recovery set:";
            for (auto p : gl.unrecoverable) {
                os << " " << p;
            }
            os << ";";
        }
        if (!gl.consistent) {
            bad = true;
            os << " local matrix does not generate the block symbols;";
        }
        if (gl.singular_rows) {
            bad = true;
            os << " singular r x r submatrix at rows";
            for (auto i : *gl.singular_rows) {
                os << " " << i;
            }
            os << ";";
        }
        if (bad) {
            rep.problems.push_back(os.str());
        }
        rep.groups.push_back(std::move(gl));
    }
    rep.ok = rep.partition_ok && rep.problems.empty();
    return rep;
}

Classification classify_code(const EvaluatedCode& code, const DistanceReport& report)
{
    Classification c;
    c.effective_r = std::min<unsigned>(code.claims.r, static_cast<unsigned>(code.k));
    c.bound = singleton_bound(code.n, code.k, c.effective_r, code.claims.delta);
    std::ostringstream os;
    if (report.method == DistanceReport::Method::Exhaustive) {
        int d = report.d();
        if (d == c.bound) {
            c.verdict = Classification::Verdict::Optimal;
            os << "optimal, d = " << d << " = bound";
        } else if (d < c.bound) {
            c.verdict = Classification::Verdict::Gap;
            c.gap = c.bound - d;
            os << "gap " << c.gap << ", d = " << d << " < bound " << c.bound;
        } else {
            c.verdict = Classification::Verdict::ExceedsBound;
            c.gap = c.bound - d;
            os << "d = " << d << " exceeds bound " << c.bound << " (stated locality cannot hold)";
        }
    } else {
        if (report.upper < c.bound) {
            c.verdict = Classification::Verdict::Gap;
            c.gap = c.bound - report.upper;
            os << "suboptimal (bounded), witness weight " << report.upper << " < bound " << c.bound;
        } else if (report.upper == c.bound) {
            c.verdict = Classification::Verdict::OptimalConsistent;
            os << "optimal-consistent (bounded), upper = " << report.upper << " = bound";
        } else {
            c.verdict = Classification::Verdict::Inconclusive;
            os << "inconclusive (bounded), upper " << report.upper << " > bound " << c.bound;
        }
    }
    if (c.effective_r != code.claims.r) {
        os << " [locality capped at k = " << code.k << "]";
    }
    c.text = os.str();
    return c;
}

const char* to_string(ClaimStatus s)
{
    switch (s) {
    case ClaimStatus::Holds: return "holds";
    case ClaimStatus::Refuted: return "refuted";
    case ClaimStatus::Undetermined: return "undetermined";
    }
    return "undetermined";
}

ClaimStatus check_claim(const CodeClaims& claims, const DistanceReport& report)
{
    int c = claims.design_d;
    if (report.method == DistanceReport::Method::Exhaustive) {
        int d = report.d();
        bool ok = claims.d_kind == DistanceKind::Exact        ? d == c
                  : claims.d_kind == DistanceKind::LowerBound ? d >= c
                                                              : d <= c;
        return ok ? ClaimStatus::Holds : ClaimStatus::Refuted;
    }
    if (claims.d_kind == DistanceKind::UpperBound) {
        return report.upper <= c ? ClaimStatus::Holds : ClaimStatus::Undetermined;
    }
    return report.upper < c ? ClaimStatus::Refuted : ClaimStatus::Undetermined;
}

void audit_structure(EvaluatedCode& code)
{
    const Field& F = *code.field;
    std::size_t rk = generator_rank(code);
    code.log.push_back({"generator rank", rk == code.k,
                        "rank " + std::to_string(rk) + ", k = " + std::to_string(code.k)});
    std::vector<int> owner(code.n, 0);
    for (const auto& g : code.groups) {
        for (auto p : g.positions) {
            if (p < code.n) {
                ++owner[p];
            }
        }
    }
    bool part = std::all_of(owner.begin(), owner.end(), [](int c) { return c == 1; });
    code.log.push_back({"repair groups partition the positions", part, std::to_string(code.groups.size()) + " groups"});
    for (std::size_t g = 0; g < code.groups.size(); ++g) {
        const auto& grp = code.groups[g];
        auto sing = linalg::singular_row_subset(F, grp.L);
        std::string detail = "group " + std::to_string(g);
        if (sing) {
            detail += ": rows";
            for (auto i : *sing) {
                detail += " " + std::to_string(i);
            }
        }
        code.log.push_back({"every r x r submatrix of L invertible", !sing, detail});
        Matrix B = code.G.select_cols(grp.positions);
        Matrix stacked = grp.L.transpose();
        std::size_t base = linalg::rank(F, stacked);
        for (std::size_t i = 0; i < B.rows(); ++i) {
            stacked.append_row(B.row(i));
        }
        bool cons = linalg::rank(F, stacked) == base;
        code.log.push_back({"local matrix generates block symbols", cons, "group " + std::to_string(g)});
    }
}

}  // namespace lrc
