#pragma once

#include <random>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/matrix.hpp"
#include "lrc/ratfn.hpp"

namespace lrc::testing {

inline std::vector<Fe> random_vector(const Field& F, std::size_t len, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
    std::vector<Fe> v(len);
    for (auto& x : v) {
        x = Fe(pick(rng));
    }
    return v;
}

inline std::vector<Fe> fes(std::initializer_list<std::uint32_t> v)
{
    std::vector<Fe> out;
    for (auto x : v) {
        out.push_back(Fe(x));
    }
    return out;
}

inline Matrix matrix(std::initializer_list<std::initializer_list<std::uint32_t>> rows)
{
    Matrix M;
    bool first = true;
    for (const auto& r : rows) {
        if (first) {
            M = Matrix(0, r.size());
            first = false;
        }
        M.append_row(fes(r));
    }
    return M;
}

// Every element of PGL(2, q) once, as normalized maps.
inline std::vector<Mobius> all_mobius(const Field& F)
{
    std::vector<Mobius> out;
    for (std::uint32_t a = 0; a < F.q(); ++a) {
        for (std::uint32_t b = 0; b < F.q(); ++b) {
            for (std::uint32_t c = 0; c < F.q(); ++c) {
                for (std::uint32_t d = 0; d < F.q(); ++d) {
                    Fe det = F.sub(F.mul(Fe(a), Fe(d)), F.mul(Fe(b), Fe(c)));
                    if (det.is_zero()) {
                        continue;
                    }
                    // normalized form has first nonzero entry 1
                    Fe lead = a ? Fe(a) : Fe(b);
                    if (lead != F.one()) {
                        continue;
                    }
                    out.push_back(mobius::make(F, Fe(a), Fe(b), Fe(c), Fe(d)));
                }
            }
        }
    }
    return out;
}

inline std::vector<PlaceP1> all_places(const Field& F)
{
    std::vector<PlaceP1> out;
    for (std::uint32_t a = 0; a < F.q(); ++a) {
        out.push_back(PlaceP1::finite(Fe(a)));
    }
    out.push_back(PlaceP1::infinity());
    return out;
}

// Every within-group erasure pattern of size 1..delta-1 repaired for `messages` random messages.
struct RoundTrip {
    std::size_t patterns = 0;
    std::size_t attempts = 0;
    std::size_t failures = 0;
};

inline RoundTrip repair_round_trip(const EvaluatedCode& code, std::size_t messages, std::uint64_t seed,
                                   std::size_t max_erasures)
{
    RoundTrip rt;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Fe>> words;
    for (std::size_t i = 0; i < messages; ++i) {
        words.push_back(encode(code, random_vector(*code.field, code.k, rng)));
    }
    for (const auto& g : code.groups) {
        for (std::size_t e = 1; e <= max_erasures; ++e) {
            for (const auto& pick : linalg::subsets(g.positions.size(), e)) {
                std::vector<std::size_t> erased;
                for (auto i : pick) {
                    erased.push_back(g.positions[i]);
                }
                ++rt.patterns;
                for (const auto& w : words) {
                    ++rt.attempts;
                    std::vector<Fe> damaged = w;
                    for (auto p : erased) {
                        damaged[p] = Fe(0);
                    }
                    try {
                        if (repair(code, damaged, erased).word != w) {
                            ++rt.failures;
                        }
                    } catch (const std::exception&) {
                        ++rt.failures;
                    }
                }
            }
        }
    }
    return rt;
}

}  // namespace lrc::testing
