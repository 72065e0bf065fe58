#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lrc {

// Field element, stored as its integer encoding sum(digit[i] * p^i).
struct Fe {
    std::uint32_t v = 0;

    constexpr Fe() = default;
    constexpr explicit Fe(std::uint32_t value) : v(value) {}
    constexpr bool is_zero() const { return v == 0; }
    friend constexpr auto operator<=>(Fe, Fe) = default;
};

inline constexpr std::uint64_t kMaxFieldSize = 1u << 20;

// GF(p^m) with log/exp tables over a primitive element.
class Field {
public:
    // Throws InvalidField for non-prime p, m == 0, q > 2^20 or a reducible modulus.
    static std::shared_ptr<const Field> make(
        std::uint32_t p,
        std::uint32_t m,
        std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }
    // Monic, low-to-high, length m+1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Fe zero() const { return Fe(0); }
    Fe one() const { return Fe(1); }
    // Image of an integer in the prime subfield.
    Fe from_int(std::int64_t n) const;
    // Element with encoding e, e < q.
    Fe element(std::uint64_t e) const;

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const
    {
        if (a.v == 0 || b.v == 0) {
            return Fe(0);
        }
        return Fe(exp_[log_[a.v] + log_[b.v]]);
    }
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const;
    Fe pow(Fe a, std::int64_t n) const;

    Fe primitive() const { return Fe(exp_[1]); }
    // Multiplicative order of a nonzero element.
    std::uint32_t order(Fe a) const;

    std::vector<std::uint32_t> digits(Fe a) const;
    Fe from_digits(const std::vector<std::uint32_t>& digits) const;

    std::string describe() const;

private:
    Field() = default;

    std::uint32_t p_ = 0;
    std::uint32_t m_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> pw_;  // p^i
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);
// Prime factors of n, ascending, without repetition.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
// (p, m) with q = p^m, or nullopt.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

}  // namespace lrc
