#include "lrc/field.hpp"

#include <sstream>

#include "lrc/error.hpp"

namespace lrc {

bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) {
                n /= d;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q)
{
    if (q < 2) {
        return std::nullopt;
    }
    auto f = prime_factors(q);
    if (f.size() != 1) {
        return std::nullopt;
    }
    std::uint32_t m = 0;
    for (std::uint64_t x = q; x > 1; x /= f[0]) {
        ++m;
    }
    return std::make_pair(static_cast<std::uint32_t>(f[0]), m);
}

namespace {

using Digits = std::vector<std::uint32_t>;

// Dense polynomials over GF(p), low-to-high, trimmed.
void trim(Digits& a)
{
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
        if (e & 1) {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

Digits poly_mod(Digits a, const Digits& m, std::uint32_t p)
{
    trim(a);
    std::size_t dm = m.size() - 1;
    std::uint32_t li = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        std::uint64_t c = std::uint64_t(a.back()) * li % p;
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

bool irreducible(const Digits& f, std::uint32_t p)
{
    std::size_t deg = f.size() - 1;
    if (deg <= 1) {
        return deg == 1;
    }
    // monic divisors of degree d, enumerated by base-p integer of the low coefficients
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) {
            count *= p;
        }
        for (std::uint64_t code = 0; code < count; ++code) {
            Digits g(d + 1);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::shared_ptr<const Field> Field::make(
    std::uint32_t p,
    std::uint32_t m,
    std::optional<std::vector<std::uint32_t>> modulus)
{
    if (!is_prime(p)) {
        throw Error(ErrorCode::InvalidField, "p = " + std::to_string(p) + " is not prime");
    }
    if (m == 0) {
        throw Error(ErrorCode::InvalidField, "extension degree must be >= 1");
    }
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > kMaxFieldSize) {
            throw Error(ErrorCode::InvalidField, "q exceeds 2^20");
        }
    }

    std::shared_ptr<Field> f(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = static_cast<std::uint32_t>(q);
    f->pw_.resize(m + 1);
    f->pw_[0] = 1;
    for (std::uint32_t i = 1; i <= m; ++i) {
        f->pw_[i] = f->pw_[i - 1] * p;
    }

    if (modulus) {
        Digits mod = *modulus;
        if (mod.size() != m + 1 || mod.back() != 1) {
            throw Error(ErrorCode::InvalidField, "modulus must be monic of degree m");
        }
        for (auto c : mod) {
            if (c >= p) {
                throw Error(ErrorCode::InvalidField, "modulus coefficient out of range");
            }
        }
        if (!irreducible(mod, p)) {
            throw Error(ErrorCode::InvalidField, "modulus is reducible");
        }
        f->modulus_ = mod;
    } else {
        std::uint64_t count = q;
        for (std::uint64_t code = 0; code < count; ++code) {
            Digits mod(m + 1);
            std::uint64_t c = code;
            for (std::uint32_t i = 0; i < m; ++i) {
                mod[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            mod[m] = 1;
            if (irreducible(mod, p)) {
                f->modulus_ = mod;
                break;
            }
        }
    }

    auto to_digits = [&](std::uint32_t e) {
        Digits d(m);
        for (std::uint32_t i = 0; i < m; ++i) {
            d[i] = e % p;
            e /= p;
        }
        return d;
    };
    auto to_int = [&](const Digits& d) {
        std::uint32_t e = 0;
        for (std::size_t i = d.size(); i-- > 0;) {
            e = e * p + d[i];
        }
        return e;
    };
    auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
        Digits da = to_digits(a), db = to_digits(b);
        Digits prod(2 * m, 0);
        for (std::uint32_t i = 0; i < m; ++i) {
            for (std::uint32_t j = 0; j < m; ++j) {
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p);
            }
        }
        Digits r = poly_mod(prod, f->modulus_, p);
        r.resize(m, 0);
        return to_int(r);
    };

    std::uint32_t n = f->q_ - 1;
    auto factors = prime_factors(n);
    std::uint32_t gen = 0;
    for (std::uint32_t g = 1; g < f->q_ && gen == 0; ++g) {
        bool ok = true;
        for (auto l : factors) {
            std::uint64_t e = n / l;
            std::uint32_t r = 1, b = g;
            while (e) {
                if (e & 1) {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            if (r == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = g;
        }
    }
    if (f->q_ == 2) {
        gen = 1;
    }

    f->exp_.assign(2 * std::size_t(n) + 1, 0);
    f->log_.assign(f->q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        f->exp_[i] = x;
        f->log_[x] = i;
        x = slow_mul(x, gen);
    }
    for (std::uint32_t i = n; i < 2 * n + 1; ++i) {
        f->exp_[i] = f->exp_[i - n];
    }
    return f;
}

Fe Field::from_int(std::int64_t n) const
{
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) {
        r += p_;
    }
    return Fe(static_cast<std::uint32_t>(r));
}

Fe Field::element(std::uint64_t e) const
{
    if (e >= q_) {
        throw Error(ErrorCode::InvalidField, "encoding " + std::to_string(e) + " out of range");
    }
    return Fe(static_cast<std::uint32_t>(e));
}

Fe Field::add(Fe a, Fe b) const
{
    if (m_ == 1) {
        std::uint32_t s = a.v + b.v;
        return Fe(s >= p_ ? s - p_ : s);
    }
    if (p_ == 2) {
        return Fe(a.v ^ b.v);
    }
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t d = (a.v / pw_[i]) % p_ + (b.v / pw_[i]) % p_;
        if (d >= p_) {
            d -= p_;
        }
        out += d * pw_[i];
    }
    return Fe(out);
}

Fe Field::neg(Fe a) const
{
    if (m_ == 1) {
        return Fe(a.v == 0 ? 0 : p_ - a.v);
    }
    if (p_ == 2) {
        return a;
    }
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t d = (a.v / pw_[i]) % p_;
        out += (d == 0 ? 0 : p_ - d) * pw_[i];
    }
    return Fe(out);
}

Fe Field::sub(Fe a, Fe b) const
{
    return add(a, neg(b));
}

Fe Field::inv(Fe a) const
{
    if (a.v == 0) {
        throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    }
    std::uint32_t n = q_ - 1;
    return Fe(exp_[(n - log_[a.v]) % n]);
}

Fe Field::div(Fe a, Fe b) const
{
    if (b.v == 0) {
        throw Error(ErrorCode::DivisionByZero, "division by zero");
    }
    return mul(a, inv(b));
}

Fe Field::pow(Fe a, std::int64_t n) const
{
    if (a.v == 0) {
        if (n < 0) {
            throw Error(ErrorCode::DivisionByZero, "negative power of zero");
        }
        return n == 0 ? one() : zero();
    }
    std::int64_t ord = q_ - 1;
    std::int64_t e = (static_cast<std::int64_t>(log_[a.v]) * (n % ord)) % ord;
    if (e < 0) {
        e += ord;
    }
    return Fe(exp_[e]);
}

std::uint32_t Field::order(Fe a) const
{
    if (a.v == 0) {
        throw Error(ErrorCode::DivisionByZero, "order of zero");
    }
    std::uint32_t n = q_ - 1;
    std::uint32_t l = log_[a.v];
    // n / gcd(n, l)
    std::uint32_t x = n, y = l;
    while (y) {
        std::uint32_t t = x % y;
        x = y;
        y = t;
    }
    return n / x;
}

std::vector<std::uint32_t> Field::digits(Fe a) const
{
    std::vector<std::uint32_t> d(m_);
    std::uint32_t e = a.v;
    for (std::uint32_t i = 0; i < m_; ++i) {
        d[i] = e % p_;
        e /= p_;
    }
    return d;
}

Fe Field::from_digits(const std::vector<std::uint32_t>& d) const
{
    if (d.size() != m_) {
        throw Error(ErrorCode::InvalidField, "digit vector has wrong length");
    }
    std::uint32_t e = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] >= p_) {
            throw Error(ErrorCode::InvalidField, "digit out of range");
        }
        e = e * p_ + d[i];
    }
    return Fe(e);
}

std::string Field::describe() const
{
    std::ostringstream os;
    os << "GF(" << q_ << ")";
    if (m_ > 1) {
        os << " = GF(" << p_ << ")[u]/(";
        bool first = true;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
            if (modulus_[i] == 0) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            if (i == 0 || modulus_[i] != 1) {
                os << modulus_[i];
            }
            if (i >= 1) {
                os << "u";
            }
            if (i >= 2) {
                os << "^" << i;
            }
        }
        os << ")";
    }
    return os.str();
}

}  // namespace lrc
