#pragma once

// Small-integer number theory used by the ring parser and the time solver.

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace cayleywalk::nt {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    std::uint64_t value;  // prime^exponent
};

/// Trial-division factorization, primes ascending. n must be >= 1.
inline std::vector<PrimePower> factorize(std::uint64_t n)
{
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        PrimePower pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.exponent;
            pp.value *= p;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

/// Returns (p, k) with n = p^k, k >= 1, or nullopt when n is not a prime power.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n)
{
    if (n < 2) return std::nullopt;
    auto f = factorize(n);
    if (f.size() != 1) return std::nullopt;
    return std::pair{f[0].prime, f[0].exponent};
}

inline std::uint64_t totient(std::uint64_t n)
{
    std::uint64_t phi = n;
    for (auto const& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
    return phi;
}

/// Divisors of n in increasing order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> low, high;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        low.push_back(d);
        if (d != n / d) high.push_back(n / d);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

/// Mathematical modulo: result in [0, m).
inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    auto r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

/// Checked multiplication; nullopt on overflow.
inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

}  // namespace cayleywalk::nt
