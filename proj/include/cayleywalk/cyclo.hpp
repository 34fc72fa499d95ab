#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element of order N is stored as its residue modulo Phi_N in the power
// basis 1, zeta, ..., zeta^(phi(N)-1). The residue is unique, so equality at a
// fixed order is coefficient-wise. Orders are never minimized: mixed-order
// operands are lifted to the lcm of their orders first.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "number_theory.hpp"

namespace cayleywalk {

/// Integer polynomial, coefficients from degree 0 upwards.
using IntPoly = std::vector<Integer>;
/// Rational polynomial, coefficients from degree 0 upwards.
using RatPoly = std::vector<Rational>;

namespace detail {

inline void trim(IntPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline void trim(RatPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly multiply(IntPoly const& a, IntPoly const& b)
{
    if (a.empty() || b.empty()) return {};
    IntPoly out(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// Exact quotient of a by a monic divisor; throws if the division leaves a remainder.
inline IntPoly divide_exact_monic(IntPoly a, IntPoly const& d)
{
    trim(a);
    auto dd = d.size() - 1;
    if (a.size() < d.size()) throw ConsistencyError("polynomial division: divisor has higher degree");
    IntPoly q(a.size() - dd, Integer(0));
    for (std::size_t i = a.size(); i-- > dd;) {
        Integer c = a[i];
        if (c == 0) continue;
        q[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) a[i - dd + j] -= c * d[j];
    }
    for (auto const& r : a)
        if (r != 0) throw ConsistencyError("polynomial division left a remainder");
    return q;
}

class CyclotomicCache {
public:
    static CyclotomicCache& instance()
    {
        static CyclotomicCache cache;
        return cache;
    }

    std::shared_ptr<IntPoly const> get(std::uint64_t n)
    {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(n); it != cache_.end()) return it->second;
        }
        // Build the divisors first (outside the lock, they recurse into get()).
        IntPoly denom{Integer(1)};
        for (auto d : nt::divisors(n))
            if (d < n) denom = multiply(denom, *get(d));
        IntPoly xn(n + 1, Integer(0));
        xn[0] = -1;
        xn[n] = 1;
        auto phi = std::make_shared<IntPoly const>(divide_exact_monic(std::move(xn), denom));
        std::lock_guard lock(mutex_);
        // If another thread won the race its value is identical; keep the first.
        return cache_.emplace(n, std::move(phi)).first->second;
    }

private:
    std::mutex mutex_;
    std::map<std::uint64_t, std::shared_ptr<IntPoly const>> cache_;
};

}  // namespace detail

/// Phi_N as an integer polynomial (low degree first), memoized.
inline IntPoly const& cyclotomic_poly(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
    return *detail::CyclotomicCache::instance().get(n);
}

class CycloElement {
public:
    /// Zero of Q(zeta_1) = Q.
    CycloElement() : order_(1), coeffs_(1, Rational(0)) {}

    /// Rational embedded at the given order.
    explicit CycloElement(Rational q, std::uint64_t order = 1) : order_(order)
    {
        if (order == 0) throw std::invalid_argument("cyclotomic order must be positive");
        coeffs_.assign(degree_of(order), Rational(0));
        coeffs_[0] = std::move(q);
    }
    CycloElement(long v) : CycloElement(Rational(v)) {}

    /// Reduces an arbitrary polynomial in zeta_N modulo Phi_N.
    static CycloElement from_poly(std::uint64_t order, RatPoly poly)
    {
        if (order == 0) throw std::invalid_argument("cyclotomic order must be positive");
        auto const& phi = cyclotomic_poly(order);
        std::size_t deg = phi.size() - 1;
        for (std::size_t i = poly.size(); i-- > deg;) {
            if (poly[i] == 0) continue;
            Rational c = poly[i];
            for (std::size_t j = 0; j <= deg; ++j)
                if (phi[j] != 0) poly[i - deg + j] -= c * phi[j];
        }
        poly.resize(deg, Rational(0));
        CycloElement e;
        e.order_ = order;
        e.coeffs_ = std::move(poly);
        return e;
    }

    /// Canonical coefficient vector of length phi(order).
    static CycloElement from_coeffs(std::uint64_t order, RatPoly coeffs)
    {
        if (order == 0) throw std::invalid_argument("cyclotomic order must be positive");
        if (coeffs.size() != degree_of(order))
            throw std::invalid_argument("coefficient count must equal phi(" + std::to_string(order) + ")");
        CycloElement e;
        e.order_ = order;
        e.coeffs_ = std::move(coeffs);
        return e;
    }

    static std::size_t degree_of(std::uint64_t order) { return cyclotomic_poly(order).size() - 1; }

    std::uint64_t order() const { return order_; }
    RatPoly const& coeffs() const { return coeffs_; }

    bool is_zero() const
    {
        for (auto const& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// True when the element lies in Q (only the constant coefficient is nonzero).
    bool is_rational() const
    {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }
    Rational rational_part() const { return coeffs_[0]; }

    /// Same element written at a multiple of its order.
    CycloElement lifted(std::uint64_t target) const
    {
        if (target % order_ != 0)
            throw std::invalid_argument("cannot lift order " + std::to_string(order_) + " to " + std::to_string(target));
        if (target == order_) return *this;
        auto step = target / order_;
        RatPoly poly(step * (coeffs_.size() - 1) + 1, Rational(0));
        for (std::size_t k = 0; k < coeffs_.size(); ++k) poly[k * step] = coeffs_[k];
        return from_poly(target, std::move(poly));
    }

    CycloElement conj() const
    {
        RatPoly poly(order_, Rational(0));
        poly[0] = coeffs_[0];
        for (std::size_t k = 1; k < coeffs_.size(); ++k) poly[order_ - k] += coeffs_[k];
        return from_poly(order_, std::move(poly));
    }

    CycloElement inverse() const;

    std::complex<double> to_complex() const
    {
        std::complex<double> z = 0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order_);
            z += coeffs_[k].get_d() * std::polar(1.0, angle);
        }
        return z;
    }

    CycloElement operator-() const
    {
        CycloElement r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend CycloElement operator+(CycloElement const& a, CycloElement const& b) { return add(a, b, false); }
    friend CycloElement operator-(CycloElement const& a, CycloElement const& b) { return add(a, b, true); }

    friend CycloElement operator*(CycloElement const& a, CycloElement const& b)
    {
        auto n = std::lcm(a.order_, b.order_);
        auto x = a.lifted(n), y = b.lifted(n);
        RatPoly poly(x.coeffs_.size() + y.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (x.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < y.coeffs_.size(); ++j) poly[i + j] += x.coeffs_[i] * y.coeffs_[j];
        }
        return from_poly(n, std::move(poly));
    }

    friend CycloElement operator/(CycloElement const& a, CycloElement const& b) { return a * b.inverse(); }

    CycloElement& operator+=(CycloElement const& b) { return *this = *this + b; }
    CycloElement& operator-=(CycloElement const& b) { return *this = *this - b; }
    CycloElement& operator*=(CycloElement const& b) { return *this = *this * b; }

    friend bool operator==(CycloElement const& a, CycloElement const& b)
    {
        if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
        auto n = std::lcm(a.order_, b.order_);
        return a.lifted(n).coeffs_ == b.lifted(n).coeffs_;
    }

    /// Readable form such as "-1/2 + 1/2*z3^1" (z3 = exp(2 pi i/3)).
    std::string to_string() const
    {
        // e.g. "-1/2 - z3" for -1/2 - zeta_3, "3/2*z12^5" for (3/2) zeta_12^5.
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            auto const& c = coeffs_[k];
            if (c == 0) continue;
            Rational mag = abs(c);
            if (out.empty())
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            std::string power = "z" + std::to_string(order_) + (k > 1 ? "^" + std::to_string(k) : "");
            if (k == 0)
                out += mag.get_str();
            else
                out += mag == 1 ? power : mag.get_str() + "*" + power;
        }
        return out.empty() ? "0" : out;
    }

private:
    static CycloElement add(CycloElement const& a, CycloElement const& b, bool subtract)
    {
        if (a.order_ == b.order_) {
            CycloElement r = a;
            for (std::size_t k = 0; k < r.coeffs_.size(); ++k) {
                if (subtract)
                    r.coeffs_[k] -= b.coeffs_[k];
                else
                    r.coeffs_[k] += b.coeffs_[k];
            }
            return r;
        }
        auto n = std::lcm(a.order_, b.order_);
        return add(a.lifted(n), b.lifted(n), subtract);
    }

    std::uint64_t order_;
    RatPoly coeffs_;
};

namespace detail {

inline Integer content(IntPoly const& p)
{
    Integer g = 0;
    for (auto const& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline void divide_exact(IntPoly& p, Integer const& d)
{
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

}  // namespace detail

/// Inverse by an extended primitive remainder sequence over Z against Phi_N
/// (irreducible over Q). Invariant: scale_i * s_i * A == r_i (mod Phi_N) with
/// r_i, s_i integer polynomials kept primitive and A the cleared numerator.
inline CycloElement CycloElement::inverse() const
{
    if (is_zero()) throw DivisionByZero("division by zero in Q(zeta_" + std::to_string(order_) + ")");
    Integer den = 1;
    for (auto const& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IntPoly a;
    for (auto const& c : coeffs_) a.push_back(c.get_num() * (den / c.get_den()));
    detail::trim(a);

    IntPoly r0 = cyclotomic_poly(order_), r1 = a;
    IntPoly s0{}, s1{Integer(1)};
    Rational scale0 = 0, scale1 = 1;
    while (r1.size() > 1) {
        // lead^(delta+1) * r0 = q * r1 + r, all over Z.
        Integer lead = r1.back();
        auto const d1 = r1.size() - 1;
        IntPoly rem = r0, q(r0.size() - d1, Integer(0));
        for (std::size_t i = rem.size(); i-- > d1;) {
            for (auto& c : q) c *= lead;
            for (std::size_t k = 0; k < i; ++k) rem[k] *= lead;
            Integer c = rem[i];
            rem[i] = 0;
            if (c == 0) continue;
            q[i - d1] += c;
            for (std::size_t k = 0; k < d1; ++k) rem[i - d1 + k] -= c * r1[k];
        }
        detail::trim(rem);
        if (rem.empty()) throw ConsistencyError("cyclotomic inverse: element shares a factor with Phi_N");
        Integer mult = 1;
        mpz_pow_ui(mult.get_mpz_t(), lead.get_mpz_t(), static_cast<unsigned long>(r0.size() - r1.size() + 1));

        // s = (mult * scale0 * s0 - q * scale1 * s1) / scale, written over Z.
        Rational ratio = scale0 * mult / scale1;
        IntPoly s(std::max(s0.size(), q.size() + s1.size() - 1), Integer(0));
        Integer num = ratio.get_num(), dd = ratio.get_den();
        for (std::size_t i = 0; i < s0.size(); ++i) s[i] += num * s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) s[i + j] -= dd * q[i] * s1[j];
        }
        detail::trim(s);
        Rational scale = scale1 / dd;

        auto cr = detail::content(rem);
        detail::divide_exact(rem, cr);
        scale /= cr;
        auto cs = detail::content(s);
        if (cs != 0) {
            detail::divide_exact(s, cs);
            scale *= cs;
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s);
        scale0 = scale1;
        scale1 = scale;
    }
    // scale1 * s1 * A == r1[0], and self = A / den.
    Rational factor = scale1 * den / Rational(r1[0]);
    RatPoly out;
    for (auto const& c : s1) {
        Rational x = c * factor;
        x.canonicalize();
        out.push_back(x);
    }
    return from_poly(order_, std::move(out));
}

/// zeta_N^(k mod N).
inline CycloElement root_of_unity(std::uint64_t n, std::int64_t k)
{
    if (n == 0) throw std::invalid_argument("root of unity of order 0");
    auto e = static_cast<std::size_t>(nt::mod(k, static_cast<std::int64_t>(n)));
    RatPoly poly(e + 1, Rational(0));
    poly[e] = 1;
    return CycloElement::from_poly(n, std::move(poly));
}

/// z * conj(z); always a totally real element.
inline CycloElement abs_squared(CycloElement const& z) { return z * z.conj(); }

}  // namespace cayleywalk
