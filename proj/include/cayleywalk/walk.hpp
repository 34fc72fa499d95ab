#pragma once

// Continuous-time quantum walk H(t) = exp(itA) = sum_r exp(i theta_r t) E_r.
//
// At t = 2 pi a/b every scalar exp(i theta_r t) is the root of unity
// zeta_b^(a theta_r mod b), so H(t) has entries in Q(zeta_b) and is computed
// exactly. Float evaluation at arbitrary real t is kept as an oracle.

#include <algorithm>
#include <charconv>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "spectral.hpp"

namespace cayleywalk {

/// t = 2 pi * num / den, stored in lowest terms with den >= 1.
class ExactTime {
public:
    ExactTime() = default;
    ExactTime(std::int64_t num, std::int64_t den)
    {
        if (den == 0) throw ParseError("time denominator must be nonzero");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        auto g = std::gcd(num, den);
        if (g == 0) g = 1;
        num_ = num / g;
        den_ = den / g;
    }

    /// Parses "a/b" or "a" (meaning 2 pi a/b).
    static ExactTime parse(std::string const& text)
    {
        auto slash = text.find('/');
        auto read = [&](std::string const& part) {
            std::int64_t v = 0;
            auto const* first = part.data();
            auto const* last = part.data() + part.size();
            if (!part.empty() && part[0] == '+') ++first;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || first == last) throw ParseError("malformed exact time: " + text);
            return v;
        };
        if (slash == std::string::npos) return ExactTime(read(text), 1);
        return ExactTime(read(text.substr(0, slash)), read(text.substr(slash + 1)));
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double seconds() const { return 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_); }

    /// "a/b of 2pi"
    std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_) + " of 2pi"; }

    ExactTime scaled(std::int64_t k) const { return ExactTime(num_ * k, den_); }

    friend ExactTime operator+(ExactTime const& a, ExactTime const& b)
    {
        auto l = std::lcm(a.den_, b.den_);
        return ExactTime(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
    }
    friend ExactTime operator-(ExactTime const& a) { return ExactTime(-a.num_, a.den_); }

    bool operator==(ExactTime const&) const = default;
    friend bool operator<(ExactTime const& a, ExactTime const& b)
    {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

using CycloMatrix = Matrix<CycloElement>;
using ComplexMatrix = Matrix<std::complex<double>>;

struct ExactTransition {
    ExactTime time;
    std::uint64_t order = 1;  // every entry lives in Q(zeta_order)
    CycloMatrix entries;
};

struct FloatTransition {
    double time = 0;
    ComplexMatrix entries;
};

namespace detail {

inline std::vector<std::size_t> root_exponents(SpectralDecomposition const& dec, ExactTime const& t)
{
    std::vector<std::size_t> k;
    for (std::size_t r = 0; r < dec.size(); ++r) {
        auto e = static_cast<__int128>(t.num()) * dec.eigenvalue(r);
        auto b = static_cast<__int128>(t.den());
        k.push_back(static_cast<std::size_t>(((e % b) + b) % b));
    }
    return k;
}

inline CycloElement transition_entry(SpectralDecomposition const& dec, std::vector<std::size_t> const& exps,
                                     std::uint64_t order, std::size_t i, std::size_t j)
{
    RatPoly poly(order, Rational(0));
    for (std::size_t r = 0; r < dec.size(); ++r) {
        auto const& e = dec.idempotents[r];
        if (e.numerators()(i, j) == 0) continue;
        Rational w(e.numerators()(i, j), e.denominator());
        w.canonicalize();
        poly[exps[r]] += w;
    }
    return CycloElement::from_poly(order, std::move(poly));
}

}  // namespace detail

inline ExactTransition transition_exact(SpectralDecomposition const& dec, ExactTime const& t)
{
    auto n = dec.order();
    auto order = static_cast<std::uint64_t>(t.den());
    auto exps = detail::root_exponents(dec, t);
    ExactTransition h{t, order, CycloMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            h.entries(i, j) = detail::transition_entry(dec, exps, order, i, j);
            if (j != i) h.entries(j, i) = h.entries(i, j);
        }
    return h;
}

/// Column j of H(t), i.e. H(t) e_j.
inline std::vector<CycloElement> transition_exact_column(SpectralDecomposition const& dec, ExactTime const& t,
                                                         std::size_t j)
{
    auto order = static_cast<std::uint64_t>(t.den());
    auto exps = detail::root_exponents(dec, t);
    std::vector<CycloElement> col;
    for (std::size_t i = 0; i < dec.order(); ++i) col.push_back(detail::transition_entry(dec, exps, order, i, j));
    return col;
}

inline FloatTransition transition_float(SpectralDecomposition const& dec, double t)
{
    auto n = dec.order();
    FloatTransition h{t, ComplexMatrix(n, n, {0.0, 0.0})};
    for (std::size_t r = 0; r < dec.size(); ++r) {
        auto phase = std::polar(1.0, static_cast<double>(dec.eigenvalue(r)) * t);
        auto const& e = dec.idempotents[r];
        double den = e.denominator().get_d();
        for (std::size_t k = 0; k < n * n; ++k) {
            auto const& x = e.numerators().data()[k];
            if (x != 0) h.entries.data()[k] += phase * (x.get_d() / den);
        }
    }
    return h;
}

/// Product of exact matrices over a common cyclotomic order, computed with
/// integer coefficient vectors and a single reduction per entry.
inline CycloMatrix multiply_exact(CycloMatrix const& a, CycloMatrix const& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    std::uint64_t order = 1;
    for (auto const& x : a.data()) order = std::lcm(order, x.order());
    for (auto const& x : b.data()) order = std::lcm(order, x.order());
    auto deg = CycloElement::degree_of(order);

    auto to_integral = [&](CycloMatrix const& m, Integer& den) {
        std::vector<CycloElement> lifted;
        lifted.reserve(m.data().size());
        den = 1;
        for (auto const& x : m.data()) {
            lifted.push_back(x.lifted(order));
            for (auto const& c : lifted.back().coeffs())
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
        std::vector<Integer> flat(m.data().size() * deg);
        for (std::size_t e = 0; e < lifted.size(); ++e)
            for (std::size_t c = 0; c < deg; ++c) {
                auto const& q = lifted[e].coeffs()[c];
                flat[e * deg + c] = q.get_num() * (den / q.get_den());
            }
        return flat;
    };
    Integer da, db;
    auto ia = to_integral(a, da);
    auto ib = to_integral(b, db);
    auto const& phi = cyclotomic_poly(order);
    Integer den = da * db;

    CycloMatrix out(a.rows(), b.cols());
    std::vector<Integer> acc(2 * deg - 1);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            for (auto& x : acc) x = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                auto const* pa = &ia[(i * a.cols() + k) * deg];
                auto const* pb = &ib[(k * b.cols() + j) * deg];
                for (std::size_t c1 = 0; c1 < deg; ++c1) {
                    if (pa[c1] == 0) continue;
                    for (std::size_t c2 = 0; c2 < deg; ++c2)
                        mpz_addmul(acc[c1 + c2].get_mpz_t(), pa[c1].get_mpz_t(), pb[c2].get_mpz_t());
                }
            }
            // Phi is monic with integer coefficients, so reduction stays integral.
            for (std::size_t d = acc.size(); d-- > deg;) {
                if (acc[d] == 0) continue;
                Integer c = acc[d];
                for (std::size_t s = 0; s <= deg; ++s)
                    if (phi[s] != 0) acc[d - deg + s] -= c * phi[s];
            }
            RatPoly coeffs(deg);
            for (std::size_t c = 0; c < deg; ++c) {
                coeffs[c] = Rational(acc[c], den);
                coeffs[c].canonicalize();
            }
            out(i, j) = CycloElement::from_coeffs(order, std::move(coeffs));
        }
    return out;
}

inline CycloMatrix conjugate_transpose(CycloMatrix const& m)
{
    CycloMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j).conj();
    return t;
}

inline bool is_identity(CycloMatrix const& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto const& x = m(i, j);
            if (i == j ? !(x.is_rational() && x.rational_part() == 1) : !x.is_zero()) return false;
        }
    return true;
}

/// Exact H H^* = I.
inline bool is_unitary(ExactTransition const& h)
{
    return is_identity(multiply_exact(h.entries, conjugate_transpose(h.entries)));
}

inline bool is_symmetric(CycloMatrix const& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (!(m(i, j) == m(j, i))) return false;
    return true;
}

/// max |(H H^*)_{ij} - delta_ij|
inline double unitarity_residual(FloatTransition const& h)
{
    auto const& m = h.entries;
    double worst = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) {
            std::complex<double> s = 0;
            for (std::size_t k = 0; k < m.cols(); ++k) s += m(i, k) * std::conj(m(j, k));
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

inline ComplexMatrix to_complex(CycloMatrix const& m)
{
    return m.map([](CycloElement const& x) { return x.to_complex(); });
}

/// sum_r E_r(X) (x) H_Y(theta_r t) for the tensor graph X (x) G_Y.
inline ExactTransition transition_tensor_factored(SpectralDecomposition const& x_dec, RingProduct const& y_ring,
                                                  ExactTime const& t)
{
    auto y_dec = idempotents_structured(y_ring);
    auto order = static_cast<std::uint64_t>(t.den());
    auto nx = x_dec.order(), ny = y_dec.order();
    if (nx * ny > size_cap())
        throw SizeCapExceeded("tensor walk of order " + std::to_string(nx * ny) + " exceeds the size cap");

    ExactTransition h{t, order, CycloMatrix(nx * ny, nx * ny)};
    std::vector<RatPoly> polys(nx * ny * nx * ny, RatPoly(order, Rational(0)));
    for (std::size_t r = 0; r < x_dec.size(); ++r) {
        auto hy = transition_exact(y_dec, t.scaled(x_dec.eigenvalue(r)));
        auto const& e = x_dec.idempotents[r];
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < nx; ++j) {
                if (e.numerators()(i, j) == 0) continue;
                Rational w(e.numerators()(i, j), e.denominator());
                w.canonicalize();
                for (std::size_t k = 0; k < ny; ++k)
                    for (std::size_t l = 0; l < ny; ++l) {
                        auto lifted = hy.entries(k, l).lifted(order);
                        auto& p = polys[(i * ny + k) * nx * ny + (j * ny + l)];
                        for (std::size_t c = 0; c < lifted.coeffs().size(); ++c) p[c] += w * lifted.coeffs()[c];
                    }
            }
    }
    for (std::size_t row = 0; row < nx * ny; ++row)
        for (std::size_t col = 0; col < nx * ny; ++col)
            h.entries(row, col) = CycloElement::from_poly(order, std::move(polys[row * nx * ny + col]));
    return h;
}

}  // namespace cayleywalk
