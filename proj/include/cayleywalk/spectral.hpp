#pragma once

// Spectra and exact spectral idempotents of unitary Cayley graphs.
//
// Two independent routes produce the idempotents E_r:
//   * idempotents_structured: per-factor closed forms, Kronecker products,
//     grouped by equal eigenvalue products;
//   * idempotents_lagrange: E_r = prod_{s != r} (A - theta_s I)/(theta_r - theta_s)
//     evaluated on the adjacency matrix.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "ring.hpp"

namespace cayleywalk {

using Eigenvalue = std::int64_t;

struct SpectrumEntry {
    Eigenvalue eigenvalue;
    std::uint64_t multiplicity;
    bool operator==(SpectrumEntry const&) const = default;
};

/// Distinct eigenvalues with multiplicities, sorted by decreasing eigenvalue.
struct Spectrum {
    std::vector<SpectrumEntry> entries;

    std::size_t size() const { return entries.size(); }
    std::uint64_t total_multiplicity() const
    {
        std::uint64_t s = 0;
        for (auto const& e : entries) s += e.multiplicity;
        return s;
    }
    std::vector<Eigenvalue> eigenvalues() const
    {
        std::vector<Eigenvalue> v;
        for (auto const& e : entries) v.push_back(e.eigenvalue);
        return v;
    }
    bool operator==(Spectrum const&) const = default;

    static Spectrum from_map(std::map<Eigenvalue, std::uint64_t> const& m)
    {
        Spectrum s;
        for (auto it = m.rbegin(); it != m.rend(); ++it)
            if (it->second > 0) s.entries.push_back({it->first, it->second});
        return s;
    }
};

/// Spectrum of the complete multipartite graph of one local factor:
/// n - m (once), -m (n/m - 1 times), 0 ((n/m)(m - 1) times, absent for fields).
inline Spectrum local_spectrum(LocalDescriptor const& f)
{
    auto n = static_cast<Eigenvalue>(f.size());
    auto m = static_cast<Eigenvalue>(f.ideal_size());
    auto q = static_cast<std::uint64_t>(n / m);
    std::map<Eigenvalue, std::uint64_t> mult;
    mult[n - m] += 1;
    mult[-m] += q - 1;
    if (m > 1) mult[0] += q * static_cast<std::uint64_t>(m - 1);
    return Spectrum::from_map(mult);
}

/// Tensor-product spectrum: eigenvalues multiply across factors, equal products merge.
inline Spectrum spectrum_of(RingProduct const& ring)
{
    std::map<Eigenvalue, std::uint64_t> acc{{1, 1}};
    for (auto const& f : ring.factors()) {
        std::map<Eigenvalue, std::uint64_t> next;
        for (auto const& [value, mult] : acc)
            for (auto const& e : local_spectrum(f).entries) next[value * e.eigenvalue] += mult * e.multiplicity;
        acc = std::move(next);
    }
    return Spectrum::from_map(acc);
}

struct SpectralDecomposition {
    Spectrum spectrum;
    std::vector<RationalMatrix> idempotents;  // aligned with spectrum.entries

    std::size_t order() const { return idempotents.empty() ? 0 : idempotents.front().rows(); }
    std::size_t size() const { return spectrum.size(); }
    Eigenvalue eigenvalue(std::size_t r) const { return spectrum.entries.at(r).eigenvalue; }

    bool operator==(SpectralDecomposition const&) const = default;
};

struct LocalIdempotent {
    Eigenvalue eigenvalue;
    RationalMatrix projection;
};

/// E(n-m) = J_n/n, E(0) = I_n - (1/m)(I_{n/m} (x) J_m), E(-m) = I_n - E(n-m) - E(0).
inline std::vector<LocalIdempotent> local_idempotents(LocalDescriptor const& f)
{
    auto n = f.size(), m = f.ideal_size(), q = f.residue_size();
    auto id = RationalMatrix::identity(n);
    auto top = RationalMatrix::averaging(n);
    std::vector<LocalIdempotent> out;
    out.push_back({static_cast<Eigenvalue>(n - m), top});
    if (m > 1) {
        auto zero = id - kron(RationalMatrix::identity(q), RationalMatrix::averaging(m));
        out.push_back({0, zero});
        out.push_back({-static_cast<Eigenvalue>(m), id - top - zero});
    } else {
        out.push_back({-1, id - top});
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.eigenvalue > b.eigenvalue; });
    return out;
}

inline SpectralDecomposition idempotents_structured(RingProduct const& ring)
{
    require_within_cap(ring);
    std::vector<std::vector<LocalIdempotent>> per_factor;
    for (auto const& f : ring.factors()) per_factor.push_back(local_idempotents(f));

    std::map<Eigenvalue, RationalMatrix> grouped;
    std::function<void(std::size_t, Eigenvalue, RationalMatrix const&)> walk =
        [&](std::size_t j, Eigenvalue value, RationalMatrix const& acc) {
            if (j == per_factor.size()) {
                auto it = grouped.find(value);
                if (it == grouped.end())
                    grouped.emplace(value, acc);
                else
                    it->second = it->second + acc;
                return;
            }
            for (auto const& li : per_factor[j]) {
                if (j == 0)
                    walk(1, li.eigenvalue, li.projection);
                else
                    walk(j + 1, value * li.eigenvalue, kron(acc, li.projection));
            }
        };
    walk(0, 1, RationalMatrix());

    SpectralDecomposition dec;
    for (auto it = grouped.rbegin(); it != grouped.rend(); ++it) {
        auto tr = it->second.trace();
        if (tr.get_den() != 1 || tr <= 0) throw ConsistencyError("idempotent trace is not a positive integer");
        dec.spectrum.entries.push_back({it->first, tr.get_num().get_ui()});
        dec.idempotents.push_back(std::move(it->second));
    }
    if (dec.spectrum != spectrum_of(ring))
        throw ConsistencyError("structured idempotent traces disagree with the closed-form spectrum");
    return dec;
}

/// Lagrange route. spectrum must list exactly the distinct eigenvalues of A.
inline SpectralDecomposition idempotents_lagrange(Matrix<int> const& adjacency, Spectrum const& spectrum)
{
    if (!adjacency.square()) throw std::invalid_argument("adjacency matrix must be square");
    auto const n = adjacency.rows();
    auto const k = spectrum.size();
    if (k == 0) throw SpectrumMismatch("empty spectrum");
    for (std::size_t r = 1; r < k; ++r)
        if (spectrum.entries[r].eigenvalue >= spectrum.entries[r - 1].eigenvalue)
            throw SpectrumMismatch("spectrum must be strictly decreasing");

    Matrix<Integer> a = adjacency.map([](int x) { return Integer(x); });
    // Powers A^0 .. A^k; A^k is used for the annihilation test.
    std::vector<Matrix<Integer>> powers;
    powers.push_back(Matrix<Integer>::identity(n, Integer(0), Integer(1)));
    for (std::size_t p = 1; p <= k; ++p) powers.push_back(powers.back() * a);

    auto evaluate = [&](std::vector<Rational> const& coeffs) {
        Integer den = 1;
        for (auto const& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        Matrix<Integer> num(n, n, Integer(0));
        for (std::size_t p = 0; p < coeffs.size(); ++p) {
            if (coeffs[p] == 0) continue;
            Integer scale = coeffs[p].get_num() * (den / coeffs[p].get_den());
            auto const& pw = powers[p].data();
            for (std::size_t e = 0; e < pw.size(); ++e) num.data()[e] += scale * pw[e];
        }
        return RationalMatrix(std::move(num), den);
    };

    // prod_s (x - theta_s) must annihilate A
    std::vector<Rational> annihilator{Rational(1)};
    for (auto const& e : spectrum.entries) {
        std::vector<Rational> next(annihilator.size() + 1, Rational(0));
        for (std::size_t p = 0; p < annihilator.size(); ++p) {
            next[p + 1] += annihilator[p];
            next[p] -= annihilator[p] * e.eigenvalue;
        }
        annihilator = std::move(next);
    }
    if (!evaluate(annihilator).is_zero())
        throw SpectrumMismatch("the given eigenvalues do not annihilate the adjacency matrix");

    SpectralDecomposition dec;
    dec.spectrum = spectrum;
    for (std::size_t r = 0; r < k; ++r) {
        std::vector<Rational> poly{Rational(1)};
        Rational scale = 1;
        for (std::size_t s = 0; s < k; ++s) {
            if (s == r) continue;
            auto theta = spectrum.entries[s].eigenvalue;
            std::vector<Rational> next(poly.size() + 1, Rational(0));
            for (std::size_t p = 0; p < poly.size(); ++p) {
                next[p + 1] += poly[p];
                next[p] -= poly[p] * theta;
            }
            poly = std::move(next);
            scale *= Rational(spectrum.entries[r].eigenvalue - theta);
        }
        for (auto& c : poly) c /= scale;
        auto e = evaluate(poly);
        auto tr = e.trace();
        if (e.is_zero() || tr != Rational(static_cast<unsigned long>(spectrum.entries[r].multiplicity)))
            throw SpectrumMismatch("eigenvalue " + std::to_string(spectrum.entries[r].eigenvalue) +
                                   " has an idempotent of trace " + tr.get_str() + ", expected multiplicity " +
                                   std::to_string(spectrum.entries[r].multiplicity));
        dec.idempotents.push_back(std::move(e));
    }
    return dec;
}

struct SpectralCheck {
    bool orthogonal = true;          // E_r E_s = delta_rs E_r
    bool resolves_identity = true;   // sum E_r = I
    bool reconstructs = true;        // sum theta_r E_r = A
    bool symmetric = true;
    bool traces_match = true;        // trace E_r = multiplicity

    bool ok() const { return orthogonal && resolves_identity && reconstructs && symmetric && traces_match; }
};

/// Exact verification of the spectral-theorem identities against A.
inline SpectralCheck verify_decomposition(SpectralDecomposition const& dec, Matrix<int> const& adjacency)
{
    SpectralCheck c;
    auto n = adjacency.rows();
    RationalMatrix sum(n, n), weighted(n, n);
    for (std::size_t r = 0; r < dec.size(); ++r) {
        auto const& e = dec.idempotents[r];
        sum = sum + e;
        weighted = weighted + Rational(dec.eigenvalue(r)) * e;
        c.symmetric = c.symmetric && e.is_symmetric();
        c.traces_match = c.traces_match &&
                         e.trace() == Rational(static_cast<unsigned long>(dec.spectrum.entries[r].multiplicity));
        for (std::size_t s = r; s < dec.size(); ++s) {
            auto prod = e * dec.idempotents[s];
            c.orthogonal = c.orthogonal && (r == s ? prod == e : prod.is_zero());
        }
    }
    c.resolves_identity = sum == RationalMatrix::identity(n);
    c.reconstructs = weighted == RationalMatrix::from_integers(adjacency);
    return c;
}

}  // namespace cayleywalk
