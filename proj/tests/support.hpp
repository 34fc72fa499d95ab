#pragma once

// Generators and independent oracles shared by the test binaries.

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <cayleywalk/cayleywalk.hpp>

namespace cwtest {

using namespace cayleywalk;
using cplx = std::complex<double>;
using CMat = std::vector<std::vector<cplx>>;

/// Every (n, m) = (q^k, q^(k-1)) with q a prime power and n <= max_size,
/// ordered by size then ideal size.
inline std::vector<LocalDescriptor> realizable_descriptors(std::uint64_t max_size)
{
    std::vector<LocalDescriptor> out;
    for (std::uint64_t n = 2; n <= max_size; ++n) {
        auto pp = nt::prime_power(n);
        if (!pp) continue;
        auto [p, e] = *pp;
        std::vector<std::uint64_t> ms;
        for (unsigned r = 1; r <= e; ++r) {
            if (e % r) continue;
            std::uint64_t q = 1;
            for (unsigned i = 0; i < r; ++i) q *= p;
            ms.push_back(n / q);
        }
        std::sort(ms.begin(), ms.end());
        for (auto m : ms) out.push_back(LocalDescriptor::make(n, m));
    }
    return out;
}

/// All rings (multisets of realizable local factors) with |R| <= max_size.
inline std::vector<RingProduct> rings_up_to(std::uint64_t max_size)
{
    auto locals = realizable_descriptors(max_size);
    std::vector<RingProduct> out;
    std::vector<LocalDescriptor> cur;
    auto rec = [&](auto&& self, std::size_t start, std::uint64_t size) -> void {
        if (!cur.empty()) out.emplace_back(cur);
        for (std::size_t i = start; i < locals.size(); ++i) {
            if (size * locals[i].size() > max_size) continue;
            cur.push_back(locals[i]);
            self(self, i, size * locals[i].size());
            cur.pop_back();
        }
    };
    rec(rec, 0, 1);
    std::stable_sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.size() < b.size(); });
    return out;
}

inline std::string name(RingProduct const& r) { return render(r); }

inline CMat to_cmat(Matrix<int> const& a)
{
    CMat m(a.rows(), std::vector<cplx>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
    return m;
}

inline CMat matmul(CMat const& a, CMat const& b)
{
    auto n = a.size();
    CMat c(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

/// exp(i t A) by scaling and squaring of a truncated Taylor series. Uses only
/// the adjacency matrix, never the spectral decomposition.
inline CMat expm_i(Matrix<int> const& a, double t)
{
    auto n = a.rows();
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    double scale = std::abs(t) * norm;
    while (scale > 0.25) {
        scale /= 2;
        ++squarings;
    }
    CMat x = to_cmat(a);
    cplx factor(0, t / std::ldexp(1.0, squarings));
    for (auto& row : x)
        for (auto& v : row) v *= factor;
    CMat result(n, std::vector<cplx>(n)), term(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1;
    for (int k = 1; k <= 30; ++k) {
        term = matmul(term, x);
        for (auto& row : term)
            for (auto& v : row) v /= static_cast<double>(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

struct EigenSystem {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // vectors[i][k]: component i of eigenvector k
};

/// Cyclic Jacobi rotations on a symmetric matrix.
inline EigenSystem jacobi_eigen(Matrix<int> const& a)
{
    auto n = a.rows();
    std::vector<std::vector<double>> m(n, std::vector<double>(n)), v(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        v[i][i] = 1;
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m[p][q]) < 1e-300) continue;
                double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    EigenSystem es;
    for (std::size_t i = 0; i < n; ++i) es.values.push_back(m[i][i]);
    es.vectors = std::move(v);
    return es;
}

/// Column j of exp(i t A) from a float eigensystem.
inline std::vector<cplx> walk_column(EigenSystem const& es, double t, std::size_t j)
{
    auto n = es.values.size();
    std::vector<cplx> phase(n);
    for (std::size_t k = 0; k < n; ++k) phase[k] = std::polar(1.0, es.values[k] * t);
    std::vector<cplx> col(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) col[i] += es.vectors[i][k] * es.vectors[j][k] * phase[k];
    return col;
}

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20261016);
    return gen;
}

}  // namespace cwtest
