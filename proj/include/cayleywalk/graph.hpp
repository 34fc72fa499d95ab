#pragma once

// Unitary Cayley graphs of ring products.
//
// Vertex numbering is mixed radix over the factors, factor 0 most significant.
// Inside a local factor (n, m) the local index v sits in coset floor(v/m) at
// position v mod m, so cosets of M are consecutive blocks.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "ring.hpp"

namespace cayleywalk {

inline constexpr std::uint64_t kDefaultSizeCap = 4096;

/// Vertex cap for dense materialization. CAYLEYWALK_SIZE_CAP overrides the default.
inline std::uint64_t size_cap()
{
    if (char const* env = std::getenv("CAYLEYWALK_SIZE_CAP")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultSizeCap;
}

inline void require_within_cap(RingProduct const& ring)
{
    auto cap = size_cap();
    if (ring.size() > cap)
        throw SizeCapExceeded("ring " + render(ring) + " has " + std::to_string(ring.size()) +
                              " vertices, above the cap of " + std::to_string(cap));
}

struct LocalVertex {
    std::uint64_t coset;
    std::uint64_t within;
    bool operator==(LocalVertex const&) const = default;
};

struct VertexIndex {
    std::uint64_t flat = 0;
    std::vector<LocalVertex> per_factor;

    static VertexIndex from_flat(RingProduct const& ring, std::uint64_t flat)
    {
        if (flat >= ring.size())
            throw std::out_of_range("vertex " + std::to_string(flat) + " out of range for " +
                                    std::to_string(ring.size()) + " vertices");
        VertexIndex v;
        v.flat = flat;
        v.per_factor.resize(ring.factor_count());
        for (std::size_t j = ring.factor_count(); j-- > 0;) {
            auto const& f = ring.factor(j);
            auto local = flat % f.size();
            flat /= f.size();
            v.per_factor[j] = {local / f.ideal_size(), local % f.ideal_size()};
        }
        return v;
    }

    static VertexIndex from_local(RingProduct const& ring, std::vector<LocalVertex> parts)
    {
        if (parts.size() != ring.factor_count()) throw std::out_of_range("vertex arity mismatch");
        std::uint64_t flat = 0;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            auto const& f = ring.factor(j);
            if (parts[j].coset >= f.residue_size() || parts[j].within >= f.ideal_size())
                throw std::out_of_range("local vertex out of range in factor " + std::to_string(j));
            flat = flat * f.size() + parts[j].coset * f.ideal_size() + parts[j].within;
        }
        return VertexIndex{flat, std::move(parts)};
    }

    bool operator==(VertexIndex const& o) const { return flat == o.flat; }
};

/// Adjacent iff the vertices lie in different cosets in every factor.
inline bool is_adjacent(RingProduct const& ring, VertexIndex const& u, VertexIndex const& v)
{
    if (u.per_factor.size() != ring.factor_count() || v.per_factor.size() != ring.factor_count() ||
        u.flat >= ring.size() || v.flat >= ring.size())
        throw std::out_of_range("vertex index does not belong to ring " + render(ring));
    for (std::size_t j = 0; j < ring.factor_count(); ++j)
        if (u.per_factor[j].coset == v.per_factor[j].coset) return false;
    return true;
}

inline bool is_adjacent(RingProduct const& ring, std::uint64_t u, std::uint64_t v)
{
    return is_adjacent(ring, VertexIndex::from_flat(ring, u), VertexIndex::from_flat(ring, v));
}

using AdjacencyMatrix = Matrix<int>;

/// Adjacency of one local factor: (J - I) on cosets, tensored with J_m.
inline AdjacencyMatrix local_adjacency(LocalDescriptor const& f)
{
    auto q = f.residue_size();
    AdjacencyMatrix complete(q, q, 1);
    for (std::size_t i = 0; i < q; ++i) complete(i, i) = 0;
    return kron(complete, AdjacencyMatrix(f.ideal_size(), f.ideal_size(), 1));
}

inline AdjacencyMatrix adjacency_matrix(RingProduct const& ring)
{
    require_within_cap(ring);
    AdjacencyMatrix a = local_adjacency(ring.factor(0));
    for (std::size_t j = 1; j < ring.factor_count(); ++j) a = kron(a, local_adjacency(ring.factor(j)));
    return a;
}

/// Ring described by a cyclic group Z_n: each factor is Z_{p^k} (or the
/// prime field F_p), with pairwise coprime sizes. Returns n, or nullopt.
inline std::optional<std::uint64_t> cyclic_modulus(RingProduct const& ring)
{
    std::uint64_t n = 1;
    for (auto const& f : ring.factors()) {
        auto const& lab = f.label();
        bool cyclic_label = !lab.empty() && (lab[0] == 'Z' || lab[0] == 'z') &&
                            lab.find('[') == std::string::npos;
        bool prime_field = f.is_field() && nt::factorize(f.size()).front().exponent == 1;
        if (!cyclic_label && !prime_field) return std::nullopt;
        if (std::gcd(n, f.size()) != 1) return std::nullopt;
        n *= f.size();
    }
    return n;
}

/// Flat vertex index of the ring element x of Z_n, through the CRT
/// isomorphism Z_n -> prod Z_{p^k}. Inside Z_{p^k} the element y has coset
/// y mod p and position y div p.
inline std::uint64_t crt_vertex(RingProduct const& ring, std::uint64_t element)
{
    auto n = cyclic_modulus(ring);
    if (!n) throw ValidationError("ring " + render(ring) + " is not of the form Z_n; CRT labels unavailable");
    element %= *n;
    std::vector<LocalVertex> parts;
    for (auto const& f : ring.factors()) {
        auto y = element % f.size();
        auto p = f.characteristic_prime();
        parts.push_back({y % p, y / p});
    }
    return VertexIndex::from_local(ring, std::move(parts)).flat;
}

/// Permutation element -> flat vertex for a Z_n ring.
inline std::vector<std::uint64_t> crt_permutation(RingProduct const& ring)
{
    auto n = cyclic_modulus(ring);
    if (!n) throw ValidationError("ring " + render(ring) + " is not of the form Z_n; CRT labels unavailable");
    std::vector<std::uint64_t> perm(*n);
    for (std::uint64_t x = 0; x < *n; ++x) perm[x] = crt_vertex(ring, x);
    return perm;
}

}  // namespace cayleywalk
