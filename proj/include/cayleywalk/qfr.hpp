#pragma once

// Fractional revival (QFR) and perfect state transfer (PST) between two vertices.
//
// H(t) e_j = alpha e_j + beta e_l (beta != 0) holds iff, for every spectral
// idempotent, exp(i theta_r t) E_r e_j = alpha E_r e_j + beta E_r e_l. On a
// vertex-transitive graph that forces E_r e_l = sigma_r E_r e_j with
// sigma_r = +-1, and then exp(i theta t) must equal z+ = alpha + beta on the
// class S+ = {sigma = +1} and z- = alpha - beta on S-, with z+ != z-.
// For integer eigenvalues the set of such t is solved exactly below.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "cyclo.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "spectral.hpp"
#include "walk.hpp"

namespace cayleywalk {

struct SignVector {
    std::uint64_t j = 0;
    std::uint64_t l = 0;
    /// Per distinct eigenvalue: +1, -1, or nullopt when both columns vanish
    /// (also nullopt where cospectrality already failed).
    std::vector<std::optional<int>> signs;
    bool cospectral = false;
};

inline SignVector sign_vector(SpectralDecomposition const& dec, std::uint64_t j, std::uint64_t l)
{
    if (j == l) throw std::invalid_argument("sign vector needs two distinct vertices");
    if (j >= dec.order() || l >= dec.order()) throw std::out_of_range("vertex out of range");
    SignVector sv{j, l, {}, true};
    for (auto const& e : dec.idempotents) {
        auto const& num = e.numerators();
        bool equal = true, opposite = true, zero_j = true, zero_l = true;
        for (std::size_t i = 0; i < num.rows(); ++i) {
            auto const& a = num(i, j);
            auto const& b = num(i, l);
            if (a != 0) zero_j = false;
            if (b != 0) zero_l = false;
            if (b != a) equal = false;
            if (b != -a) opposite = false;
        }
        if (zero_j && zero_l) {
            sv.signs.push_back(std::nullopt);
        } else if (equal) {
            sv.signs.push_back(+1);
        } else if (opposite) {
            sv.signs.push_back(-1);
        } else {
            sv.signs.push_back(std::nullopt);
            sv.cospectral = false;
        }
    }
    return sv;
}

/// Exact set of revival times t = 2 pi x for a strongly cospectral pair.
///
/// With g = gcd of the within-class eigenvalue differences and c any
/// cross-class difference: for g > 0 the times are x = a/g with
/// g/gcd(g, c) not dividing a; for g = 0 (both classes singletons,
/// d = theta+ - theta-) they are all x with d x not an integer.
class RevivalTimeSet {
public:
    RevivalTimeSet() = default;
    RevivalTimeSet(std::int64_t g, std::int64_t c, std::int64_t d) : g_(g), c_(g > 0 ? nt::mod(c, g) : c), d_(d) {}

    std::int64_t g() const { return g_; }
    std::int64_t c() const { return c_; }
    /// theta+ - theta- when g = 0.
    std::int64_t singleton_difference() const { return d_; }

    bool empty() const { return g_ > 0 && c_ == 0; }

    /// Smallest positive a with a/g a revival time, as a multiple of g (g > 0).
    std::int64_t period_in_steps() const { return g_ / std::gcd(g_, c_); }

    bool contains(ExactTime const& t) const
    {
        auto a = static_cast<__int128>(t.num());
        auto b = static_cast<__int128>(t.den());
        if (g_ == 0) return (d_ * a) % b != 0;
        if (empty()) return false;
        if ((a * g_) % b != 0) return false;
        auto k = (a * g_) / b;
        return k % period_in_steps() != 0;
    }

    /// True if some time 2 pi k / L (k integer) is a revival time.
    bool intersects_lattice(std::int64_t lattice) const
    {
        if (g_ == 0) return d_ % lattice != 0;
        if (empty()) return false;
        auto common = g_ / std::gcd(g_, lattice);  // steps of 1/g per lattice point of (1/g)Z n (1/L)Z
        return common % period_in_steps() != 0;
    }

    /// Earliest positive revival time; for g = 0 the set has no minimum and the
    /// PST time pi/|d| is returned instead.
    ExactTime minimal_time() const
    {
        if (g_ == 0) return ExactTime(1, 2 * std::llabs(d_));
        return ExactTime(1, g_);
    }

    /// Earliest positive time with alpha = 0, if any.
    std::optional<ExactTime> pst_time() const
    {
        if (g_ == 0) return ExactTime(1, 2 * std::llabs(d_));
        if (empty()) return std::nullopt;
        // alpha = 0 iff exp(i c t) = -1 iff 2 c a = g (mod 2 g)
        for (std::int64_t a = 1; a <= g_; ++a)
            if (nt::mod(2 * c_ * a - g_, 2 * g_) == 0) return ExactTime(a, g_);
        return std::nullopt;
    }

    std::string describe() const
    {
        if (g_ == 0)
            return "every t > 0 except multiples of 2pi/" + std::to_string(std::llabs(d_)) +
                   " (classes are singletons, theta+ - theta- = " + std::to_string(d_) + ")";
        if (empty()) return "empty";
        auto p = period_in_steps();
        return "t = 2pi*a/" + std::to_string(g_) + " for integers a" +
               (p == 1 ? std::string(" (all)") : " not divisible by " + std::to_string(p));
    }

private:
    std::int64_t g_ = 0;
    std::int64_t c_ = 0;
    std::int64_t d_ = 0;
};

enum class Verdict { qfr, none };
enum class NoneReason { not_cospectral, cross_difference_divisible, same_vertex };
enum class RevivalKind { qfr, pst };

inline char const* to_string(Verdict v) { return v == Verdict::qfr ? "QFR" : "NONE"; }
inline char const* to_string(RevivalKind k) { return k == RevivalKind::pst ? "PST" : "QFR"; }
inline char const* to_string(NoneReason r)
{
    switch (r) {
    case NoneReason::not_cospectral: return "not_cospectral";
    case NoneReason::cross_difference_divisible: return "cross_difference_divisible";
    case NoneReason::same_vertex: return "same_vertex";
    }
    return "?";
}

struct Certificate {
    std::uint64_t j = 0;
    std::uint64_t l = 0;
    std::vector<Eigenvalue> plus_class;
    std::vector<Eigenvalue> minus_class;
    RevivalTimeSet times;
    ExactTime minimal_time;
    CycloElement alpha;
    CycloElement beta;
    RevivalKind kind = RevivalKind::qfr;
    std::optional<ExactTime> pst_time;

    std::int64_t g() const { return times.g(); }
    std::int64_t c() const { return times.g() > 0 ? times.c() : times.singleton_difference(); }
};

struct QfrDecision {
    std::uint64_t j = 0;
    std::uint64_t l = 0;
    Verdict verdict = Verdict::none;
    std::optional<NoneReason> reason;
    std::optional<Certificate> certificate;

    bool is_qfr() const { return verdict == Verdict::qfr; }
};

/// alpha = (z+ + z-)/2, beta = (z+ - z-)/2 at time t.
inline std::pair<CycloElement, CycloElement> revival_amplitudes(Eigenvalue plus, Eigenvalue minus, ExactTime const& t)
{
    auto order = static_cast<std::uint64_t>(t.den());
    auto zp = root_of_unity(order, t.num() * plus);
    auto zm = root_of_unity(order, t.num() * minus);
    CycloElement half(Rational(1, 2), order);
    return {(zp + zm) * half, (zp - zm) * half};
}

inline QfrDecision qfr_decide(SpectralDecomposition const& dec, std::uint64_t j, std::uint64_t l)
{
    QfrDecision d;
    d.j = j;
    d.l = l;
    if (j == l) {
        d.reason = NoneReason::same_vertex;
        return d;
    }
    auto sv = sign_vector(dec, j, l);
    if (!sv.cospectral) {
        d.reason = NoneReason::not_cospectral;
        return d;
    }
    std::vector<Eigenvalue> plus, minus;
    for (std::size_t r = 0; r < dec.size(); ++r) {
        if (!sv.signs[r]) continue;
        (*sv.signs[r] > 0 ? plus : minus).push_back(dec.eigenvalue(r));
    }
    // Both classes empty-free: otherwise E e_l = +-E e_j for all r gives e_l = +-e_j.
    if (plus.empty() || minus.empty()) throw ConsistencyError("strongly cospectral pair with an empty sign class");

    std::int64_t g = 0;
    for (auto x : plus) g = std::gcd(g, x - plus.front());
    for (auto x : minus) g = std::gcd(g, x - minus.front());
    auto cross = plus.front() - minus.front();
    RevivalTimeSet times(g, cross, cross);
    if (times.empty()) {
        d.reason = NoneReason::cross_difference_divisible;
        return d;
    }
    Certificate cert;
    cert.j = j;
    cert.l = l;
    cert.plus_class = plus;
    cert.minus_class = minus;
    cert.times = times;
    cert.minimal_time = times.minimal_time();
    std::tie(cert.alpha, cert.beta) = revival_amplitudes(plus.front(), minus.front(), cert.minimal_time);
    cert.kind = cert.alpha.is_zero() ? RevivalKind::pst : RevivalKind::qfr;
    cert.pst_time = times.pst_time();
    d.verdict = Verdict::qfr;
    d.certificate = std::move(cert);
    return d;
}

/// Direct exact test of H(t) e_j = alpha e_j + beta e_l with |alpha|^2 + |beta|^2 = 1, beta != 0.
/// Returns (alpha, beta) on success.
inline std::optional<std::pair<CycloElement, CycloElement>> revival_at(SpectralDecomposition const& dec,
                                                                       std::uint64_t j, std::uint64_t l,
                                                                       ExactTime const& t)
{
    if (j == l) return std::nullopt;
    auto col = transition_exact_column(dec, t, j);
    for (std::size_t i = 0; i < col.size(); ++i)
        if (i != j && i != l && !col[i].is_zero()) return std::nullopt;
    auto norm = abs_squared(col[j]) + abs_squared(col[l]);
    if (!(norm.is_rational() && norm.rational_part() == 1) || col[l].is_zero()) return std::nullopt;
    return std::pair{col[j], col[l]};
}

/// Recomputes H at the certified time and checks the certificate exactly.
inline bool certificate_check(SpectralDecomposition const& dec, QfrDecision const& decision)
{
    if (!decision.is_qfr() || !decision.certificate) return false;
    auto const& c = *decision.certificate;
    if (c.j != decision.j || c.l != decision.l) return false;
    if (c.beta.is_zero()) return false;
    auto norm = abs_squared(c.alpha) + abs_squared(c.beta);
    if (!(norm.is_rational() && norm.rational_part() == 1)) return false;
    if ((c.kind == RevivalKind::pst) != c.alpha.is_zero()) return false;
    if (!c.times.contains(c.minimal_time)) return false;
    auto seen = revival_at(dec, c.j, c.l, c.minimal_time);
    if (!seen) return false;
    return seen->first == c.alpha && seen->second == c.beta;
}

/// Rebuilds the spectral decomposition through the Lagrange route (independent
/// of the structured route the detector uses) and checks the certificate.
inline bool certificate_check(RingProduct const& ring, QfrDecision const& decision)
{
    auto dec = idempotents_lagrange(adjacency_matrix(ring), spectrum_of(ring));
    return certificate_check(dec, decision);
}

namespace detail {

inline std::string decision_signature(QfrDecision const& d)
{
    std::string s = to_string(d.verdict);
    if (d.reason) s += std::string("|") + to_string(*d.reason);
    if (d.certificate) {
        auto const& c = *d.certificate;
        s += "|" + std::to_string(c.g()) + "|" + c.minimal_time.to_string() + "|" + to_string(c.kind) + "|" +
             c.alpha.to_string() + "|" + c.beta.to_string();
    }
    return s;
}

template <typename F>
void parallel_for(std::size_t count, F&& body)
{
    auto workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
    if (workers == 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// Decisions for pairs (base, l), l != base, in increasing l.
inline std::vector<QfrDecision> decisions_from(SpectralDecomposition const& dec, std::uint64_t base)
{
    std::vector<QfrDecision> out;
    for (std::uint64_t l = 0; l < dec.order(); ++l)
        if (l != base) out.push_back(qfr_decide(dec, base, l));
    return out;
}

/// All unordered pairs j < l in lexicographic order. Also checks that every
/// base vertex sees the same multiset of decisions (the graph is vertex
/// transitive); a mismatch throws ConsistencyError.
inline std::vector<QfrDecision> all_pairs_search(SpectralDecomposition const& dec)
{
    auto n = dec.order();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t j = 0; j < n; ++j)
        for (std::uint64_t l = j + 1; l < n; ++l) pairs.emplace_back(j, l);
    std::vector<QfrDecision> out(pairs.size());
    detail::parallel_for(pairs.size(), [&](std::size_t i) { out[i] = qfr_decide(dec, pairs[i].first, pairs[i].second); });

    std::vector<std::vector<std::string>> per_base(n);
    for (auto const& d : out) {
        auto sig = detail::decision_signature(d);
        per_base[d.j].push_back(sig);
        per_base[d.l].push_back(sig);
    }
    for (auto& v : per_base) std::sort(v.begin(), v.end());
    for (std::uint64_t b = 1; b < n; ++b)
        if (per_base[b] != per_base[0])
            throw ConsistencyError("decisions from vertex " + std::to_string(b) + " differ from vertex 0");
    return out;
}

inline std::vector<QfrDecision> all_pairs_search(RingProduct const& ring)
{
    return all_pairs_search(idempotents_structured(ring));
}

}  // namespace cayleywalk
