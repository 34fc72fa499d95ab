#pragma once

// Structural oracle: what the known classification results say about a ring,
// and a harness that compares it with the exact detector.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "qfr.hpp"
#include "ring.hpp"
#include "spectral.hpp"

namespace cayleywalk {

enum class OracleVerdict { yes, no, unknown };

inline char const* to_string(OracleVerdict v)
{
    switch (v) {
    case OracleVerdict::yes: return "YES";
    case OracleVerdict::no: return "NO";
    case OracleVerdict::unknown: return "UNKNOWN";
    }
    return "?";
}

/// Fixed set of result tags the oracle can cite.
enum class Basis {
    local_ideal_too_large,    // local ring, |M| > 2: no QFR
    field_only_f2,            // F_q has QFR iff q = 2
    local_classification,     // local ring has QFR iff it is F2, Z4 or Z2[x]/(x^2)
    char2_pst,                // F2 / Z4 / Z2[x]/(x^2) times fields of characteristic 2: PST
    product_ideal_too_large,  // product ring with m = prod |M_j| > 2: no QFR
    odd_order,                // QFR forces |R| even
    field_times_f2,           // F_q x F2, q odd: QFR at 2pi/q
    field_times_z4_partial,   // F_q x Z4, q odd: no QFR at any t in pi/q Z
    open_case,                // not covered by a known result
};

inline char const* tag(Basis b)
{
    switch (b) {
    case Basis::local_ideal_too_large: return "local_ideal_too_large";
    case Basis::field_only_f2: return "field_only_f2";
    case Basis::local_classification: return "local_classification";
    case Basis::char2_pst: return "char2_pst";
    case Basis::product_ideal_too_large: return "product_ideal_too_large";
    case Basis::odd_order: return "odd_order";
    case Basis::field_times_f2: return "field_times_f2";
    case Basis::field_times_z4_partial: return "field_times_z4_partial";
    case Basis::open_case: return "open_case";
    }
    return "?";
}

inline char const* citation(Basis b)
{
    switch (b) {
    case Basis::local_ideal_too_large: return "QFR on a local ring forces |M| to be 1 or 2";
    case Basis::field_only_f2: return "the complete graph of F_q has QFR if and only if q = 2";
    case Basis::local_classification: return "a local ring has QFR if and only if it is F2, Z4 or Z2[x]/(x^2)";
    case Basis::char2_pst: return "F2, Z4 or Z2[x]/(x^2) times characteristic-2 fields has PST, hence QFR";
    case Basis::product_ideal_too_large: return "QFR on a finite commutative ring forces m = m_1...m_n to be 1 or 2";
    case Basis::odd_order: return "QFR on a finite commutative ring forces |R| to be even";
    case Basis::field_times_f2: return "F_q x F2 with q odd has QFR at t = 2pi/q";
    case Basis::field_times_z4_partial: return "F_q x Z4 (or Z2[x]/(x^2)) with q odd has no QFR at any t = k*pi/q";
    case Basis::open_case: return "no known result applies (e.g. Z12, Z20, Z28, Z30)";
    }
    return "?";
}

struct Witness {
    std::uint64_t j;
    std::uint64_t l;
    ExactTime time;
};

/// Times 2 pi k / lattice, k integer, at which QFR is known to be impossible.
struct RestrictedTimes {
    std::int64_t lattice;
    std::string description;
};

struct ClassificationResult {
    OracleVerdict verdict = OracleVerdict::unknown;
    Basis basis = Basis::open_case;
    std::optional<Witness> witness;
    std::optional<RestrictedTimes> restricted_no_times;
};

namespace detail {

inline bool is_special_local(LocalDescriptor const& f)
{
    return (f.size() == 2 && f.ideal_size() == 1) || (f.size() == 4 && f.ideal_size() == 2);
}

inline bool is_char2_field(LocalDescriptor const& f) { return f.is_field() && f.characteristic_prime() == 2; }

/// For a two-factor ring, the index of the factor matching pred while the
/// other is an odd-order field; nullopt otherwise.
template <typename Pred>
std::optional<std::size_t> odd_field_partner(RingProduct const& ring, Pred pred)
{
    if (ring.factor_count() != 2) return std::nullopt;
    for (std::size_t s = 0; s < 2; ++s) {
        auto const& special = ring.factor(s);
        auto const& other = ring.factor(1 - s);
        if (pred(special) && other.is_field() && other.size() % 2 == 1) return s;
    }
    return std::nullopt;
}

/// Vertex 0 and the vertex that differs from it only in factor s, where it
/// sits in coset `coset` at position `within`.
inline std::uint64_t shifted_vertex(RingProduct const& ring, std::size_t s, LocalVertex v)
{
    std::vector<LocalVertex> parts(ring.factor_count(), LocalVertex{0, 0});
    parts[s] = v;
    return VertexIndex::from_local(ring, std::move(parts)).flat;
}

}  // namespace detail

/// Rule cascade, first match wins. YES results carry a witness pair and time.
inline ClassificationResult classify_ring(RingProduct const& ring)
{
    ClassificationResult res;
    auto yes = [&](Basis b, Witness w) {
        res.verdict = OracleVerdict::yes;
        res.basis = b;
        res.witness = w;
        return res;
    };
    auto no = [&](Basis b) {
        res.verdict = OracleVerdict::no;
        res.basis = b;
        return res;
    };

    if (ring.factor_count() == 1) {
        auto const& f = ring.factor(0);
        // Coset mates in (4,2) (v1, v3 of C4 in element labels) and the two vertices of K2.
        if (f.size() == 2 && f.ideal_size() == 1) return yes(Basis::local_classification, {0, 1, ExactTime(1, 4)});
        if (f.size() == 4 && f.ideal_size() == 2) return yes(Basis::local_classification, {0, 1, ExactTime(1, 4)});
        if (f.ideal_size() > 2) return no(Basis::local_ideal_too_large);
        if (f.is_field()) return no(Basis::field_only_f2);
        return no(Basis::local_classification);
    }
    if (ring.combined_ideal_size() > 2) return no(Basis::product_ideal_too_large);
    if (ring.size() % 2 == 1) return no(Basis::odd_order);

    auto const& fs = ring.factors();
    bool char2_family = std::all_of(fs.begin(), fs.end(), [](auto const& f) {
        return detail::is_char2_field(f) || detail::is_special_local(f);
    }) && std::any_of(fs.begin(), fs.end(), [](auto const& f) { return detail::is_special_local(f); });
    if (char2_family) {
        auto dec = idempotents_structured(ring);
        std::optional<Witness> first_qfr;
        for (auto const& d : decisions_from(dec, 0)) {
            if (!d.is_qfr()) continue;
            auto const& c = *d.certificate;
            if (c.pst_time) return yes(Basis::char2_pst, {d.j, d.l, *c.pst_time});
            if (!first_qfr) first_qfr = Witness{d.j, d.l, c.minimal_time};
        }
        if (first_qfr) return yes(Basis::char2_pst, *first_qfr);
        throw ConsistencyError("no revival found on " + render(ring) + " although PST is known to occur");
    }

    if (auto s = detail::odd_field_partner(ring, [](auto const& f) { return f.size() == 2 && f.ideal_size() == 1; })) {
        auto q = static_cast<std::int64_t>(ring.factor(1 - *s).size());
        return yes(Basis::field_times_f2, {0, detail::shifted_vertex(ring, *s, {1, 0}), ExactTime(1, q)});
    }
    if (auto s = detail::odd_field_partner(ring, [](auto const& f) { return f.size() == 4 && f.ideal_size() == 2; })) {
        auto q = static_cast<std::int64_t>(ring.factor(1 - *s).size());
        res.verdict = OracleVerdict::unknown;
        res.basis = Basis::field_times_z4_partial;
        res.restricted_no_times = RestrictedTimes{2 * q, "t = k*pi/" + std::to_string(q) + ", k integer"};
        return res;
    }
    res.verdict = OracleVerdict::unknown;
    res.basis = Basis::open_case;
    return res;
}

struct CrossCheckReport {
    CrossCheckReport(RingProduct r, ClassificationResult o) : ring(std::move(r)), oracle(std::move(o)) {}

    RingProduct ring;
    ClassificationResult oracle;
    std::vector<QfrDecision> certificates;  // QFR decisions only, pair order
    OracleVerdict detector = OracleVerdict::no;
    bool all_certificates_verified = true;
    bool witness_verified = true;
    bool consistent = true;
    std::string note;

    /// Earliest certified time and its certificate, if any.
    QfrDecision const* earliest() const
    {
        QfrDecision const* best = nullptr;
        for (auto const& d : certificates)
            if (!best || d.certificate->minimal_time < best->certificate->minimal_time) best = &d;
        return best;
    }
    /// Detector answer is the only source of truth for UNKNOWN rings.
    bool computational() const { return oracle.verdict == OracleVerdict::unknown; }
};

/// Runs the oracle and the exhaustive detector and compares them.
/// Inconsistencies are reported through `consistent`, not thrown.
inline CrossCheckReport cross_check(RingProduct const& ring)
{
    auto dec = idempotents_structured(ring);
    CrossCheckReport rep(ring, classify_ring(ring));
    for (auto& d : all_pairs_search(dec))
        if (d.is_qfr()) rep.certificates.push_back(std::move(d));
    rep.detector = rep.certificates.empty() ? OracleVerdict::no : OracleVerdict::yes;
    for (auto const& d : rep.certificates)
        if (!certificate_check(dec, d)) rep.all_certificates_verified = false;

    auto fail = [&](std::string why) {
        rep.consistent = false;
        if (!rep.note.empty()) rep.note += "; ";
        rep.note += why;
    };
    if (!rep.all_certificates_verified) fail("a certificate failed exact verification");

    switch (rep.oracle.verdict) {
    case OracleVerdict::yes: {
        if (rep.detector != OracleVerdict::yes) fail("oracle YES but detector found no revival");
        auto const& w = *rep.oracle.witness;
        auto d = qfr_decide(dec, w.j, w.l);
        rep.witness_verified = d.is_qfr() && d.certificate->times.contains(w.time) && revival_at(dec, w.j, w.l, w.time);
        if (!rep.witness_verified) fail("oracle witness does not verify");
        break;
    }
    case OracleVerdict::no:
        if (rep.detector != OracleVerdict::no) fail("oracle NO but detector certified a revival");
        break;
    case OracleVerdict::unknown:
        if (rep.oracle.restricted_no_times) {
            for (auto const& d : rep.certificates)
                if (d.certificate->times.intersects_lattice(rep.oracle.restricted_no_times->lattice))
                    fail("certified time inside the excluded set " + rep.oracle.restricted_no_times->description);
        }
        break;
    }
    return rep;
}

}  // namespace cayleywalk
