#pragma once

// JSON / CSV / MatrixMarket encodings shared by the CLI and the tests.

#include <complex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "classify.hpp"
#include "cyclo.hpp"
#include "graph.hpp"
#include "qfr.hpp"
#include "ring.hpp"
#include "spectral.hpp"
#include "walk.hpp"

namespace cayleywalk::io {

using nlohmann::json;

inline json encode(Rational const& q) { return q.get_str(); }

inline json encode(CycloElement const& z)
{
    json coeffs = json::array();
    for (auto const& c : z.coeffs()) coeffs.push_back(c.get_str());
    return {{"order", z.order()}, {"coeffs", coeffs}};
}

inline CycloElement decode_cyclo(json const& j)
{
    try {
        auto order = j.at("order").get<std::uint64_t>();
        RatPoly coeffs;
        for (auto const& c : j.at("coeffs")) coeffs.push_back(parse_rational(c.get<std::string>()));
        return CycloElement::from_coeffs(order, std::move(coeffs));
    } catch (json::exception const& e) {
        throw ParseError(std::string("cyclotomic JSON: ") + e.what());
    } catch (std::invalid_argument const& e) {
        throw ParseError(std::string("cyclotomic JSON: ") + e.what());
    }
}

inline json encode(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

inline json encode(ExactTime const& t) { return t.to_string(); }

inline json encode(RationalMatrix const& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RationalMatrix decode_rational_matrix(json const& rows)
{
    Matrix<Rational> m(rows.size(), rows.empty() ? 0 : rows.at(0).size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (rows.at(i).size() != m.cols()) throw ParseError("ragged rational matrix");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = parse_rational(rows.at(i).at(j).get<std::string>());
    }
    return RationalMatrix::from_rationals(m);
}

template <typename T, typename F>
json encode_matrix(Matrix<T> const& m, F&& cell)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(cell(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json encode(AdjacencyMatrix const& a)
{
    return encode_matrix(a, [](int x) { return x; });
}

inline std::string adjacency_csv(AdjacencyMatrix const& a)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? "," : "") << a(i, j);
        out << '\n';
    }
    return out.str();
}

/// MatrixMarket coordinate format, 1-based indices, general symmetry.
inline std::string adjacency_matrix_market(AdjacencyMatrix const& a)
{
    std::size_t nnz = 0;
    for (auto x : a.data()) nnz += x != 0;
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate integer general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) out << i + 1 << ' ' << j + 1 << ' ' << a(i, j) << '\n';
    return out.str();
}

inline json encode(RingProduct const& ring)
{
    json factors = json::array();
    for (auto const& f : ring.factors())
        factors.push_back({{"label", f.label()}, {"size", f.size()}, {"ideal_size", f.ideal_size()}});
    return {{"expr", render(ring)},
            {"size", ring.size()},
            {"combined_ideal_size", ring.combined_ideal_size()},
            {"unit_count", unit_count(ring)},
            {"factors", factors}};
}

inline json encode(Spectrum const& s)
{
    json out = json::array();
    for (auto const& e : s.entries) out.push_back({{"eigenvalue", e.eigenvalue}, {"multiplicity", e.multiplicity}});
    return out;
}

inline json encode(Certificate const& c)
{
    json out{{"time", encode(c.minimal_time)},
             {"alpha", encode(c.alpha)},
             {"beta", encode(c.beta)},
             {"alpha_float", encode(c.alpha.to_complex())},
             {"beta_float", encode(c.beta.to_complex())},
             {"kind", to_string(c.kind)},
             {"g", c.g()},
             {"c", c.c()},
             {"plus_class", c.plus_class},
             {"minus_class", c.minus_class},
             {"time_set", c.times.describe()}};
    if (c.pst_time) out["pst_time"] = encode(*c.pst_time);
    return out;
}

inline json encode(QfrDecision const& d)
{
    json out{{"pair", json::array({d.j, d.l})}, {"verdict", to_string(d.verdict)}};
    if (d.reason) out["reason"] = to_string(*d.reason);
    if (d.certificate) out["certificate"] = encode(*d.certificate);
    return out;
}

inline json encode(ClassificationResult const& c)
{
    json out{{"verdict", to_string(c.verdict)}, {"basis", {{"tag", tag(c.basis)}, {"citation", citation(c.basis)}}}};
    if (c.witness)
        out["witness"] = {{"pair", json::array({c.witness->j, c.witness->l})}, {"time", encode(c.witness->time)}};
    if (c.restricted_no_times)
        out["restricted_no_times"] = {{"lattice", "2pi*k/" + std::to_string(c.restricted_no_times->lattice)},
                                      {"description", c.restricted_no_times->description}};
    return out;
}

inline json encode(CrossCheckReport const& r)
{
    json certs = json::array();
    for (auto const& d : r.certificates) certs.push_back(encode(d));
    json detector{{"verdict", to_string(r.detector)},
                  {"label", r.computational() ? "computational" : "agrees-with-theorem"},
                  {"certificates_verified", r.all_certificates_verified},
                  {"certificates", certs}};
    if (auto const* e = r.earliest()) {
        detector["minimal_time"] = encode(e->certificate->minimal_time);
        detector["kind"] = to_string(e->certificate->kind);
    }
    json out{{"ring", render(r.ring)}, {"oracle", encode(r.oracle)}, {"detector", detector}, {"consistent", r.consistent}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

inline json encode(ExactTransition const& h)
{
    return {{"time", encode(h.time)},
            {"order", h.order},
            {"entries", encode_matrix(h.entries, [](CycloElement const& z) { return encode(z); })}};
}

inline json encode(FloatTransition const& h)
{
    return {{"time", h.time},
            {"entries", encode_matrix(h.entries, [](std::complex<double> z) { return encode(z); })}};
}

}  // namespace cayleywalk::io
