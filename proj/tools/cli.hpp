#pragma once

// Command-line front end. `run` is kept separate from main() so the test
// suite can drive it with in-memory streams.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <cayleywalk/cayleywalk.hpp>

namespace cayleywalk::cli {

using io::json;

enum ExitCode : int { ok = 0, invalid_input = 2, too_large = 3, inconsistent = 4 };

/// One line of a bulk scan.
struct ScanRow {
    std::string expr;
    std::uint64_t size = 0;
    std::uint64_t ideal_size = 0;
    ClassificationResult oracle;
    OracleVerdict detector = OracleVerdict::no;
    bool computational = false;
    std::optional<ExactTime> minimal_time;
    std::optional<RevivalKind> kind;
    bool consistent = true;
    std::string note;

    static ScanRow from(std::string expr, CrossCheckReport const& rep)
    {
        ScanRow row;
        row.expr = std::move(expr);
        row.size = rep.ring.size();
        row.ideal_size = rep.ring.combined_ideal_size();
        row.oracle = rep.oracle;
        row.detector = rep.detector;
        row.computational = rep.computational();
        if (auto const* e = rep.earliest()) {
            row.minimal_time = e->certificate->minimal_time;
            // PST anywhere on the ring takes precedence in the kind column.
            row.kind = RevivalKind::qfr;
            for (auto const& d : rep.certificates)
                if (d.certificate->kind == RevivalKind::pst) row.kind = RevivalKind::pst;
        }
        row.consistent = rep.consistent;
        row.note = rep.note;
        return row;
    }

    json to_json() const
    {
        json out{{"expr", expr},
                 {"size", size},
                 {"m", ideal_size},
                 {"oracle", {{"verdict", to_string(oracle.verdict)}, {"basis", tag(oracle.basis)}}},
                 {"detector", {{"verdict", to_string(detector)},
                               {"label", computational ? "computational" : "agrees-with-theorem"}}},
                 {"consistent", consistent}};
        if (minimal_time) out["minimal_time"] = io::encode(*minimal_time);
        if (kind) out["kind"] = to_string(*kind);
        if (!note.empty()) out["note"] = note;
        return out;
    }

    bool operator<(ScanRow const& o) const { return std::tie(size, expr) < std::tie(o.size, o.expr); }
};

namespace detail {

struct Options {
    bool quiet = false;
    std::string expr;
    std::string format = "json";
    bool verify = false;
    std::string exact;
    std::optional<double> float_time;
    std::string entry;
    std::string pair;
    bool all_pairs = false;
    bool crt = false;
    std::optional<std::uint64_t> zn;
    std::string rings_file;
};

/// "j,l" with 0-based flat indices, or CRT element labels when `crt` is set.
/// A token "v<k>" always means the CRT label v_k, i.e. the element k-1.
inline std::pair<std::uint64_t, std::uint64_t> parse_pair(std::string const& text, RingProduct const& ring, bool crt,
                                                          bool* used_crt = nullptr)
{
    auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("expected a pair j,l but got '" + text + "'");
    bool any_crt = crt;
    auto read = [&](std::string tok) -> std::uint64_t {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        bool label = !tok.empty() && (tok[0] == 'v' || tok[0] == 'V');
        if (label) tok.erase(0, 1);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
            throw ParseError("malformed vertex '" + tok + "' in pair '" + text + "'");
        if (label) {
            if (v == 0) throw ParseError("CRT labels start at v1");
            any_crt = true;
            return crt_vertex(ring, v - 1);
        }
        if (crt) return crt_vertex(ring, v);
        if (v >= ring.size())
            throw ValidationError("vertex " + std::to_string(v) + " out of range for |R| = " + std::to_string(ring.size()));
        return v;
    };
    auto j = read(text.substr(0, comma));
    auto l = read(text.substr(comma + 1));
    if (used_crt) *used_crt = any_crt;
    return {j, l};
}

inline std::vector<std::string> read_ring_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ring list '" + path + "'");
    std::vector<std::string> exprs;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        exprs.push_back(line.substr(first, last - first + 1));
    }
    return exprs;
}

/// Cross-checks every ring, parallel over rings, returned in scan order.
inline std::vector<ScanRow> scan_rings(std::vector<std::string> const& exprs)
{
    std::vector<RingProduct> rings;
    for (auto const& e : exprs) {
        rings.push_back(parse_ring_expr(e));
        require_within_cap(rings.back());
    }
    std::vector<ScanRow> rows(rings.size());
    std::vector<std::exception_ptr> errors(rings.size());
    auto workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < rings.size(); i += workers) {
                try {
                    rows[i] = ScanRow::from(exprs[i], cross_check(rings[i]));
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto const& e : errors)
        if (e) std::rethrow_exception(e);
    std::stable_sort(rows.begin(), rows.end());
    return rows;
}

class Runner {
public:
    Runner(Options const& opt, std::ostream& out, std::ostream& err) : opt_(opt), out_(out), err_(err) {}

    int parse()
    {
        auto ring = parse_ring_expr(opt_.expr);
        emit(io::encode(ring));
        say(render(ring) + ": |R| = " + std::to_string(ring.size()) +
            ", m = " + std::to_string(ring.combined_ideal_size()));
        return ok;
    }

    int graph()
    {
        auto ring = parse_ring_expr(opt_.expr);
        auto a = adjacency_matrix(ring);
        if (opt_.format == "csv")
            out_ << io::adjacency_csv(a);
        else if (opt_.format == "mm")
            out_ << io::adjacency_matrix_market(a);
        else
            emit({{"ring", io::encode(ring)}, {"adjacency", io::encode(a)}});
        say(render(ring) + ": " + std::to_string(a.rows()) + " vertices, degree " + std::to_string(unit_count(ring)));
        return ok;
    }

    int spectrum()
    {
        auto ring = parse_ring_expr(opt_.expr);
        auto s = spectrum_of(ring);
        emit({{"ring", io::encode(ring)}, {"spectrum", io::encode(s)}});
        std::string line = render(ring) + ":";
        for (auto const& e : s.entries)
            line += " " + std::to_string(e.eigenvalue) + "^" + std::to_string(e.multiplicity);
        say(line);
        return ok;
    }

    int projections()
    {
        auto ring = parse_ring_expr(opt_.expr);
        require_within_cap(ring);
        auto dec = idempotents_structured(ring);
        json list = json::array();
        for (std::size_t r = 0; r < dec.size(); ++r)
            list.push_back({{"eigenvalue", dec.eigenvalue(r)},
                            {"multiplicity", dec.spectrum.entries[r].multiplicity},
                            {"matrix", io::encode(dec.idempotents[r])}});
        json doc{{"ring", io::encode(ring)}, {"spectrum", io::encode(dec.spectrum)}, {"projections", list}};
        int code = ok;
        if (opt_.verify) {
            auto a = adjacency_matrix(ring);
            auto check = verify_decomposition(dec, a);
            bool lagrange_agrees = idempotents_lagrange(a, dec.spectrum) == dec;
            doc["verified"] = {{"orthogonal", check.orthogonal},
                               {"resolves_identity", check.resolves_identity},
                               {"reconstructs", check.reconstructs},
                               {"symmetric", check.symmetric},
                               {"traces_match", check.traces_match},
                               {"lagrange_agrees", lagrange_agrees},
                               {"ok", check.ok() && lagrange_agrees}};
            if (!(check.ok() && lagrange_agrees)) code = inconsistent;
        }
        emit(doc);
        say(render(ring) + ": " + std::to_string(dec.size()) + " spectral idempotents" +
            (opt_.verify ? (code == ok ? ", verified" : ", VERIFICATION FAILED") : ""));
        return code;
    }

    int walk()
    {
        auto ring = parse_ring_expr(opt_.expr);
        require_within_cap(ring);
        auto dec = idempotents_structured(ring);
        std::optional<std::pair<std::uint64_t, std::uint64_t>> entry;
        if (!opt_.entry.empty()) entry = parse_pair(opt_.entry, ring, opt_.crt);

        if (!opt_.exact.empty()) {
            auto t = ExactTime::parse(opt_.exact);
            if (entry) {
                auto col = transition_exact_column(dec, t, entry->second);
                auto const& z = col[entry->first];
                emit({{"ring", io::encode(ring)},
                      {"time", io::encode(t)},
                      {"entry", json::array({entry->first, entry->second})},
                      {"value", io::encode(z)},
                      {"float", io::encode(z.to_complex())}});
                say("H(" + t.to_string() + ")[" + std::to_string(entry->first) + "," + std::to_string(entry->second) +
                    "] = " + z.to_string());
                return ok;
            }
            auto h = transition_exact(dec, t);
            auto doc = io::encode(h);
            doc["ring"] = io::encode(ring);
            doc["float"] = io::encode_matrix(to_complex(h.entries), [](std::complex<double> z) { return io::encode(z); });
            emit(doc);
            say(render(ring) + ": exact H(" + t.to_string() + ") over Q(zeta_" + std::to_string(h.order) + ")");
            return ok;
        }
        if (!opt_.float_time) throw ParseError("walk needs --exact a/b or --float t");
        auto h = transition_float(dec, *opt_.float_time);
        if (entry) {
            auto z = h.entries(entry->first, entry->second);
            emit({{"ring", io::encode(ring)},
                  {"time", *opt_.float_time},
                  {"entry", json::array({entry->first, entry->second})},
                  {"float", io::encode(z)}});
            return ok;
        }
        auto doc = io::encode(h);
        doc["ring"] = io::encode(ring);
        doc["unitarity_residual"] = unitarity_residual(h);
        emit(doc);
        say(render(ring) + ": float H(" + std::to_string(*opt_.float_time) + "), unitarity residual " +
            std::to_string(unitarity_residual(h)));
        return ok;
    }

    int detect()
    {
        auto ring = parse_ring_expr(opt_.expr);
        require_within_cap(ring);
        auto dec = idempotents_structured(ring);
        // Certificates are re-checked against the Lagrange-route decomposition,
        // which never looks at the ring structure.
        std::optional<SpectralDecomposition> independent;
        auto check = [&](QfrDecision const& d) {
            if (!independent) independent = idempotents_lagrange(adjacency_matrix(ring), spectrum_of(ring));
            return certificate_check(*independent, d);
        };

        if (!opt_.pair.empty() && !opt_.all_pairs) {
            bool used_crt = false;
            auto [j, l] = parse_pair(opt_.pair, ring, opt_.crt, &used_crt);
            if (j == l) {
                QfrDecision same{j, l, Verdict::none, NoneReason::same_vertex, std::nullopt};
                emit({{"ring", io::encode(ring)}, {"decision", io::encode(same)}});
                say("same vertex: no revival by definition");
                return ok;
            }
            auto d = qfr_decide(dec, j, l);
            json doc{{"ring", io::encode(ring)}, {"decision", io::encode(d)}};
            if (used_crt) doc["labels"] = opt_.pair;
            int code = ok;
            if (opt_.verify && d.is_qfr()) {
                bool v = check(d);
                doc["verified"] = v;
                if (!v) code = inconsistent;
            } else if (opt_.verify) {
                doc["verified"] = true;
            }
            emit(doc);
            say(describe(d) + (opt_.verify ? (code == ok ? " [verified]" : " [VERIFICATION FAILED]") : ""));
            return code;
        }

        auto all = all_pairs_search(dec);
        json list = json::array();
        std::size_t qfr_pairs = 0;
        bool verified = true;
        for (auto const& d : all) {
            auto j = io::encode(d);
            if (d.is_qfr()) {
                ++qfr_pairs;
                if (opt_.verify) {
                    bool v = check(d);
                    j["verified"] = v;
                    verified = verified && v;
                }
            }
            list.push_back(std::move(j));
        }
        json doc{{"ring", io::encode(ring)}, {"pairs", all.size()}, {"qfr_pairs", qfr_pairs}, {"decisions", list}};
        if (opt_.verify) doc["verified"] = verified;
        emit(doc);
        say(render(ring) + ": " + std::to_string(qfr_pairs) + " of " + std::to_string(all.size()) +
            " pairs admit QFR" + (opt_.verify ? (verified ? " [verified]" : " [VERIFICATION FAILED]") : ""));
        return verified ? ok : inconsistent;
    }

    int classify()
    {
        auto ring = parse_ring_expr(opt_.expr);
        auto res = classify_ring(ring);
        emit({{"ring", io::encode(ring)}, {"classification", io::encode(res)}});
        say(render(ring) + ": " + to_string(res.verdict) + " (" + citation(res.basis) + ")");
        return ok;
    }

    int crosscheck()
    {
        auto ring = parse_ring_expr(opt_.expr);
        require_within_cap(ring);
        auto rep = cross_check(ring);
        emit(io::encode(rep));
        say(render(ring) + ": oracle " + to_string(rep.oracle.verdict) + ", detector " + to_string(rep.detector) +
            (rep.computational() ? " (computational)" : "") + (rep.consistent ? ", consistent" : ", INCONSISTENT: " + rep.note));
        return rep.consistent ? ok : inconsistent;
    }

    int scan()
    {
        std::vector<std::string> exprs;
        if (opt_.zn) {
            for (std::uint64_t n = 2; n <= *opt_.zn; ++n) exprs.push_back("Z" + std::to_string(n));
        } else if (!opt_.rings_file.empty()) {
            exprs = read_ring_file(opt_.rings_file);
        } else {
            throw ParseError("scan needs --zn <max> or --rings <file>");
        }
        auto rows = scan_rings(exprs);
        json list = json::array();
        bool consistent = true;
        for (auto const& r : rows) {
            list.push_back(r.to_json());
            consistent = consistent && r.consistent;
            say(r.expr + ": oracle " + to_string(r.oracle.verdict) + ", detector " + to_string(r.detector) +
                (r.minimal_time ? " at " + r.minimal_time->to_string() + " (" + to_string(*r.kind) + ")" : "") +
                (r.computational ? " [computational]" : ""));
        }
        emit({{"rows", list}, {"consistent", consistent}});
        return consistent ? ok : inconsistent;
    }

private:
    void emit(json const& doc) { out_ << doc.dump(2) << '\n'; }
    void say(std::string const& line)
    {
        if (!opt_.quiet) err_ << line << '\n';
    }

    static std::string describe(QfrDecision const& d)
    {
        std::string s = "pair (" + std::to_string(d.j) + "," + std::to_string(d.l) + "): " + to_string(d.verdict);
        if (d.reason) s += std::string(" (") + to_string(*d.reason) + ")";
        if (d.certificate)
            s += " at " + d.certificate->minimal_time.to_string() + ", " + to_string(d.certificate->kind) +
                 ", alpha = " + d.certificate->alpha.to_string() + ", beta = " + d.certificate->beta.to_string();
        return s;
    }

    Options const& opt_;
    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace detail

/// Runs the tool on `args` (without the program name). Returns the exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    detail::Options opt;
    CLI::App app{"Quantum walks on unitary Cayley graphs of finite commutative rings"};
    app.name("cayleywalk");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("-q,--quiet", opt.quiet, "Suppress the summary on standard error");

    auto expr_arg = [&](CLI::App* sub) { sub->add_option("ring", opt.expr, "Ring expression, e.g. Z6 or F5 x Z2")->required(); };

    auto* parse = app.add_subcommand("parse", "Parse a ring expression");
    expr_arg(parse);
    auto* graph = app.add_subcommand("graph", "Dump the adjacency matrix");
    expr_arg(graph);
    graph->add_option("--format", opt.format, "json, csv or mm")->check(CLI::IsMember({"json", "csv", "mm"}));
    auto* spectrum = app.add_subcommand("spectrum", "Adjacency eigenvalues with multiplicities");
    expr_arg(spectrum);
    auto* projections = app.add_subcommand("projections", "Exact spectral idempotents");
    expr_arg(projections);
    projections->add_flag("--verify", opt.verify, "Check the spectral identities and the Lagrange route");
    auto* walk = app.add_subcommand("walk", "Transition matrix H(t) = exp(itA)");
    expr_arg(walk);
    auto* exact = walk->add_option("--exact", opt.exact, "Time a/b, meaning t = 2 pi a/b");
    auto* flt = walk->add_option("--float", opt.float_time, "Time in seconds of evolution");
    exact->excludes(flt);
    walk->add_option("--entry", opt.entry, "Only the entry j,l");
    walk->add_flag("--crt", opt.crt, "Read vertices as elements of Z_n");
    auto* detect = app.add_subcommand("detect", "Decide fractional revival");
    expr_arg(detect);
    auto* pair = detect->add_option("--pair", opt.pair, "Vertex pair j,l (or CRT labels v1,v4)");
    auto* all = detect->add_flag("--all-pairs", opt.all_pairs, "Every unordered pair (default)");
    pair->excludes(all);
    detect->add_flag("--verify", opt.verify, "Recheck certificates against an independent decomposition");
    detect->add_flag("--crt", opt.crt, "Read vertices as elements of Z_n");
    auto* classify = app.add_subcommand("classify", "Structural verdict from known results");
    expr_arg(classify);
    auto* crosscheck = app.add_subcommand("crosscheck", "Compare the structural verdict with the detector");
    expr_arg(crosscheck);
    auto* scan = app.add_subcommand("scan", "Cross-check many rings");
    auto* zn = scan->add_option("--zn", opt.zn, "Scan Z_n for 2 <= n <= max");
    auto* rings = scan->add_option("--rings", opt.rings_file, "File with one ring expression per line");
    zn->excludes(rings);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return ok;
    } catch (CLI::ParseError const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }

    detail::Runner runner(opt, out, err);
    try {
        if (*parse) return runner.parse();
        if (*graph) return runner.graph();
        if (*spectrum) return runner.spectrum();
        if (*projections) return runner.projections();
        if (*walk) return runner.walk();
        if (*detect) return runner.detect();
        if (*classify) return runner.classify();
        if (*crosscheck) return runner.crosscheck();
        if (*scan) return runner.scan();
    } catch (SizeCapExceeded const& e) {
        err << "error: " << e.what() << '\n';
        return too_large;
    } catch (ConsistencyError const& e) {
        err << "error: " << e.what() << '\n';
        return inconsistent;
    } catch (std::invalid_argument const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }
    return invalid_input;
}

}  // namespace cayleywalk::cli
