#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace cayleywalk;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ParseEmitsRing)
{
    auto r = run({"parse", "F9 x Z2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.doc();
    EXPECT_EQ(j["expr"], "F9 x Z2");
    EXPECT_EQ(j["size"], 18);
    EXPECT_EQ(j["unit_count"], 8);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, QuietSuppressesSummary)
{
    auto r = run({"--quiet", "parse", "Z6"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.err.empty());
    auto r2 = run({"spectrum", "Z6", "-q"});
    ASSERT_EQ(r2.code, 0);
    EXPECT_TRUE(r2.err.empty());
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"parse", "F6"}).code, 2);
    EXPECT_EQ(run({"parse", "Q3"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"walk", "Z6"}).code, 2);
    EXPECT_EQ(run({"detect", "Z6", "--pair", "0"}).code, 2);
    EXPECT_EQ(run({"detect", "Z6", "--pair", "0,9"}).code, 2);
    EXPECT_EQ(run({"detect", "F4", "--pair", "v1,v2"}).code, 2);
    EXPECT_EQ(run({"graph", "Z5000"}).code, 3);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DetectHexagonWitness)
{
    auto r = run({"detect", "Z6", "--pair", "v1,v4", "--verify"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.doc();
    auto const& d = j["decision"];
    EXPECT_EQ(d["verdict"], "QFR");
    EXPECT_EQ(d["pair"], json::array({0, 3}));
    EXPECT_EQ(d["certificate"]["time"], "1/3 of 2pi");
    EXPECT_EQ(d["certificate"]["kind"], "QFR");
    EXPECT_EQ(d["certificate"]["alpha"]["coeffs"][0], "-1/2");
    EXPECT_EQ(j["verified"], true);
    EXPECT_NEAR(d["certificate"]["beta_float"][1].get<double>(), -0.8660254, 1e-7);

    auto flat = run({"detect", "Z6", "--pair", "0,3", "--verify"});
    ASSERT_EQ(flat.code, 0);
    EXPECT_EQ(flat.doc()["decision"], d);

    auto crt = run({"detect", "Z6", "--pair", "0,3", "--crt"});
    EXPECT_EQ(crt.doc()["decision"]["pair"], json::array({0, 3}));
}

TEST(Cli, DetectAllPairs)
{
    auto r = run({"detect", "Z4", "--all-pairs", "--verify"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.doc();
    EXPECT_EQ(j["pairs"], 6);
    EXPECT_EQ(j["qfr_pairs"], 2);
    EXPECT_EQ(j["verified"], true);
}

TEST(Cli, WalkEdgeQuarterPeriod)
{
    auto r = run({"walk", "Z2", "--exact", "1/4"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto h = r.doc()["entries"];
    EXPECT_EQ(io::decode_cyclo(h[0][1]), root_of_unity(4, 1));
}

TEST(Cli, WalkEntryAndFloat)
{
    auto r = run({"walk", "Z6", "--exact", "1/3", "--entry", "3,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto beta = io::decode_cyclo(r.doc()["value"]);
    EXPECT_EQ(beta, (root_of_unity(3, 2) - root_of_unity(3, 1)) * CycloElement(Rational(1, 2)));

    auto f = run({"walk", "Z6", "--float", "2.0943951023931953", "--entry", "3,0"});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_NEAR(f.doc()["float"][1].get<double>(), -0.8660254037844386, 1e-12);

    auto full = run({"walk", "Z4", "--float", "0.5"});
    ASSERT_EQ(full.code, 0);
    EXPECT_LE(full.doc()["unitarity_residual"].get<double>(), 1e-10);
}

TEST(Cli, GraphFormats)
{
    auto j = run({"graph", "Z4"});
    ASSERT_EQ(j.code, 0);
    EXPECT_EQ(j.doc()["adjacency"][0], json::array({0, 0, 1, 1}));
    auto csv = run({"graph", "Z4", "--format", "csv"});
    EXPECT_EQ(csv.out, "0,0,1,1\n0,0,1,1\n1,1,0,0\n1,1,0,0\n");
    auto mm = run({"graph", "Z2", "--format", "mm"});
    EXPECT_EQ(mm.out, "%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 2 1\n2 1 1\n");
    EXPECT_EQ(run({"graph", "Z4", "--format", "xml"}).code, 2);
}

TEST(Cli, ProjectionsRoundTripAndVerify)
{
    auto r = run({"projections", "Z6", "--verify"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.doc();
    EXPECT_EQ(j["verified"]["ok"], true);
    auto dec = idempotents_structured(parse_ring_expr("Z6"));
    ASSERT_EQ(j["projections"].size(), dec.size());
    for (std::size_t k = 0; k < dec.size(); ++k) {
        EXPECT_EQ(j["projections"][k]["eigenvalue"], dec.eigenvalue(k));
        EXPECT_EQ(io::decode_rational_matrix(j["projections"][k]["matrix"]), dec.idempotents[k]);
    }
}

TEST(Cli, ClassifyAndCrosscheck)
{
    auto c = run({"classify", "Z12"});
    ASSERT_EQ(c.code, 0);
    EXPECT_EQ(c.doc()["classification"]["verdict"], "UNKNOWN");
    auto x = run({"crosscheck", "Z12"});
    ASSERT_EQ(x.code, 0);
    EXPECT_EQ(x.doc()["detector"]["label"], "computational");
    EXPECT_EQ(x.doc()["consistent"], true);
}

TEST(Cli, ScanOrderingAndFile)
{
    auto path = std::string(::testing::TempDir()) + "cayleywalk_rings.txt";
    {
        std::ofstream f(path);
        f << "# sample\nZ6\nF3 x F2\n\nZ4   # comment\nZ2\n";
    }
    auto r = run({"scan", "--rings", path, "-q"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = r.doc()["rows"];
    ASSERT_EQ(rows.size(), 4u);
    std::vector<std::string> order;
    for (auto const& row : rows) order.push_back(row["expr"]);
    EXPECT_EQ(order, (std::vector<std::string>{"Z2", "Z4", "F3 x F2", "Z6"}));
    std::remove(path.c_str());

    EXPECT_EQ(run({"scan", "--rings", "/nonexistent/rings.txt"}).code, 2);
    EXPECT_EQ(run({"scan"}).code, 2);
}
