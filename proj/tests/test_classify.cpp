#include <gtest/gtest.h>

#include "support.hpp"

using namespace cayleywalk;

namespace {

ClassificationResult classify(std::string const& expr) { return classify_ring(parse_ring_expr(expr)); }

}  // namespace

TEST(Classify, LocalRings)
{
    EXPECT_EQ(classify("Z2").verdict, OracleVerdict::yes);
    EXPECT_EQ(classify("Z4").verdict, OracleVerdict::yes);
    EXPECT_EQ(classify("Z2[x]/(x^2)").verdict, OracleVerdict::yes);
    EXPECT_EQ(classify("Z4").basis, Basis::local_classification);
    EXPECT_EQ(classify("F3").basis, Basis::field_only_f2);
    EXPECT_EQ(classify("F4").basis, Basis::field_only_f2);
    EXPECT_EQ(classify("Z8").basis, Basis::local_ideal_too_large);
    EXPECT_EQ(classify("Z9").basis, Basis::local_ideal_too_large);
    EXPECT_EQ(classify("GR(16,4)").basis, Basis::local_ideal_too_large);
    EXPECT_EQ(classify("GR(9,3)").verdict, OracleVerdict::no);
}

TEST(Classify, ProductRules)
{
    auto z18 = classify("Z18");
    EXPECT_EQ(z18.verdict, OracleVerdict::no);
    EXPECT_EQ(z18.basis, Basis::product_ideal_too_large);

    auto z15 = classify("Z15");
    EXPECT_EQ(z15.verdict, OracleVerdict::no);
    EXPECT_EQ(z15.basis, Basis::odd_order);

    auto f5 = classify("F5 x Z2");
    EXPECT_EQ(f5.verdict, OracleVerdict::yes);
    EXPECT_EQ(f5.basis, Basis::field_times_f2);
    ASSERT_TRUE(f5.witness);
    EXPECT_EQ(f5.witness->time, ExactTime(1, 5));

    auto z12 = classify("Z12");
    EXPECT_EQ(z12.verdict, OracleVerdict::unknown);
    EXPECT_EQ(z12.basis, Basis::field_times_z4_partial);
    ASSERT_TRUE(z12.restricted_no_times);
    EXPECT_EQ(z12.restricted_no_times->lattice, 6);

    auto z30 = classify("Z30");
    EXPECT_EQ(z30.verdict, OracleVerdict::unknown);
    EXPECT_EQ(z30.basis, Basis::open_case);

    auto char2 = classify("Z4 x F8 x F2");
    EXPECT_EQ(char2.verdict, OracleVerdict::yes);
    EXPECT_EQ(char2.basis, Basis::char2_pst);

    EXPECT_EQ(classify("F4 x F2").basis, Basis::char2_pst);
    EXPECT_EQ(classify("F2 x F2").basis, Basis::char2_pst);
    EXPECT_EQ(classify("Z4 x Z4").basis, Basis::product_ideal_too_large);
}

TEST(Classify, WitnessesVerify)
{
    for (auto const& expr : {"Z2", "Z4", "Z6", "F3 x F2", "F2 x F9", "Z4 x F4", "F2 x F2 x F2", "Z2[x]/(x^2) x F2"}) {
        auto ring = parse_ring_expr(expr);
        auto res = classify_ring(ring);
        ASSERT_EQ(res.verdict, OracleVerdict::yes) << expr;
        ASSERT_TRUE(res.witness) << expr;
        auto dec = idempotents_structured(ring);
        auto d = qfr_decide(dec, res.witness->j, res.witness->l);
        ASSERT_TRUE(d.is_qfr()) << expr;
        EXPECT_TRUE(certificate_check(ring, d)) << expr;
        EXPECT_TRUE(revival_at(dec, res.witness->j, res.witness->l, res.witness->time)) << expr;
    }
}

TEST(CrossCheck, Examples)
{
    auto z6 = cross_check(parse_ring_expr("Z6"));
    EXPECT_TRUE(z6.consistent);
    EXPECT_EQ(z6.oracle.verdict, OracleVerdict::yes);
    EXPECT_EQ(z6.detector, OracleVerdict::yes);

    auto z8 = cross_check(parse_ring_expr("Z8"));
    EXPECT_TRUE(z8.consistent);
    EXPECT_EQ(z8.detector, OracleVerdict::no);

    for (auto const& expr : {"Z12", "Z20", "Z28"}) {
        auto rep = cross_check(parse_ring_expr(expr));
        EXPECT_TRUE(rep.consistent) << expr;
        EXPECT_TRUE(rep.computational()) << expr;
        EXPECT_EQ(rep.detector, OracleVerdict::no) << expr;
    }
}

TEST(CrossCheckProperties, ConsistentForEveryRingUpTo36)
{
    for (auto const& r : cwtest::rings_up_to(36)) {
        auto rep = cross_check(r);
        ASSERT_TRUE(rep.consistent) << render(r) << ": " << rep.note;
        ASSERT_TRUE(rep.all_certificates_verified) << render(r);
        if (rep.oracle.verdict == OracleVerdict::no) {
            ASSERT_EQ(rep.detector, OracleVerdict::no) << render(r);
        }
    }
}

TEST(CrossCheckProperties, OddCyclicRingsHaveNoRevival)
{
    for (std::uint64_t n = 3; n <= 27; n += 2) {
        auto r = parse_ring_expr("Z" + std::to_string(n));
        auto res = classify_ring(r);
        EXPECT_EQ(res.verdict, OracleVerdict::no) << n;
        auto rep = cross_check(r);
        EXPECT_EQ(rep.detector, OracleVerdict::no) << n;
        EXPECT_TRUE(rep.consistent) << n;
    }
}

TEST(CrossCheckProperties, FieldTimesEdgeFamily)
{
    for (std::int64_t q : {3, 5, 7, 9}) {
        auto r = parse_ring_expr("F" + std::to_string(q) + " x F2");
        auto res = classify_ring(r);
        ASSERT_EQ(res.verdict, OracleVerdict::yes);
        EXPECT_EQ(res.witness->time, ExactTime(1, q));
        auto rep = cross_check(r);
        ASSERT_TRUE(rep.consistent);
        ASSERT_NE(rep.earliest(), nullptr);
        EXPECT_EQ(rep.earliest()->certificate->minimal_time, ExactTime(1, q));
    }
}

TEST(CrossCheckProperties, RestrictedNoGoForFieldTimesZ4)
{
    for (std::int64_t q : {3, 5}) {
        for (auto const& expr : {"F" + std::to_string(q) + " x Z4", "F" + std::to_string(q) + " x Z2[x]/(x^2)"}) {
            auto r = parse_ring_expr(expr);
            auto rep = cross_check(r);
            ASSERT_TRUE(rep.oracle.restricted_no_times) << expr;
            EXPECT_EQ(rep.oracle.restricted_no_times->lattice, 2 * q);
            for (auto const& d : rep.certificates)
                EXPECT_FALSE(d.certificate->times.intersects_lattice(2 * q)) << expr;
            EXPECT_TRUE(rep.consistent) << expr;
        }
    }
}
