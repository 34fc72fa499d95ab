#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace cayleywalk;

namespace {

CycloElement random_element(std::uint64_t order)
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    RatPoly c(CycloElement::degree_of(order));
    for (auto& x : c) {
        x = Rational(num(cwtest::rng()), den(cwtest::rng()));
        x.canonicalize();
    }
    return CycloElement::from_coeffs(order, std::move(c));
}

// Random divisor of `modulus`, so mixed orders lift to at most Q(zeta_modulus).
std::uint64_t random_order(std::uint64_t modulus)
{
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t d = 1; d <= modulus; ++d)
        if (modulus % d == 0) divisors.push_back(d);
    std::uniform_int_distribution<std::size_t> pick(0, divisors.size() - 1);
    return divisors[pick(cwtest::rng())];
}

void expect_close(std::complex<double> a, std::complex<double> b, double scale = 1.0)
{
    EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, scale)) << a << " vs " << b;
}

}  // namespace

TEST(CyclotomicPoly, KnownValues)
{
    EXPECT_EQ(cyclotomic_poly(1), (IntPoly{-1, 1}));
    EXPECT_EQ(cyclotomic_poly(2), (IntPoly{1, 1}));
    EXPECT_EQ(cyclotomic_poly(3), (IntPoly{1, 1, 1}));
    EXPECT_EQ(cyclotomic_poly(4), (IntPoly{1, 0, 1}));
    EXPECT_EQ(cyclotomic_poly(12), (IntPoly{1, 0, -1, 0, 1}));
    // Phi_105 is the first with a coefficient -2.
    auto const& p105 = cyclotomic_poly(105);
    EXPECT_NE(std::find(p105.begin(), p105.end(), Integer(-2)), p105.end());
}

TEST(CyclotomicPoly, DegreeIsTotient)
{
    for (std::uint64_t n = 1; n <= 200; ++n) ASSERT_EQ(CycloElement::degree_of(n), nt::totient(n)) << n;
}

TEST(CyclotomicPoly, ProductOverDivisorsIsXnMinusOne)
{
    for (std::uint64_t n = 1; n <= 200; ++n) {
        IntPoly prod{1};
        for (auto d : nt::divisors(n)) prod = detail::multiply(prod, cyclotomic_poly(d));
        IntPoly expect(n + 1, Integer(0));
        expect[0] = -1;
        expect[n] = 1;
        ASSERT_EQ(prod, expect) << "n = " << n;
    }
}

TEST(CycloElement, RootsOfUnityHaveModulusOne)
{
    for (std::uint64_t n = 1; n <= 100; ++n)
        for (std::uint64_t k = 0; k < n; ++k) {
            auto z = root_of_unity(n, static_cast<std::int64_t>(k));
            ASSERT_EQ(abs_squared(z), CycloElement(1)) << "zeta_" << n << "^" << k;
            expect_close(z.to_complex(), std::polar(1.0, 2 * std::numbers::pi * double(k) / double(n)));
        }
}

TEST(CycloElement, PowersWrapAround)
{
    auto z = root_of_unity(12, 1);
    CycloElement acc(1);
    for (int k = 0; k < 12; ++k) acc *= z;
    EXPECT_EQ(acc, CycloElement(1));
    EXPECT_EQ(root_of_unity(12, -1), root_of_unity(12, 11));
    EXPECT_EQ(root_of_unity(12, 4), root_of_unity(3, 1));
    EXPECT_EQ(root_of_unity(2, 1), CycloElement(-1));
}

TEST(CycloElement, SumOfPrimitiveRootsIsMoebius)
{
    // Ramanujan c_n(1) = mu(n).
    EXPECT_EQ(root_of_unity(6, 1) + root_of_unity(6, 5), CycloElement(1));
    EXPECT_EQ(root_of_unity(3, 1) + root_of_unity(3, 2), CycloElement(-1));
    EXPECT_EQ(root_of_unity(4, 1) + root_of_unity(4, 3), CycloElement(0));
}

TEST(CycloElement, MixedOrdersLiftToLcm)
{
    auto s = root_of_unity(4, 1) + root_of_unity(6, 1);
    EXPECT_EQ(s.order(), 12u);
    expect_close(s.to_complex(), std::complex<double>(0, 1) + std::polar(1.0, std::numbers::pi / 3));
}

TEST(CycloElement, HalfDifferenceOfCubeRoots)
{
    // (zeta_3^2 - zeta_3)/2 = -i sqrt(3)/2
    auto b = (root_of_unity(3, 2) - root_of_unity(3, 1)) * CycloElement(Rational(1, 2));
    expect_close(b.to_complex(), {0, -std::sqrt(3.0) / 2});
    EXPECT_EQ(abs_squared(b), CycloElement(Rational(3, 4)));
}

TEST(CycloElement, DivisionByZeroThrows)
{
    EXPECT_THROW(CycloElement(0).inverse(), DivisionByZero);
    EXPECT_THROW(root_of_unity(5, 1) / (root_of_unity(5, 2) - root_of_unity(5, 2)), DivisionByZero);
    EXPECT_THROW(CycloElement::from_coeffs(5, RatPoly(3)), std::invalid_argument);
}

TEST(CycloElementProperties, FloatImageIsAHomomorphism)
{
    for (int i = 0; i < 400; ++i) {
        auto n1 = random_order(360), n2 = random_order(360);
        auto a = random_element(n1), b = random_element(n2);
        auto fa = a.to_complex(), fb = b.to_complex();
        auto scale = (std::abs(fa) + 1) * (std::abs(fb) + 1) * 50;
        expect_close((a + b).to_complex(), fa + fb, scale);
        expect_close((a - b).to_complex(), fa - fb, scale);
        expect_close((a * b).to_complex(), fa * fb, scale);
        expect_close(a.conj().to_complex(), std::conj(fa), scale);
        if (!b.is_zero() && std::abs(fb) > 1e-3)
            expect_close((a / b).to_complex(), fa / fb, scale / std::abs(fb) * (1 + 1 / std::abs(fb)));
    }
}

TEST(CycloElementProperties, FieldAxiomsExactly)
{
    for (int i = 0; i < 150; ++i) {
        auto a = random_element(random_order(72));
        auto b = random_element(random_order(72));
        auto c = random_element(random_order(72));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a - a, CycloElement(0));
        if (!a.is_zero()) {
            ASSERT_EQ(a * a.inverse(), CycloElement(1));
        }
    }
}

TEST(CycloElementProperties, Conjugation)
{
    for (int i = 0; i < 200; ++i) {
        auto a = random_element(random_order(240));
        auto b = random_element(random_order(240));
        ASSERT_EQ(a.conj().conj(), a);
        ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
        ASSERT_EQ((a + b).conj(), a.conj() + b.conj());
        auto re = a + a.conj();
        ASSERT_EQ(re.conj(), re);
        ASSERT_NEAR(re.to_complex().imag(), 0.0, 1e-9);
        auto n = abs_squared(a);
        ASSERT_GE(n.to_complex().real(), -1e-9);
    }
}

TEST(CycloElement, RationalDetection)
{
    EXPECT_TRUE(CycloElement(Rational(-1, 2), 3).is_rational());
    EXPECT_FALSE(root_of_unity(3, 1).is_rational());
    EXPECT_TRUE((root_of_unity(8, 1) * root_of_unity(8, 7)).is_rational());
    EXPECT_EQ((root_of_unity(3, 1) + root_of_unity(3, 2)).rational_part(), Rational(-1));
}

TEST(CycloElement, ToStringFormat)
{
    EXPECT_EQ(CycloElement(0).to_string(), "0");
    EXPECT_EQ(CycloElement(Rational(-1, 2)).to_string(), "-1/2");
    auto beta = (root_of_unity(3, 2) - root_of_unity(3, 1)) * CycloElement(Rational(1, 2));
    EXPECT_EQ(beta.to_string(), "-1/2 - z3");
    EXPECT_EQ((root_of_unity(12, 5) * CycloElement(Rational(3, 2))).to_string(), "-3/2*z12 + 3/2*z12^3");
    EXPECT_EQ(root_of_unity(5, 3).to_string(), "z5^3");
}
