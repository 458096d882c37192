#include <gtest/gtest.h>

#include <random>

#include "gg/series.hpp"
#include "random_series.hpp"

using namespace gg;
using gg::testing::random_series;

namespace {

TruncSeries q_poly(std::vector<int> coeffs, int order2)
{
    std::vector<Term> t;
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        t.push_back(Term{Exponent{2 * static_cast<int>(n), 0, 0}, Integer(coeffs[n])});
    return TruncSeries::from_terms(order2, std::move(t));
}

std::vector<Integer> q_coeffs(const TruncSeries& s, int n_max)
{
    std::vector<Integer> out;
    for (int n = 0; n <= n_max; ++n)
        out.push_back(s.coeff_q(n));
    return out;
}

std::vector<Integer> ints(std::initializer_list<int> v)
{
    return {v.begin(), v.end()};
}

}  // namespace

TEST(Integer, PromotesPastInt64AndBack)
{
    Integer a(std::numeric_limits<std::int64_t>::max());
    a += 1;
    EXPECT_FALSE(a.is_small());
    EXPECT_EQ(a.to_string(), "9223372036854775808");
    a -= 1;
    EXPECT_TRUE(a.is_small());
    EXPECT_EQ(a, Integer(std::numeric_limits<std::int64_t>::max()));
}

TEST(Integer, MultiplicationOverflowIsExact)
{
    Integer a(std::int64_t{1} << 40);
    const Integer sq = a * a;
    EXPECT_EQ(sq.to_string(), "1208925819614629174706176");
    EXPECT_THROW((void)sq.to_int64(), std::overflow_error);
    EXPECT_EQ(Integer(std::string_view("-1208925819614629174706176")), -sq);
    Integer acc(0);
    acc.add_product(a, a);
    acc.add_product(-a, a);
    EXPECT_TRUE(acc.is_zero());
}

TEST(Integer, MinInt64Negation)
{
    Integer m(std::numeric_limits<std::int64_t>::min());
    m.negate();
    EXPECT_EQ(m.to_string(), "9223372036854775808");
}

TEST(Series, Monomials)
{
    EXPECT_EQ(TruncSeries::monomial(1, 0, 0, 0, 10), TruncSeries::one(10));
    const TruncSeries s = TruncSeries::monomial(3, 2, 1, 0, 10);
    EXPECT_EQ(s.size(), 1u);
    EXPECT_EQ(s.coeff(2, 1, 0), Integer(3));
    EXPECT_TRUE(TruncSeries::monomial(1, 50, 0, 0, 40).is_zero());
}

TEST(Series, SmallProducts)
{
    const TruncSeries a = q_poly({1, 1}, 20);
    const TruncSeries b = q_poly({1, -1}, 20);
    EXPECT_EQ(a * b, q_poly({1, 0, -1}, 20));

    const TruncSeries root = TruncSeries::monomial(1, 1, 0, 0, 20);
    EXPECT_EQ(root * root, TruncSeries::monomial(1, 2, 0, 0, 20));

    const TruncSeries c = q_poly({1, 0, 0, 1}, 12);
    EXPECT_EQ(c * c, q_poly({1, 0, 0, 2}, 12));
}

TEST(Series, BinaryOpsUseTheSmallerOrder)
{
    const TruncSeries a = q_poly({1, 1, 1, 1}, 8);
    const TruncSeries b = q_poly({1, 1}, 4);
    EXPECT_EQ((a + b).order2(), 4);
    EXPECT_EQ((a * b).order2(), 4);
}

TEST(Series, FinitePochhammer)
{
    EXPECT_EQ(poch_finite(FactorSpec{1, 2, 0, 0, 2}, 2, 30), q_poly({1, -1, -1, 1}, 30));
    EXPECT_EQ(poch_finite(FactorSpec{-1, 2, 0, 0, 4}, 2, 30), q_poly({1, 1, 0, 1, 1}, 30));
    const TruncSeries zq = poch_finite(FactorSpec{-1, 2, 1, 0, 4}, 1, 30);
    EXPECT_EQ(zq, TruncSeries::one(30) + TruncSeries::monomial(1, 2, 1, 0, 30));
    EXPECT_EQ(poch_finite(FactorSpec{1, 2, 0, 0, 2}, 0, 30), TruncSeries::one(30));
}

TEST(Series, InfinitePochhammer)
{
    EXPECT_EQ(poch_infinite(FactorSpec{1, 2, 0, 0, 2}, 13), q_poly({1, -1, -1, 0, 0, 1, 0}, 13));
    EXPECT_EQ(poch_infinite(FactorSpec{-1, 8, 0, 0, 8}, 17), q_poly({1, 0, 0, 0, 1, 0, 0, 0, 1}, 17));
    EXPECT_EQ(poch_infinite(FactorSpec{1, 2, 0, 0, 2}, 2), q_poly({1}, 2));
    EXPECT_EQ(poch_infinite(FactorSpec{1, 2, 0, 0, 2}, 3), q_poly({1, -1}, 3));
}

TEST(Series, Reciprocals)
{
    EXPECT_EQ(reciprocal(q_poly({1, -1}, 7)), q_poly({1, 1, 1, 1}, 7));
    const TruncSeries p = reciprocal(poch_infinite(FactorSpec{1, 2, 0, 0, 2}, 13));
    EXPECT_EQ(q_coeffs(p, 6), ints({1, 1, 2, 3, 5, 7, 11}));

    const TruncSeries s = poch_finite(FactorSpec{-1, 2, 0, 0, 4}, 3, 40);
    EXPECT_EQ(reciprocal(reciprocal(s)), s);
    EXPECT_THROW((void)reciprocal(q_poly({2, 1}, 10)), std::domain_error);
}

TEST(Series, ReciprocalWithZ)
{
    const TruncSeries s = poch_finite(FactorSpec{-1, 2, 1, 0, 4}, 3, 30) * poch_finite(FactorSpec{1, 4, 0, 1, 4}, 2, 30);
    EXPECT_EQ(s * reciprocal(s), TruncSeries::one(30));
}

TEST(Series, JacobiAtOne)
{
    const TruncSeries theta = jacobi_theta(ZSpec{1, 0, 0, 0}, 20);
    EXPECT_EQ(theta, q_poly({1, 2, 0, 0, 2, 0, 0, 0, 0, 2}, 20));
}

TEST(Series, JacobiAtMinusOneAgainstProduct)
{
    const int o = 81;
    const TruncSeries sum = jacobi_theta(ZSpec{-1, 0, 0, 0}, o);
    const TruncSeries odd = poch_infinite(FactorSpec{1, 2, 0, 0, 4}, o);
    EXPECT_EQ(sum, poch_infinite(FactorSpec{1, 4, 0, 0, 4}, o) * odd * odd);
}

TEST(Series, JacobiOrderOne)
{
    const ThetaSides s = jacobi_sides(ZSpec{1, 0, 0, 0}, 1);
    EXPECT_EQ(s.sum.coeff(0), Integer(1));
    EXPECT_EQ(s.product.coeff(0), Integer(1));
}

TEST(Series, JacobiSpecializations)
{
    for (const ZSpec z : {ZSpec{1, 0, 0, 0}, ZSpec{-1, 0, 0, 0}, ZSpec{1, 2, 0, 0}, ZSpec{1, 6, 0, 0}})
        EXPECT_TRUE(jacobi_check(z, 121)) << z.sign << " q^" << z.e2 << "/2";
    EXPECT_THROW((void)jacobi_theta(ZSpec{1, 6, 0, 0}, 20), std::domain_error);
}

TEST(Series, FirstMismatchReportsLowestExponent)
{
    const TruncSeries a = q_poly({1, 2, 3, 4}, 10);
    const TruncSeries b = a.with_coeff_added(Exponent{4, 0, 0}, Integer(5)).with_coeff_added(Exponent{6, 0, 0}, 1);
    const auto mm = first_mismatch(a, b);
    ASSERT_TRUE(mm);
    EXPECT_EQ(mm->exp.e2, 4);
    EXPECT_EQ(mm->expected, Integer(3));
    EXPECT_EQ(mm->got, Integer(8));
    EXPECT_FALSE(first_mismatch(a, a));
}

TEST(Series, EvaluateAndSlice)
{
    const TruncSeries s = TruncSeries::monomial(2, 2, 1, 0, 20) + TruncSeries::monomial(3, 2, 0, 2, 20);
    EXPECT_EQ(s.evaluate_z(1).evaluate_w(1), TruncSeries::monomial(5, 2, 0, 0, 20));
    EXPECT_EQ(s.evaluate_z(-1).evaluate_w(-1), TruncSeries::monomial(1, 2, 0, 0, 20));
    EXPECT_EQ(s.w_slice(2), TruncSeries::monomial(3, 2, 0, 0, 20));
    EXPECT_EQ(q_poly({1, 1}, 10).base_scaled(2), q_poly({1, 0, 1}, 20));
}

TEST(Series, Stabilization)
{
    const TruncSeries target = q_poly({1, 1, 1, 1, 1}, 9);
    auto partial = [](int n) {
        std::vector<int> c(static_cast<std::size_t>(std::min(n, 5)), 1);
        return q_poly(c, 9);
    };
    EXPECT_EQ(find_stabilization(partial, target, 0, 20), 5);
    EXPECT_FALSE(find_stabilization(partial, target, 0, 4));
}

// ---------------------------------------------------------------------------
// properties

class SeriesRing : public ::testing::TestWithParam<int> {};

TEST_P(SeriesRing, Laws)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()));
    const int o = 24;
    const TruncSeries a = random_series(rng, o);
    const TruncSeries b = random_series(rng, o);
    const TruncSeries c = random_series(rng, o);
    const TruncSeries zero(o);
    const TruncSeries one = TruncSeries::one(o);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + zero, a);
    EXPECT_EQ(a * one, a);
    EXPECT_TRUE((a * zero).is_zero());
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(-(-a), a);
    const TruncSeries abc = a * b + c;
    for (std::size_t i = 0; i < abc.size(); ++i) {
        const Term& t = abc.terms()[i];
        EXPECT_FALSE(t.coeff.is_zero());
        EXPECT_LT(t.exp.e2, o);
        if (i > 0)
            EXPECT_LT(abc.terms()[i - 1].exp, t.exp);
    }
}

TEST_P(SeriesRing, TruncationCoherence)
{
    std::mt19937 rng(static_cast<unsigned>(GetParam()) + 1000u);
    const int m = 16;
    const TruncSeries a = random_series(rng, 2 * m);
    const TruncSeries b = random_series(rng, 2 * m);
    const TruncSeries am = a.truncated(m);
    const TruncSeries bm = b.truncated(m);
    EXPECT_EQ((a + b).truncated(m), am + bm);
    EXPECT_EQ((a - b).truncated(m), am - bm);
    EXPECT_EQ((a * b).truncated(m), am * bm);
    EXPECT_EQ(a.base_scaled(2).truncated(m), am.base_scaled(2).truncated(m));
    EXPECT_EQ(a.times_monomial(3, 1, 0).truncated(m), am.times_monomial(3, 1, 0));

    const TruncSeries u = TruncSeries::one(2 * m) + a.evaluate_z(1).evaluate_w(-1).times_monomial(1);
    EXPECT_EQ(reciprocal(u).truncated(m), reciprocal(u.truncated(m)));
    EXPECT_EQ(u * reciprocal(u), TruncSeries::one(2 * m));
}

INSTANTIATE_TEST_SUITE_P(Seeds, SeriesRing, ::testing::Range(1, 41));

TEST(SeriesProperty, PochhammerCoherence)
{
    const int o = 60;
    const std::vector<FactorSpec> specs = {
        {1, 2, 0, 0, 2}, {-1, 1, 0, 0, 2}, {-1, 2, 1, 0, 4}, {1, 8, 0, 1, 8}, {-1, 6, 1, 1, 4}};
    for (const FactorSpec& f : specs) {
        for (int n = 0; n <= 10; ++n) {
            const TruncSeries single =
                TruncSeries::one(o) -
                TruncSeries::monomial(Integer(f.sign), f.e2 + n * f.step2, f.dz, f.dw, o);
            EXPECT_EQ(poch_finite(f, n + 1, o), poch_finite(f, n, o) * single) << "n=" << n;
            EXPECT_EQ(poch_finite(f, n, 2 * o).truncated(o), poch_finite(f, n, o));
        }
        EXPECT_EQ(poch_infinite(f, 2 * o).truncated(o), poch_infinite(f, o));
        EXPECT_EQ(poch_finite(f, o, o), poch_infinite(f, o));
    }
}

TEST(SeriesProperty, JacobiThroughSixty)
{
    for (const ZSpec z : {ZSpec{1, 0, 0, 0}, ZSpec{-1, 0, 0, 0}, ZSpec{1, 2, 0, 0}, ZSpec{1, 6, 0, 0}}) {
        const ThetaSides s = jacobi_sides(z, 121);
        EXPECT_FALSE(first_mismatch(s.product, s.sum));
    }
}
