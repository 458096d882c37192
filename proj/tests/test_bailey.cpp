#include <gtest/gtest.h>

#include "gg/bailey.hpp"

using namespace gg;

namespace {

TruncSeries q_poly(std::vector<int> coeffs, int order2)
{
    std::vector<Term> t;
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        t.push_back(Term{Exponent{2 * static_cast<int>(n), 0, 0}, Integer(coeffs[n])});
    return TruncSeries::from_terms(order2, std::move(t));
}

TruncSeries inv_poch(FactorSpec f, int n, int order2)
{
    return reciprocal(poch_finite(f, n, order2));
}

}  // namespace

TEST(Seed, Terms)
{
    const BaileyPair p = seed_E4(3, 40);
    EXPECT_EQ(p.alpha[0], TruncSeries::one(40));
    EXPECT_EQ(p.alpha[1], q_poly({-1, 0, -1}, 40));
    EXPECT_EQ(p.beta[0], TruncSeries::one(40));
    EXPECT_EQ(p.beta[2], inv_poch(FactorSpec{1, 4, 0, 0, 4}, 2, 40).times_monomial(4));
    // q/(1-q^2)
    EXPECT_EQ(p.beta[1], q_poly({0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1}, 40));
}

TEST(Seed, IsAPair)
{
    EXPECT_TRUE(verify_pair(seed_E4(6, 80)));
}

TEST(Seed, PerturbationIsCaught)
{
    BaileyPair p = seed_E4(4, 40);
    p.beta[1] += TruncSeries::monomial(1, 2, 0, 0, 40);
    const auto mm = pair_mismatch(p);
    ASSERT_TRUE(mm);
    EXPECT_EQ(mm->n, 1);
    EXPECT_EQ(mm->mismatch.exp.e2, 2);
}

TEST(Step, Alpha)
{
    const BaileyPair s = step(seed_E4(3, 40));
    EXPECT_EQ(s.alpha[0], TruncSeries::one(40));
    EXPECT_EQ(s.alpha[1], -(TruncSeries::monomial(1, 1, 0, 0, 40) + TruncSeries::monomial(1, 5, 0, 0, 40)));
    const BaileyPair seed = seed_E4(3, 40);
    EXPECT_EQ(iterate_closed(seed, 3).alpha[2], seed.alpha[2].times_monomial(12));
}

TEST(Step, PreservesThePairRelation)
{
    BaileyPair p = seed_E4(5, 60);
    for (int k = 1; k <= 4; ++k) {
        p = step(p);
        EXPECT_TRUE(verify_pair(p)) << k;
        EXPECT_TRUE(verify_pair(iterate_closed(seed_E4(4, 80), k))) << k;
    }
}

TEST(Step, ClosedFormMatchesIteration)
{
    const BaileyPair seed = seed_E4(4, 80);
    EXPECT_EQ(iterate_closed(seed, 1).beta, step(seed).beta);
    BaileyPair iterated = seed;
    for (int k = 1; k <= 4; ++k) {
        iterated = step(iterated);
        const BaileyPair closed = iterate_closed(seed, k);
        for (int n = 0; n <= 4; ++n) {
            EXPECT_EQ(closed.alpha[static_cast<std::size_t>(n)], iterated.alpha[static_cast<std::size_t>(n)]);
            EXPECT_EQ(closed.beta[static_cast<std::size_t>(n)], iterated.beta[static_cast<std::size_t>(n)]) << k << "," << n;
        }
    }
}

TEST(FiniteIdentity, SmallCases)
{
    for (int k = 1; k <= 3; ++k) {
        const SeriesSides s = finite_bailey_sides(0, k, 40);
        EXPECT_EQ(s.lhs, TruncSeries::one(40));
        EXPECT_EQ(s.rhs, TruncSeries::one(40));
    }
    EXPECT_TRUE(finite_bailey_identity(1, 1, 60));
    EXPECT_TRUE(finite_bailey_identity(3, 2, 80));
}

TEST(FiniteIdentity, Grid)
{
    for (int k = 1; k <= 3; ++k)
        for (int n = 0; n <= 6; ++n) {
            const SeriesSides s = finite_bailey_sides(n, k, 80);
            EXPECT_FALSE(first_mismatch(s.rhs, s.lhs)) << "n=" << n << " k=" << k;
        }
}

TEST(Binomial, Values)
{
    EXPECT_EQ(gaussian_binomial(4, 2, 2, 20), q_poly({1, 1, 2, 1, 1}, 20));
    EXPECT_EQ(gaussian_binomial(7, 0, 2, 20), TruncSeries::one(20));
    EXPECT_TRUE(gaussian_binomial(3, 5, 2, 20).is_zero());
}

TEST(Binomial, SymmetryAndPascal)
{
    const int o = 200;
    for (int n = 0; n <= 12; ++n)
        for (int m = 0; m + n <= 12; ++m) {
            EXPECT_EQ(gaussian_binomial(n + m, n, 2, o), gaussian_binomial(n + m, m, 2, o));
            if (n >= 1 && m >= 1) {
                // [N, k] = [N-1, k-1] + q^k [N-1, k]
                const int N = n + m;
                EXPECT_EQ(gaussian_binomial(N, n, 2, o),
                          gaussian_binomial(N - 1, n - 1, 2, o) + gaussian_binomial(N - 1, n, 2, o).times_monomial(2 * n));
            }
        }
}

TEST(Binomial, Limits)
{
    for (int m = 0; m <= 4; ++m)
        EXPECT_TRUE(binomial_limit_m(m, 81)) << m;
    for (int j = -2; j <= 2; ++j)
        EXPECT_TRUE(binomial_limit_centre(j, 81)) << j;
    EXPECT_EQ(binomial_limit_m(3, 40), 22);
    EXPECT_EQ(binomial_limit_centre(2, 40), 21);
}

TEST(Hierarchy, FirstCoefficients)
{
    EXPECT_EQ(hierarchy_sum(1, 20), q_poly({1, 0, 0, 1, 1, 0, 0, 1, 2, 1}, 20));
    for (int k = 1; k <= 6; ++k)
        EXPECT_EQ(hierarchy_sum(k, 41).coeff(0), Integer(1));
}

TEST(Hierarchy, ProductForms)
{
    for (int k = 1; k <= 6; ++k) {
        const TruncSeries sum = hierarchy_sum(k, 121);
        EXPECT_EQ(sum, hierarchy_product(k, 121)) << k;
        EXPECT_EQ(sum, hierarchy_product_alt(k, 121)) << k;
    }
}

TEST(Hierarchy, FiniteSumApproachesTheLimit)
{
    const int o = 41;
    const TruncSeries target = hierarchy_sum(2, o);
    const auto n = find_stabilization([&](int m) { return normalized_finite_sum(m, 2, o); }, target, 0, 30);
    ASSERT_TRUE(n);
    EXPECT_LE(*n, 12);
}

TEST(MultiIndex, Enumeration)
{
    int count = 0;
    for_each_multi_index(2, 2, [&](const MultiIndex& m) {
        ++count;
        EXPECT_EQ(m.N[0], m.n[0] + m.n[1]);
        EXPECT_LE(m.N[0], 2);
    });
    EXPECT_EQ(count, 6);
    EXPECT_THROW(for_each_multi_index(0, 2, [](const MultiIndex&) {}), std::invalid_argument);
}
