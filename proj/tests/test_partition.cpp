#include <gtest/gtest.h>

#include <bit>

#include "gg/partition.hpp"
#include "gg/series.hpp"

using namespace gg;

namespace {

std::vector<std::int64_t> seq(int n_max, const std::function<std::int64_t(int)>& f)
{
    std::vector<std::int64_t> out;
    for (int n = 0; n <= n_max; ++n)
        out.push_back(f(n));
    return out;
}

}  // namespace

TEST(Enumerate, SmallCases)
{
    auto all = [](const Partition&) { return true; };
    EXPECT_EQ(enumerate(0, all), std::vector<Partition>{Partition{}});
    EXPECT_EQ(enumerate(4, [](const Partition& p) { return p.has_distinct_parts(); }),
              (std::vector<Partition>{Partition{1, 3}, Partition{4}}));
    EXPECT_EQ(enumerate(5, is_gollnitz_gordon), (std::vector<Partition>{Partition{1, 4}, Partition{5}}));
    EXPECT_EQ(enumerate(5, all).size(), 7u);
}

TEST(Enumerate, FilterMatchesPredicate)
{
    for (int n = 0; n <= 20; ++n)
        EXPECT_EQ(count_partitions(n, gollnitz_gordon_filter()),
                  static_cast<std::int64_t>(enumerate(n, is_gollnitz_gordon).size()))
            << n;
}

TEST(Counts, QValues)
{
    EXPECT_EQ(count_Q(1, 0), 1);
    EXPECT_EQ(count_Q(2, 4), 2);
    EXPECT_EQ(count_Q(2, 5), 2);
    EXPECT_EQ(count_Q(2, 6), 1);
    EXPECT_EQ(count_Q(0, 6), 3);
    EXPECT_EQ(seq(9, [](int n) { return count_Q(2, n); }), (std::vector<std::int64_t>{1, 1, 0, 1, 2, 2, 1, 2, 4, 4}));
    EXPECT_EQ(seq(9, [](int n) { return count_Q(0, n); }), (std::vector<std::int64_t>{1, 1, 1, 2, 1, 2, 3, 3, 4, 5}));
    EXPECT_EQ(seq(4, [](int n) { return count_Q(1, n); }), (std::vector<std::int64_t>{1, 0, 1, 1, 1}));
}

TEST(Counts, QAgainstProducts)
{
    const int o = 121;
    for (int i = 0; i < 4; ++i) {
        TruncSeries prod = TruncSeries::one(o);
        for (int r : {4, 1, 2, 3})
            if (r % 4 != i)
                prod *= poch_infinite(FactorSpec{-1, 2 * r, 0, 0, 8}, o);
        for (int n = 0; n <= 60; ++n)
            ASSERT_EQ(prod.coeff_q(n), Integer(count_Q(i, n))) << "i=" << i << " n=" << n;
    }
}

TEST(Counts, DifferenceConditionsMatchQ)
{
    EXPECT_EQ(count_thm1_side(1, 4), 1);
    EXPECT_EQ(count_Q(1, 4), 1);
    EXPECT_EQ(count_thm2_sides(1, 0), (CountPair{1, 1}));
    for (int i : {1, 3})
        for (int n = 0; n <= 40; ++n) {
            ASSERT_EQ(count_thm1_side(i, n), count_Q(i, n)) << "i=" << i << " n=" << n;
            const CountPair c = count_thm2_sides(i, n);
            ASSERT_EQ(c.first, c.second) << "i=" << i << " n=" << n;
        }
}

TEST(Chains, Examples)
{
    const std::vector<Chain> c = chains(Partition{3, 5, 8, 11, 13});
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0].parts, (std::vector<int>{3, 5}));
    EXPECT_EQ(c[1].parts, (std::vector<int>{8}));
    EXPECT_EQ(c[2].parts, (std::vector<int>{11, 13}));
    EXPECT_EQ(c[1].parity, ChainParity::even);

    const std::vector<Chain> single = chains(Partition{4});
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].parity, ChainParity::even);
}

TEST(Chains, Statistics)
{
    EXPECT_EQ(stat_t(Partition{3, 5, 8}, 8), 2);
    EXPECT_EQ(stat_s(Partition{3, 5, 8}, 3), 0);
    EXPECT_EQ(stat_t(Partition{1, 4, 7}, 7), 1);
    EXPECT_EQ(stat_s(Partition{1, 4, 7}, 7), 1);
}

TEST(Chains, ConcatenationAndMaximality)
{
    const PartitionFilter gaps{true, 1, [](std::span<const int> prefix, int next) {
                                   return prefix.empty() || next - prefix.back() >= 2;
                               }, {}};
    for (int n = 0; n <= 30; ++n)
        for_each_partition(n, gaps, [](const Partition& p) {
            std::vector<int> joined;
            for (const Chain& c : chains(p)) {
                joined.insert(joined.end(), c.parts.begin(), c.parts.end());
                EXPECT_FALSE(p.contains(c.parts.front() - 2));
                EXPECT_FALSE(p.contains(c.parts.back() + 2));
                for (int x : c.parts)
                    EXPECT_EQ(x % 2 == 0, c.parity == ChainParity::even);
            }
            EXPECT_EQ(joined, p.vec());
        });
}

TEST(Chains, GollnitzGordonIffEvenChainsAreSingletons)
{
    const PartitionFilter gaps{true, 1, [](std::span<const int> prefix, int next) {
                                   return prefix.empty() || next - prefix.back() >= 2;
                               }, {}};
    for (int n = 0; n <= 30; ++n)
        for_each_partition(n, gaps, [](const Partition& p) {
            bool singletons = true;
            for (const Chain& c : chains(p))
                if (c.parity == ChainParity::even && c.parts.size() > 1)
                    singletons = false;
            EXPECT_EQ(is_gollnitz_gordon(p), singletons) << p.to_string();
            EXPECT_TRUE(has_gaps_at_least_two(p));
        });
}

TEST(Weights, Examples)
{
    EXPECT_EQ(membership_and_weight(WeightVariant::S, Partition{5}), 2);
    EXPECT_EQ(membership_and_weight(WeightVariant::S, Partition{1, 3}), 1);
    EXPECT_FALSE(membership_and_weight(WeightVariant::S, Partition{1, 4}));
    EXPECT_EQ(weighted_count(WeightVariant::S, 0), 1);
    EXPECT_EQ(weighted_count(WeightVariant::S, 4), 2);
    EXPECT_EQ(weighted_count(WeightVariant::S, 5), 2);
}

TEST(Weights, PowerOfTwoFromChains)
{
    for (WeightVariant v : {WeightVariant::S, WeightVariant::Sstar})
        for (int n = 0; n <= 30; ++n)
            for_each_partition(n, weighted_family_filter(v), [v](const Partition& p) {
                const auto w = membership_and_weight(v, p);
                ASSERT_TRUE(w);
                EXPECT_TRUE(satisfies_parity_condition(v, p));
                int weighted = 0;
                for (const Chain& c : chains(p))
                    weighted += chain_is_weighted(v, p, c);
                EXPECT_EQ(*w, std::int64_t{1} << weighted) << p.to_string();
                EXPECT_TRUE(std::has_single_bit(static_cast<std::uint64_t>(*w)));
            });
}

TEST(Weights, WeightedCountsMatchQ2AndQ0)
{
    for (int n = 0; n <= 50; ++n) {
        ASSERT_EQ(weighted_count(WeightVariant::S, n), count_Q(2, n)) << n;
        ASSERT_EQ(weighted_count(WeightVariant::Sstar, n), count_Q(0, n)) << n;
    }
}

TEST(GAndP, Values)
{
    EXPECT_EQ(count_G(0), 1);
    EXPECT_EQ(count_P(0), 1);
    EXPECT_EQ(count_P(7), 1);
    EXPECT_EQ(count_P(8), 2);
    EXPECT_EQ(count_P(9), 1);
    EXPECT_EQ(count_G(8), 2);
    EXPECT_TRUE(is_G_partition(Partition{8}));
    EXPECT_TRUE(is_G_partition(Partition{3, 5}));
    const std::vector<std::int64_t> frozen = {1, 0, 0, 1, 1, 0, 0, 1, 2, 1, 0, 2, 3, 1, 0, 3, 5, 2, 1, 5};
    EXPECT_EQ(seq(19, count_G), frozen);
    EXPECT_EQ(seq(19, count_P), frozen);
}

TEST(GAndP, GEqualsPThroughFifty)
{
    for (int n = 0; n <= 50; ++n)
        ASSERT_EQ(count_G(n), count_P(n)) << n;
}

TEST(Residue, ParseAndFormat)
{
    const ResidueFamilyConfig cfg = ResidueFamilyConfig::parse("12:3,4,8,9:6:3");
    EXPECT_EQ(cfg.modulus(), 12);
    EXPECT_EQ(cfg.allowed(), (std::set<int>{3, 4, 8, 9}));
    EXPECT_EQ(cfg.distinct_modulus(), 6);
    EXPECT_EQ(ResidueFamilyConfig::parse(cfg.to_string()).to_string(), cfg.to_string());
    EXPECT_THROW((void)ResidueFamilyConfig::parse("12:x"), std::invalid_argument);
    EXPECT_THROW((void)ResidueFamilyConfig::parse("0:1"), std::invalid_argument);
}

TEST(Residue, Counts)
{
    const ResidueFamilyConfig p = ResidueFamilyConfig::parse("12:3,4,8,9:6:3");
    for (int n = 0; n <= 30; ++n)
        ASSERT_EQ(count_residue_family(p, n), count_P(n)) << n;
    EXPECT_EQ(count_residue_family(ResidueFamilyConfig(8, {1, 4, 7}), 4), 2);
    const ResidueFamilyConfig empty(8, {});
    EXPECT_EQ(count_residue_family(empty, 0), 1);
    for (int n = 1; n <= 10; ++n)
        EXPECT_EQ(count_residue_family(empty, n), 0);
}

TEST(Residue, GoellnitzGordonProductAgainstReciprocal)
{
    const int o = 81;
    const TruncSeries r = reciprocal(poch_infinite(FactorSpec{1, 2, 0, 0, 16}, o) *
                                     poch_infinite(FactorSpec{1, 8, 0, 0, 16}, o) *
                                     poch_infinite(FactorSpec{1, 14, 0, 0, 16}, o));
    const ResidueFamilyConfig cfg = ResidueFamilyConfig::goellnitz_gordon_product(1);
    for (int n = 0; n <= 40; ++n)
        ASSERT_EQ(r.coeff_q(n), Integer(count_residue_family(cfg, n))) << n;
}
