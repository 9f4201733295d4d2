#include <gtest/gtest.h>

#include "icx/brute.hpp"
#include "icx/fast.hpp"

using namespace icx;

TEST(Fast, EqualsBruteForce)
{
    for (std::uint64_t n : {100, 5000, 20000}) EXPECT_EQ(fast_complexity(n), brute_complexity(n)) << n;
}

TEST(Fast, Trivial)
{
    const ComplexityTable t = fast_complexity(1);
    EXPECT_EQ(t.n_max(), 1u);
    EXPECT_EQ(t[1], 1);
    EXPECT_THROW(fast_complexity(0), std::invalid_argument);
}

TEST(Fast, PowerOfThree)
{
    const ComplexityTable t = fast_complexity(1000000);
    EXPECT_EQ(t[531441], 36); // 3^12
}

TEST(Fast, PrefixStable)
{
    const ComplexityTable big = fast_complexity(30000);
    for (std::uint64_t m : {1, 2, 7, 300, 4096, 29999}) {
        const ComplexityTable small = fast_complexity(m);
        ASSERT_TRUE(std::equal(small.values().begin(), small.values().end(), big.values().begin())) << m;
    }
}

TEST(Fast, EntriesExactUpToCurrentNAndUpperBoundsBeyond)
{
    const std::uint64_t n_max = 3000;
    const ComplexityTable truth = brute_complexity(n_max);
    std::uint64_t steps = 0;
    fast_complexity(n_max, solids_for(n_max), nullptr, [&](std::uint64_t n, const ComplexityTable& c) {
        ++steps;
        for (std::uint64_t i = 1; i <= n; ++i) ASSERT_EQ(c[i], truth[i]) << "step " << n;
        for (std::uint64_t i = n + 1; i <= n_max; ++i) ASSERT_GE(c[i], truth[i]) << "step " << n;
    });
    EXPECT_EQ(steps, n_max);
}

TEST(Fast, ShortSolidListIsAHardFault)
{
    EXPECT_THROW(fast_complexity(1000, SolidList(1, {1})), invariant_error);
}

TEST(OpCounter, Monotone)
{
    EXPECT_EQ(op_counter(1), 0u);
    EXPECT_EQ(op_counter(2), 0u); // no solid summand and no factor pair yet
    std::uint64_t prev = 0;
    for (std::uint64_t n : {10, 100, 1000, 10000, 50000}) {
        const std::uint64_t ops = op_counter(n);
        EXPECT_GT(ops, prev) << n;
        prev = ops;
    }
}

TEST(OpCounter, SplitsSumsAndProducts)
{
    FastCounters c;
    fast_complexity(20000, &c);
    EXPECT_GT(c.sum_tests, 0u);
    EXPECT_GT(c.product_tests, 0u);
    EXPECT_EQ(c.relaxations(), op_counter(20000));
    EXPECT_LT(c.max_kmax, kmax_bound(20000));
}
