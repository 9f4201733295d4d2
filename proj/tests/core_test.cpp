#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "icx/brute.hpp"
#include "icx/core.hpp"
#include "icx/fast.hpp"
#include "oracle.hpp"

using namespace icx;
using boost::multiprecision::cpp_int;
using boost::multiprecision::pow;

TEST(EOf, ClosedFormValues)
{
    EXPECT_EQ(e_of(0), 1);
    EXPECT_EQ(e_of(5), 6);
    EXPECT_EQ(e_of(7), 12);
    EXPECT_EQ(e_of(6), 9);
    EXPECT_EQ(e_of(1), 1);
    EXPECT_EQ(e_of(4), 4);
}

TEST(EOf, MatchesClosedFormAndPowerOfThreeBounds)
{
    for (unsigned k = 0; k <= 120; ++k) {
        const cpp_int e = e_of(k);
        EXPECT_EQ(e, oracle::e_exact(k)) << k;
        if (k > 0) {
            EXPECT_GE(e, e_of(k - 1)) << k;
        }
        // 3^((k-1)/3) <= E(k) <= 3^(k/3), cubed to stay in integers
        const cpp_int cube = e * e * e;
        if (k >= 1) {
            EXPECT_LE(pow(cpp_int(3), k - 1), cube) << k;
        }
        EXPECT_LE(cube, pow(cpp_int(3), k)) << k;
    }
}

TEST(EOf, UnboundedForLargeK)
{
    EXPECT_EQ(e_of(300), pow(cpp_int(3), 100));
    EXPECT_GT(e_of(300), cpp_int(std::numeric_limits<std::uint64_t>::max()));
}

TEST(KmaxFor, SmallCases)
{
    const ComplexityTable t = brute_complexity(100);
    EXPECT_EQ(t[9], 6);
    EXPECT_EQ(kmax_for(10, t[9]), 1u);
    EXPECT_EQ(kmax_for(24, t[23]), 2u);
    EXPECT_EQ(kmax_for(2, t[1]), 1u);
    EXPECT_EQ(kmax_for(48, t[47]), 2u);
}

TEST(KmaxFor, RejectsBadInput)
{
    EXPECT_THROW(kmax_for(1, 1), std::invalid_argument);
    EXPECT_THROW(kmax_for(10, 256), std::invalid_argument);
}

TEST(KmaxFor, AgreesWithUnboundedIntegerLoop)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> pick_n(2, std::uint64_t(1) << 62);
    std::uniform_int_distribution<unsigned> pick_t(0, 255);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t n = i < 500 ? 2 + static_cast<std::uint64_t>(i) : pick_n(rng);
        const unsigned target = pick_t(rng);
        const cpp_int want = oracle::kmax_exact(n, target);
        const std::uint64_t got = kmax_for(n, target);
        if (want > std::numeric_limits<std::uint64_t>::max())
            EXPECT_EQ(got, std::numeric_limits<std::uint64_t>::max());
        else
            EXPECT_EQ(cpp_int(got), want) << n << " " << target;
    }
}

TEST(KmaxFor, BelowTwoNToTheBeta)
{
    const ComplexityTable t = fast_complexity(100000);
    const double exact_beta = std::log(3.0) / std::log(2.0) - 1.0;
    for (std::uint64_t n = 2; n <= 100000; ++n) {
        const double bound = 2.0 * std::pow(static_cast<double>(n), exact_beta);
        ASSERT_LE(static_cast<double>(kmax_for(n, t[n - 1])), bound) << n;
        ASSERT_LT(kmax_for(n, t[n - 1]), kmax_bound(n)) << n;
    }
}

TEST(KmaxFor, RestrictedSumMinimumIsTheFullMinimum)
{
    const ComplexityTable t = brute_complexity(5000);
    for (std::uint64_t n = 2; n <= 5000; ++n) {
        unsigned all = ~0u, restricted = ~0u;
        const std::uint64_t kmax = kmax_for(n, t[n - 1]);
        for (std::uint64_t k = 1; k <= n / 2; ++k) {
            const unsigned v = unsigned(t[k]) + t[n - k];
            all = std::min(all, v);
            if (k <= kmax) restricted = std::min(restricted, v);
        }
        ASSERT_EQ(restricted, all) << n;
    }
}

TEST(SolidNumbers, Prefix)
{
    const ComplexityTable t = brute_complexity(100);
    EXPECT_EQ(solid_numbers(12, t).members(), (std::vector<std::uint64_t>{1, 6, 8, 9, 12}));
    EXPECT_EQ(solid_numbers(1, t).members(), (std::vector<std::uint64_t>{1}));
    // frozen from the split test over the exhaustive expression-tree oracle
    EXPECT_EQ(solid_numbers(30, t).members(),
              (std::vector<std::uint64_t>{1, 6, 8, 9, 12, 14, 15, 16, 18, 20, 21, 24, 26, 27, 30}));
}

TEST(SolidNumbers, MatchesExhaustiveOracle)
{
    const auto ex = oracle::exhaustive_complexities(400);
    std::vector<std::uint64_t> want;
    for (std::uint64_t b = 1; b <= 400; ++b) {
        bool solid = true;
        for (std::uint64_t u = 1; u < b; ++u) solid = solid && ex[u] + ex[b - u] > ex[b];
        if (solid) want.push_back(b);
    }
    EXPECT_EQ(solid_numbers(400, brute_complexity(400)).members(), want);
}

TEST(SolidNumbers, NothingBetweenOneAndSix)
{
    const SolidList s = solid_numbers(2000, brute_complexity(2000));
    ASSERT_GE(s.size(), 2u);
    EXPECT_EQ(s[0], 1u);
    for (std::size_t i = 1; i < s.size(); ++i) {
        EXPECT_GE(s[i], 6u);
        EXPECT_GT(s[i], s[i - 1]);
    }
}

TEST(SolidNumbers, RejectsLimitBeyondTable)
{
    EXPECT_THROW(solid_numbers(101, brute_complexity(100)), std::invalid_argument);
    EXPECT_THROW(solid_numbers(0, brute_complexity(100)), std::invalid_argument);
}

TEST(SolidList, OverrunIsAHardFault)
{
    const SolidList s = solid_numbers(12, brute_complexity(12));
    std::vector<std::uint64_t> seen;
    s.for_each_up_to(9, [&](std::uint64_t b) { seen.push_back(b); });
    EXPECT_EQ(seen, (std::vector<std::uint64_t>{1, 6, 8, 9}));
    EXPECT_THROW(s.for_each_up_to(13, [](std::uint64_t) {}), invariant_error);
}

TEST(Ceiling, Basics)
{
    EXPECT_EQ(ceiling(10, 5), 2u);
    EXPECT_EQ(ceiling(11, 5), 3u);
    EXPECT_EQ(ceiling(0, 3), 0u);
    EXPECT_THROW(ceiling(1, 0), std::invalid_argument);
}

TEST(ComplexityTable, Access)
{
    ComplexityTable t(5, 9);
    t[1] = 1;
    EXPECT_EQ(t.n_max(), 5u);
    EXPECT_EQ(t.at(1), 1);
    EXPECT_EQ(t.values().size(), 5u);
    EXPECT_THROW(t.at(0), std::out_of_range);
    EXPECT_THROW(t.at(6), std::out_of_range);
    EXPECT_THROW(ComplexityTable(0, 1), std::invalid_argument);
}
