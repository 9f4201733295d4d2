#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "icx/fast.hpp"
#include "icx/segmented.hpp"

using namespace icx;

namespace {

// Runs Fuller and collects every emitted value into one table, checking
// that segments arrive in order and tile 1..N.
struct Collected {
    ComplexityTable table;
    FullerSummary summary;
    std::vector<Segment> segments;
};

Collected collect(const FullerParams& p, FullerOptions options = {})
{
    Collected out{ComplexityTable(p.n_max, sentinel), {}, {}};
    std::uint64_t next = 1;
    SegmentSink sink = [&](const Segment& s) {
        EXPECT_EQ(s.first, next);
        EXPECT_EQ(s.last - s.first + 1, s.values.size());
        for (std::size_t i = 0; i < s.values.size(); ++i) out.table[s.first + i] = s.values[i];
        next = s.last + 1;
        out.segments.push_back({s.first, s.last, {}});
    };
    out.summary = run_fuller(p, std::span(&sink, 1), std::move(options));
    EXPECT_EQ(next, p.n_max + 1);
    return out;
}

const FullerParams million_params{1000000, 200000, 10000};

} // namespace

TEST(CheckParameters, Examples)
{
    EXPECT_TRUE(check_parameters(million_params));
    EXPECT_FALSE(check_parameters({1000000, 200000, 10001}));
    EXPECT_FALSE(check_parameters({1000000, 1000, 10000}));
}

TEST(CheckParameters, EachCondition)
{
    // step below 2 N^beta (2 * 10^6^beta ~ 6456.5)
    EXPECT_FALSE(check_parameters({1000000, 200000, 5000}));
    // N > step * H (step does not divide H either)
    EXPECT_FALSE(check_parameters({1000000, 80, 8000}));
    // step does not divide N
    EXPECT_FALSE(check_parameters({1000000, 210000, 7000}));
    // H^2 < L N
    EXPECT_FALSE(check_parameters({1000000, 100000, 10000}));
    EXPECT_FALSE(check_parameters({0, 1, 1}));
    EXPECT_TRUE(check_parameters({20000, 6400, 800}));
}

TEST(SuggestParameters, ValidWhenFound)
{
    for (std::uint64_t n : {1000, 20000, 100000, 360000, 1000000}) {
        const auto p = suggest_parameters(n);
        ASSERT_TRUE(p.has_value()) << n;
        EXPECT_TRUE(check_parameters(*p)) << n;
        EXPECT_LE(p->fixed_len, n);
    }
    EXPECT_FALSE(suggest_parameters(999983).has_value()); // prime: only step = N
}

TEST(BlockSet, CreateShiftAndAddressing)
{
    const FullerParams p{20000, 6400, 800};
    const ComplexityTable fixed = fast_complexity(p.fixed_len);
    BlockSet blocks(p, fixed);
    EXPECT_TRUE(blocks.not_initialized(1));
    blocks.create_running_block();
    EXPECT_FALSE(blocks.not_initialized(1));
    EXPECT_TRUE(blocks.not_initialized(2));
    EXPECT_EQ(blocks.head(1), p.fixed_len);
    for (std::uint64_t n = p.fixed_len - p.block_len() + 1; n <= p.fixed_len; ++n)
        ASSERT_EQ(blocks.value(1, n), fixed[n]);

    blocks.shift(1);
    EXPECT_EQ(blocks.head(1), p.fixed_len + p.step);
    for (std::uint64_t n = p.fixed_len - p.step + 1; n <= p.fixed_len; ++n) ASSERT_EQ(blocks.value(1, n), fixed[n]);
    for (complexity_t v : blocks.top_half(1)) ASSERT_EQ(v, sentinel);
    EXPECT_THROW(blocks.value(1, p.fixed_len - p.step), invariant_error);
    EXPECT_THROW(blocks.value(1, p.fixed_len + p.step + 1), invariant_error);
    EXPECT_THROW(blocks.block(2), invariant_error);
    EXPECT_EQ(blocks.table_bytes(), p.fixed_len + p.block_len());
}

TEST(RunFuller, RejectsBadParameters)
{
    std::vector<SegmentSink> none;
    EXPECT_THROW(run_fuller({1000000, 200000, 10001}, none), std::invalid_argument);
}

TEST(RunFuller, DegenerateFixedBlockOnly)
{
    const Collected c = collect({20000, 20000, 800});
    EXPECT_EQ(c.summary.iterations, 0u);
    ASSERT_EQ(c.segments.size(), 1u);
    EXPECT_EQ(c.segments[0].first, 1u);
    EXPECT_EQ(c.segments[0].last, 20000u);
    EXPECT_EQ(c.table, fast_complexity(20000));
}

TEST(RunFuller, MatchesFastOnSuggestedParameters)
{
    for (std::uint64_t n : {1000, 20000, 100000, 360000}) {
        const FullerParams p = *suggest_parameters(n);
        const Collected c = collect(p);
        EXPECT_EQ(c.table, fast_complexity(n)) << n;
        EXPECT_EQ(c.summary.values_emitted, n);
        EXPECT_TRUE(c.summary.within_memory_bound()) << n;
    }
}

TEST(RunFuller, MatchesFastOnHandPickedParameters)
{
    // several running blocks with a small fixed block
    for (const FullerParams p : {FullerParams{120000, 22500, 1875}, FullerParams{240000, 39000, 3000},
                                 FullerParams{600000, 76800, 4800}}) {
        ASSERT_TRUE(check_parameters(p));
        const Collected c = collect(p);
        EXPECT_EQ(c.table, fast_complexity(p.n_max)) << p.n_max;
        EXPECT_GE(c.summary.running_blocks, 3u);
    }
}

TEST(RunFuller, MillionWithLargeFixedBlock)
{
    const Collected c = collect(million_params);
    const ComplexityTable fast = fast_complexity(million_params.n_max);
    EXPECT_EQ(c.table, fast);

    // first shift of B1 covers 200001..210000
    ASSERT_GE(c.segments.size(), 2u);
    EXPECT_EQ(c.segments[1].first, 200001u);
    EXPECT_EQ(c.segments[1].last, 210000u);

    const FullerSummary& s = c.summary;
    EXPECT_EQ(s.iterations, 80u);
    EXPECT_EQ(s.schedule_checks, 79u);
    EXPECT_LE(s.running_blocks * million_params.fixed_len,
              million_params.n_max + 2 * million_params.fixed_len); // <= N/H + 2
    EXPECT_TRUE(s.within_memory_bound());
    EXPECT_LE(s.peak_table_bytes, 200000u + 7u * 20000u);
    EXPECT_LT(s.max_kmax, million_params.step);
    EXPECT_LE(static_cast<double>(s.max_kmax), 2.0 * std::pow(1e6, beta));
}

TEST(Products, CofactorBlockSelection)
{
    std::map<std::uint64_t, std::size_t> source_for_a2; // new_head -> source block, j = 1, a = 2
    std::size_t rows_from_running = 0;
    FullerOptions options;
    options.product_probe = [&](const ProductRow& row) {
        if (row.block == 1 && row.a == 2) source_for_a2[row.new_head] = row.source_block;
        if (row.source_block != 0) {
            ++rows_from_running;
            EXPECT_EQ(row.source_block, row.a * row.block);
        }
    };
    collect(million_params, std::move(options));
    ASSERT_TRUE(source_for_a2.count(210000));
    EXPECT_EQ(source_for_a2[210000], 0u); // 210000 / 2 <= H
    ASSERT_TRUE(source_for_a2.count(450000));
    EXPECT_EQ(source_for_a2[450000], 2u); // 225000 > H, read from B2
    EXPECT_GT(rows_from_running, 0u);
}

TEST(ScheduleCheck, FiresOnCorruptedState)
{
    FullerRun run({20000, 6400, 800});
    // before any block exists the invariant cannot hold past the first run
    EXPECT_THROW(run.check_schedule(6400 + 800), invariant_error);
}

TEST(RunFuller, DisabledScheduleCheck)
{
    FullerOptions options;
    options.check_schedule = false;
    const Collected c = collect({20000, 6400, 800}, std::move(options));
    EXPECT_EQ(c.summary.schedule_checks, 0u);
    EXPECT_EQ(c.table, fast_complexity(20000));
}

TEST(RunFuller, MultipleSinksSeeTheSameStream)
{
    const FullerParams p{20000, 6400, 800};
    std::uint64_t sum_a = 0, sum_b = 0, count = 0;
    std::vector<SegmentSink> sinks{
        [&](const Segment& s) { for (auto v : s.values) sum_a += v; },
        [&](const Segment& s) { for (auto v : s.values) sum_b += v; count += s.values.size(); },
    };
    run_fuller(p, sinks);
    EXPECT_EQ(sum_a, sum_b);
    EXPECT_EQ(count, p.n_max);
}
