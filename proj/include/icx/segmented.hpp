#pragma once
// segmented.hpp - Fuller's space-improved tabulation.
//
// Complexities 1..N are produced in order but never stored as a whole.
// Memory is a fixed block B0 holding ||n|| for n <= H plus running blocks
// B1, B2, ... of length L = 2*step. Block Bj covers (Hj - L, Hj] and
// advances by `step`; B1 tracks the frontier, Bj (j >= 2) tracks n/j so
// that large cofactors are available when B1 needs them. Each finalized
// top half of B1 is handed to the sinks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "icx/core.hpp"
#include "icx/fast.hpp"

namespace icx {

struct FullerParams {
    std::uint64_t n_max = 0;     // N
    std::uint64_t fixed_len = 0; // H
    std::uint64_t step = 0;      // half the running block length

    std::uint64_t block_len() const { return 2 * step; }
};

// The smooth-running conditions: kMax < step (through kMax <= 2 N^beta),
// N <= step * H, step | H, step | N, H >= sqrt(L N).
inline bool check_parameters(const FullerParams& p)
{
    if (p.n_max == 0 || p.fixed_len == 0 || p.step == 0) return false;
    bool ok = true;
    if (static_cast<double>(p.step) < 2.0 * std::pow(static_cast<double>(p.n_max), beta)) ok = false;
    if (static_cast<unsigned __int128>(p.step) * p.fixed_len < p.n_max) ok = false;
    if (p.fixed_len % p.step != 0) ok = false;
    if (p.n_max % p.step != 0) ok = false;
    // H < sqrt(L N) compared exactly as H^2 < L N
    const auto h = static_cast<unsigned __int128>(p.fixed_len);
    if (h * h < static_cast<unsigned __int128>(p.block_len()) * p.n_max) ok = false;
    return ok;
}

// Smallest valid step dividing N, with H the least multiple of step
// meeting the remaining conditions. Empty when no H <= N works.
inline std::optional<FullerParams> suggest_parameters(std::uint64_t n_max)
{
    if (n_max == 0) return std::nullopt;
    const double min_step = 2.0 * std::pow(static_cast<double>(n_max), beta);
    const auto first = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(min_step)));
    for (std::uint64_t step = first; step <= n_max; ++step) {
        if (n_max % step != 0 || static_cast<double>(step) < min_step) continue;
        std::uint64_t h = static_cast<std::uint64_t>(std::sqrt(2.0 * static_cast<double>(step) * static_cast<double>(n_max)));
        h = std::max({h, ceiling(n_max, step), 2 * step});
        h = step * ceiling(h, step);
        FullerParams p{n_max, h, step};
        while (!check_parameters(p) && p.fixed_len <= n_max) p.fixed_len += step;
        if (p.fixed_len <= n_max && check_parameters(p)) return p;
    }
    return std::nullopt;
}

// A finalized run of consecutive complexities, values[i] = ||first + i||.
struct Segment {
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    std::span<const complexity_t> values;
};

using SegmentSink = std::function<void(const Segment&)>;

// One row of the product pass: factors a * b for a fixed `a`, with ||b||
// read from `source_block` (0 is the fixed block).
struct ProductRow {
    std::size_t block = 0;
    std::uint64_t new_head = 0;
    std::uint64_t a = 0;
    std::size_t source_block = 0;
};

struct FullerOptions {
    bool check_schedule = true;
    std::function<void(const ProductRow&)> product_probe;
};

struct FullerSummary {
    FullerParams params;
    std::uint64_t iterations = 0;
    std::uint64_t running_blocks = 0;
    std::uint64_t peak_table_bytes = 0;
    std::uint64_t max_kmax = 0;
    std::uint64_t sum_tests = 0;
    std::uint64_t product_tests = 0;
    std::uint64_t schedule_checks = 0;
    std::uint64_t values_emitted = 0;

    // H + (N/H + 2) L, compared without rounding N/H
    bool within_memory_bound() const
    {
        const auto h = static_cast<unsigned __int128>(params.fixed_len);
        const auto lhs = static_cast<unsigned __int128>(peak_table_bytes) * h;
        const auto rhs = h * h + (static_cast<unsigned __int128>(params.n_max) + 2 * h) * params.block_len();
        return lhs <= rhs;
    }
};

// The fixed block plus running blocks and their heads. heads[0] = H.
class BlockSet {
public:
    BlockSet(const FullerParams& p, ComplexityTable fixed)
        : params_(p), fixed_(std::move(fixed)), heads_{p.fixed_len}
    {
        if (fixed_.n_max() != p.fixed_len)
            throw std::invalid_argument("BlockSet: fixed block length does not match H");
        if (p.fixed_len < p.block_len())
            throw std::invalid_argument("BlockSet: H must be at least L");
    }

    std::size_t running_count() const { return running_.size(); }
    bool not_initialized(std::size_t j) const { return heads_.size() < j + 1; }

    std::uint64_t head(std::size_t j) const
    {
        if (j >= heads_.size())
            throw invariant_error("read of head " + std::to_string(j) + " before it was created");
        return heads_[j];
    }

    // Copy of the top L entries of the fixed block, head H.
    void create_running_block()
    {
        const std::uint64_t len = params_.block_len();
        const auto src = fixed_.raw().subspan(params_.fixed_len - len + 1, len);
        running_.emplace_back(src.begin(), src.end());
        heads_.push_back(params_.fixed_len);
    }

    // Advance Hj by step: top half moves to the bottom, top refilled with
    // the sentinel.
    void shift(std::size_t j)
    {
        auto& blk = block(j);
        const std::size_t half = params_.step;
        std::memmove(blk.data(), blk.data() + half, half);
        std::memset(blk.data() + half, sentinel, half);
        heads_[j] += params_.step;
    }

    const ComplexityTable& fixed() const { return fixed_; }

    std::vector<complexity_t>& block(std::size_t j)
    {
        if (j == 0 || j > running_.size())
            throw invariant_error("running block " + std::to_string(j) + " is not initialized");
        return running_[j - 1];
    }
    const std::vector<complexity_t>& block(std::size_t j) const
    {
        return const_cast<BlockSet*>(this)->block(j);
    }

    // Offset of n inside block j.
    std::uint64_t offset(std::size_t j, std::uint64_t n) const
    {
        const std::uint64_t hj = head(j);
        if (n + params_.block_len() <= hj || n > hj)
            throw invariant_error("value " + std::to_string(n) + " outside running block " +
                                  std::to_string(j) + " (head " + std::to_string(hj) + ")");
        return n - (hj - params_.block_len() + 1);
    }

    complexity_t value(std::size_t j, std::uint64_t n) const { return block(j)[offset(j, n)]; }

    std::span<const complexity_t> top_half(std::size_t j) const
    {
        return std::span<const complexity_t>(block(j)).subspan(params_.step);
    }

    std::uint64_t table_bytes() const
    {
        return params_.fixed_len + running_.size() * params_.block_len();
    }

private:
    FullerParams params_;
    ComplexityTable fixed_;
    std::vector<std::vector<complexity_t>> running_; // running_[j - 1] is Bj
    std::vector<std::uint64_t> heads_;
};

class FullerRun {
public:
    FullerRun(const FullerParams& p, FullerOptions options = {})
        : params_(p), options_(std::move(options)),
          solids_(solids_for(std::max(p.n_max, p.fixed_len))),
          blocks_(p, build_fixed(p, solids_))
    {
        summary_.params = p;
    }

    FullerSummary run(std::span<const SegmentSink> sinks)
    {
        const std::uint64_t big_h = params_.fixed_len;
        const std::uint64_t step = params_.step;

        blocks_.create_running_block();
        const std::uint64_t fixed_last = std::min(big_h, params_.n_max);
        emit(sinks, 1, fixed_last, blocks_.fixed().values().first(fixed_last));
        note_memory();

        bool first = true;
        while (blocks_.head(1) < params_.n_max) {
            if (!first && options_.check_schedule) check_schedule(blocks_.head(1));
            first = false;

            const std::uint64_t h = std::min(blocks_.head(1) + step, params_.n_max);
            for (std::size_t j = ceiling(h, big_h) - 1; j >= 1; --j) {
                const std::uint64_t new_h = step * ceiling(h, j * step);
                if (blocks_.not_initialized(j) && new_h > big_h) {
                    if (j != blocks_.running_count() + 1)
                        throw invariant_error("running block " + std::to_string(j) +
                                              " created out of order");
                    blocks_.create_running_block();
                }
                if (blocks_.head(j) < new_h) {
                    blocks_.shift(j);
                    calculate_running_block(j, new_h);
                }
            }
            if (blocks_.head(1) != h)
                throw invariant_error("main block did not advance to " + std::to_string(h));

            emit(sinks, h - step + 1, h, blocks_.top_half(1));
            note_memory();
            ++summary_.iterations;
        }
        summary_.running_blocks = blocks_.running_count();
        return summary_;
    }

    // Products then sums over the freshly shifted top half of block j.
    void calculate_running_block(std::size_t j, std::uint64_t new_h)
    {
        products(j, new_h);
        sums(j, new_h);
        for (complexity_t v : blocks_.top_half(j)) {
            if (v == sentinel)
                throw invariant_error("sentinel left in block " + std::to_string(j));
        }
    }

    // Relax every ab with 2 <= a <= b and new_h - step < ab <= new_h.
    // ||a|| comes from B0 (a <= sqrt(new_h) < H); ||b|| from B0 when
    // new_h / a <= H, otherwise from block a*j.
    void products(std::size_t j, std::uint64_t new_h)
    {
        const std::uint64_t step = params_.step;
        const std::uint64_t len = params_.block_len();
        auto& blk = blocks_.block(j);
        const std::uint64_t shift = new_h - len + 1;
        const auto fixed = blocks_.fixed().raw();

        for (std::uint64_t a = 2; a * a <= new_h; ++a) {
            const std::uint64_t b_lo = std::max(1 + (new_h - step) / a, a);
            const std::uint64_t b_hi = new_h / a;
            if (a > params_.fixed_len) throw invariant_error("factor a beyond fixed block");

            const complexity_t* src = fixed.data();
            std::uint64_t src_base = 0;
            std::size_t source = 0;
            if (b_hi > params_.fixed_len) {
                source = static_cast<std::size_t>(a * j);
                if (blocks_.not_initialized(source))
                    throw invariant_error("block " + std::to_string(source) +
                                          " needed for cofactors but not initialized");
                src_base = blocks_.head(source) - len + 1;
                if (b_lo <= b_hi) {
                    // whole row must lie inside the source block
                    blocks_.offset(source, b_lo);
                    blocks_.offset(source, b_hi);
                }
                src = blocks_.block(source).data();
            }
            if (options_.product_probe) options_.product_probe({j, new_h, a, source});

            const unsigned ca = fixed[a];
            std::uint64_t ab = a * b_lo;
            for (std::uint64_t b = b_lo; b <= b_hi; ++b, ab += a) {
                const unsigned v = ca + src[b - src_base];
                complexity_t& slot = blk[ab - shift];
                if (v < slot) slot = static_cast<complexity_t>(v);
            }
            if (b_lo <= b_hi) summary_.product_tests += b_hi - b_lo + 1;
        }
    }

    // Ascending over the top half: ||n|| <= ||n - k|| + ||k|| for solid
    // k <= kMax, k = 1 included (the usual best value).
    void sums(std::size_t j, std::uint64_t new_h)
    {
        const std::uint64_t step = params_.step;
        auto& blk = blocks_.block(j);
        const std::uint64_t shift = new_h - params_.block_len() + 1;
        const auto fixed = blocks_.fixed().raw();

        for (std::uint64_t n = new_h - step + 1; n <= new_h; ++n) {
            complexity_t& slot = blk[n - shift];
            const std::uint64_t kmax = kmax_for(n, blk[n - 1 - shift]);
            if (kmax >= step)
                throw invariant_error("kMax " + std::to_string(kmax) + " for n = " +
                                      std::to_string(n) + " is not below step");
            summary_.max_kmax = std::max(summary_.max_kmax, kmax);
            summary_.sum_tests += solids_.for_each_up_to(kmax, [&](std::uint64_t k) {
                const unsigned v = unsigned(blk[n - k - shift]) + fixed[k];
                if (v < slot) slot = static_cast<complexity_t>(v);
            });
        }
    }

    // Blocks 1..ceil(H1/H)-1 exist and Hj = step * ceil(H1 / (j step)).
    void check_schedule(std::uint64_t h1)
    {
        ++summary_.schedule_checks;
        const std::uint64_t expected = ceiling(h1, params_.fixed_len) - 1;
        if (blocks_.running_count() != expected)
            throw invariant_error("schedule: " + std::to_string(blocks_.running_count()) +
                                  " running blocks at H1 = " + std::to_string(h1) + ", expected " +
                                  std::to_string(expected));
        for (std::size_t j = 1; j <= expected; ++j) {
            const std::uint64_t want = params_.step * ceiling(h1, j * params_.step);
            if (blocks_.head(j) != want)
                throw invariant_error("schedule: head of block " + std::to_string(j) + " is " +
                                      std::to_string(blocks_.head(j)) + ", expected " +
                                      std::to_string(want));
        }
    }

    const BlockSet& blocks() const { return blocks_; }
    const FullerSummary& summary() const { return summary_; }

private:
    static ComplexityTable build_fixed(const FullerParams& p, const SolidList& solids)
    {
        if (!check_parameters(p)) throw std::invalid_argument("run_fuller: parameters rejected");
        return fast_complexity(p.fixed_len, solids);
    }

    void emit(std::span<const SegmentSink> sinks, std::uint64_t first, std::uint64_t last,
              std::span<const complexity_t> values)
    {
        const Segment seg{first, last, values};
        for (const auto& sink : sinks) sink(seg);
        summary_.values_emitted += values.size();
    }

    void note_memory()
    {
        summary_.peak_table_bytes = std::max(summary_.peak_table_bytes, blocks_.table_bytes());
    }

    FullerParams params_;
    FullerOptions options_;
    SolidList solids_;
    BlockSet blocks_;
    FullerSummary summary_;
};

inline FullerSummary run_fuller(const FullerParams& p, std::span<const SegmentSink> sinks,
                                FullerOptions options = {})
{
    FullerRun run(p, std::move(options));
    return run.run(sinks);
}

} // namespace icx
