#pragma once
// fast.hpp - the time-improved full-table algorithm, O(N^alpha) with
// alpha ~ 1.230175.
//
// Entries start at cMax and only ever decrease. When the main loop reaches
// n, entries 1..n-1 are exact, so after the sum and product tests for n
// the entry for n is exact too: every divisor pair of n was pushed forward
// earlier, and only solid k <= kMax need testing among the sums.

#include <cstdint>
#include <utility>
#include <stdexcept>

#include "icx/brute.hpp"
#include "icx/core.hpp"

namespace icx {

struct FastCounters {
    std::uint64_t sum_tests = 0;
    std::uint64_t product_tests = 0;
    std::uint64_t max_kmax = 0;

    std::uint64_t relaxations() const { return sum_tests + product_tests; }
};

// Solid numbers covering every kMax that can occur for n <= n_max.
inline SolidList solids_for(std::uint64_t n_max)
{
    const std::uint64_t limit = std::max<std::uint64_t>(1, std::min(kmax_bound(n_max), n_max));
    return solid_numbers(limit, brute_complexity(limit));
}

struct no_step_hook {
    void operator()(std::uint64_t, const ComplexityTable&) const {}
};

// Full tabulation. `after_step(n, table)` runs once n is final; it may
// inspect but not change the table.
template <class StepHook = no_step_hook>
ComplexityTable fast_complexity(std::uint64_t n_max, const SolidList& solids,
                                FastCounters* counters = nullptr, StepHook&& after_step = {})
{
    if (n_max == 0) throw std::invalid_argument("fast_complexity: n_max must be positive");

    ComplexityTable c(n_max, cmax_for(n_max));
    c[1] = 1;
    FastCounters local;
    after_step(std::uint64_t{1}, std::as_const(c));

    for (std::uint64_t n = 2; n <= n_max; ++n) {
        // usual best value
        if (c[n - 1] + 1 < c[n]) c[n] = static_cast<complexity_t>(c[n - 1] + 1);

        const std::uint64_t kmax = kmax_for(n, c[n - 1]);
        local.max_kmax = std::max(local.max_kmax, kmax);

        // solid[0] = 1 was covered above; 2..5 are never solid
        local.sum_tests += solids.for_each_up_to(kmax, [&](std::uint64_t k) {
            if (k >= n) return;
            const unsigned v = unsigned(c[k]) + c[n - k];
            if (v < c[n]) c[n] = static_cast<complexity_t>(v);
        }, 1);

        const std::uint64_t top = std::min(n, n_max / n);
        const unsigned cn = c[n];
        for (std::uint64_t k = 2; k <= top; ++k) {
            const unsigned v = c[k] + cn;
            if (v < c[k * n]) c[k * n] = static_cast<complexity_t>(v);
        }
        if (top >= 2) local.product_tests += top - 1;

        after_step(n, std::as_const(c));
    }

    if (counters) *counters = local;
    return c;
}

inline ComplexityTable fast_complexity(std::uint64_t n_max, FastCounters* counters = nullptr)
{
    return fast_complexity(n_max, solids_for(n_max), counters);
}

// Number of sum and product tests executed by fast_complexity(n_max).
inline std::uint64_t op_counter(std::uint64_t n_max)
{
    FastCounters counters;
    fast_complexity(n_max, &counters);
    return counters.relaxations();
}

} // namespace icx
