#pragma once
// brute.hpp - O(N^2) reference tabulation.
//
// ||n|| = min(S, P) with S the best split n = k + (n - k) over every
// 1 <= k <= n/2 and P the best nontrivial factorization n = d * (n / d).
// Nothing is pruned; this is the ground truth the faster algorithms are
// checked against.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "icx/core.hpp"

namespace icx {

inline constexpr std::uint64_t brute_default_limit = 1'000'000;

struct BruteOptions {
    bool allow_large = false; // lift the brute_default_limit guard
};

inline ComplexityTable brute_complexity(std::uint64_t n_max, BruteOptions options = {})
{
    if (n_max == 0) throw std::invalid_argument("brute_complexity: n_max must be positive");
    if (n_max > brute_default_limit && !options.allow_large)
        throw std::invalid_argument("brute_complexity: n_max " + std::to_string(n_max) +
                                    " above " + std::to_string(brute_default_limit) +
                                    " requires an explicit override");

    ComplexityTable table(n_max, 0);
    table[1] = 1;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        unsigned best = std::numeric_limits<unsigned>::max();
        for (std::uint64_t k = 1; k <= n / 2; ++k)
            best = std::min(best, unsigned(table[k]) + table[n - k]);
        // factor pairs by trial division instead of stored divisor lists
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) best = std::min(best, unsigned(table[d]) + table[n / d]);
        }
        table[n] = static_cast<complexity_t>(best);
    }
    return table;
}

} // namespace icx
