#pragma once
// core.hpp - shared types for integer complexity tabulation.
//
// ||n|| is the least number of 1's needed to write n with + and x.
// Tables hold one byte per n; 255 is reserved as the "not yet computed"
// sentinel of the segmented algorithm and is larger than any complexity
// reachable below 3.86e25.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace icx {

using complexity_t = std::uint8_t;
using big_int = boost::multiprecision::cpp_int;

inline constexpr complexity_t sentinel = 255;

// beta = log2(3) - 1, truncated exactly as the parameter check uses it.
inline constexpr double beta = 0.584962501;

// Raised when an algorithm detects a broken internal invariant (a
// scheduling bug, an out-of-range block read, a solid-list overrun).
class invariant_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// ceil(n / m) for n >= 0, m >= 1.
inline std::uint64_t ceiling(std::uint64_t n, std::uint64_t m)
{
    if (m == 0) throw std::invalid_argument("ceiling: division by zero");
    return n / m + (n % m != 0 ? 1 : 0);
}

// Complexities for 1..n_max, one byte each. Index 0 is storage padding.
class ComplexityTable {
public:
    ComplexityTable() = default;

    ComplexityTable(std::uint64_t n_max, complexity_t fill)
        : values_(static_cast<std::size_t>(n_max) + 1, fill)
    {
        if (n_max == 0) throw std::invalid_argument("ComplexityTable: n_max must be positive");
        values_[0] = 0;
    }

    // values[i] = ||i + 1||
    static ComplexityTable from_values(std::span<const complexity_t> values)
    {
        ComplexityTable t(values.size(), 0);
        std::copy(values.begin(), values.end(), t.values_.begin() + 1);
        return t;
    }

    std::uint64_t n_max() const { return values_.empty() ? 0 : values_.size() - 1; }

    complexity_t operator[](std::uint64_t n) const { return values_[n]; }
    complexity_t& operator[](std::uint64_t n) { return values_[n]; }

    complexity_t at(std::uint64_t n) const
    {
        if (n == 0 || n > n_max())
            throw std::out_of_range("ComplexityTable: index " + std::to_string(n) +
                                    " outside 1.." + std::to_string(n_max()));
        return values_[n];
    }

    // ||1||, ||2||, ..., ||n_max||
    std::span<const complexity_t> values() const
    {
        return values_.empty() ? std::span<const complexity_t>{}
                               : std::span<const complexity_t>(values_).subspan(1);
    }

    // Index 0 included, so that view[n] == ||n||.
    std::span<complexity_t> raw() { return values_; }
    std::span<const complexity_t> raw() const { return values_; }

    friend bool operator==(const ComplexityTable&, const ComplexityTable&) = default;

private:
    std::vector<complexity_t> values_;
};

// Initial fill for the full-table algorithm: floor(3 ln N / ln 2) + 1.
inline complexity_t cmax_for(std::uint64_t n_max)
{
    const double bound = std::floor(3.0 * std::log(static_cast<double>(n_max)) / std::log(2.0)) + 1.0;
    if (bound >= sentinel)
        throw std::invalid_argument("cmax_for: n_max too large for 8-bit complexities");
    return static_cast<complexity_t>(bound);
}

// E(k), the largest integer with complexity k (E(0) := 1).
inline big_int e_of(unsigned k)
{
    if (k == 0) return 1;
    big_int result = 1;
    while (k > 4) {
        result *= 3;
        k -= 3;
    }
    return result * k;
}

namespace detail {

// E(k) clamped to UINT64_MAX, for every k an 8-bit complexity can hold.
struct saturated_e_table {
    std::uint64_t values[256];

    constexpr saturated_e_table() : values{}
    {
        constexpr std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
        for (unsigned k = 0; k < 256; ++k) {
            if (k == 0) {
                values[k] = 1;
                continue;
            }
            unsigned rest = k;
            std::uint64_t r = 1;
            while (rest > 4) {
                r = r > top / 3 ? top : r * 3;
                rest -= 3;
            }
            values[k] = r > top / rest ? top : r * rest;
        }
    }
};

inline constexpr saturated_e_table e_table{};

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t s = a + b;
    return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

} // namespace detail

// Cutoff such that min_{k<=kMax} ||k||+||n-k|| equals the minimum over all
// k <= n/2, given target = ||n-1||. Starting from t = target/2, t decreases
// while E(t) + E(target - t) < n; the result is E(t) at the stopping point.
// Never goes below t = 0. Saturates at UINT64_MAX when E(t) does.
inline std::uint64_t kmax_for(std::uint64_t n, unsigned target)
{
    if (n < 2) throw std::invalid_argument("kmax_for: n must be at least 2");
    if (target > 255) throw std::invalid_argument("kmax_for: target exceeds 8-bit range");
    const auto& e = detail::e_table.values;
    unsigned t = target / 2;
    while (t > 0 && detail::saturating_add(e[t], e[target - t]) < n)
        --t;
    return e[t];
}

// floor(2 N^beta) + 1, an upper bound on every kMax for n <= N.
inline std::uint64_t kmax_bound(std::uint64_t n_max)
{
    return static_cast<std::uint64_t>(std::floor(2.0 * std::pow(static_cast<double>(n_max), beta))) + 1;
}

// Solid numbers b <= limit: every split b = u + v costs more than ||b||.
class SolidList {
public:
    SolidList() = default;
    SolidList(std::uint64_t limit, std::vector<std::uint64_t> members)
        : limit_(limit), members_(std::move(members)) {}

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    std::uint64_t operator[](std::size_t i) const { return members_[i]; }

    // Calls f(b) for each solid b <= bound, starting at `from`.
    // A bound past the list's limit is an overrun.
    template <class F>
    std::size_t for_each_up_to(std::uint64_t bound, F&& f, std::size_t from = 0) const
    {
        if (bound > limit_)
            throw invariant_error("solid list overrun: kMax " + std::to_string(bound) +
                                  " exceeds precomputed limit " + std::to_string(limit_));
        std::size_t visited = 0;
        for (std::size_t i = from; i < members_.size() && members_[i] <= bound; ++i, ++visited)
            f(members_[i]);
        return visited;
    }

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> members_;
};

// Direct split test over u <= b/2; the table must be exact up to limit.
inline SolidList solid_numbers(std::uint64_t limit, const ComplexityTable& table)
{
    if (limit == 0) throw std::invalid_argument("solid_numbers: limit must be positive");
    if (limit > table.n_max())
        throw std::invalid_argument("solid_numbers: limit " + std::to_string(limit) +
                                    " exceeds table size " + std::to_string(table.n_max()));
    std::vector<std::uint64_t> members{1};
    for (std::uint64_t b = 2; b <= limit; ++b) {
        const unsigned cb = table[b];
        bool solid = true;
        for (std::uint64_t u = 1; u <= b / 2; ++u) {
            if (unsigned(table[u]) + table[b - u] <= cb) {
                solid = false;
                break;
            }
        }
        if (solid) members.push_back(b);
    }
    return SolidList(limit, std::move(members));
}

} // namespace icx
