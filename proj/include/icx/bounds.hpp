#pragma once
// bounds.hpp - digit-cost upper bounds for ||n||.
//
// Writing n in base b and evaluating it Horner-style gives
//     ||n|| <= ||r0|| + sum_j D(b, r_j)
// where D(b, r) is the cost of the step m -> b*m + r. D0(b, r) is the
// computable bound on D obtained by splitting b into divisor pairs:
//     D0(p, r) = ||p|| + ||r||                       (p prime, ||0|| = 0)
//     D0(b, r) = min(||b|| + ||r||,
//                    min_{d | b, 1<d<b} D0(d, r mod d) + D0(b/d, r div d))
// From a D0 row follow the average-case constant (1/(b ln b)) sum_r D0(b,r)
// and the running-time exponent alpha = log(A_b / b) / log b with
// A_b = sum_r 3^(D0(b,r)/3), kept exact in Z + Z 3^(1/3) + Z 3^(2/3).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "icx/core.hpp"
#include "icx/fast.hpp"

namespace icx {

using big_float = boost::multiprecision::mpfr_float;

// Decimal digits of working precision; ICX_PRECISION overrides.
inline unsigned working_precision()
{
    constexpr unsigned fallback = 80;
    if (const char* env = std::getenv("ICX_PRECISION")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 10 && v <= 100000) return static_cast<unsigned>(v);
    }
    return fallback;
}

// Sets the default mpfr precision for the lifetime of the scope.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits10 = working_precision())
        : saved_(big_float::default_precision())
    {
        big_float::default_precision(digits10);
    }
    ~PrecisionScope() { big_float::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// First `sig` significant digits of v, truncated (not rounded), with the
// decimal point in place: 3.30807... for v in [1, 10).
inline std::string truncated_digits(const big_float& v, unsigned sig)
{
    std::string s = v.str(sig + 12, std::ios_base::scientific);
    bool negative = false;
    if (!s.empty() && s[0] == '-') {
        negative = true;
        s.erase(0, 1);
    }
    const auto e_pos = s.find_first_of("eE");
    const int exponent = std::stoi(s.substr(e_pos + 1));
    std::string mantissa;
    for (char ch : s.substr(0, e_pos))
        if (ch != '.') mantissa.push_back(ch);
    mantissa.resize(sig, '0');

    std::string out;
    if (exponent >= 0) {
        const std::size_t int_digits = static_cast<std::size_t>(exponent) + 1;
        if (int_digits >= mantissa.size()) {
            out = mantissa + std::string(int_digits - mantissa.size(), '0');
        } else {
            out = mantissa.substr(0, int_digits) + "." + mantissa.substr(int_digits);
        }
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + mantissa;
    }
    return negative ? "-" + out : out;
}

namespace detail {

inline std::vector<std::uint64_t> divisors_of(std::uint64_t b)
{
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= b; ++d) {
        if (b % d != 0) continue;
        small.push_back(d);
        if (d != b / d) large.push_back(b / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace detail

// D0 rows for one base, costs[r] = D0(base, r).
struct DigitCostTable {
    std::uint64_t base = 0;
    std::vector<complexity_t> costs;

    std::uint64_t sum() const
    {
        std::uint64_t s = 0;
        for (complexity_t c : costs) s += c;
        return s;
    }
};

// D0 rows memoized by base; computing one base fills in all its divisors.
class DigitCostMemo {
public:
    explicit DigitCostMemo(const ComplexityTable& table) : table_(&table) {}

    const std::vector<complexity_t>& row(std::uint64_t b)
    {
        if (b < 2) throw std::invalid_argument("digit costs need base >= 2");
        if (b > table_->n_max())
            throw std::invalid_argument("digit costs for base " + std::to_string(b) +
                                        " need complexities up to " + std::to_string(b) +
                                        ", table ends at " + std::to_string(table_->n_max()));
        if (auto it = rows_.find(b); it != rows_.end()) return it->second;

        const auto divs = detail::divisors_of(b);
        for (std::size_t i = 1; i + 1 < divs.size(); ++i) row(divs[i]);

        const auto& t = *table_;
        std::vector<complexity_t> costs(b);
        const unsigned cb = t[b];
        costs[0] = static_cast<complexity_t>(cb);
        for (std::uint64_t r = 1; r < b; ++r) {
            const unsigned v = cb + t[r];
            if (v >= sentinel) throw std::overflow_error("digit cost exceeds 8-bit range");
            costs[r] = static_cast<complexity_t>(v);
        }

        // r = q*d + s with s < d, q < b/d
        for (std::size_t i = 1; i + 1 < divs.size(); ++i) {
            const std::uint64_t d = divs[i];
            const std::uint64_t a = b / d;
            const auto& low = rows_.at(d);
            const auto& high = rows_.at(a);
            complexity_t* out = costs.data();
            for (std::uint64_t q = 0; q < a; ++q, out += d) {
                const complexity_t hq = high[q];
                for (std::uint64_t s = 0; s < d; ++s) {
                    const unsigned v = unsigned(low[s]) + hq;
                    if (v < out[s]) out[s] = static_cast<complexity_t>(v);
                }
            }
        }
        return rows_.emplace(b, std::move(costs)).first->second;
    }

    DigitCostTable table(std::uint64_t b) { return {b, row(b)}; }

    const ComplexityTable& complexities() const { return *table_; }

private:
    const ComplexityTable* table_;
    std::map<std::uint64_t, std::vector<complexity_t>> rows_;
};

inline DigitCostTable digit_costs(std::uint64_t b, const ComplexityTable& table)
{
    DigitCostMemo memo(table);
    return memo.table(b);
}

// ||r0|| + sum of D0(b, r_j) over the remaining base-b digits of n, r0 the
// leading digit.
inline unsigned horner_upper_bound(std::uint64_t n, const DigitCostTable& dct,
                                   const ComplexityTable& table)
{
    if (n == 0) throw std::invalid_argument("horner_upper_bound: n must be positive");
    const std::uint64_t b = dct.base;
    // least significant first, then reversed into reading order
    std::vector<std::uint64_t> digits;
    for (std::uint64_t m = n; m > 0; m /= b) digits.push_back(m % b);
    std::reverse(digits.begin(), digits.end());

    unsigned bound = table.at(digits.front());
    for (std::size_t i = 1; i < digits.size(); ++i) bound += dct.costs[digits[i]];
    return bound;
}

struct AverageBound {
    std::uint64_t base = 0;
    big_int digit_sum;     // sum_r D0(b, r)
    big_int mean_num;      // sum / b in lowest terms
    big_int mean_den;
    big_float value;       // sum / (b ln b)
};

inline AverageBound average_bound(const DigitCostTable& dct, unsigned digits10 = working_precision())
{
    PrecisionScope precision(digits10);
    AverageBound out;
    out.base = dct.base;
    out.digit_sum = dct.sum();
    const big_int b = dct.base;
    const big_int g = boost::multiprecision::gcd(out.digit_sum, b);
    out.mean_num = out.digit_sum / g;
    out.mean_den = b / g;
    out.value = big_float(out.digit_sum) / (big_float(b) * log(big_float(b)));
    return out;
}

// c0 + c1 3^(1/3) + c2 3^(2/3) with nonnegative integer coefficients.
struct CubicRootSum {
    big_int c0, c1, c2;

    // += count * 3^(exponent / 3)
    void add_cube_root_power(unsigned exponent, const big_int& count)
    {
        big_int term = count * boost::multiprecision::pow(big_int(3), exponent / 3);
        switch (exponent % 3) {
        case 0: c0 += term; break;
        case 1: c1 += term; break;
        default: c2 += term; break;
        }
    }

    CubicRootSum& operator+=(const CubicRootSum& o)
    {
        c0 += o.c0;
        c1 += o.c1;
        c2 += o.c2;
        return *this;
    }

    // Largest g with 3^g dividing all three coefficients (0 for the zero sum).
    unsigned common_three_power() const
    {
        if (c0 == 0 && c1 == 0 && c2 == 0) return 0;
        unsigned g = 0;
        big_int a = c0, b = c1, c = c2;
        while (a % 3 == 0 && b % 3 == 0 && c % 3 == 0) {
            a /= 3;
            b /= 3;
            c /= 3;
            ++g;
        }
        return g;
    }

    CubicRootSum divided_by_three_power(unsigned g) const
    {
        const big_int p = boost::multiprecision::pow(big_int(3), g);
        return {c0 / p, c1 / p, c2 / p};
    }

    // At the current default precision.
    big_float to_float() const
    {
        const big_float r = cbrt(big_float(3));
        return big_float(c0) + big_float(c1) * r + big_float(c2) * r * r;
    }

    friend bool operator==(const CubicRootSum&, const CubicRootSum&) = default;
};

struct AlphaResult {
    std::uint64_t base = 0;
    CubicRootSum a_b;            // sum_r 3^(D0(b,r)/3), exact
    unsigned three_power = 0;    // A_b = 3^three_power * reduced
    CubicRootSum reduced;
    big_int scale_num;           // A_b / b = (scale_num / scale_den) * reduced
    big_int scale_den;
    big_float value;             // log(A_b / b) / log b
};

inline AlphaResult alpha_for_base(const DigitCostTable& dct, unsigned digits10 = working_precision())
{
    PrecisionScope precision(digits10);
    AlphaResult out;
    out.base = dct.base;

    std::vector<std::uint64_t> histogram(256, 0);
    for (complexity_t c : dct.costs) ++histogram[c];
    for (unsigned e = 0; e < histogram.size(); ++e)
        if (histogram[e] != 0) out.a_b.add_cube_root_power(e, histogram[e]);

    out.three_power = out.a_b.common_three_power();
    out.reduced = out.a_b.divided_by_three_power(out.three_power);

    const big_int num = boost::multiprecision::pow(big_int(3), out.three_power);
    const big_int den = dct.base;
    const big_int g = boost::multiprecision::gcd(num, den);
    out.scale_num = num / g;
    out.scale_den = den / g;

    const big_float b = big_float(dct.base);
    out.value = log(out.a_b.to_float() / b) / log(b);
    return out;
}

enum class BoundConstant { average, alpha };

struct BaseScore {
    std::uint64_t base = 0;
    unsigned twos = 0;
    unsigned threes = 0;
    big_float value;
};

inline constexpr std::uint64_t base_search_limit = 50'000'000;

// Bases 2^n 3^m (n + m >= 1) up to max_b, ascending.
inline std::vector<BaseScore> smooth_bases(std::uint64_t max_b)
{
    std::vector<BaseScore> out;
    unsigned n = 0;
    for (std::uint64_t p2 = 1; p2 <= max_b; p2 *= 2, ++n) {
        unsigned m = 0;
        for (std::uint64_t b = p2; b <= max_b; b *= 3, ++m) {
            if (b >= 2) out.push_back({b, n, m, {}});
            if (b > max_b / 3) break;
        }
        if (p2 > max_b / 2) break;
    }
    std::sort(out.begin(), out.end(), [](const BaseScore& x, const BaseScore& y) { return x.base < y.base; });
    return out;
}

// Scores every 2^n 3^m <= max_b by the chosen constant, best first.
inline std::vector<BaseScore> base_search(std::uint64_t max_b, BoundConstant constant,
                                          const ComplexityTable& table)
{
    if (max_b > base_search_limit)
        throw std::invalid_argument("base_search: cap " + std::to_string(max_b) + " above " +
                                    std::to_string(base_search_limit));
    auto bases = smooth_bases(max_b);
    DigitCostMemo memo(table);
    for (auto& score : bases) {
        const DigitCostTable dct = memo.table(score.base);
        score.value = constant == BoundConstant::average ? average_bound(dct).value
                                                         : alpha_for_base(dct).value;
    }
    std::stable_sort(bases.begin(), bases.end(),
                     [](const BaseScore& x, const BaseScore& y) { return x.value < y.value; });
    return bases;
}

inline std::vector<BaseScore> base_search(std::uint64_t max_b, BoundConstant constant)
{
    if (max_b > base_search_limit)
        throw std::invalid_argument("base_search: cap " + std::to_string(max_b) + " above " +
                                    std::to_string(base_search_limit));
    return base_search(max_b, constant, fast_complexity(std::max<std::uint64_t>(max_b, 2)));
}

} // namespace icx
