#pragma once
// stats.hpp - streaming statistics over tabulated complexities.

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "icx/core.hpp"

namespace icx {

struct StatsReport {
    std::uint64_t n_max = 0;
    std::map<unsigned, std::uint64_t> histogram;        // c -> #{n : ||n|| = c}
    std::map<unsigned, std::uint64_t> first_occurrence; // c -> least n with ||n|| = c
    std::map<unsigned, std::uint64_t> largest_for;      // c -> largest n seen, <= E(c)
    unsigned max_complexity = 0;

    friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

// Accepts consecutive runs of complexities starting at n = 1.
class StatsAccumulator {
public:
    void consume(std::uint64_t first, std::span<const complexity_t> values)
    {
        if (first != next_)
            throw std::invalid_argument("StatsAccumulator: expected n = " + std::to_string(next_) +
                                        ", got " + std::to_string(first));
        std::uint64_t n = first;
        for (complexity_t c : values) {
            if (count_[c]++ == 0) first_[c] = n;
            last_[c] = n;
            ++n;
        }
        next_ = n;
    }

    void consume(const ComplexityTable& table) { consume(1, table.values()); }

    StatsReport report() const
    {
        StatsReport r;
        r.n_max = next_ - 1;
        for (unsigned c = 0; c < count_.size(); ++c) {
            if (count_[c] == 0) continue;
            r.histogram[c] = count_[c];
            r.first_occurrence[c] = first_[c];
            r.largest_for[c] = last_[c];
            r.max_complexity = c;
        }
        return r;
    }

private:
    std::uint64_t next_ = 1;
    std::array<std::uint64_t, 256> count_{};
    std::array<std::uint64_t, 256> first_{};
    std::array<std::uint64_t, 256> last_{};
};

inline StatsReport stats_of(const ComplexityTable& table)
{
    StatsAccumulator acc;
    acc.consume(table);
    return acc.report();
}

inline nlohmann::json to_json(const StatsReport& r)
{
    auto keyed = [](const std::map<unsigned, std::uint64_t>& m) {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [c, v] : m) j[std::to_string(c)] = v;
        return j;
    };
    return {
        {"n_max", r.n_max},
        {"max_complexity", r.max_complexity},
        {"histogram", keyed(r.histogram)},
        {"first_occurrence", keyed(r.first_occurrence)},
        {"largest_for", keyed(r.largest_for)},
    };
}

// One "key value" pair per line.
inline void write_text(std::ostream& os, const StatsReport& r)
{
    os << "n_max " << r.n_max << '\n';
    os << "max_complexity " << r.max_complexity << '\n';
    for (const auto& [c, count] : r.histogram) {
        os << "complexity " << c << " count " << count << " first " << r.first_occurrence.at(c)
           << " largest " << r.largest_for.at(c) << '\n';
    }
}

} // namespace icx
