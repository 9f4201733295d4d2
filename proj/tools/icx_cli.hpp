#pragma once
// icx command line: brute | fast | fuller | bounds | solid | verify.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "icx/bounds.hpp"
#include "icx/brute.hpp"
#include "icx/core.hpp"
#include "icx/fast.hpp"
#include "icx/segmented.hpp"
#include "icx/stats.hpp"
#include "icx/table_file.hpp"

namespace icx::cli {

enum exit_code : int {
    ok = 0,
    usage = 1,
    rejected = 2,
    verification_failed = 3,
    io_failure = 4,
    internal_fault = 5,
};

class rejection : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exact nonnegative integer from "1000000", "1_000_000", "1e6" or "2.5e5".
inline std::uint64_t parse_integer(std::string_view text)
{
    std::string digits;
    std::string exponent;
    bool seen_point = false, seen_e = false;
    std::size_t fraction_digits = 0;
    for (char ch : text) {
        if (ch == '_') continue;
        if (ch == 'e' || ch == 'E') {
            if (seen_e || digits.empty()) throw rejection("malformed number: " + std::string(text));
            seen_e = true;
        } else if (ch == '.' && !seen_e && !seen_point) {
            seen_point = true;
        } else if (ch >= '0' && ch <= '9') {
            if (seen_e) {
                exponent.push_back(ch);
            } else {
                digits.push_back(ch);
                if (seen_point) ++fraction_digits;
            }
        } else if (ch == '+' && seen_e && exponent.empty()) {
            continue;
        } else {
            throw rejection("malformed number: " + std::string(text));
        }
    }
    if (digits.empty() || (seen_e && exponent.empty()))
        throw rejection("malformed number: " + std::string(text));

    std::size_t e = 0;
    if (seen_e) {
        if (exponent.size() > 3) throw rejection("number out of range: " + std::string(text));
        e = std::stoul(exponent);
    }
    if (e < fraction_digits) {
        // the dropped fractional digits must all be zero
        const std::size_t drop = fraction_digits - e;
        if (digits.find_first_not_of('0', digits.size() - drop) != std::string::npos)
            throw rejection("not an integer: " + std::string(text));
        digits.resize(digits.size() - drop);
    } else {
        digits.append(e - fraction_digits, '0');
    }
    const auto start = digits.find_first_not_of('0');
    if (start == std::string::npos) return 0;
    digits.erase(0, start);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw rejection("number out of range: " + std::string(text));
    return value;
}

// "A..B", both ends inclusive.
inline std::pair<std::uint64_t, std::uint64_t> parse_range(std::string_view text)
{
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) throw rejection("range must look like A..B");
    const auto lo = parse_integer(text.substr(0, dots));
    const auto hi = parse_integer(text.substr(dots + 2));
    if (lo == 0 || lo > hi) throw rejection("empty or invalid range: " + std::string(text));
    return {lo, hi};
}

struct Divergence {
    std::uint64_t n = 0;
    unsigned expected = 0;
    unsigned actual = 0;
};

// Smallest n where two tables disagree over 1..count.
inline std::optional<Divergence> first_divergence(std::span<const complexity_t> expected,
                                                  std::span<const complexity_t> actual,
                                                  std::uint64_t first_n = 1)
{
    const std::size_t count = std::min(expected.size(), actual.size());
    for (std::size_t i = 0; i < count; ++i) {
        if (expected[i] != actual[i]) return Divergence{first_n + i, expected[i], actual[i]};
    }
    return std::nullopt;
}

namespace detail {

inline void write_file(const std::string& path, const std::string& body)
{
    std::ofstream os(path, std::ios::trunc);
    if (!os || !(os << body)) throw io_error("cannot write " + path);
}

struct StatsOutput {
    std::string stats_out;
    bool json = false;
    bool quiet = false;

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--stats-out", stats_out, "Write the stats report as JSON to FILE");
        cmd.add_flag("--json", json, "Print stats as JSON instead of key/value lines");
        cmd.add_flag("--quiet", quiet, "Do not print stats");
    }

    void emit(std::ostream& out, const StatsReport& report) const
    {
        if (!stats_out.empty()) write_file(stats_out, to_json(report).dump(2) + "\n");
        if (quiet) return;
        if (json)
            out << to_json(report).dump(2) << '\n';
        else
            write_text(out, report);
    }
};

inline std::string format_cubic(const CubicRootSum& s)
{
    std::ostringstream os;
    os << "(" << s.c0 << " + " << s.c1 << "*3^(1/3) + " << s.c2 << "*3^(2/3))";
    return os.str();
}

inline std::string format_smooth(const BaseScore& s)
{
    return "2^" + std::to_string(s.twos) + "*3^" + std::to_string(s.threes);
}

} // namespace detail

struct VerifyReport {
    bool passed = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& what)
    {
        lines.push_back((ok ? "PASS " : "FAIL ") + what);
        passed = passed && ok;
    }
};

struct VerifyOptions {
    std::uint64_t n_max = 0;
    std::optional<FullerParams> fuller;
    std::optional<std::uint64_t> inject_fault;
    bool force = false;
    std::uint64_t brute_cap = 20000;
    std::uint64_t seed = 20081001;
    std::uint64_t samples = 10000;
};

// Cross-checks brute against fast, fast against Fuller, and the table
// invariants. Every check contributes one PASS/FAIL line.
inline VerifyReport verify(const VerifyOptions& opt)
{
    VerifyReport rep;
    const std::uint64_t n_max = opt.n_max;
    ComplexityTable fast = fast_complexity(n_max);
    if (opt.inject_fault) {
        const std::uint64_t n = *opt.inject_fault;
        if (n == 0 || n > n_max) throw rejection("--inject-fault outside 1..n_max");
        fast[n] = static_cast<complexity_t>(fast[n] + 1);
    }

    auto describe = [](const std::optional<Divergence>& d) {
        if (!d) return std::string();
        return " first divergence at n = " + std::to_string(d->n) + " (reference " +
               std::to_string(d->expected) + ", got " + std::to_string(d->actual) + ")";
    };

    // brute == fast
    const std::uint64_t brute_n = opt.force ? n_max : std::min(n_max, opt.brute_cap);
    {
        const ComplexityTable brute = brute_complexity(brute_n, {.allow_large = opt.force});
        const auto d = first_divergence(brute.values(), fast.values().first(brute_n));
        rep.check(!d, "brute == fast for n <= " + std::to_string(brute_n) + describe(d));
    }

    // fast == fuller
    std::optional<FullerParams> params = opt.fuller ? opt.fuller : suggest_parameters(n_max);
    if (!params) {
        rep.lines.push_back("SKIP fast == fuller (no valid parameters for n_max = " +
                            std::to_string(n_max) + ")");
    } else {
        if (!check_parameters(*params)) throw rejection("NOT GOOD PARAMETERS");
        std::optional<Divergence> diverged;
        std::uint64_t expected_next = 1;
        bool tiled = true;
        SegmentSink compare = [&](const Segment& s) {
            if (s.first != expected_next || s.last - s.first + 1 != s.values.size()) tiled = false;
            expected_next = s.last + 1;
            if (!diverged && s.last <= n_max)
                diverged = first_divergence(fast.values().subspan(s.first - 1, s.values.size()),
                                            s.values, s.first);
        };
        const std::string tag = "(N=" + std::to_string(params->n_max) + ", H=" +
                                std::to_string(params->fixed_len) + ", step=" +
                                std::to_string(params->step) + ")";
        try {
            const FullerSummary summary = run_fuller(*params, std::span(&compare, 1));
            rep.check(!diverged, "fast == fuller " + tag + describe(diverged));
            rep.check(tiled && expected_next == n_max + 1,
                      "fuller segments tile 1.." + std::to_string(n_max) + " once, in order");
            rep.check(true, "fuller schedule invariant held at " +
                                std::to_string(summary.schedule_checks) + " main-loop iterations");
            rep.check(summary.within_memory_bound(),
                      "fuller peak table bytes " + std::to_string(summary.peak_table_bytes) +
                          " <= H + (N/H + 2) L");
            rep.check(summary.max_kmax < params->step,
                      "fuller max kMax " + std::to_string(summary.max_kmax) + " < step");
        } catch (const invariant_error& e) {
            rep.check(false, std::string("fuller invariant: ") + e.what());
        }
    }

    // invariants over the reference table
    {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::uint64_t> pick(1, n_max);
        bool sub_ok = true;
        std::string where;
        for (std::uint64_t i = 0; i < opt.samples && n_max >= 2 && sub_ok; ++i) {
            const std::uint64_t a = pick(rng);
            if (a < n_max) {
                const std::uint64_t b = std::uniform_int_distribution<std::uint64_t>(1, n_max - a)(rng);
                if (fast[a + b] > fast[a] + fast[b]) {
                    sub_ok = false;
                    where = " at " + std::to_string(a) + " + " + std::to_string(b);
                }
            }
            const std::uint64_t c = pick(rng);
            const std::uint64_t d = std::uniform_int_distribution<std::uint64_t>(1, n_max / c)(rng);
            if (fast[c * d] > fast[c] + fast[d]) {
                sub_ok = false;
                where = " at " + std::to_string(c) + " * " + std::to_string(d);
            }
        }
        rep.check(sub_ok, "subadditivity under + and * (" + std::to_string(opt.samples) +
                              " random pairs)" + where);

        std::uint64_t bad = 0;
        for (std::uint64_t n = 2; n <= n_max; ++n) {
            if (fast[n] > 3.0 * std::log2(static_cast<double>(n))) {
                bad = n;
                break;
            }
        }
        rep.check(bad == 0 && fast[1] == 1, "||1|| = 1 and ||n|| <= 3 log2 n for 1 < n <= " +
                                                std::to_string(n_max) +
                                                (bad ? " (violated at " + std::to_string(bad) + ")" : ""));

        const StatsReport stats = stats_of(fast);
        bool e_ok = true;
        for (const auto& [c, n] : stats.largest_for) e_ok = e_ok && big_int(n) <= e_of(c);
        rep.check(e_ok, "largest n with ||n|| = c is <= E(c) for every observed c");
    }
    return rep;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"icx - integer complexity tables and digit-cost bounds"};
    app.require_subcommand(1);

    std::string n_text, out_path, h_text, step_text, range_text, range_out, base_text, cap_text,
        limit_text, fault_text, constant = "avg";
    bool force = false, show_ops = false;
    detail::StatsOutput stats_opts;
    std::size_t top = 10;

    auto* brute_cmd = app.add_subcommand("brute", "O(N^2) reference tabulation");
    brute_cmd->add_option("--n-max,-n", n_text, "Largest n")->required();
    brute_cmd->add_option("--out,-o", out_path, "Write the table file");
    brute_cmd->add_flag("--force", force, "Allow n_max above the brute-force guard");
    stats_opts.add_to(*brute_cmd);

    auto* fast_cmd = app.add_subcommand("fast", "Time-improved full-table algorithm");
    fast_cmd->add_option("--n-max,-n", n_text, "Largest n")->required();
    fast_cmd->add_option("--out,-o", out_path, "Write the table file");
    fast_cmd->add_flag("--ops", show_ops, "Print the relaxation count");
    stats_opts.add_to(*fast_cmd);

    auto* fuller_cmd = app.add_subcommand("fuller", "Space-improved segmented algorithm");
    fuller_cmd->add_option("--n-max,-n", n_text, "Largest n (N)")->required();
    fuller_cmd->add_option("--fixed-len,-H", h_text, "Fixed block length (H)")->required();
    fuller_cmd->add_option("--step,-s", step_text, "Running block step (half of L)")->required();
    fuller_cmd->add_option("--emit-range", range_text, "Write (n, ||n||) pairs for A..B");
    fuller_cmd->add_option("--range-out", range_out, "File for --emit-range (default stdout)");
    stats_opts.add_to(*fuller_cmd);

    auto* bounds_cmd = app.add_subcommand("bounds", "Digit-cost bounds: d0, avg, alpha, search");
    bounds_cmd->require_subcommand(1);
    auto* d0_cmd = bounds_cmd->add_subcommand("d0", "D0(b, r) for every digit r");
    auto* avg_cmd = bounds_cmd->add_subcommand("avg", "Average-case bound on C_avg for base b");
    auto* alpha_cmd = bounds_cmd->add_subcommand("alpha", "Running-time exponent for base b");
    for (auto* c : {d0_cmd, avg_cmd, alpha_cmd}) c->add_option("--base,-b", base_text, "Base b >= 2")->required();
    auto* search_cmd = bounds_cmd->add_subcommand("search", "Rank all bases 2^n 3^m <= cap");
    search_cmd->add_option("--cap", cap_text, "Largest base")->required();
    search_cmd->add_option("--constant", constant, "avg or alpha")->check(CLI::IsMember({"avg", "alpha"}));
    search_cmd->add_option("--top", top, "Rows to print");

    auto* solid_cmd = app.add_subcommand("solid", "List solid numbers up to a limit");
    solid_cmd->add_option("--limit,-l", limit_text, "Largest candidate")->required();
    solid_cmd->add_flag("--force", force, "Allow limits above the brute-force guard");

    auto* verify_cmd = app.add_subcommand("verify", "Cross-check all algorithms and invariants");
    verify_cmd->add_option("--n-max,-n", n_text, "Largest n")->required();
    verify_cmd->add_option("--fixed-len,-H", h_text, "Fixed block length for the Fuller run");
    verify_cmd->add_option("--step,-s", step_text, "Step for the Fuller run");
    verify_cmd->add_option("--inject-fault", fault_text, "Corrupt the reference entry for n (self-test)");
    verify_cmd->add_flag("--force", force, "Run brute force over the full n_max");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*brute_cmd || *fast_cmd) {
            const std::uint64_t n = parse_integer(n_text);
            if (n == 0) throw rejection("--n-max must be positive");
            FastCounters counters;
            const ComplexityTable table = *brute_cmd
                                              ? brute_complexity(n, {.allow_large = force})
                                              : fast_complexity(n, &counters);
            if (!out_path.empty()) save_table(out_path, table);
            if (show_ops) out << "relaxations " << counters.relaxations() << '\n';
            stats_opts.emit(out, stats_of(table));
            return ok;
        }

        if (*fuller_cmd) {
            const FullerParams p{parse_integer(n_text), parse_integer(h_text), parse_integer(step_text)};
            if (!check_parameters(p)) {
                out << "NOT GOOD PARAMETERS\n";
                return rejected;
            }
            out << "GOOD PARAMETERS\n";

            std::optional<std::pair<std::uint64_t, std::uint64_t>> range;
            if (!range_text.empty()) range = parse_range(range_text);
            std::ofstream range_file;
            std::ostream* range_os = &out;
            if (range && !range_out.empty()) {
                range_file.open(range_out, std::ios::trunc);
                if (!range_file) throw io_error("cannot write " + range_out);
                range_os = &range_file;
            }

            StatsAccumulator acc;
            std::vector<SegmentSink> sinks;
            sinks.emplace_back([&](const Segment& s) { acc.consume(s.first, s.values); });
            if (range) {
                sinks.emplace_back([&, lo = range->first, hi = range->second](const Segment& s) {
                    const std::uint64_t a = std::max(lo, s.first), b = std::min(hi, s.last);
                    for (std::uint64_t n = a; n <= b && a <= b; ++n)
                        *range_os << n << ' ' << unsigned(s.values[n - s.first]) << '\n';
                });
            }
            const FullerSummary summary = run_fuller(p, sinks);
            if (range_file.is_open() && !range_file.flush()) throw io_error("cannot write " + range_out);
            if (!stats_opts.quiet && !stats_opts.json) {
                out << "iterations " << summary.iterations << '\n'
                    << "running_blocks " << summary.running_blocks << '\n'
                    << "peak_table_bytes " << summary.peak_table_bytes << '\n'
                    << "max_kmax " << summary.max_kmax << '\n';
            }
            stats_opts.emit(out, acc.report());
            return ok;
        }

        if (*bounds_cmd) {
            if (*search_cmd) {
                const std::uint64_t cap = parse_integer(cap_text);
                if (cap < 2) throw rejection("--cap must be at least 2");
                const auto which = constant == "alpha" ? BoundConstant::alpha : BoundConstant::average;
                PrecisionScope precision;
                const auto ranked = base_search(cap, which);
                out << "constant " << constant << " cap " << cap << " candidates " << ranked.size() << '\n';
                for (std::size_t i = 0; i < ranked.size() && i < top; ++i) {
                    out << (i + 1) << ' ' << ranked[i].base << ' ' << detail::format_smooth(ranked[i]) << ' '
                        << truncated_digits(ranked[i].value, 25) << '\n';
                }
                return ok;
            }
            const std::uint64_t b = parse_integer(base_text);
            if (b < 2) throw rejection("--base must be at least 2");
            const ComplexityTable table = fast_complexity(b);
            const DigitCostTable dct = digit_costs(b, table);
            out << "base " << b << '\n';
            if (*d0_cmd) {
                for (std::uint64_t r = 0; r < b; ++r) out << "D0(" << b << "," << r << ") " << unsigned(dct.costs[r]) << '\n';
            } else if (*avg_cmd) {
                const AverageBound avg = average_bound(dct);
                out << "digit_sum " << avg.digit_sum << '\n'
                    << "mean " << avg.mean_num << "/" << avg.mean_den << '\n'
                    << "bound " << avg.mean_num << "/(" << avg.mean_den << "*ln(" << b << "))\n"
                    << "decimal " << truncated_digits(avg.value, 30) << '\n';
            } else {
                const AlphaResult alpha = alpha_for_base(dct);
                out << "A_b 3^" << alpha.three_power << " * " << detail::format_cubic(alpha.reduced) << '\n'
                    << "A_b/b " << alpha.scale_num << "/" << alpha.scale_den << " * "
                    << detail::format_cubic(alpha.reduced) << '\n'
                    << "alpha " << truncated_digits(alpha.value, 30) << '\n';
            }
            return ok;
        }

        if (*solid_cmd) {
            const std::uint64_t limit = parse_integer(limit_text);
            if (limit == 0) throw rejection("--limit must be positive");
            const SolidList solids = solid_numbers(limit, brute_complexity(limit, {.allow_large = force}));
            out << "solid";
            for (std::uint64_t b : solids.members()) out << ' ' << b;
            out << '\n';
            return ok;
        }

        if (*verify_cmd) {
            VerifyOptions opt;
            opt.n_max = parse_integer(n_text);
            if (opt.n_max == 0) throw rejection("--n-max must be positive");
            opt.force = force;
            if (h_text.empty() != step_text.empty())
                throw rejection("--fixed-len and --step go together");
            if (!h_text.empty()) opt.fuller = FullerParams{opt.n_max, parse_integer(h_text), parse_integer(step_text)};
            if (!fault_text.empty()) opt.inject_fault = parse_integer(fault_text);
            if (opt.fuller && !check_parameters(*opt.fuller)) {
                out << "NOT GOOD PARAMETERS\n";
                return rejected;
            }
            const VerifyReport rep = verify(opt);
            for (const auto& line : rep.lines) out << line << '\n';
            out << (rep.passed ? "VERIFY OK" : "VERIFY FAILED") << '\n';
            return rep.passed ? ok : verification_failed;
        }
    } catch (const io_error& e) {
        err << "icx: " << e.what() << '\n';
        return io_failure;
    } catch (const invariant_error& e) {
        err << "icx: internal fault: " << e.what() << '\n';
        return internal_fault;
    } catch (const std::invalid_argument& e) {
        err << "icx: " << e.what() << '\n';
        return rejected;
    }
    return usage;
}

} // namespace icx::cli
