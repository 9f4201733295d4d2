#pragma once
// table_file.hpp - binary complexity table: "ICX1", n_max as u64
// little-endian, then n_max bytes ||1||..||n_max||.

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "icx/core.hpp"

namespace icx {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::array<char, 4> table_magic{'I', 'C', 'X', '1'};
inline constexpr std::size_t table_header_size = 12;

inline void write_table(std::ostream& os, const ComplexityTable& table)
{
    os.write(table_magic.data(), table_magic.size());
    std::array<char, 8> len{};
    std::uint64_t n = table.n_max();
    for (auto& byte : len) {
        byte = static_cast<char>(n & 0xff);
        n >>= 8;
    }
    os.write(len.data(), len.size());
    const auto values = table.values();
    os.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size()));
    if (!os) throw io_error("write_table: stream write failed");
}

inline ComplexityTable read_table(std::istream& is)
{
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != table_magic)
        throw io_error("read_table: bad magic");
    std::array<unsigned char, 8> len{};
    if (!is.read(reinterpret_cast<char*>(len.data()), len.size()))
        throw io_error("read_table: truncated header");
    std::uint64_t n_max = 0;
    for (int i = 7; i >= 0; --i) n_max = (n_max << 8) | len[static_cast<std::size_t>(i)];
    if (n_max == 0) throw io_error("read_table: empty table");

    std::vector<complexity_t> values(n_max);
    if (!is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(n_max)))
        throw io_error("read_table: truncated body");
    if (is.peek() != std::char_traits<char>::eof()) throw io_error("read_table: trailing bytes");
    return ComplexityTable::from_values(values);
}

inline void save_table(const std::string& path, const ComplexityTable& table)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("cannot open " + path + " for writing");
    write_table(os, table);
}

inline ComplexityTable load_table(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open " + path);
    return read_table(is);
}

} // namespace icx
