#pragma once

#include "sidon/error.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sidon::text {

inline std::string_view strip(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        out.push_back(strip(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

template <class Int>
Int parse_int(std::string_view s)
{
    s = strip(s);
    Int value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
    return value;
}

template <class Int>
std::vector<Int> parse_int_list(std::string_view s, char sep = ',')
{
    std::vector<Int> out;
    if (strip(s).empty())
        return out;
    for (auto part : split(s, sep))
        out.push_back(parse_int<Int>(part));
    return out;
}

template <class Range>
std::string join(const Range& values, std::string_view sep = ",")
{
    std::string out;
    bool first = true;
    for (const auto& v : values) {
        if (!first)
            out += sep;
        out += std::to_string(v);
        first = false;
    }
    return out;
}

} // namespace sidon::text
