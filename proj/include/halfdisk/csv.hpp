#pragma once
/// @file csv.hpp
/// @brief Locale-independent number formatting shared by the CSV writers.

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace halfdisk
{
    /// Shortest text with 17 significant digits, '.' decimal point, "nan"/"inf" for non-finite values.
    [[nodiscard]] inline std::string format_number (double value)
    {
        if (std::isnan (value))
            return "nan";
        if (std::isinf (value))
            return value > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars (buf, buf + sizeof buf, value, std::chars_format::general, 17);
        return std::string (buf, res.ptr);
    }

    [[nodiscard]] inline std::vector<std::string_view> split_csv_line (std::string_view line)
    {
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (;;)
        {
            const auto comma = line.find (',', start);
            fields.push_back (line.substr (start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return fields;
    }

    /// Parses a full field as a double; false on trailing garbage.
    [[nodiscard]] inline bool parse_number (std::string_view text, double &value)
    {
        while (!text.empty () && (text.back () == '\r' || text.back () == ' '))
            text.remove_suffix (1);
        while (!text.empty () && text.front () == ' ')
            text.remove_prefix (1);
        if (text.empty ())
            return false;
        const auto res = std::from_chars (text.data (), text.data () + text.size (), value);
        return res.ec == std::errc{} && res.ptr == text.data () + text.size ();
    }

} // namespace halfdisk
