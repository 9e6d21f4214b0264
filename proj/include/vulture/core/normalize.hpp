#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vulture/core/lexer.hpp"
#include "vulture/core/text.hpp"

namespace vulture {

/// Placeholder every string literal is rewritten to, so that constant-string
/// content never influences digests or line matching.
inline constexpr std::string_view kStringPlaceholder = "\"S\"";

namespace detail {

    /// Comment and string stripping with line structure preserved.  Each
    /// output element is one line of code with comments removed and string
    /// literals replaced by the placeholder; lines are not yet trimmed.
    /// `raw_line_of`, when given, receives the 1-based source line for every
    /// output line.
    inline std::vector<std::string> strip_lines(std::string_view src, std::vector<int>* raw_line_of = nullptr)
    {
        std::vector<std::string> out;
        std::string cur;
        int line = 1;

        auto flush = [&](int at_line) {
            out.push_back(cur);
            if (raw_line_of)
                raw_line_of->push_back(at_line);
            cur.clear();
        };

        std::size_t i = 0;
        while (i < src.size()) {
            char c = src[i];
            if (c == '\n') {
                flush(line);
                ++line;
                ++i;
                continue;
            }
            if (c == '\r') {
                ++i;
                continue;
            }
            if (c == '/' && detail::at(src, i + 1, '/')) {
                while (i < src.size() && src[i] != '\n')
                    ++i;
                continue;
            }
            if (c == '/' && detail::at(src, i + 1, '*')) {
                i += 2;
                while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
                    if (src[i] == '\n') {
                        flush(line);
                        ++line;
                    }
                    ++i;
                }
                i = (i + 1 < src.size()) ? i + 2 : src.size();
                continue;
            }
            if (c == 'R' && detail::at(src, i + 1, '"')) {
                int before = line;
                std::size_t end = skip_raw_string(src, i + 2, line);
                for (int k = before; k < line; ++k)
                    flush(k);
                cur += kStringPlaceholder;
                i = end;
                continue;
            }
            if (c == '"') {
                std::size_t end = skip_quoted(src, i + 1, '"', line);
                cur += kStringPlaceholder;
                i = end;
                continue;
            }
            if (c == '\'') {
                std::size_t end = skip_quoted(src, i + 1, '\'', line);
                cur.append(src.substr(i, end - i));
                i = end;
                continue;
            }
            cur += c;
            ++i;
        }
        if (!cur.empty())
            flush(line);
        return out;
    }

} // namespace detail

/// Normalized form of a code fragment: comments gone, every line trimmed of
/// leading and trailing whitespace, blank lines dropped, string literals
/// replaced by "S".  Idempotent.
inline std::string normalize_text(std::string_view body)
{
    std::vector<std::string> kept;
    for (auto& l : detail::strip_lines(body)) {
        std::string t = trim(std::move(l));
        if (!t.empty())
            kept.push_back(std::move(t));
    }
    return join_lines(kept);
}

/// Normalized lines plus, per normalized line, the 1-based line number it
/// came from in `body`.  Used when diff output has to be mapped back onto
/// raw source locations.
inline std::vector<std::pair<std::string, int>> normalize_lines_with_origin(std::string_view body)
{
    std::vector<int> origins;
    std::vector<std::pair<std::string, int>> kept;
    auto stripped = detail::strip_lines(body, &origins);
    for (std::size_t i = 0; i < stripped.size(); ++i) {
        std::string t = trim(std::move(stripped[i]));
        if (!t.empty())
            kept.emplace_back(std::move(t), origins[i]);
    }
    return kept;
}

} // namespace vulture
