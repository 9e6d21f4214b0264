#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vulture/core/text.hpp"

namespace vulture {

enum class TokenKind {
    Identifier,
    Number,
    String,
    CharLit,
    Punct,
    Preprocessor, // whole directive, continuations folded in
};

struct Token {
    TokenKind kind;
    std::string text;
    int line = 1; // 1-based line of the first character
};

namespace detail {

    inline bool at(std::string_view s, std::size_t i, char c)
    {
        return i < s.size() && s[i] == c;
    }

    // Consumes a string/char literal body starting after the opening quote.
    // Returns the index just past the closing quote (or end of input).
    inline std::size_t skip_quoted(std::string_view s, std::size_t i, char quote, int& line)
    {
        while (i < s.size()) {
            char c = s[i];
            if (c == '\\' && i + 1 < s.size()) {
                if (s[i + 1] == '\n')
                    ++line;
                i += 2;
                continue;
            }
            if (c == '\n') {
                // Unterminated literal; stop at the line break.
                return i;
            }
            ++i;
            if (c == quote)
                return i;
        }
        return i;
    }

    // C++ raw string R"delim( ... )delim".  `i` points at the character after
    // the opening double quote.  Returns index just past the closing quote.
    inline std::size_t skip_raw_string(std::string_view s, std::size_t i, int& line)
    {
        std::string delim;
        while (i < s.size() && s[i] != '(') {
            delim += s[i];
            ++i;
        }
        if (i >= s.size())
            return i;
        ++i; // past '('
        const std::string closer = ")" + delim + "\"";
        std::size_t pos = s.find(closer, i);
        if (pos == std::string_view::npos) {
            for (; i < s.size(); ++i)
                if (s[i] == '\n')
                    ++line;
            return s.size();
        }
        for (std::size_t k = i; k < pos; ++k)
            if (s[k] == '\n')
                ++line;
        return pos + closer.size();
    }

} // namespace detail

/// Tokenizes C/C++ source.  Comments are discarded; string and character
/// literals become single tokens; preprocessor directives (with backslash
/// continuations) become one token each.  Never fails: unknown bytes come
/// through as single-character puncts.
inline std::vector<Token> tokenize(std::string_view src)
{
    static const char* multi_ops[] = {
        "<<=", ">>=", "...", "->*", "::", "->", "++", "--", "<<", ">>", "<=", ">=",
        "==", "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##"
    };

    std::vector<Token> tokens;
    std::size_t i = 0;
    int line = 1;
    bool line_start = true; // only whitespace seen so far on this line

    while (i < src.size()) {
        char c = src[i];

        if (c == '\n') {
            ++line;
            ++i;
            line_start = true;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }

        // comments
        if (c == '/' && detail::at(src, i + 1, '/')) {
            while (i < src.size() && src[i] != '\n')
                ++i;
            continue;
        }
        if (c == '/' && detail::at(src, i + 1, '*')) {
            i += 2;
            while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
                if (src[i] == '\n')
                    ++line;
                ++i;
            }
            i = (i + 1 < src.size()) ? i + 2 : src.size();
            continue;
        }

        // preprocessor directive: '#' first on the line
        if (c == '#' && line_start) {
            int start_line = line;
            std::string text;
            while (i < src.size()) {
                char d = src[i];
                if (d == '\\' && detail::at(src, i + 1, '\n')) {
                    text += ' ';
                    i += 2;
                    ++line;
                    continue;
                }
                if (d == '\n')
                    break;
                if (d == '/' && detail::at(src, i + 1, '/')) {
                    while (i < src.size() && src[i] != '\n')
                        ++i;
                    break;
                }
                if (d == '/' && detail::at(src, i + 1, '*')) {
                    i += 2;
                    while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
                        if (src[i] == '\n')
                            ++line;
                        ++i;
                    }
                    i = (i + 1 < src.size()) ? i + 2 : src.size();
                    text += ' ';
                    continue;
                }
                text += d;
                ++i;
            }
            tokens.push_back({ TokenKind::Preprocessor, rtrim(std::move(text)), start_line });
            line_start = false;
            continue;
        }

        line_start = false;

        // raw string
        if (c == 'R' && detail::at(src, i + 1, '"')) {
            int start_line = line;
            std::size_t end = detail::skip_raw_string(src, i + 2, line);
            tokens.push_back({ TokenKind::String, std::string(src.substr(i, end - i)), start_line });
            i = end;
            continue;
        }

        if (c == '"') {
            int start_line = line;
            std::size_t end = detail::skip_quoted(src, i + 1, '"', line);
            tokens.push_back({ TokenKind::String, std::string(src.substr(i, end - i)), start_line });
            i = end;
            continue;
        }
        if (c == '\'') {
            int start_line = line;
            std::size_t end = detail::skip_quoted(src, i + 1, '\'', line);
            tokens.push_back({ TokenKind::CharLit, std::string(src.substr(i, end - i)), start_line });
            i = end;
            continue;
        }

        if (is_ident_start(c)) {
            std::size_t j = i + 1;
            while (j < src.size() && is_ident_char(src[j]))
                ++j;
            tokens.push_back({ TokenKind::Identifier, std::string(src.substr(i, j - i)), line });
            i = j;
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            // pp-number: digits, letters, dots, and exponent signs
            std::size_t j = i + 1;
            while (j < src.size()) {
                char d = src[j];
                if (is_ident_char(d) || d == '.') {
                    ++j;
                } else if ((d == '+' || d == '-') && (src[j - 1] == 'e' || src[j - 1] == 'E' || src[j - 1] == 'p' || src[j - 1] == 'P')) {
                    ++j;
                } else {
                    break;
                }
            }
            tokens.push_back({ TokenKind::Number, std::string(src.substr(i, j - i)), line });
            i = j;
            continue;
        }

        bool matched = false;
        for (const char* op : multi_ops) {
            std::size_t n = std::char_traits<char>::length(op);
            if (src.compare(i, n, op) == 0) {
                tokens.push_back({ TokenKind::Punct, op, line });
                i += n;
                matched = true;
                break;
            }
        }
        if (matched)
            continue;

        tokens.push_back({ TokenKind::Punct, std::string(1, c), line });
        ++i;
    }
    return tokens;
}

} // namespace vulture
