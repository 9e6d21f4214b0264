#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vulture/core/lexer.hpp"
#include "vulture/core/normalize.hpp"
#include "vulture/core/text.hpp"

namespace vulture {

enum class SnippetKind {
    Function,
    GlobalDecl,
};

struct LineSpan {
    int start = 0; // 1-based, inclusive
    int end = 0;

    bool operator==(const LineSpan&) const = default;
};

/// One top-level program element: a function definition or a global
/// declaration (variable, structure, typedef, macro, prototype, ...).
struct SourceSnippet {
    SnippetKind kind = SnippetKind::GlobalDecl;
    std::string name;
    std::string body;            // raw source lines of the element
    std::string normalized_body; // filled by normalize()
    std::string file_path;
    LineSpan line_span;
};

struct ExtractWarning {
    std::string file_path;
    int line = 0;
    std::string message;
};

struct ExtractResult {
    std::vector<SourceSnippet> snippets;
    std::vector<ExtractWarning> warnings;
};

namespace detail {

    inline const std::set<std::string>& cxx_keywords()
    {
        static const std::set<std::string> kw = {
            "alignas", "alignof", "asm", "auto", "bool", "break", "case", "catch",
            "char", "class", "const", "constexpr", "continue", "decltype", "default",
            "delete", "do", "double", "else", "enum", "explicit", "extern", "false",
            "float", "for", "friend", "goto", "if", "inline", "int", "long",
            "mutable", "namespace", "new", "noexcept", "nullptr", "operator",
            "private", "protected", "public", "register", "restrict", "return",
            "short", "signed", "sizeof", "static", "struct", "switch", "template",
            "this", "throw", "true", "try", "typedef", "typename", "union",
            "unsigned", "using", "virtual", "void", "volatile", "while",
            "_Bool", "_Static_assert", "__attribute__", "__declspec", "__extension__",
            "__asm__", "__inline__", "__restrict__", "__typeof__",
        };
        return kw;
    }

    inline bool is_keyword(const std::string& s)
    {
        return cxx_keywords().count(s) > 0;
    }

    inline bool is_tag_keyword(const std::string& s)
    {
        return s == "struct" || s == "class" || s == "union" || s == "enum";
    }

    /// Name of a preprocessor directive snippet.  #define/#undef/#if* use the
    /// controlled identifier, #include the header text, anything else the
    /// directive keyword itself.
    inline std::string preprocessor_name(const std::string& directive)
    {
        auto toks = tokenize(ltrim(directive).substr(1)); // past '#'
        if (toks.empty())
            return "#";
        const std::string& kw = toks[0].text;
        if ((kw == "define" || kw == "undef" || kw == "ifdef" || kw == "ifndef") && toks.size() > 1)
            return toks[1].text;
        if (kw == "include" && toks.size() > 1) {
            std::string rest = trim(ltrim(directive).substr(1 + 7 /*include*/));
            if (rest.size() >= 2 && (rest.front() == '<' || rest.front() == '"'))
                return trim(rest.substr(1, rest.size() - 2));
            return rest;
        }
        return kw;
    }

    /// Declarator name for an accumulated top-level declaration.
    inline std::string declaration_name(const std::vector<Token>& toks)
    {
        if (toks.empty())
            return "";

        // initialized declarator: identifier left of the first top-level '='
        int depth = 0;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            const std::string& t = toks[i].text;
            if (toks[i].kind == TokenKind::Punct) {
                if (t == "(" || t == "[" || t == "{")
                    ++depth;
                else if (t == ")" || t == "]" || t == "}")
                    --depth;
                else if (t == "=" && depth == 0) {
                    for (std::size_t j = i; j-- > 0;) {
                        if (toks[j].kind == TokenKind::Punct && toks[j].text == "]") {
                            int d = 1;
                            while (j-- > 0 && d > 0) {
                                if (toks[j].text == "]")
                                    ++d;
                                else if (toks[j].text == "[")
                                    --d;
                            }
                            continue;
                        }
                        if (toks[j].kind == TokenKind::Identifier && !is_keyword(toks[j].text))
                            return toks[j].text;
                    }
                    return "";
                }
            }
        }

        // tagged type definition: struct/class/union/enum NAME { ... }
        for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
            if (toks[i].kind == TokenKind::Identifier && is_tag_keyword(toks[i].text)
                && toks[i + 1].kind == TokenKind::Identifier && !is_keyword(toks[i + 1].text)) {
                if (i + 2 < toks.size()
                    && toks[i + 2].kind == TokenKind::Punct
                    && (toks[i + 2].text == "{" || toks[i + 2].text == ":"))
                    return toks[i + 1].text;
                if (i + 2 == toks.size())
                    return toks[i + 1].text;
            }
        }

        // otherwise walk backwards skipping suffix groups
        std::size_t i = toks.size();
        while (i-- > 0) {
            const Token& t = toks[i];
            if (t.kind == TokenKind::Punct && t.text == "]") {
                int d = 1;
                while (i-- > 0 && d > 0) {
                    if (toks[i].text == "]")
                        ++d;
                    else if (toks[i].text == "[")
                        --d;
                }
                continue;
            }
            if (t.kind == TokenKind::Punct && t.text == ")") {
                std::size_t close = i;
                int d = 1;
                while (i-- > 0 && d > 0) {
                    if (toks[i].text == ")")
                        ++d;
                    else if (toks[i].text == "(")
                        --d;
                }
                // `name(...)` → prototype, keep walking to find `name`.
                // `(*name)(...)` → declarator parens: the name is inside.
                if (i != std::size_t(-1) && i > 0 && toks[i - 1].kind == TokenKind::Identifier && !is_keyword(toks[i - 1].text))
                    continue;
                for (std::size_t j = close; j-- > i + 1;) {
                    if (toks[j].kind == TokenKind::Identifier && !is_keyword(toks[j].text))
                        return toks[j].text;
                }
                continue;
            }
            if (t.kind == TokenKind::Punct && t.text == "}") {
                int d = 1;
                while (i-- > 0 && d > 0) {
                    if (toks[i].text == "}")
                        ++d;
                    else if (toks[i].text == "{")
                        --d;
                }
                continue;
            }
            if (t.kind == TokenKind::Identifier && !is_keyword(t.text))
                return t.text;
        }
        return "";
    }

} // namespace detail

/// Splits C/C++ source into top-level snippets.  Function definitions become
/// kind=Function (body spans the full definition through its closing brace);
/// everything else at file scope — variables, prototypes, types, macros —
/// becomes kind=GlobalDecl.  namespace and extern "C" blocks are transparent:
/// their contents are still treated as top level.  Input does not have to be
/// compilable; an unclosed function body yields a warning and the snippets
/// collected up to that point are still returned.
inline ExtractResult extract_snippets(std::string_view source_text, const std::string& file_path)
{
    ExtractResult result;
    auto raw_lines = split_lines(source_text);
    auto tokens = tokenize(source_text);

    auto line_text = [&](int first, int last) {
        std::string out;
        for (int l = first; l <= last && l <= static_cast<int>(raw_lines.size()); ++l) {
            if (l > first)
                out += '\n';
            out += raw_lines[l - 1];
        }
        return out;
    };

    std::vector<Token> decl;
    int decl_start_line = 0;
    int paren_depth = 0;
    bool has_assign = false;
    std::string fn_name;
    std::string paren_candidate;
    bool fn_name_locked = false;
    int transparent_scopes = 0;

    auto reset_decl = [&]() {
        decl.clear();
        decl_start_line = 0;
        paren_depth = 0;
        has_assign = false;
        fn_name.clear();
        paren_candidate.clear();
        fn_name_locked = false;
    };

    auto emit_decl = [&](int end_line) {
        if (decl.empty())
            return;
        std::string name = detail::declaration_name(decl);
        SourceSnippet s;
        s.kind = SnippetKind::GlobalDecl;
        s.name = std::move(name);
        s.line_span = { decl_start_line, end_line };
        s.body = line_text(decl_start_line, end_line);
        s.file_path = file_path;
        result.snippets.push_back(std::move(s));
        reset_decl();
    };

    std::size_t i = 0;
    const std::size_t n = tokens.size();

    // Skips from the token at `from` (an opening '{') to its matching '}'.
    // Returns the index of the closing token, or npos when unbalanced.
    auto match_brace = [&](std::size_t from) -> std::size_t {
        int depth = 0;
        for (std::size_t k = from; k < n; ++k) {
            if (tokens[k].kind != TokenKind::Punct)
                continue;
            if (tokens[k].text == "{")
                ++depth;
            else if (tokens[k].text == "}") {
                if (--depth == 0)
                    return k;
            }
        }
        return std::string::npos;
    };

    while (i < n) {
        const Token& t = tokens[i];

        if (t.kind == TokenKind::Preprocessor) {
            if (decl.empty()) {
                SourceSnippet s;
                s.kind = SnippetKind::GlobalDecl;
                s.name = detail::preprocessor_name(t.text);
                int end_line = t.line + static_cast<int>(std::count(t.text.begin(), t.text.end(), '\n'));
                // continuations were folded; recover the true extent from the raw text
                int last = t.line;
                while (last <= static_cast<int>(raw_lines.size()) && !raw_lines[last - 1].empty()
                    && raw_lines[last - 1].back() == '\\')
                    ++last;
                end_line = std::max(end_line, last);
                s.line_span = { t.line, end_line };
                s.body = line_text(t.line, end_line);
                s.file_path = file_path;
                result.snippets.push_back(std::move(s));
            }
            ++i;
            continue;
        }

        if (t.kind == TokenKind::Punct && t.text == "{") {
            // namespace / extern "C" open a transparent scope
            bool is_namespace = !decl.empty() && decl.front().text == "namespace";
            bool is_extern_block = decl.size() == 2 && decl[0].text == "extern" && decl[1].kind == TokenKind::String;
            if (is_namespace || is_extern_block) {
                ++transparent_scopes;
                reset_decl();
                ++i;
                continue;
            }

            bool looks_like_function = fn_name_locked && !has_assign && paren_depth == 0;
            bool type_body = false;
            for (const Token& d : decl)
                if (d.kind == TokenKind::Identifier && detail::is_tag_keyword(d.text))
                    type_body = true;
            // `struct foo make_foo(...) {` is still a function: the paren
            // group after the name decides.
            if (looks_like_function && !decl.empty() && decl.back().kind == TokenKind::Punct
                && (decl.back().text == ")" || decl.back().text == ":")) {
                type_body = false;
            } else if (looks_like_function && type_body) {
                looks_like_function = false;
            }

            if (looks_like_function && !type_body) {
                std::size_t close = match_brace(i);
                if (close == std::string::npos) {
                    result.warnings.push_back({ file_path, t.line, "unbalanced braces: function body never closes" });
                    reset_decl();
                    break;
                }
                SourceSnippet s;
                s.kind = SnippetKind::Function;
                s.name = fn_name;
                s.line_span = { decl_start_line, tokens[close].line };
                s.body = line_text(decl_start_line, tokens[close].line);
                s.file_path = file_path;
                result.snippets.push_back(std::move(s));
                reset_decl();
                i = close + 1;
                continue;
            }

            // type definition or aggregate initializer: braces belong to the
            // declaration, keep accumulating until the terminating ';'
            std::size_t close = match_brace(i);
            if (close == std::string::npos) {
                result.warnings.push_back({ file_path, t.line, "unbalanced braces in declaration" });
                reset_decl();
                break;
            }
            if (decl.empty())
                decl_start_line = t.line;
            for (std::size_t k = i; k <= close; ++k)
                if (tokens[k].kind != TokenKind::Preprocessor)
                    decl.push_back(tokens[k]);
            i = close + 1;
            continue;
        }

        if (t.kind == TokenKind::Punct && t.text == "}") {
            if (transparent_scopes > 0 && decl.empty())
                --transparent_scopes;
            else
                reset_decl(); // stray brace: drop whatever was accumulated
            ++i;
            continue;
        }

        if (t.kind == TokenKind::Punct && t.text == ";" && paren_depth == 0) {
            if (!decl.empty())
                emit_decl(t.line);
            ++i;
            continue;
        }

        if (decl.empty())
            decl_start_line = t.line;
        decl.push_back(t);

        if (t.kind == TokenKind::Punct) {
            if (t.text == "(") {
                if (paren_depth == 0 && !fn_name_locked && decl.size() >= 2) {
                    const Token& prev = decl[decl.size() - 2];
                    if (prev.kind == TokenKind::Identifier && !detail::is_keyword(prev.text))
                        paren_candidate = prev.text;
                }
                ++paren_depth;
            } else if (t.text == ")") {
                if (paren_depth > 0)
                    --paren_depth;
                if (paren_depth == 0 && !fn_name_locked && !paren_candidate.empty()) {
                    fn_name = paren_candidate;
                    fn_name_locked = true;
                }
            } else if (t.text == "=" && paren_depth == 0) {
                has_assign = true;
            }
        }
        ++i;
    }

    if (!decl.empty())
        emit_decl(decl.back().line);

    return result;
}

/// extract_snippets + normalization of every snippet body.
inline ExtractResult extract_normalized_snippets(std::string_view source_text, const std::string& file_path)
{
    ExtractResult r = extract_snippets(source_text, file_path);
    for (auto& s : r.snippets)
        s.normalized_body = normalize_text(s.body);
    return r;
}

/// normalize() over a single snippet, per the code model contract.
inline SourceSnippet normalize(SourceSnippet snippet)
{
    snippet.normalized_body = normalize_text(snippet.body);
    return snippet;
}

} // namespace vulture
