#pragma once

#include <array>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vulture/core/lexer.hpp"
#include "vulture/core/snippet.hpp"
#include "vulture/core/text.hpp"

namespace vulture {

/// Per-line syntactic facts: the identifiers a statement works on and the
/// ordered operation tokens (callee names, operators, control keywords) it
/// performs.  control_depth / control_block are only meaningful when the
/// facts were produced with surrounding context (see annotate_control).
struct StatementFacts {
    std::set<std::string> variables;
    std::vector<std::string> operations;
    int control_depth = 0;
    std::optional<std::string> control_block;
    bool unclassified = false; // line had content but no catalog pattern matched
};

/// One entry of the statement catalog: a named regular expression that
/// classifies exactly one kind of operation token.
struct StatementPattern {
    std::string_view name;
    std::regex pattern;
};

namespace detail {

    inline bool is_type_keyword(const std::string& s)
    {
        static const std::set<std::string> types = {
            "void", "char", "short", "int", "long", "float", "double", "signed",
            "unsigned", "bool", "_Bool", "size_t", "ssize_t", "wchar_t", "auto",
            "int8_t", "int16_t", "int32_t", "int64_t",
            "uint8_t", "uint16_t", "uint32_t", "uint64_t",
            "intptr_t", "uintptr_t", "ptrdiff_t", "FILE",
        };
        if (types.count(s))
            return true;
        return s.size() > 2 && s.rfind("_t") == s.size() - 2;
    }

    inline bool is_control_keyword(const std::string& s)
    {
        static const std::set<std::string> kw = {
            "if", "else", "while", "for", "switch", "case", "default", "do",
            "goto", "return", "break", "continue"
        };
        return kw.count(s) > 0;
    }

    inline bool is_qualifier_keyword(const std::string& s)
    {
        static const std::set<std::string> kw = {
            "static", "const", "extern", "register", "volatile", "inline",
            "restrict", "struct", "union", "enum", "typedef", "constexpr"
        };
        return kw.count(s) > 0;
    }

} // namespace detail

/// The statement catalog.  Forty patterns covering every operation-token
/// class the analyzer recognizes: control headers, call expressions, the
/// operator families, subscripts, member access, casts and declarations.
inline const std::array<StatementPattern, 40>& statement_catalog()
{
    static const std::array<StatementPattern, 40> catalog = { {
        { "kw_if", std::regex(R"(^if\b)") },
        { "kw_else", std::regex(R"(^else\b)") },
        { "kw_while", std::regex(R"(^while\b)") },
        { "kw_for", std::regex(R"(^for\b)") },
        { "kw_switch", std::regex(R"(^switch\b)") },
        { "kw_case", std::regex(R"(^case\b)") },
        { "kw_default", std::regex(R"(^default\b)") },
        { "kw_do", std::regex(R"(^do\b)") },
        { "kw_goto", std::regex(R"(^goto\b)") },
        { "kw_return", std::regex(R"(^return\b)") },
        { "kw_break", std::regex(R"(^break\b)") },
        { "kw_continue", std::regex(R"(^continue\b)") },
        { "call_expr", std::regex(R"(^([A-Za-z_]\w*)\s*\()") },
        { "compound_assign", std::regex(R"(^(\+=|-=|\*=|/=|%=|&=|\|=|\^=|<<=|>>=))") },
        { "cmp_eq", std::regex(R"(^==)") },
        { "cmp_ne", std::regex(R"(^!=)") },
        { "cmp_rel", std::regex(R"(^(<=|>=|<|>))") },
        { "assign", std::regex(R"(^=)") },
        { "logical_and", std::regex(R"(^&&)") },
        { "logical_or", std::regex(R"(^\|\|)") },
        { "logical_not", std::regex(R"(^!)") },
        { "shift_left", std::regex(R"(^<<)") },
        { "shift_right", std::regex(R"(^>>)") },
        { "increment", std::regex(R"(^\+\+)") },
        { "decrement", std::regex(R"(^--)") },
        { "add", std::regex(R"(^\+)") },
        { "sub", std::regex(R"(^-)") },
        { "mul", std::regex(R"(^\*)") },
        { "div", std::regex(R"(^/)") },
        { "mod", std::regex(R"(^%)") },
        { "bit_and", std::regex(R"(^&)") },
        { "bit_or", std::regex(R"(^\|)") },
        { "bit_xor", std::regex(R"(^\^)") },
        { "bit_not", std::regex(R"(^~)") },
        { "ternary", std::regex(R"(^\?)") },
        { "member_arrow", std::regex(R"(^->)") },
        { "member_dot", std::regex(R"(^\.(?=[A-Za-z_]))") },
        { "subscript", std::regex(R"(^\[)") },
        { "cast", std::regex(R"(^\(\s*(?:const\s+)?(?:struct\s+|union\s+|enum\s+)?[A-Za-z_]\w*(?:\s+\w+)*\s*\*+\s*\)|^\(\s*(?:unsigned|signed|int|long|short|char|float|double|size_t|void|[A-Za-z_]\w*_t)(?:\s+\w+)*\s*\))") },
        { "declaration", std::regex(R"(^(?:(?:static|const|extern|register|volatile|inline|constexpr|struct|union|enum|unsigned|signed)\s+)*[A-Za-z_]\w*(?:\s*\*+\s*|\s+)[A-Za-z_]\w*\s*(?:[=;,\[]|$))") },
    } };
    return catalog;
}

/// Extracts variables and ordered operation tokens from one normalized
/// source line.  Pure: depends on the line text alone.
inline StatementFacts statement_facts(std::string_view line_in)
{
    const auto& catalog = statement_catalog();
    StatementFacts facts;

    std::string line = trim(std::string(line_in));
    if (line.empty())
        return facts;

    std::set<std::string> callees;
    std::set<std::string> type_names;
    bool any_match = false;
    bool content_seen = false;

    // Declarations are detected against the whole line; the leading type
    // tokens are remembered so they do not surface as variables.
    std::smatch m;
    const StatementPattern& decl_pat = catalog[39];
    if (std::regex_search(line, m, decl_pat.pattern) && !detail::is_control_keyword(line.substr(0, line.find_first_of(" \t(")))) {
        std::string head = m.str();
        auto toks = tokenize(head);
        std::vector<std::string> idents;
        for (auto& t : toks)
            if (t.kind == TokenKind::Identifier)
                idents.push_back(t.text);
        if (idents.size() >= 2) {
            facts.operations.push_back("decl");
            any_match = true;
            for (std::size_t k = 0; k + 1 < idents.size(); ++k)
                if (!detail::is_qualifier_keyword(idents[k]))
                    type_names.insert(idents[k]);
        }
    }

    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        content_seen = true;

        // literals pass through untouched
        if (c == '"') {
            int dummy = 1;
            i = detail::skip_quoted(line, i + 1, '"', dummy);
            continue;
        }
        if (c == '\'') {
            int dummy = 1;
            i = detail::skip_quoted(line, i + 1, '\'', dummy);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (j < n && (is_ident_char(line[j]) || line[j] == '.'))
                ++j;
            i = j;
            continue;
        }

        if (is_ident_start(c)) {
            std::size_t j = i + 1;
            while (j < n && is_ident_char(line[j]))
                ++j;
            std::string ident = line.substr(i, j - i);

            if (detail::is_control_keyword(ident)) {
                facts.operations.push_back(ident);
                any_match = true;
                i = j;
                continue;
            }

            // call expression?
            std::size_t k = j;
            while (k < n && std::isspace(static_cast<unsigned char>(line[k])))
                ++k;
            if (k < n && line[k] == '(' && !detail::is_keyword(ident) && !detail::is_type_keyword(ident)) {
                facts.operations.push_back(ident);
                callees.insert(ident);
                any_match = true;
                i = j;
                continue;
            }

            if (!detail::is_keyword(ident) && !detail::is_type_keyword(ident)
                && !type_names.count(ident) && ident != "NULL")
                facts.variables.insert(ident);
            i = j;
            continue;
        }

        // cast: only at a '(' position, and only when it looks like a type
        if (c == '(') {
            std::string rest = line.substr(i);
            if (std::regex_search(rest, m, catalog[38].pattern)) {
                facts.operations.push_back("cast");
                any_match = true;
                // the type identifiers inside are not variables
                for (auto& id : identifiers_in(m.str()))
                    type_names.insert(id);
                i += m.length();
                continue;
            }
            ++i;
            continue;
        }

        // operator catalog; the order resolves prefix clashes (-> before -,
        // << before <, ++ before +, ...)
        static const std::size_t op_order[] = {
            13 /*compound_assign*/, 18 /*logical_and*/, 19 /*logical_or*/,
            14 /*cmp_eq*/, 15 /*cmp_ne*/, 21 /*shift_left*/, 22 /*shift_right*/,
            16 /*cmp_rel*/, 35 /*member_arrow*/, 23 /*increment*/, 24 /*decrement*/,
            17 /*assign*/, 20 /*logical_not*/, 25 /*add*/, 26 /*sub*/, 27 /*mul*/,
            28 /*div*/, 29 /*mod*/, 30 /*bit_and*/, 31 /*bit_or*/, 32 /*bit_xor*/,
            33 /*bit_not*/, 34 /*ternary*/, 36 /*member_dot*/, 37 /*subscript*/
        };
        bool matched = false;
        std::string rest = line.substr(i);
        for (std::size_t p : op_order) {
            if (std::regex_search(rest, m, catalog[p].pattern)) {
                std::string tok = m.str();
                if (catalog[p].name == "member_dot")
                    tok = ".";
                facts.operations.push_back(tok);
                any_match = true;
                i += tok.size();
                matched = true;
                break;
            }
        }
        if (matched)
            continue;

        ++i; // structural punctuation: ; , ( ) { } and anything else
    }

    // strip callee names from the variable set
    for (const auto& c2 : callees)
        facts.variables.erase(c2);

    bool only_punct = facts.operations.empty() && facts.variables.empty();
    facts.unclassified = content_seen && only_punct && line.find_first_not_of("(){};,: \t") != std::string::npos;
    return facts;
}

/// Control context of every line of a snippet body: nesting depth and the
/// identity of the innermost control block.  A control header line belongs
/// to the block it opens.  Depth 0 lines have no block.
struct ControlContext {
    int depth = 0;
    std::optional<std::string> block;
};

inline std::vector<ControlContext> annotate_control(const std::vector<std::string>& lines)
{
    // Plain braces (function bodies, bare compound statements) are tracked so
    // that popping works, but only control scopes contribute to depth and
    // block identity.
    struct Scope {
        bool control = false;
        std::string id;
        bool braced = false;
    };

    std::vector<ControlContext> out(lines.size());
    std::vector<Scope> stack;
    static const std::regex header_re(R"(^(?:\}\s*)?(if|else if|else|while|for|switch|do)\b)");

    auto context_of = [&]() -> ControlContext {
        int depth = 0;
        for (const auto& s : stack)
            if (s.control)
                ++depth;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it)
            if (it->control)
                return { depth, it->id };
        return { 0, std::nullopt };
    };

    for (std::size_t idx = 0; idx < lines.size(); ++idx) {
        const std::string& line = lines[idx];
        std::smatch m;
        bool is_header = std::regex_search(line, m, header_re);

        int opens = 0, closes = 0;
        for (std::size_t i2 = 0; i2 < line.size(); ++i2) {
            char c = line[i2];
            if (c == '"') {
                int dummy = 1;
                i2 = detail::skip_quoted(line, i2 + 1, '"', dummy) - 1;
            } else if (c == '\'') {
                int dummy = 1;
                i2 = detail::skip_quoted(line, i2 + 1, '\'', dummy) - 1;
            } else if (c == '{') {
                ++opens;
            } else if (c == '}') {
                ++closes;
            }
        }

        // a leading '}' closes the innermost braced scope before this line runs
        std::string lt = ltrim(line);
        while (closes > 0 && !lt.empty() && lt.front() == '}') {
            if (!stack.empty())
                stack.pop_back();
            --closes;
            lt = ltrim(lt.substr(1));
        }

        if (is_header) {
            Scope b;
            b.control = true;
            b.id = std::string(m[1]) + "@" + std::to_string(idx + 1);
            b.braced = opens > 0;
            stack.push_back(b);
            out[idx] = context_of();
            if (b.braced) {
                --opens;
            } else {
                std::size_t semi = line.find(';');
                std::size_t paren = line.rfind(')');
                if (semi != std::string::npos && (paren == std::string::npos || semi > paren)) {
                    // single-line body: `if (x) y = 1;`
                    stack.pop_back();
                }
            }
        } else {
            out[idx] = context_of();
            if (!stack.empty() && !stack.back().braced && stack.back().control) {
                if (opens > 0) {
                    stack.back().braced = true;
                    --opens;
                } else if (line.find(';') != std::string::npos) {
                    stack.pop_back(); // brace-less body: one statement and out
                }
            }
        }

        // remaining brace arithmetic on this line
        while (opens > 0 && closes > 0) {
            --opens;
            --closes;
        }
        for (; opens > 0; --opens)
            stack.push_back({ false, "brace@" + std::to_string(idx + 1), true });
        for (; closes > 0; --closes)
            if (!stack.empty())
                stack.pop_back();
    }
    return out;
}

} // namespace vulture
