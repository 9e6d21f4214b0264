#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vulture/core/text.hpp"

namespace vulture {

enum class DiffSide {
    Deleted,
    Added,
};

/// One contiguous run of modified lines.
struct DiffHunk {
    int old_start = 0; // 1-based line in the old text where the run begins
    int new_start = 0; // 1-based line in the new text
    std::vector<std::string> deleted;
    std::vector<std::string> added;
};

struct LineDiff {
    std::vector<DiffHunk> hunks;

    bool empty() const { return hunks.empty(); }

    std::vector<std::string> added_lines() const
    {
        std::vector<std::string> out;
        for (const auto& h : hunks)
            out.insert(out.end(), h.added.begin(), h.added.end());
        return out;
    }

    std::vector<std::string> deleted_lines() const
    {
        std::vector<std::string> out;
        for (const auto& h : hunks)
            out.insert(out.end(), h.deleted.begin(), h.deleted.end());
        return out;
    }
};

namespace detail {

    enum class EditOp : char {
        Keep = '=',
        Delete = '-',
        Insert = '+',
    };

    struct Edit {
        EditOp op;
        int a_index; // index into old lines for Keep/Delete
        int b_index; // index into new lines for Keep/Insert
    };

    // Myers shortest-edit-script, greedy forward variant with a trace for
    // backtracking.
    inline std::vector<Edit> myers_edits(const std::vector<std::string>& a, const std::vector<std::string>& b)
    {
        const int n = static_cast<int>(a.size());
        const int m = static_cast<int>(b.size());
        const int max = n + m;
        std::vector<Edit> edits;
        if (max == 0)
            return edits;

        std::vector<int> v(2 * max + 1, 0);
        auto at = [&](std::vector<int>& vec, int k) -> int& { return vec[k + max]; };
        std::vector<std::vector<int>> trace;

        int d_final = -1;
        for (int d = 0; d <= max && d_final < 0; ++d) {
            trace.push_back(v);
            for (int k = -d; k <= d; k += 2) {
                int x;
                if (k == -d || (k != d && at(v, k - 1) < at(v, k + 1)))
                    x = at(v, k + 1);
                else
                    x = at(v, k - 1) + 1;
                int y = x - k;
                while (x < n && y < m && a[x] == b[y]) {
                    ++x;
                    ++y;
                }
                at(v, k) = x;
                if (x >= n && y >= m) {
                    d_final = d;
                    break;
                }
            }
        }

        int x = n, y = m;
        for (int d = d_final; d >= 0 && (x > 0 || y > 0); --d) {
            auto& vd = trace[d];
            int k = x - y;
            int prev_k;
            if (k == -d || (k != d && at(vd, k - 1) < at(vd, k + 1)))
                prev_k = k + 1;
            else
                prev_k = k - 1;
            int prev_x = (d > 0) ? at(vd, prev_k) : 0;
            int prev_y = prev_x - ((d > 0) ? prev_k : 0);

            while (x > prev_x && y > prev_y) {
                edits.push_back({ EditOp::Keep, x - 1, y - 1 });
                --x;
                --y;
            }
            if (d > 0) {
                if (x == prev_x) {
                    edits.push_back({ EditOp::Insert, -1, y - 1 });
                    --y;
                } else {
                    edits.push_back({ EditOp::Delete, x - 1, -1 });
                    --x;
                }
            }
        }
        std::reverse(edits.begin(), edits.end());
        return edits;
    }

} // namespace detail

/// Line diff between two texts (given as line vectors).  Hunks are maximal
/// runs of consecutive non-equal lines.
inline LineDiff diff_lines(const std::vector<std::string>& old_lines, const std::vector<std::string>& new_lines)
{
    LineDiff diff;
    auto edits = detail::myers_edits(old_lines, new_lines);

    int old_line = 1, new_line = 1;
    DiffHunk cur;
    bool open = false;

    auto flush = [&]() {
        if (open) {
            diff.hunks.push_back(cur);
            cur = {};
            open = false;
        }
    };

    for (const auto& e : edits) {
        switch (e.op) {
        case detail::EditOp::Keep:
            flush();
            ++old_line;
            ++new_line;
            break;
        case detail::EditOp::Delete:
            if (!open) {
                cur.old_start = old_line;
                cur.new_start = new_line;
                open = true;
            }
            cur.deleted.push_back(old_lines[e.a_index]);
            ++old_line;
            break;
        case detail::EditOp::Insert:
            if (!open) {
                cur.old_start = old_line;
                cur.new_start = new_line;
                open = true;
            }
            cur.added.push_back(new_lines[e.b_index]);
            ++new_line;
            break;
        }
    }
    flush();
    return diff;
}

inline LineDiff diff_texts(std::string_view old_text, std::string_view new_text)
{
    if (old_text == new_text)
        return {};
    return diff_lines(split_lines(old_text), split_lines(new_text));
}

// ---------------------------------------------------------------------------
// unified diff rendering / parsing
// ---------------------------------------------------------------------------

/// Renders a unified diff ("--- a/x\n+++ b/x\n@@ ... @@") with the classic
/// three lines of context.  Deterministic, so both git-backed and fixture
/// repositories can produce byte-identical diffs with it.
inline std::string render_unified(const std::string& old_path, const std::string& new_path,
    const std::vector<std::string>& old_lines, const std::vector<std::string>& new_lines,
    int context = 3)
{
    auto edits = detail::myers_edits(old_lines, new_lines);
    bool any_change = false;
    for (const auto& e : edits)
        if (e.op != detail::EditOp::Keep)
            any_change = true;
    if (!any_change)
        return "";

    struct Row {
        char tag; // ' ', '-', '+'
        const std::string* text;
        int old_no, new_no;
    };
    std::vector<Row> rows;
    rows.reserve(edits.size());
    int o = 1, nn = 1;
    for (const auto& e : edits) {
        switch (e.op) {
        case detail::EditOp::Keep:
            rows.push_back({ ' ', &old_lines[e.a_index], o, nn });
            ++o;
            ++nn;
            break;
        case detail::EditOp::Delete:
            rows.push_back({ '-', &old_lines[e.a_index], o, 0 });
            ++o;
            break;
        case detail::EditOp::Insert:
            rows.push_back({ '+', &new_lines[e.b_index], 0, nn });
            ++nn;
            break;
        }
    }

    std::string out = "--- a/" + old_path + "\n+++ b/" + new_path + "\n";
    std::size_t i = 0;
    while (i < rows.size()) {
        if (rows[i].tag == ' ') {
            ++i;
            continue;
        }
        // group of changes with up to `context` common lines around it
        std::size_t start = i;
        std::size_t end = i;
        std::size_t last_change = i;
        while (end < rows.size()) {
            if (rows[end].tag != ' ')
                last_change = end;
            else if (end - last_change > static_cast<std::size_t>(2 * context))
                break;
            ++end;
        }
        std::size_t hunk_begin = (start >= static_cast<std::size_t>(context)) ? start - context : 0;
        std::size_t hunk_end = std::min(rows.size(), last_change + context + 1);

        int old_start = 0, old_count = 0, new_start = 0, new_count = 0;
        for (std::size_t k = hunk_begin; k < hunk_end; ++k) {
            if (rows[k].tag != '+') {
                if (old_count == 0)
                    old_start = rows[k].old_no;
                ++old_count;
            }
            if (rows[k].tag != '-') {
                if (new_count == 0)
                    new_start = rows[k].new_no;
                ++new_count;
            }
        }
        if (old_count == 0)
            old_start = (hunk_begin > 0) ? rows[hunk_begin - 1].old_no : 0;
        if (new_count == 0)
            new_start = (hunk_begin > 0) ? rows[hunk_begin - 1].new_no : 0;

        out += "@@ -" + std::to_string(old_start) + "," + std::to_string(old_count)
            + " +" + std::to_string(new_start) + "," + std::to_string(new_count) + " @@\n";
        for (std::size_t k = hunk_begin; k < hunk_end; ++k) {
            out += rows[k].tag;
            out += *rows[k].text;
            out += '\n';
        }
        i = hunk_end;
    }
    return out;
}

/// One file's worth of a parsed unified diff.
struct FilePatch {
    std::string old_path;
    std::string new_path;
    std::vector<DiffHunk> hunks;

    /// Path with any a/ b/ prefix stripped; the new side unless deleted.
    std::string effective_path() const
    {
        const std::string& p = (new_path.empty() || new_path == "/dev/null") ? old_path : new_path;
        if (p.rfind("a/", 0) == 0 || p.rfind("b/", 0) == 0)
            return p.substr(2);
        return p;
    }
};

/// Parses unified diff text (ours or git's).  Unknown header lines are
/// skipped; context lines are dropped, keeping only added/deleted content.
inline std::vector<FilePatch> parse_unified(std::string_view text)
{
    std::vector<FilePatch> files;
    FilePatch cur;
    bool in_file = false;
    DiffHunk hunk;
    int old_no = 0, new_no = 0;
    long old_left = 0, new_left = 0; // lines still expected in the open @@ hunk

    auto flush_hunk = [&]() {
        if (!hunk.deleted.empty() || !hunk.added.empty())
            cur.hunks.push_back(hunk);
        hunk = {};
    };
    auto flush_file = [&]() {
        flush_hunk();
        if (in_file)
            files.push_back(cur);
        cur = {};
        in_file = false;
        old_left = new_left = 0;
    };

    auto parse_range = [](const std::string& s, std::size_t pos, int& start, long& count) {
        start = std::atoi(s.c_str() + pos);
        count = 1;
        std::size_t comma = s.find(',', pos);
        std::size_t space = s.find(' ', pos);
        if (comma != std::string::npos && (space == std::string::npos || comma < space))
            count = std::atol(s.c_str() + comma + 1);
    };

    bool in_hunk = false;
    for (auto& line : split_lines(text)) {
        bool hunk_content_pending = in_hunk && (old_left > 0 || new_left > 0);

        if (!hunk_content_pending && line.rfind("--- ", 0) == 0) {
            flush_file();
            cur.old_path = trim(line.substr(4));
            in_file = true;
            in_hunk = false;
            continue;
        }
        if (!hunk_content_pending && line.rfind("+++ ", 0) == 0 && in_file) {
            cur.new_path = trim(line.substr(4));
            continue;
        }
        if (!hunk_content_pending && line.rfind("@@", 0) == 0) {
            flush_hunk();
            in_hunk = true;
            std::size_t minus = line.find('-');
            std::size_t plus = line.find('+', minus == std::string::npos ? 0 : minus);
            if (minus != std::string::npos)
                parse_range(line, minus + 1, old_no, old_left);
            if (plus != std::string::npos)
                parse_range(line, plus + 1, new_no, new_left);
            continue;
        }
        if (!in_hunk)
            continue;
        if (line.rfind("\\ No newline", 0) == 0)
            continue;

        if (!line.empty() && line[0] == '-' && old_left > 0) {
            if (hunk.old_start == 0)
                hunk.old_start = old_no;
            if (hunk.new_start == 0)
                hunk.new_start = new_no;
            hunk.deleted.push_back(line.substr(1));
            ++old_no;
            --old_left;
        } else if (!line.empty() && line[0] == '+' && new_left > 0) {
            if (hunk.old_start == 0)
                hunk.old_start = old_no;
            if (hunk.new_start == 0)
                hunk.new_start = new_no;
            hunk.added.push_back(line.substr(1));
            ++new_no;
            --new_left;
        } else {
            // context: ends the current run of changes
            flush_hunk();
            ++old_no;
            ++new_no;
            if (old_left > 0)
                --old_left;
            if (new_left > 0)
                --new_left;
        }
        if (old_left <= 0 && new_left <= 0)
            in_hunk = false;
    }
    flush_file();
    return files;
}

} // namespace vulture
