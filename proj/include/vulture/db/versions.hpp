#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace vulture {

namespace detail {

    struct VersionSegment {
        bool numeric = false;
        long long number = 0;
        std::string text;
    };

    inline std::vector<VersionSegment> version_segments(std::string_view v)
    {
        std::vector<VersionSegment> segs;
        std::string cur;
        auto flush = [&]() {
            if (cur.empty())
                return;
            VersionSegment s;
            s.numeric = std::all_of(cur.begin(), cur.end(), [](unsigned char c) { return std::isdigit(c); });
            if (s.numeric)
                s.number = std::stoll(cur);
            s.text = cur;
            segs.push_back(std::move(s));
            cur.clear();
        };
        for (char c : v) {
            if (c == '.' || c == '-' || c == '_')
                flush();
            else
                cur += c;
        }
        flush();
        return segs;
    }

} // namespace detail

/// Strips a leading name prefix from a version tag: "wireshark-1.8.7" and
/// "v1.2.3" both reduce to their dotted numeric core.
inline std::string normalize_version_tag(std::string_view tag)
{
    std::size_t i = 0;
    while (i < tag.size() && !std::isdigit(static_cast<unsigned char>(tag[i])))
        ++i;
    if (i == tag.size())
        return std::string(tag);
    return std::string(tag.substr(i));
}

/// Segment-wise version order: split on '.', '-', '_'; numeric segments
/// compare numerically, others lexically; numeric sorts before alphanumeric;
/// a missing segment sorts before any present one ("1.8" < "1.8.0").
inline int compare_versions(std::string_view a, std::string_view b)
{
    auto sa = detail::version_segments(normalize_version_tag(a));
    auto sb = detail::version_segments(normalize_version_tag(b));
    std::size_t n = std::max(sa.size(), sb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= sa.size())
            return -1;
        if (i >= sb.size())
            return 1;
        const auto& x = sa[i];
        const auto& y = sb[i];
        if (x.numeric && y.numeric) {
            if (x.number != y.number)
                return x.number < y.number ? -1 : 1;
        } else if (x.numeric != y.numeric) {
            return x.numeric ? -1 : 1;
        } else if (x.text != y.text) {
            return x.text < y.text ? -1 : 1;
        }
    }
    return 0;
}

inline bool version_less(std::string_view a, std::string_view b)
{
    return compare_versions(a, b) < 0;
}

inline bool version_equal(std::string_view a, std::string_view b)
{
    return compare_versions(a, b) == 0;
}

} // namespace vulture
