#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vulture/clients/git.hpp"
#include "vulture/core/digest.hpp"
#include "vulture/core/snippet.hpp"
#include "vulture/db/versions.hpp"
#include "vulture/errors.hpp"
#include "vulture/support/time.hpp"

namespace vulture {

/// fc = <H, Birth>: fuzzy digest of one library function plus the time it
/// first appeared in history, with its origin for parent resolution.
struct FunctionFingerprint {
    FuzzyDigest hash;
    std::int64_t birth = 0;
    std::string origin_tpl;
    std::string origin_path;

    bool operator==(const FunctionFingerprint&) const = default;
};

struct TplVersionRecord {
    std::string tpl_name;
    std::string version_tag;
    std::int64_t publish_time = 0;
    std::vector<FunctionFingerprint> fingerprints;
};

struct ComponentSegment {
    std::map<std::string, std::vector<TplVersionRecord>> tpls;
    std::map<std::string, FunctionFingerprint> hash_index; // digest hex -> surviving fingerprint

    std::size_t fingerprint_count() const
    {
        std::size_t n = 0;
        for (const auto& [_, versions] : tpls)
            for (const auto& v : versions)
                n += v.fingerprints.size();
        return n;
    }
};

// ---------------------------------------------------------------------------
// TPL selection
// ---------------------------------------------------------------------------

struct RepoMetadata {
    std::string name;
    std::string title;
    std::vector<std::string> tags;
    std::string description;
    std::string readme_text;
    int star_count = 0;
};

/// Keyword-driven platform filter.  A repository is selected when any
/// platform keyword occurs (case-insensitive substring) in its title, tags,
/// or description, no exclusion keyword occurs anywhere in its metadata or
/// readme, and it clears the prevalence star threshold.
inline std::vector<std::string> select_tpls(const std::vector<RepoMetadata>& repos,
    const std::vector<std::string>& platform_keywords,
    const std::vector<std::string>& exclusion_keywords,
    int min_stars = 100)
{
    std::vector<std::string> selected;
    for (const auto& r : repos) {
        if (r.star_count < min_stars)
            continue;
        std::string tag_text;
        for (const auto& t : r.tags)
            tag_text += t + " ";
        bool platform_hit = false;
        for (const auto& kw : platform_keywords) {
            if (contains_ci(r.title, kw) || contains_ci(tag_text, kw) || contains_ci(r.description, kw)) {
                platform_hit = true;
                break;
            }
        }
        if (!platform_hit)
            continue;
        std::string all_meta = r.name + " " + r.title + " " + tag_text + " " + r.description + " " + r.readme_text;
        bool excluded = false;
        for (const auto& kw : exclusion_keywords) {
            if (contains_ci(all_meta, kw)) {
                excluded = true;
                break;
            }
        }
        if (!excluded)
            selected.push_back(r.name);
    }
    return selected;
}

// ---------------------------------------------------------------------------
// fingerprinting
// ---------------------------------------------------------------------------

inline bool is_c_source_path(const std::string& path)
{
    static const char* exts[] = { ".c", ".h", ".cc", ".cpp", ".cxx", ".hpp", ".hh", ".hxx" };
    for (const char* e : exts) {
        std::size_t n = std::char_traits<char>::length(e);
        if (path.size() > n && path.compare(path.size() - n, n, e) == 0)
            return true;
    }
    return false;
}

struct BuildWarning {
    std::string tpl;
    std::string context;
    std::string message;
};

/// Walks every published version of a repository and fingerprints all its
/// functions.  One record per tag, ordered by publish time; Birth comes from
/// the earliest commit introducing the function.
inline std::vector<TplVersionRecord> build_version_records(GitRepoHandle& repo,
    std::vector<BuildWarning>* warnings = nullptr)
{
    std::vector<TplVersionRecord> records;
    std::map<std::string, std::int64_t> birth_cache; // symbol -> time

    for (const auto& tag : repo.list_tags()) {
        TplVersionRecord rec;
        rec.tpl_name = repo.name();
        rec.version_tag = tag.tag;
        rec.publish_time = tag.time;
        try {
            for (const auto& path : repo.files_at(tag.tag)) {
                if (!is_c_source_path(path))
                    continue;
                auto content = repo.file_at(tag.tag, path);
                if (!content)
                    continue;
                auto extracted = extract_normalized_snippets(*content, path);
                if (warnings)
                    for (const auto& w : extracted.warnings)
                        warnings->push_back({ repo.name(), tag.tag + ":" + w.file_path, w.message });
                for (const auto& s : extracted.snippets) {
                    if (s.kind != SnippetKind::Function)
                        continue;
                    FunctionFingerprint fp;
                    fp.hash = digest(s.normalized_body);
                    fp.origin_tpl = repo.name();
                    fp.origin_path = path;
                    auto it = birth_cache.find(s.name);
                    if (it == birth_cache.end()) {
                        auto t = repo.first_touch(path, s.name);
                        it = birth_cache.emplace(s.name, t.value_or(tag.time)).first;
                    }
                    fp.birth = it->second;
                    rec.fingerprints.push_back(std::move(fp));
                }
            }
        } catch (const repo_unavailable& e) {
            if (warnings)
                warnings->push_back({ repo.name(), tag.tag, std::string("tag skipped: ") + e.what() });
            continue;
        }
        records.push_back(std::move(rec));
    }
    std::stable_sort(records.begin(), records.end(), [](const TplVersionRecord& a, const TplVersionRecord& b) {
        return a.publish_time < b.publish_time;
    });
    return records;
}

// ---------------------------------------------------------------------------
// redundancy elimination
// ---------------------------------------------------------------------------

struct EliminationStats {
    std::size_t before = 0;
    std::size_t survivors = 0;
    std::size_t eliminated = 0;
    std::size_t comparisons = 0; // hash-map probes plus birth comparisons
};

/// Hashing-index elimination: among all fingerprints with an identical digest
/// hex, only the one with the earliest birth survives (ties broken by
/// lexicographically smallest (tpl, path)).  One map pass, at most two
/// comparisons per fingerprint.
inline ComponentSegment eliminate_redundancy(ComponentSegment segment, EliminationStats* stats = nullptr)
{
    EliminationStats local;
    auto precedes = [](const FunctionFingerprint& a, const FunctionFingerprint& b) {
        if (a.birth != b.birth)
            return a.birth < b.birth;
        return std::tie(a.origin_tpl, a.origin_path) < std::tie(b.origin_tpl, b.origin_path);
    };

    std::map<std::string, FunctionFingerprint> winners;
    for (const auto& [_, versions] : segment.tpls) {
        for (const auto& v : versions) {
            for (const auto& fp : v.fingerprints) {
                ++local.before;
                ++local.comparisons; // index probe
                auto [it, inserted] = winners.try_emplace(fp.hash.hex, fp);
                if (!inserted) {
                    ++local.comparisons; // birth comparison
                    if (precedes(fp, it->second))
                        it->second = fp;
                }
            }
        }
    }

    for (auto& [_, versions] : segment.tpls) {
        for (auto& v : versions) {
            std::vector<FunctionFingerprint> kept;
            kept.reserve(v.fingerprints.size());
            for (auto& fp : v.fingerprints) {
                const auto& winner = winners.at(fp.hash.hex);
                if (winner == fp)
                    kept.push_back(std::move(fp));
            }
            v.fingerprints = std::move(kept);
        }
    }

    segment.hash_index.clear();
    for (auto& [hex, fp] : winners)
        segment.hash_index.emplace(hex, fp);

    local.survivors = winners.size();
    local.eliminated = local.before - local.survivors;
    if (stats)
        *stats = local;
    return segment;
}

// ---------------------------------------------------------------------------
// persistence: JSON-Lines, bit-exact round-trip
// ---------------------------------------------------------------------------

namespace detail {

    inline const char* algorithm_tag(DigestAlgorithm a)
    {
        return a == DigestAlgorithm::Tlsh ? "TLSH" : "EXACT";
    }

    inline DigestAlgorithm algorithm_from_tag(const std::string& s)
    {
        if (s == "TLSH")
            return DigestAlgorithm::Tlsh;
        if (s == "EXACT")
            return DigestAlgorithm::ExactHash;
        throw error("unknown digest algorithm tag: " + s);
    }

    inline std::string digest_field(const FuzzyDigest& d)
    {
        return std::string(algorithm_tag(d.algorithm)) + ":" + d.hex;
    }

    inline FuzzyDigest digest_from_field(const std::string& s)
    {
        auto colon = s.find(':');
        if (colon == std::string::npos)
            throw error("malformed digest field: " + s);
        return { algorithm_from_tag(s.substr(0, colon)), s.substr(colon + 1) };
    }

} // namespace detail

inline std::string serialize_component_segment(const ComponentSegment& segment)
{
    std::string out;
    out += R"({"schema_version":1,"segment":"component"})";
    out += '\n';
    for (const auto& [tpl, versions] : segment.tpls) {
        auto ordered = versions;
        std::stable_sort(ordered.begin(), ordered.end(), [](const TplVersionRecord& a, const TplVersionRecord& b) {
            return std::tie(a.publish_time, a.version_tag) < std::tie(b.publish_time, b.version_tag);
        });
        for (const auto& v : ordered) {
            nlohmann::ordered_json vj;
            vj["tpl"] = tpl;
            vj["version"] = v.version_tag;
            vj["publish"] = format_rfc3339(v.publish_time);
            vj["functions"] = v.fingerprints.size();
            out += vj.dump();
            out += '\n';
            auto fps = v.fingerprints;
            std::stable_sort(fps.begin(), fps.end(), [](const FunctionFingerprint& a, const FunctionFingerprint& b) {
                return std::tie(a.origin_path, a.hash.hex) < std::tie(b.origin_path, b.hash.hex);
            });
            for (const auto& fp : fps) {
                nlohmann::ordered_json fj;
                fj["tpl"] = tpl;
                fj["version"] = v.version_tag;
                fj["digest"] = detail::digest_field(fp.hash);
                fj["birth"] = format_rfc3339(fp.birth);
                fj["path"] = fp.origin_path;
                out += fj.dump();
                out += '\n';
            }
        }
    }
    return out;
}

inline ComponentSegment parse_component_segment(const std::string& text)
{
    ComponentSegment segment;
    auto lines = split_lines(text);
    if (lines.empty())
        throw schema_version_mismatch("component segment file is empty");
    auto header = nlohmann::json::parse(lines[0]);
    if (header.value("schema_version", -1) != 1 || header.value("segment", "") != "component")
        throw schema_version_mismatch("unsupported component segment header: " + lines[0]);

    TplVersionRecord* current = nullptr;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty())
            continue;
        auto j = nlohmann::json::parse(lines[i]);
        std::string tpl = j.at("tpl");
        std::string version = j.at("version");
        if (j.contains("publish")) {
            TplVersionRecord rec;
            rec.tpl_name = tpl;
            rec.version_tag = version;
            rec.publish_time = parse_rfc3339(j.at("publish").get<std::string>());
            segment.tpls[tpl].push_back(std::move(rec));
            current = &segment.tpls[tpl].back();
            continue;
        }
        if (!current || current->tpl_name != tpl || current->version_tag != version)
            throw error("fingerprint line without its version record: " + lines[i]);
        FunctionFingerprint fp;
        fp.hash = detail::digest_from_field(j.at("digest"));
        fp.birth = parse_rfc3339(j.at("birth").get<std::string>());
        fp.origin_tpl = tpl;
        fp.origin_path = j.at("path");
        current->fingerprints.push_back(std::move(fp));
    }

    // the stored segment is post-elimination; rebuild the index
    for (const auto& [_, versions] : segment.tpls)
        for (const auto& v : versions)
            for (const auto& fp : v.fingerprints)
                segment.hash_index.emplace(fp.hash.hex, fp);
    return segment;
}

inline void save_component_segment(const ComponentSegment& segment, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot write component segment: " + path);
    out << serialize_component_segment(segment);
}

inline ComponentSegment load_component_segment(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot read component segment: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_component_segment(text);
}

} // namespace vulture
