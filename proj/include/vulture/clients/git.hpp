#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vulture/core/diff.hpp"
#include "vulture/core/text.hpp"
#include "vulture/errors.hpp"
#include "vulture/support/process.hpp"
#include "vulture/support/time.hpp"

namespace vulture {

struct CommitInfo {
    std::string hash;
    std::int64_t time = 0;
    std::string message;
};

struct TagInfo {
    std::string tag;
    std::int64_t time = 0;
};

/// Read-only session onto one repository's history.  Both implementations
/// render diffs with the library's own differ, so fixture-backed and
/// git-backed handles answer byte-for-byte identically on equal histories.
class GitRepoHandle {
public:
    virtual ~GitRepoHandle() = default;

    virtual std::string name() const = 0;
    virtual std::string url() const { return ""; }

    virtual std::vector<TagInfo> list_tags() = 0;

    /// Commits with time in (after, until], ascending by time.
    virtual std::vector<CommitInfo> commits_between(std::int64_t after, std::int64_t until) = 0;

    /// All commits, ascending by time.
    virtual std::vector<CommitInfo> all_commits() = 0;

    /// Cumulative unified diff between two revisions' trees.
    virtual std::string diff(const std::string& rev_a, const std::string& rev_b) = 0;

    /// Unified diff a single commit introduced over its parent.
    virtual std::string diff_of(const std::string& commit) = 0;

    /// File content at a revision (tag, hash, or hash^); nullopt if absent.
    virtual std::optional<std::string> file_at(const std::string& rev, const std::string& path) = 0;

    /// All file paths present at a revision, sorted.
    virtual std::vector<std::string> files_at(const std::string& rev) = 0;

    /// Time of the earliest commit whose diff introduces `symbol`.  The path
    /// is where the symbol currently lives; a symbol that arrived by moving
    /// files still resolves to its original introduction.
    virtual std::optional<std::int64_t> first_touch(const std::string& path, const std::string& symbol) = 0;

    /// Commit hash a tag points at.
    virtual std::string resolve_tag(const std::string& tag) = 0;
};

// ---------------------------------------------------------------------------
// fixture-backed handle
// ---------------------------------------------------------------------------

/// Synthetic history loaded from a JSON manifest: a linear list of commits,
/// each carrying a full file snapshot, plus tag -> commit references.
class FixtureRepo final : public GitRepoHandle {
public:
    struct Commit {
        std::string hash;
        std::int64_t time = 0;
        std::string message;
        std::map<std::string, std::string> files;
    };

    static FixtureRepo from_manifest_file(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw repo_unavailable("cannot open fixture manifest: " + path);
        nlohmann::json j;
        in >> j;
        return from_manifest(j);
    }

    static FixtureRepo from_manifest(const nlohmann::json& j)
    {
        FixtureRepo repo;
        repo.name_ = j.value("name", "");
        repo.url_ = j.value("url", "");
        for (const auto& c : j.at("commits")) {
            Commit commit;
            commit.hash = c.at("hash");
            commit.time = parse_rfc3339(c.at("time").get<std::string>());
            commit.message = c.value("message", "");
            if (c.contains("files"))
                for (auto& [path, content] : c.at("files").items())
                    commit.files[path] = content.get<std::string>();
            repo.commits_.push_back(std::move(commit));
        }
        std::stable_sort(repo.commits_.begin(), repo.commits_.end(),
            [](const Commit& a, const Commit& b) { return a.time < b.time; });
        for (std::size_t i = 0; i < repo.commits_.size(); ++i)
            repo.index_[repo.commits_[i].hash] = i;
        if (j.contains("tags"))
            for (const auto& t : j.at("tags"))
                repo.tags_.push_back({ t.at("tag"), t.at("commit") });
        return repo;
    }

    nlohmann::json to_manifest() const
    {
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["name"] = name_;
        if (!url_.empty())
            j["url"] = url_;
        j["commits"] = nlohmann::ordered_json::array();
        for (const auto& c : commits_) {
            nlohmann::ordered_json cj;
            cj["hash"] = c.hash;
            cj["time"] = format_rfc3339(c.time);
            cj["message"] = c.message;
            cj["files"] = nlohmann::ordered_json::object();
            for (const auto& [p, content] : c.files)
                cj["files"][p] = content;
            j["commits"].push_back(std::move(cj));
        }
        j["tags"] = nlohmann::ordered_json::array();
        for (const auto& [tag, commit] : tags_)
            j["tags"].push_back({ { "tag", tag }, { "commit", commit } });
        return j;
    }

    std::string name() const override { return name_; }
    std::string url() const override { return url_; }

    std::vector<TagInfo> list_tags() override
    {
        std::vector<TagInfo> out;
        for (const auto& [tag, commit] : tags_)
            out.push_back({ tag, commit_at(commit).time });
        std::stable_sort(out.begin(), out.end(), [](const TagInfo& a, const TagInfo& b) {
            return a.time < b.time || (a.time == b.time && a.tag < b.tag);
        });
        return out;
    }

    std::vector<CommitInfo> commits_between(std::int64_t after, std::int64_t until) override
    {
        std::vector<CommitInfo> out;
        for (const auto& c : commits_)
            if (c.time > after && c.time <= until)
                out.push_back({ c.hash, c.time, c.message });
        return out;
    }

    std::vector<CommitInfo> all_commits() override
    {
        std::vector<CommitInfo> out;
        for (const auto& c : commits_)
            out.push_back({ c.hash, c.time, c.message });
        return out;
    }

    std::string diff(const std::string& rev_a, const std::string& rev_b) override
    {
        return render_tree_diff(files_of(rev_a), files_of(rev_b));
    }

    std::string diff_of(const std::string& commit) override
    {
        std::size_t i = index_of(commit);
        std::map<std::string, std::string> before;
        if (i > 0)
            before = commits_[i - 1].files;
        return render_tree_diff(before, commits_[i].files);
    }

    std::optional<std::string> file_at(const std::string& rev, const std::string& path) override
    {
        auto files = files_of(rev);
        auto it = files.find(path);
        if (it == files.end())
            return std::nullopt;
        return it->second;
    }

    std::vector<std::string> files_at(const std::string& rev) override
    {
        std::vector<std::string> out;
        for (const auto& [p, _] : files_of(rev))
            out.push_back(p);
        return out;
    }

    std::string resolve_tag(const std::string& tag) override
    {
        for (const auto& [t, commit] : tags_)
            if (t == tag)
                return commit;
        throw repo_unavailable("unknown tag in fixture: " + tag);
    }

    std::optional<std::int64_t> first_touch(const std::string& path, const std::string& symbol) override
    {
        (void)path; // introduction is searched repo-wide; see the contract note
        for (std::size_t i = 0; i < commits_.size(); ++i) {
            const auto& files = commits_[i].files;
            const std::map<std::string, std::string>* prev = i > 0 ? &commits_[i - 1].files : nullptr;
            for (const auto& [p, content] : files) {
                const std::string* before = nullptr;
                if (prev) {
                    auto it = prev->find(p);
                    if (it != prev->end())
                        before = &it->second;
                }
                if (before && *before == content)
                    continue;
                bool now = content.find(symbol) != std::string::npos;
                bool was = before && before->find(symbol) != std::string::npos;
                if (now && !was)
                    return commits_[i].time;
            }
        }
        return std::nullopt;
    }

private:
    std::string name_;
    std::string url_;
    std::vector<Commit> commits_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::pair<std::string, std::string>> tags_; // tag -> commit hash

    const Commit& commit_at(const std::string& hash) const
    {
        auto it = index_.find(hash);
        if (it == index_.end())
            throw repo_unavailable("unknown commit in fixture: " + hash);
        return commits_[it->second];
    }

    std::size_t index_of(const std::string& hash) const
    {
        auto it = index_.find(hash);
        if (it == index_.end())
            throw repo_unavailable("unknown commit in fixture: " + hash);
        return it->second;
    }

    std::map<std::string, std::string> files_of(const std::string& rev) const
    {
        if (rev.empty())
            return {};
        if (!rev.empty() && rev.back() == '^') {
            std::size_t i = index_of(rev.substr(0, rev.size() - 1));
            return i > 0 ? commits_[i - 1].files : std::map<std::string, std::string> {};
        }
        for (const auto& [tag, commit] : tags_)
            if (tag == rev)
                return commit_at(commit).files;
        return commit_at(rev).files;
    }

    static std::string render_tree_diff(const std::map<std::string, std::string>& a,
        const std::map<std::string, std::string>& b)
    {
        std::string out;
        std::vector<std::string> paths;
        for (const auto& [p, _] : a)
            paths.push_back(p);
        for (const auto& [p, _] : b)
            if (!a.count(p))
                paths.push_back(p);
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) {
            auto ia = a.find(p);
            auto ib = b.find(p);
            const std::string old_text = ia != a.end() ? ia->second : "";
            const std::string new_text = ib != b.end() ? ib->second : "";
            if (old_text == new_text)
                continue;
            out += render_unified(p, p, split_lines(old_text), split_lines(new_text));
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// subprocess-backed handle
// ---------------------------------------------------------------------------

/// Wraps a local git checkout.  Metadata and file contents come from git;
/// diff rendering is done by the library so output matches FixtureRepo.
class SubprocessRepo final : public GitRepoHandle {
public:
    explicit SubprocessRepo(std::string dir, std::string display_name = "")
        : dir_(std::move(dir))
        , name_(std::move(display_name))
    {
        if (!std::filesystem::exists(std::filesystem::path(dir_) / ".git"))
            throw repo_unavailable("not a git repository: " + dir_);
        if (name_.empty())
            name_ = std::filesystem::path(dir_).filename().string();
    }

    std::string name() const override { return name_; }

    std::vector<TagInfo> list_tags() override
    {
        auto res = git({ "for-each-ref", "refs/tags", "--format=%(refname:short)|%(creatordate:iso-strict)" });
        std::vector<TagInfo> out;
        for (auto& line : split_lines(res)) {
            if (line.empty())
                continue;
            auto bar = line.find('|');
            if (bar == std::string::npos)
                continue;
            out.push_back({ line.substr(0, bar), parse_rfc3339(line.substr(bar + 1)) });
        }
        std::stable_sort(out.begin(), out.end(), [](const TagInfo& a, const TagInfo& b) {
            return a.time < b.time || (a.time == b.time && a.tag < b.tag);
        });
        return out;
    }

    std::vector<CommitInfo> all_commits() override
    {
        auto res = git({ "log", "--reverse", "--format=%H|%cI|%s" });
        std::vector<CommitInfo> out;
        for (auto& line : split_lines(res)) {
            if (line.empty())
                continue;
            auto b1 = line.find('|');
            auto b2 = line.find('|', b1 + 1);
            if (b1 == std::string::npos || b2 == std::string::npos)
                continue;
            out.push_back({ line.substr(0, b1), parse_rfc3339(line.substr(b1 + 1, b2 - b1 - 1)), line.substr(b2 + 1) });
        }
        std::stable_sort(out.begin(), out.end(),
            [](const CommitInfo& a, const CommitInfo& b) { return a.time < b.time; });
        return out;
    }

    std::vector<CommitInfo> commits_between(std::int64_t after, std::int64_t until) override
    {
        std::vector<CommitInfo> out;
        for (auto& c : all_commits())
            if (c.time > after && c.time <= until)
                out.push_back(c);
        return out;
    }

    std::string diff(const std::string& rev_a, const std::string& rev_b) override
    {
        return render_tree_diff_revs(rev_a, rev_b);
    }

    std::string diff_of(const std::string& commit) override
    {
        bool has_parent = run_command({ "git", "-C", dir_, "rev-parse", "--verify", "--quiet", commit + "^" }).exit_code == 0;
        return render_tree_diff_revs(has_parent ? commit + "^" : "", commit);
    }

    std::optional<std::string> file_at(const std::string& rev, const std::string& path) override
    {
        auto res = run_command({ "git", "-C", dir_, "show", rev + ":" + path });
        if (res.exit_code != 0)
            return std::nullopt;
        return res.output;
    }

    std::vector<std::string> files_at(const std::string& rev) override
    {
        if (rev.empty())
            return {};
        auto res = git({ "ls-tree", "-r", "--name-only", rev });
        std::vector<std::string> out;
        for (auto& line : split_lines(res))
            if (!line.empty())
                out.push_back(line);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::optional<std::int64_t> first_touch(const std::string& path, const std::string& symbol) override
    {
        (void)path;
        auto res = run_command({ "git", "-C", dir_, "log", "--reverse", "-S", symbol, "--format=%cI" });
        if (res.exit_code != 0)
            return std::nullopt;
        for (auto& line : split_lines(res.output))
            if (!line.empty())
                return parse_rfc3339(line);
        return std::nullopt;
    }

    std::string resolve_tag(const std::string& tag) override
    {
        auto res = run_command({ "git", "-C", dir_, "rev-list", "-n1", tag });
        if (res.exit_code != 0)
            throw repo_unavailable("unknown tag: " + tag);
        return trim(res.output);
    }

private:
    std::string dir_;
    std::string name_;

    std::string git(const std::vector<std::string>& args)
    {
        std::vector<std::string> argv = { "git", "-C", dir_ };
        argv.insert(argv.end(), args.begin(), args.end());
        auto res = run_command(argv);
        if (res.exit_code != 0)
            throw repo_unavailable("git " + args[0] + " failed in " + dir_ + ": " + res.output);
        return res.output;
    }

    std::string render_tree_diff_revs(const std::string& rev_a, const std::string& rev_b)
    {
        auto tree = [&](const std::string& rev) {
            std::map<std::string, std::string> files;
            if (rev.empty())
                return files;
            for (const auto& p : files_at(rev))
                if (auto content = file_at(rev, p))
                    files[p] = *content;
            return files;
        };
        auto a = tree(rev_a);
        auto b = tree(rev_b);
        std::string out;
        std::vector<std::string> paths;
        for (const auto& [p, _] : a)
            paths.push_back(p);
        for (const auto& [p, _] : b)
            if (!a.count(p))
                paths.push_back(p);
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) {
            auto ia = a.find(p);
            auto ib = b.find(p);
            const std::string old_text = ia != a.end() ? ia->second : "";
            const std::string new_text = ib != b.end() ? ib->second : "";
            if (old_text == new_text)
                continue;
            out += render_unified(p, p, split_lines(old_text), split_lines(new_text));
        }
        return out;
    }
};

enum class RepoMode {
    Subprocess,
    Fixture,
};

/// Opens a repository handle: a JSON manifest in fixture mode, a local git
/// checkout in subprocess mode.
inline std::unique_ptr<GitRepoHandle> open_repo(const std::string& location, RepoMode mode)
{
    if (mode == RepoMode::Fixture)
        return std::make_unique<FixtureRepo>(FixtureRepo::from_manifest_file(location));
    return std::make_unique<SubprocessRepo>(location);
}

/// Exports any handle's full history as a fixture manifest.
inline nlohmann::json export_manifest(GitRepoHandle& repo)
{
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["name"] = repo.name();
    if (!repo.url().empty())
        j["url"] = repo.url();
    j["commits"] = nlohmann::ordered_json::array();
    for (const auto& c : repo.all_commits()) {
        nlohmann::ordered_json cj;
        cj["hash"] = c.hash;
        cj["time"] = format_rfc3339(c.time);
        cj["message"] = c.message;
        cj["files"] = nlohmann::ordered_json::object();
        for (const auto& p : repo.files_at(c.hash))
            cj["files"][p] = repo.file_at(c.hash, p).value_or("");
        j["commits"].push_back(std::move(cj));
    }
    j["tags"] = nlohmann::ordered_json::array();
    for (const auto& t : repo.list_tags())
        j["tags"].push_back({ { "tag", t.tag }, { "commit", repo.resolve_tag(t.tag) } });
    return j;
}

} // namespace vulture
