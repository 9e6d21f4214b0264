#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "vulture/errors.hpp"

namespace vulture {

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

namespace detail {

    inline std::string shell_quote(const std::string& arg)
    {
        std::string out = "'";
        for (char c : arg) {
            if (c == '\'')
                out += "'\\''";
            else
                out += c;
        }
        out += "'";
        return out;
    }

} // namespace detail

/// Runs a command line built from pre-split arguments; every argument is
/// shell-quoted.  Blocking, capture-all.
inline CommandResult run_command(const std::vector<std::string>& argv)
{
    std::string cmd;
    for (const auto& a : argv) {
        if (!cmd.empty())
            cmd += ' ';
        cmd += detail::shell_quote(a);
    }
    cmd += " 2>&1";

    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe)
        throw error("failed to start command: " + cmd);

    CommandResult res;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.output.append(buf.data(), n);
    int status = ::pclose(pipe);
    res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return res;
}

} // namespace vulture
