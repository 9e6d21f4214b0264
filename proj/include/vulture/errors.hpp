#pragma once

#include <stdexcept>
#include <string>

namespace vulture {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : error {
    using error::error;
};

struct schema_version_mismatch : error {
    using error::error;
};

struct algorithm_mismatch : error {
    using error::error;
};

struct repo_unavailable : error {
    using error::error;
};

struct network_error : error {
    using error::error;
};

struct empty_range : error {
    using error::error;
};

} // namespace vulture
